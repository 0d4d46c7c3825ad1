#include "thzsim/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <system_error>

#include "thzsim/errors.hpp"

namespace thzsim {

namespace {

constexpr const char* kKnownKeys[] = {
    "frequency_ghz",  "distance_m",    "gain_tx_dbi",
    "gain_rx_dbi",    "temperature_k", "pressure_pa",
    "relative_humidity", "aperture_radius_m", "beam_waist_m",
    "sigma_s_m",      "alpha",         "mu",
    "h_hat",          "k_t",           "k_r",
    "p_over_n0_db",   "absorption_mode", "absorption_kappa_per_m",
    "absorption_table_path", "no_fading",
};

bool is_known_key(std::string_view key) {
    for (const char* k : kKnownKeys)
        if (key == k) return true;
    return false;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

struct RawEntry {
    std::string value;
    int line = 0;
};

class EntryMap {
public:
    void insert(std::string key, std::string value, int line) {
        if (!is_known_key(key)) throw ParseError("unknown key '" + key + "'", line);
        const auto [it, inserted] = entries_.try_emplace(std::move(key), RawEntry{std::move(value), line});
        if (!inserted) throw ParseError("duplicate key '" + it->first + "'", line);
    }

    std::optional<RawEntry> take(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        RawEntry e = std::move(it->second);
        entries_.erase(it);
        return e;
    }

    double number(const std::string& key) {
        const auto e = take(key);
        if (!e) throw ValidationError("missing required key '" + key + "'");
        return parse_number(key, *e);
    }

    double number_or(const std::string& key, double fallback) {
        const auto e = take(key);
        if (!e) return fallback;
        return parse_number(key, *e);
    }

    bool flag_or(const std::string& key, bool fallback) {
        const auto e = take(key);
        if (!e) return fallback;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        throw ParseError("key '" + key + "' expects true or false, got '" + e->value + "'",
                         e->line);
    }

    std::optional<std::string> text(const std::string& key) {
        const auto e = take(key);
        if (!e) return std::nullopt;
        return e->value;
    }

private:
    static double parse_number(const std::string& key, const RawEntry& e) {
        double value = 0.0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw ParseError("key '" + key + "' expects a number, got '" + e.value + "'",
                             e.line);
        return value;
    }

    std::map<std::string, RawEntry> entries_;
};

void append_number(std::string& out, double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    out.append(buf, ptr);
}

void append_line(std::string& out, std::string_view key, double value) {
    out.append(key);
    out.append(" = ");
    append_number(out, value);
    out.push_back('\n');
}

}  // namespace

Scenario parse_scenario_text(std::string_view text, const std::filesystem::path& base_dir) {
    EntryMap entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value'", line_no);
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty()) throw ParseError("empty key", line_no);
        if (value.empty()) throw ParseError("empty value for key '" + key + "'", line_no);
        entries.insert(key, value, line_no);
    }

    Scenario sc;
    sc.geometry.frequency_hz = entries.number("frequency_ghz") * 1e9;
    sc.geometry.distance_m = entries.number("distance_m");
    sc.geometry.gain_tx_dbi = entries.number("gain_tx_dbi");
    sc.geometry.gain_rx_dbi = entries.number("gain_rx_dbi");
    sc.environment.temperature_k = entries.number_or("temperature_k", 296.0);
    sc.environment.pressure_pa = entries.number_or("pressure_pa", 101325.0);
    sc.environment.relative_humidity = entries.number_or("relative_humidity", 0.5);
    sc.misalignment.aperture_radius_m = entries.number("aperture_radius_m");
    sc.misalignment.beam_waist_m = entries.number("beam_waist_m");
    sc.misalignment.jitter_sigma_m = entries.number("sigma_s_m");
    sc.fading.alpha = entries.number("alpha");
    sc.fading.mu = entries.number("mu");
    sc.fading.h_hat = entries.number_or("h_hat", 1.0);
    sc.impairments.k_t = entries.number("k_t");
    sc.impairments.k_r = entries.number("k_r");
    sc.budget.p_over_n0_db = entries.number("p_over_n0_db");
    sc.no_fading = entries.flag_or("no_fading", false);

    const std::string mode = entries.text("absorption_mode").value_or("none");
    if (mode == "none") {
        sc.absorption = AbsorptionProvider::none();
    } else if (mode == "constant") {
        sc.absorption =
            AbsorptionProvider::constant(entries.number("absorption_kappa_per_m"));
    } else if (mode == "table") {
        const auto path = entries.text("absorption_table_path");
        if (!path) throw ValidationError("missing required key 'absorption_table_path'");
        const std::filesystem::path table_path =
            std::filesystem::path(*path).is_absolute() ? std::filesystem::path(*path)
                                                       : base_dir / *path;
        // store the resolved path so a serialized scenario (e.g. inside a run
        // manifest) replays independent of the original working directory
        sc.absorption = load_absorption_table_file(table_path.string());
    } else {
        throw ValidationError("absorption_mode must be none, constant or table, got '" +
                              mode + "'");
    }
    if (const auto leftover = entries.text("absorption_kappa_per_m"))
        throw ValidationError("absorption_kappa_per_m is only valid with absorption_mode = constant");
    if (const auto leftover = entries.text("absorption_table_path"))
        throw ValidationError("absorption_table_path is only valid with absorption_mode = table");

    validate(sc);
    return sc;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path.has_parent_path() ? path.parent_path() : ".");
}

std::string serialize_scenario(const Scenario& sc) {
    std::string out;
    append_line(out, "frequency_ghz", sc.geometry.frequency_hz / 1e9);
    append_line(out, "distance_m", sc.geometry.distance_m);
    append_line(out, "gain_tx_dbi", sc.geometry.gain_tx_dbi);
    append_line(out, "gain_rx_dbi", sc.geometry.gain_rx_dbi);
    append_line(out, "temperature_k", sc.environment.temperature_k);
    append_line(out, "pressure_pa", sc.environment.pressure_pa);
    append_line(out, "relative_humidity", sc.environment.relative_humidity);
    append_line(out, "aperture_radius_m", sc.misalignment.aperture_radius_m);
    append_line(out, "beam_waist_m", sc.misalignment.beam_waist_m);
    append_line(out, "sigma_s_m", sc.misalignment.jitter_sigma_m);
    append_line(out, "alpha", sc.fading.alpha);
    append_line(out, "mu", sc.fading.mu);
    append_line(out, "h_hat", sc.fading.h_hat);
    append_line(out, "k_t", sc.impairments.k_t);
    append_line(out, "k_r", sc.impairments.k_r);
    append_line(out, "p_over_n0_db", sc.budget.p_over_n0_db);
    switch (sc.absorption.mode()) {
        case AbsorptionProvider::Mode::none:
            out += "absorption_mode = none\n";
            break;
        case AbsorptionProvider::Mode::constant:
            out += "absorption_mode = constant\n";
            append_line(out, "absorption_kappa_per_m", sc.absorption.constant_kappa());
            break;
        case AbsorptionProvider::Mode::table:
            out += "absorption_mode = table\n";
            out += "absorption_table_path = " + sc.absorption.source_path() + "\n";
            break;
    }
    out += sc.no_fading ? "no_fading = true\n" : "no_fading = false\n";
    return out;
}

}  // namespace thzsim
