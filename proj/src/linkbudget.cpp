#include "thzsim/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <utility>

#include "thzsim/errors.hpp"

namespace thzsim {

void validate(const LinkGeometry& g) {
    if (!(g.frequency_hz > 0.0) || !std::isfinite(g.frequency_hz))
        throw ValidationError("frequency must be > 0 Hz");
    if (!(g.distance_m > 0.0) || !std::isfinite(g.distance_m))
        throw ValidationError("distance must be > 0 m");
    if (!std::isfinite(g.gain_tx_dbi)) throw ValidationError("gain_tx must be finite dBi");
    if (!std::isfinite(g.gain_rx_dbi)) throw ValidationError("gain_rx must be finite dBi");
}

void validate(const Environment& e) {
    if (!(e.temperature_k > 0.0) || !std::isfinite(e.temperature_k))
        throw ValidationError("temperature must be > 0 K");
    if (!(e.pressure_pa > 0.0) || !std::isfinite(e.pressure_pa))
        throw ValidationError("pressure must be > 0 Pa");
    if (!(e.relative_humidity >= 0.0 && e.relative_humidity <= 1.0))
        throw ValidationError("relative_humidity must lie in [0, 1]");
}

AbsorptionProvider AbsorptionProvider::none() { return {}; }

AbsorptionProvider AbsorptionProvider::constant(double kappa_per_m) {
    if (!(kappa_per_m >= 0.0) || !std::isfinite(kappa_per_m))
        throw ValidationError("absorption coefficient must be >= 0");
    AbsorptionProvider p;
    p.mode_ = Mode::constant;
    p.kappa_ = kappa_per_m;
    return p;
}

AbsorptionProvider AbsorptionProvider::table(std::vector<Knot> knots, std::string source_path) {
    if (knots.size() < 2) throw ValidationError("absorption table needs at least 2 knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i].kappa_per_m >= 0.0) || !std::isfinite(knots[i].kappa_per_m))
            throw ValidationError("negative absorption coefficient");
        if (!(knots[i].frequency_hz > 0.0))
            throw ValidationError("knot frequency must be > 0");
        if (i > 0 && !(knots[i].frequency_hz > knots[i - 1].frequency_hz))
            throw ValidationError("knots not strictly increasing");
    }
    AbsorptionProvider p;
    p.mode_ = Mode::table;
    p.knots_ = std::move(knots);
    p.source_path_ = std::move(source_path);
    return p;
}

double AbsorptionProvider::coefficient(double frequency_hz) const {
    switch (mode_) {
        case Mode::none:
            return 0.0;
        case Mode::constant:
            return kappa_;
        case Mode::table:
            break;
    }
    if (frequency_hz < knots_.front().frequency_hz || frequency_hz > knots_.back().frequency_hz) {
        std::ostringstream msg;
        msg << "frequency " << frequency_hz / 1e9 << " GHz outside table range ["
            << knots_.front().frequency_hz / 1e9 << ", " << knots_.back().frequency_hz / 1e9
            << "] GHz";
        throw ValidationError(msg.str());
    }
    const auto upper = std::lower_bound(
        knots_.begin(), knots_.end(), frequency_hz,
        [](const Knot& k, double f) { return k.frequency_hz < f; });
    if (upper->frequency_hz == frequency_hz) return upper->kappa_per_m;  // exact at knots
    const auto lower = upper - 1;
    const double t = (frequency_hz - lower->frequency_hz) /
                     (upper->frequency_hz - lower->frequency_hz);
    return lower->kappa_per_m + t * (upper->kappa_per_m - lower->kappa_per_m);
}

double friis_amplitude(const LinkGeometry& g) {
    validate(g);
    const double gain_lin = std::pow(10.0, (g.gain_tx_dbi + g.gain_rx_dbi) / 20.0);
    return kSpeedOfLight / (4.0 * std::numbers::pi * g.frequency_hz * g.distance_m) * gain_lin;
}

double absorption_coefficient(const Environment& env, double frequency_hz,
                              const AbsorptionProvider& provider) {
    validate(env);
    return provider.coefficient(frequency_hz);
}

double path_amplitude(const LinkGeometry& g, const Environment& env,
                      const AbsorptionProvider& provider) {
    const double h_fl = friis_amplitude(g);
    const double kappa = absorption_coefficient(env, g.frequency_hz, provider);
    if (kappa == 0.0) return h_fl;  // bit-exact absorption identity
    return h_fl * std::exp(-kappa * g.distance_m / 2.0);
}

namespace {

double parse_double_field(const std::string& token, int line, const char* what) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError(std::string("malformed ") + what + " '" + std::string(first, last) + "'",
                         line);
    return value;
}

}  // namespace

AbsorptionProvider load_absorption_table(std::istream& in, std::string source_path) {
    std::vector<AbsorptionProvider::Knot> knots;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const std::string trimmed = line.substr(start);
        if (!header_seen) {
            if (trimmed != "frequency_ghz,kappa_per_m")
                throw ParseError("expected header 'frequency_ghz,kappa_per_m'", line_no);
            header_seen = true;
            continue;
        }
        const auto comma = trimmed.find(',');
        if (comma == std::string::npos)
            throw ParseError("expected 'frequency_ghz,kappa_per_m' record", line_no);
        const double ghz = parse_double_field(trimmed.substr(0, comma), line_no, "frequency");
        const double kappa = parse_double_field(trimmed.substr(comma + 1), line_no,
                                                "absorption coefficient");
        knots.push_back({ghz * 1e9, kappa});
    }
    if (!header_seen) throw ParseError("missing header 'frequency_ghz,kappa_per_m'", line_no);
    return AbsorptionProvider::table(std::move(knots), std::move(source_path));
}

AbsorptionProvider load_absorption_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open absorption table '" + path + "'");
    return load_absorption_table(in, path);
}

}  // namespace thzsim
