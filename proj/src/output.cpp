#include "thzsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "thzsim/errors.hpp"

namespace thzsim {

namespace {

using json = nlohmann::ordered_json;

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string sanitize_reason(std::string reason) {
    // keep the CSV single-field: the reason lands inside the evaluator column
    std::replace(reason.begin(), reason.end(), ',', ';');
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    return reason;
}

}  // namespace

OutputFormats output_formats_from_string(std::string_view list) {
    OutputFormats formats{false, false, false};
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = list.find(',', pos);
        const std::string_view item = list.substr(
            pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        pos = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
        if (item.empty()) continue;
        if (item == "csv") formats.csv = true;
        else if (item == "json") formats.json = true;
        else if (item == "svg") formats.svg = true;
        else
            throw ValidationError("unknown output format '" + std::string(item) +
                                  "' (expected csv, json or svg)");
    }
    if (!formats.csv && !formats.json && !formats.svg)
        throw ValidationError("no output format selected");
    return formats;
}

std::string to_csv(const SweepResult& result) {
    std::string out =
        "series_var,series_value,sweep_var,sweep_value,capacity_bps_hz,std_error,"
        "n_samples,point_seed,evaluator\n";
    const std::string series_var =
        result.spec.series_variable ? std::string(to_string(*result.spec.series_variable)) : "";
    const std::string sweep_var{to_string(result.spec.variable)};
    for (const SweepRow& row : result.rows) {
        out += series_var;
        out += ',';
        if (row.series_value) out += format_number(*row.series_value);
        out += ',';
        out += sweep_var;
        out += ',';
        out += format_number(row.sweep_value);
        out += ',';
        out += format_number(row.capacity_bps_hz);
        out += ',';
        out += format_number(row.std_error);
        out += ',';
        out += std::to_string(row.n_samples);
        out += ',';
        out += std::to_string(row.point_seed);
        out += ',';
        out += row.evaluator;
        if (row.failed) out += "(failed: " + sanitize_reason(row.fail_reason) + ")";
        out += '\n';
    }
    return out;
}

std::string to_manifest_json(const RunManifest& m) {
    json j;
    j["evaluator"] = std::string(to_string(m.evaluator));
    j["n_samples"] = m.n_samples;
    j["point_seeds"] = m.point_seeds;
    j["quad_rel_tol"] = m.quad_rel_tol;
    j["scenario"] = m.scenario_text;
    j["seed"] = m.seed;
    j["sweep"] = json{
        {"variable", std::string(to_string(m.spec.variable))},
        {"values", m.spec.values},
        {"series_variable", m.spec.series_variable
                                ? json(std::string(to_string(*m.spec.series_variable)))
                                : json(nullptr)},
        {"series_values", m.spec.series_values},
    };
    j["tool_version"] = m.tool_version;
    j["wall_clock_seconds"] = m.wall_clock_seconds;
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
    }
    RunManifest m;
    try {
        m.evaluator = evaluator_from_string(j.at("evaluator").get<std::string>());
        m.n_samples = j.at("n_samples").get<std::size_t>();
        m.point_seeds = j.at("point_seeds").get<std::vector<std::uint64_t>>();
        m.quad_rel_tol = j.at("quad_rel_tol").get<double>();
        m.scenario_text = j.at("scenario").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        const json& sweep = j.at("sweep");
        m.spec.variable = sweep_variable_from_string(sweep.at("variable").get<std::string>());
        m.spec.values = sweep.at("values").get<std::vector<double>>();
        if (!sweep.at("series_variable").is_null())
            m.spec.series_variable =
                sweep_variable_from_string(sweep.at("series_variable").get<std::string>());
        m.spec.series_values = sweep.at("series_values").get<std::vector<double>>();
        m.tool_version = j.at("tool_version").get<std::string>();
        m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest missing or malformed field: ") + e.what());
    }
    return m;
}

namespace {

// Fixed drawing geometry; the chart is for quick inspection, not publication.
constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 160.0;  // room for the legend
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 55.0;

constexpr const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                         "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct Axis {
    double lo = 0.0;
    double hi = 1.0;

    double place(double v, double px_lo, double px_hi) const {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px_lo + t * (px_hi - px_lo);
    }
};

std::string svg_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string to_svg(const SweepResult& result) {
    // group surviving points per series, preserving sweep order
    struct Series {
        std::string label;
        std::vector<std::pair<double, double>> points;
    };
    std::vector<Series> series;
    std::map<std::string, std::size_t> index;
    for (const SweepRow& row : result.rows) {
        if (row.failed) continue;
        std::string label = row.series_value
                                ? std::string(to_string(*result.spec.series_variable)) + " = " +
                                      format_number(*row.series_value)
                                : "capacity";
        if (result.rows.size() > result.spec.values.size() * std::max<std::size_t>(
                                     1, result.spec.series_values.size()))
            label += " (" + row.evaluator + ")";  // evaluator=both: keep curves apart
        auto [it, inserted] = index.try_emplace(label, series.size());
        if (inserted) series.push_back({label, {}});
        series[it->second].points.emplace_back(row.sweep_value, row.capacity_bps_hz);
    }

    Axis x, y;
    bool has_points = false;
    for (const Series& s : series)
        for (const auto& [px, py] : s.points) {
            if (!has_points) {
                x.lo = x.hi = px;
                y.lo = y.hi = py;
                has_points = true;
            }
            x.lo = std::min(x.lo, px);
            x.hi = std::max(x.hi, px);
            y.lo = std::min(y.lo, py);
            y.hi = std::max(y.hi, py);
        }
    if (!has_points) {
        x = {0.0, 1.0};
        y = {0.0, 1.0};
    }
    if (x.hi == x.lo) x.hi = x.lo + 1.0;
    if (y.hi == y.lo) y.hi = y.lo + 1.0;
    // breathing room so curves do not hug the frame
    const double y_pad = 0.05 * (y.hi - y.lo);
    y.lo -= y_pad;
    y.hi += y_pad;

    const double px_lo = kMarginLeft, px_hi = kWidth - kMarginRight;
    const double py_lo = kHeight - kMarginBottom, py_hi = kMarginTop;  // y grows upward

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    // frame
    svg << "  <rect x=\"" << px_lo << "\" y=\"" << py_hi << "\" width=\"" << (px_hi - px_lo)
        << "\" height=\"" << (py_lo - py_hi)
        << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    // ticks: 6 per axis, linear
    constexpr int kTicks = 6;
    for (int i = 0; i < kTicks; ++i) {
        const double t = static_cast<double>(i) / (kTicks - 1);
        const double xv = x.lo + t * (x.hi - x.lo);
        const double yv = y.lo + t * (y.hi - y.lo);
        const double xp = x.place(xv, px_lo, px_hi);
        const double yp = y.place(yv, py_lo, py_hi);
        svg << "  <line x1=\"" << xp << "\" y1=\"" << py_lo << "\" x2=\"" << xp << "\" y2=\""
            << (py_lo + 5) << "\" stroke=\"#333\"/>\n";
        svg << "  <text x=\"" << xp << "\" y=\"" << (py_lo + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << format_number(std::round(xv * 1e6) / 1e6) << "</text>\n";
        svg << "  <line x1=\"" << px_lo << "\" y1=\"" << yp << "\" x2=\"" << (px_lo - 5)
            << "\" y2=\"" << yp << "\" stroke=\"#333\"/>\n";
        svg << "  <text x=\"" << (px_lo - 9) << "\" y=\"" << (yp + 4)
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">"
            << format_number(std::round(yv * 1e4) / 1e4) << "</text>\n";
    }

    // axis labels
    svg << "  <text x=\"" << (px_lo + (px_hi - px_lo) / 2) << "\" y=\"" << (kHeight - 12)
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << svg_escape(to_string(result.spec.variable)) << "</text>\n";
    svg << "  <text x=\"18\" y=\"" << (py_hi + (py_lo - py_hi) / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 "
        << (py_hi + (py_lo - py_hi) / 2) << ")\">ergodic capacity [bits/s/Hz]</text>\n";

    // curves
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kSeriesColors[s % std::size(kSeriesColors)];
        svg << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [vx, vy] : series[s].points)
            svg << x.place(vx, px_lo, px_hi) << "," << y.place(vy, py_lo, py_hi) << " ";
        svg << "\"/>\n";
    }

    // legend (marker lines, not polylines, so polyline count == series count)
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kSeriesColors[s % std::size(kSeriesColors)];
        const double ly = py_hi + 16 + 22 * static_cast<double>(s);
        svg << "  <line x1=\"" << (px_hi + 12) << "\" y1=\"" << ly << "\" x2=\""
            << (px_hi + 40) << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "  <text x=\"" << (px_hi + 46) << "\" y=\"" << (ly + 4)
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << svg_escape(series[s].label)
            << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

void write_outputs(const SweepResult& result, const std::filesystem::path& out_dir,
                   const OutputFormats& formats) {
    if (result.rows.empty()) throw ValidationError("sweep result has no rows to write");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir.string() +
                          "': " + ec.message());
    const auto write_file = [&](const char* name, const std::string& content) {
        const std::filesystem::path path = out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << content;
        if (!out) throw IoError("failed writing '" + path.string() + "'");
    };
    if (formats.csv) write_file("results.csv", to_csv(result));
    if (formats.json) write_file("manifest.json", to_manifest_json(result.manifest));
    if (formats.svg) write_file("plot.svg", to_svg(result));
}

}  // namespace thzsim
