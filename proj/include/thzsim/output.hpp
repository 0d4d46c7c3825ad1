#pragma once

#include <filesystem>
#include <string>

#include "thzsim/sweep.hpp"

namespace thzsim {

struct OutputFormats {
    bool csv = true;
    bool json = true;
    bool svg = false;
};

/// Parses a comma-separated subset of "csv,json,svg".
OutputFormats output_formats_from_string(std::string_view list);

/// Result table in the fixed column order
/// series_var,series_value,sweep_var,sweep_value,capacity_bps_hz,std_error,
/// n_samples,point_seed,evaluator. Number formatting is shortest round-trip,
/// so equal results serialize to identical bytes. Failed rows carry NaN
/// capacity and the reason appended to the evaluator field.
std::string to_csv(const SweepResult&);

/// Manifest as JSON with sorted keys; deterministic except for the
/// wall_clock_seconds entry, which is re-measured per run.
std::string to_manifest_json(const RunManifest&);
RunManifest manifest_from_json(const std::string& text);

/// Self-contained SVG line chart: one polyline per series, sweep variable on
/// the x axis, capacity on the y axis, legend naming each series. Failed
/// points are skipped.
std::string to_svg(const SweepResult&);

/// Writes the selected formats as results.csv, manifest.json and plot.svg
/// under out_dir (created if missing). Throws IoError on failure.
void write_outputs(const SweepResult&, const std::filesystem::path& out_dir,
                   const OutputFormats&);

}  // namespace thzsim
