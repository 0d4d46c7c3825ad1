#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thzsim/capacity.hpp"

namespace thzsim {

enum class SweepVariable { sigma_s, k_tr, mu, distance, frequency, p_over_n0_db };

/// Units: sigma_s and distance in m, frequency in GHz, the rest dimensionless
/// or dB as named.
std::string_view to_string(SweepVariable);
SweepVariable sweep_variable_from_string(std::string_view name);

struct SweepSpec {
    SweepVariable variable = SweepVariable::sigma_s;
    std::vector<double> values;
    std::optional<SweepVariable> series_variable;
    std::vector<double> series_values;  // empty iff no series
};

void validate(const SweepSpec&);

/// count >= 2 equally spaced values from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, std::size_t count);

enum class Evaluator { mc, quadrature, both };

std::string_view to_string(Evaluator);
Evaluator evaluator_from_string(std::string_view name);

/// Returns a copy of the scenario with the sweep variable applied
/// (k_tr sets k_t = k_r = value; frequency is given in GHz).
Scenario apply_variable(Scenario, SweepVariable, double value);

struct SweepRow {
    std::optional<double> series_value;  // empty when the sweep has no series
    double sweep_value = 0.0;
    double capacity_bps_hz = 0.0;  // NaN when failed
    double std_error = 0.0;        // 0 for quadrature rows
    std::size_t n_samples = 0;     // 0 for quadrature rows
    std::uint64_t point_seed = 0;
    std::string evaluator;  // "mc" or "quadrature"
    bool failed = false;
    std::string fail_reason;
};

/// Everything needed to reproduce a run bit-for-bit, plus bookkeeping.
struct RunManifest {
    std::string scenario_text;  // canonical serialized scenario snapshot
    SweepSpec spec;
    std::uint64_t seed = 0;
    std::size_t n_samples = 0;
    Evaluator evaluator = Evaluator::mc;
    double quad_rel_tol = 1e-6;
    std::string tool_version;
    double wall_clock_seconds = 0.0;  // informational; excluded from replay equality
    std::vector<std::uint64_t> point_seeds;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    RunManifest manifest;
    bool any_failed = false;
};

/// Evaluates one row per (series value x sweep value) in grid order, series
/// major. Point i runs on the substream seed derived from (seed, i); with
/// evaluator `both` each point yields an mc row followed by a quadrature row.
/// Evaluator failures mark the row instead of aborting the sweep.
SweepResult run_sweep(const Scenario&, const SweepSpec&, std::size_t n_samples,
                      std::uint64_t seed, Evaluator evaluator,
                      double quad_rel_tol = 1e-6, int workers = 0);

}  // namespace thzsim
