#include "thzsim/sweep.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "thzsim/errors.hpp"
#include "thzsim/rng.hpp"
#include "thzsim/scenario_io.hpp"
#include "thzsim/version.hpp"

namespace thzsim {

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::sigma_s: return "sigma_s";
        case SweepVariable::k_tr: return "k_tr";
        case SweepVariable::mu: return "mu";
        case SweepVariable::distance: return "distance";
        case SweepVariable::frequency: return "frequency";
        case SweepVariable::p_over_n0_db: return "p_over_n0_db";
    }
    return "?";
}

SweepVariable sweep_variable_from_string(std::string_view name) {
    if (name == "sigma_s") return SweepVariable::sigma_s;
    if (name == "k_tr") return SweepVariable::k_tr;
    if (name == "mu") return SweepVariable::mu;
    if (name == "distance") return SweepVariable::distance;
    if (name == "frequency") return SweepVariable::frequency;
    if (name == "p_over_n0_db") return SweepVariable::p_over_n0_db;
    throw ValidationError("unknown sweep variable '" + std::string(name) +
                          "' (expected sigma_s, k_tr, mu, distance, frequency or "
                          "p_over_n0_db)");
}

void validate(const SweepSpec& spec) {
    if (spec.values.empty()) throw ValidationError("sweep needs at least one value");
    if (spec.series_variable.has_value()) {
        if (spec.series_values.empty())
            throw ValidationError("series variable set but no series values given");
        if (*spec.series_variable == spec.variable)
            throw ValidationError("series variable must differ from the sweep variable");
        std::set<double> distinct(spec.series_values.begin(), spec.series_values.end());
        if (distinct.size() != spec.series_values.size())
            throw ValidationError("series values must be distinct");
    } else if (!spec.series_values.empty()) {
        throw ValidationError("series values given without a series variable");
    }
}

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
    if (count < 2) throw ValidationError("grid needs at least 2 points");
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw ValidationError("grid endpoints must be finite");
    std::vector<double> values(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        values[i] = start + step * static_cast<double>(i);
    values.back() = stop;  // land exactly on the endpoint
    return values;
}

std::string_view to_string(Evaluator e) {
    switch (e) {
        case Evaluator::mc: return "mc";
        case Evaluator::quadrature: return "quadrature";
        case Evaluator::both: return "both";
    }
    return "?";
}

Evaluator evaluator_from_string(std::string_view name) {
    if (name == "mc") return Evaluator::mc;
    if (name == "quadrature") return Evaluator::quadrature;
    if (name == "both") return Evaluator::both;
    throw ValidationError("unknown evaluator '" + std::string(name) +
                          "' (expected mc, quadrature or both)");
}

Scenario apply_variable(Scenario sc, SweepVariable var, double value) {
    switch (var) {
        case SweepVariable::sigma_s:
            sc.misalignment.jitter_sigma_m = value;
            break;
        case SweepVariable::k_tr:
            sc.impairments.k_t = value;
            sc.impairments.k_r = value;
            break;
        case SweepVariable::mu:
            sc.fading.mu = value;
            break;
        case SweepVariable::distance:
            sc.geometry.distance_m = value;
            break;
        case SweepVariable::frequency:
            sc.geometry.frequency_hz = value * 1e9;
            break;
        case SweepVariable::p_over_n0_db:
            sc.budget.p_over_n0_db = value;
            break;
    }
    return sc;
}

namespace {

SweepRow evaluate_row(const Scenario& sc, std::optional<double> series_value,
                      double sweep_value, std::uint64_t point_seed, bool use_quadrature,
                      std::size_t n_samples, double quad_rel_tol, int workers) {
    SweepRow row;
    row.series_value = series_value;
    row.sweep_value = sweep_value;
    row.point_seed = point_seed;
    row.evaluator = use_quadrature ? "quadrature" : "mc";
    try {
        if (use_quadrature) {
            row.capacity_bps_hz = capacity_quadrature(sc, quad_rel_tol);
        } else {
            const CapacityEstimate est = estimate_capacity_mc(sc, n_samples, point_seed, workers);
            row.capacity_bps_hz = est.mean_bps_hz;
            row.std_error = est.std_error;
            row.n_samples = est.n_samples;
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.fail_reason = e.what();
        row.capacity_bps_hz = std::numeric_limits<double>::quiet_NaN();
        row.std_error = 0.0;
        row.n_samples = 0;
    }
    return row;
}

}  // namespace

SweepResult run_sweep(const Scenario& base, const SweepSpec& spec, std::size_t n_samples,
                      std::uint64_t seed, Evaluator evaluator, double quad_rel_tol,
                      int workers) {
    validate(spec);
    const auto t0 = std::chrono::steady_clock::now();

    SweepResult result;
    result.spec = spec;

    // A sweep without series runs the same loop over a single pseudo-series.
    const std::vector<std::optional<double>> series =
        spec.series_variable.has_value()
            ? [&] {
                  std::vector<std::optional<double>> s;
                  for (double v : spec.series_values) s.emplace_back(v);
                  return s;
              }()
            : std::vector<std::optional<double>>{std::nullopt};

    std::size_t point_index = 0;
    for (const auto& series_value : series) {
        Scenario series_sc = base;
        if (series_value.has_value())
            series_sc = apply_variable(series_sc, *spec.series_variable, *series_value);
        for (double sweep_value : spec.values) {
            const Scenario sc = apply_variable(series_sc, spec.variable, sweep_value);
            // One substream per grid point: rows stay reproducible when the
            // grid is re-run in pieces or with a different worker count.
            const std::uint64_t point_seed = derive_substream_seed(seed, point_index);
            result.manifest.point_seeds.push_back(point_seed);
            if (evaluator == Evaluator::mc || evaluator == Evaluator::both)
                result.rows.push_back(evaluate_row(sc, series_value, sweep_value, point_seed,
                                                   false, n_samples, quad_rel_tol, workers));
            if (evaluator == Evaluator::quadrature || evaluator == Evaluator::both)
                result.rows.push_back(evaluate_row(sc, series_value, sweep_value, point_seed,
                                                   true, n_samples, quad_rel_tol, workers));
            ++point_index;
        }
    }

    for (const SweepRow& row : result.rows)
        if (row.failed) result.any_failed = true;

    result.manifest.scenario_text = serialize_scenario(base);
    result.manifest.spec = spec;
    result.manifest.seed = seed;
    result.manifest.n_samples = n_samples;
    result.manifest.evaluator = evaluator;
    result.manifest.quad_rel_tol = quad_rel_tol;
    result.manifest.tool_version = kToolVersion;
    result.manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace thzsim
