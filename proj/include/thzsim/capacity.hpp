#pragma once

#include <cstddef>
#include <cstdint>

#include "thzsim/fading.hpp"
#include "thzsim/linkbudget.hpp"

namespace thzsim {

struct Impairments {
    double k_t = 0.0;  // TX distortion-to-signal ratio
    double k_r = 0.0;  // RX distortion-to-signal ratio; (0,0) is the ideal chain

    bool operator==(const Impairments&) const = default;
};

struct PowerBudget {
    double p_over_n0_db = 0.0;  // transmitted signal power over noise [dB]

    bool operator==(const PowerBudget&) const = default;
};

void validate(const Impairments&);
void validate(const PowerBudget&);

/// Full link description; the input to every capacity evaluator.
struct Scenario {
    LinkGeometry geometry;
    Environment environment;
    AbsorptionProvider absorption = AbsorptionProvider::none();
    MisalignmentGeometry misalignment;
    AlphaMuParams fading;
    Impairments impairments;
    PowerBudget budget;
    bool no_fading = false;  // replace h_p by A0 and h_f by h_hat

    bool operator==(const Scenario&) const = default;
};

void validate(const Scenario&);

struct CapacityEstimate {
    double mean_bps_hz = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    double ceiling_bps_hz = 0.0;  // analytic upper bound, +inf for the ideal chain
};

/// Instantaneous SNR under residual hardware impairments:
/// rho = S / (S (kt^2 + kr^2) + 1) with S = |h|^2 * 10^(P/N0/10).
double instantaneous_snr(double h_amp, const PowerBudget&, const Impairments&);

/// Supremum of rho as the received signal power grows: 1/(kt^2 + kr^2),
/// +inf for the ideal chain.
double snr_ceiling(const Impairments&);
double capacity_ceiling_bps_hz(const Impairments&);

/// log2(1 + rho) at the deterministic point h = h_l * A0 * h_hat.
double capacity_deterministic(const Scenario&);

/// Monte Carlo estimate of E[log2(1 + rho)]. Samples are drawn in fixed-size
/// blocks, block i on substream (seed, i), and block sums are combined in
/// block order, so the result is bit-for-bit reproducible for a fixed
/// (scenario, n_samples, seed) at any worker count. workers = 0 uses the
/// hardware concurrency. n_samples must be >= 2.
CapacityEstimate estimate_capacity_mc(const Scenario&, std::size_t n_samples,
                                      std::uint64_t seed, int workers = 0);

/// Deterministic evaluation of E[log2(1 + rho)] by nested adaptive Simpson
/// quadrature with per-axis tolerance rel_tol/2. Each fading axis is
/// integrated either against its (bounded) density or in its CDF coordinate,
/// whichever keeps the integrand free of endpoint singularities for the given
/// parameters. rel_tol must lie in (1e-12, 1e-2). Throws NumericalError
/// carrying the best estimate if the refinement budget is exhausted first.
double capacity_quadrature(const Scenario&, double rel_tol);

}  // namespace thzsim
