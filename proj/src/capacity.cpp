#include "thzsim/capacity.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "thzsim/errors.hpp"
#include "thzsim/rng.hpp"

namespace thzsim {

namespace {
constexpr double kInvLn2 = std::numbers::log2e;
constexpr std::size_t kMcBlockSize = 8192;  // part of the determinism contract
}  // namespace

void validate(const Impairments& imp) {
    if (!(imp.k_t >= 0.0) || !std::isfinite(imp.k_t))
        throw ValidationError("k_t must be >= 0");
    if (!(imp.k_r >= 0.0) || !std::isfinite(imp.k_r))
        throw ValidationError("k_r must be >= 0");
}

void validate(const PowerBudget& b) {
    if (!std::isfinite(b.p_over_n0_db))
        throw ValidationError("p_over_n0_db must be finite");
}

void validate(const Scenario& sc) {
    validate(sc.geometry);
    validate(sc.environment);
    validate(sc.misalignment);
    validate(sc.fading);
    validate(sc.impairments);
    validate(sc.budget);
}

double instantaneous_snr(double h_amp, const PowerBudget& budget, const Impairments& imp) {
    const double s = h_amp * h_amp * std::pow(10.0, budget.p_over_n0_db / 10.0);
    return s / (s * (imp.k_t * imp.k_t + imp.k_r * imp.k_r) + 1.0);
}

double snr_ceiling(const Impairments& imp) {
    validate(imp);
    const double k2 = imp.k_t * imp.k_t + imp.k_r * imp.k_r;
    if (k2 == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / k2;
}

double capacity_ceiling_bps_hz(const Impairments& imp) {
    const double ceiling = snr_ceiling(imp);
    if (std::isinf(ceiling)) return ceiling;
    return std::log1p(ceiling) * kInvLn2;
}

double capacity_deterministic(const Scenario& sc) {
    validate(sc);
    const double h_l = path_amplitude(sc.geometry, sc.environment, sc.absorption);
    const double a0 = derive_misalignment(sc.misalignment).a0;
    const double rho = instantaneous_snr(h_l * a0 * sc.fading.h_hat, sc.budget, sc.impairments);
    return std::log1p(rho) * kInvLn2;
}

namespace {

struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

struct McContext {
    double h_l = 0.0;
    MisalignmentParams mis;
    AlphaMuParams fading;
    PowerBudget budget;
    Impairments impairments;
};

// One sample consumes the pointing uniform first, then the alpha-mu draws;
// this order is fixed by the reproducibility contract.
BlockSums run_block(const McContext& ctx, std::uint64_t seed, std::uint64_t block,
                    std::size_t count) {
    SubstreamRng rng(seed, block);
    BlockSums out;
    for (std::size_t i = 0; i < count; ++i) {
        const double h_p = sample_pointing(rng.uniform01(), ctx.mis);
        const double h_f = sample_alpha_mu(rng, ctx.fading);
        const double rho = instantaneous_snr(ctx.h_l * h_p * h_f, ctx.budget, ctx.impairments);
        const double c = std::log1p(rho) * kInvLn2;
        out.sum += c;
        out.sum_sq += c * c;
    }
    return out;
}

}  // namespace

CapacityEstimate estimate_capacity_mc(const Scenario& sc, std::size_t n_samples,
                                      std::uint64_t seed, int workers) {
    validate(sc);
    if (n_samples < 2) throw ValidationError("n_samples must be >= 2");
    const double ceiling = capacity_ceiling_bps_hz(sc.impairments);
    if (sc.no_fading) {
        // constant integrand: the estimate is exact with zero spread
        return {capacity_deterministic(sc), 0.0, n_samples, seed, ceiling};
    }

    McContext ctx;
    ctx.h_l = path_amplitude(sc.geometry, sc.environment, sc.absorption);
    ctx.mis = derive_misalignment(sc.misalignment);
    ctx.fading = sc.fading;
    ctx.budget = sc.budget;
    ctx.impairments = sc.impairments;

    const std::size_t n_blocks = (n_samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<BlockSums> blocks(n_blocks);

    const auto block_count = [&](std::size_t b) {
        return std::min(kMcBlockSize, n_samples - b * kMcBlockSize);
    };

    std::size_t n_workers = workers > 0 ? static_cast<std::size_t>(workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min(n_workers, n_blocks);
    if (n_workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b)
            blocks[b] = run_block(ctx, seed, b, block_count(b));
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t b = next.fetch_add(1);
                    if (b >= n_blocks) return;
                    blocks[b] = run_block(ctx, seed, b, block_count(b));
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    // combine in block order so the totals match the single-worker run
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& b : blocks) {
        sum += b.sum;
        sum_sq += b.sum_sq;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(variance / n), n_samples, seed, ceiling};
}

}  // namespace thzsim
