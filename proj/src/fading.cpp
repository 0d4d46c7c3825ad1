#include "thzsim/fading.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "thzsim/errors.hpp"

namespace thzsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void validate(const MisalignmentGeometry& g) {
    if (!(g.aperture_radius_m > 0.0) || !std::isfinite(g.aperture_radius_m))
        throw ValidationError("aperture_radius must be > 0 m");
    if (!(g.beam_waist_m > 0.0) || !std::isfinite(g.beam_waist_m))
        throw ValidationError("beam_waist must be > 0 m");
    if (!(g.jitter_sigma_m > 0.0) || !std::isfinite(g.jitter_sigma_m))
        throw ValidationError("sigma_s must be > 0 m");
}

void validate(const AlphaMuParams& p) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
        throw ValidationError("alpha must be > 0");
    if (!(p.mu > 0.0) || !std::isfinite(p.mu)) throw ValidationError("mu must be > 0");
    if (!(p.h_hat > 0.0) || !std::isfinite(p.h_hat))
        throw ValidationError("h_hat must be > 0");
}

MisalignmentParams derive_misalignment(const MisalignmentGeometry& g) {
    validate(g);
    MisalignmentParams p;
    p.v = std::sqrt(std::numbers::pi) * g.aperture_radius_m /
          (std::numbers::sqrt2 * g.beam_waist_m);
    const double erf_v = std::erf(p.v);
    p.a0 = erf_v * erf_v;
    p.w_eq_m = g.beam_waist_m * std::sqrt(std::sqrt(std::numbers::pi) * erf_v /
                                          (2.0 * p.v * std::exp(-p.v * p.v)));
    p.gamma = p.w_eq_m / (2.0 * g.jitter_sigma_m);
    return p;
}

namespace {

// shared x = 0 convention for power-law densities x^(e-1) * norm on [0, hi]
double power_law_pdf(double x, double exponent, double norm, double hi) {
    if (x < 0.0 || x > hi) return 0.0;
    if (x == 0.0) {
        if (exponent < 1.0) return kInf;
        if (exponent == 1.0) return norm;
        return 0.0;
    }
    return norm * std::pow(x, exponent - 1.0);
}

}  // namespace

double pointing_pdf(double x, const MisalignmentParams& p) {
    const double g2 = p.gamma * p.gamma;
    const double norm = g2 / std::pow(p.a0, g2);
    return power_law_pdf(x, g2, norm, p.a0);
}

double pointing_cdf(double x, const MisalignmentParams& p) {
    if (x <= 0.0) return 0.0;
    if (x >= p.a0) return 1.0;
    return std::pow(x / p.a0, p.gamma * p.gamma);
}

double sample_pointing(double u, const MisalignmentParams& p) {
    if (!(u > 0.0 && u <= 1.0)) throw ValidationError("u must lie in (0, 1]");
    return p.a0 * std::pow(u, 1.0 / (p.gamma * p.gamma));
}

double alpha_mu_pdf(double x, const AlphaMuParams& p) {
    if (x < 0.0) return 0.0;
    const double am = p.alpha * p.mu;
    if (x == 0.0) {
        const double norm = p.alpha * std::pow(p.mu, p.mu) /
                            (std::pow(p.h_hat, am) * std::tgamma(p.mu));
        if (am < 1.0) return kInf;
        if (am == 1.0) return norm;
        return 0.0;
    }
    // log form avoids overflow of mu^mu / Gamma(mu) for large mu
    const double log_pdf = std::log(p.alpha) + p.mu * std::log(p.mu) -
                           am * std::log(p.h_hat) - std::lgamma(p.mu) +
                           (am - 1.0) * std::log(x) -
                           p.mu * std::pow(x / p.h_hat, p.alpha);
    return std::exp(log_pdf);
}

double alpha_mu_cdf(double x, const AlphaMuParams& p) {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(p.mu, p.mu * std::pow(x / p.h_hat, p.alpha));
}

double alpha_mu_quantile(double prob, const AlphaMuParams& p) {
    if (!(prob >= 0.0 && prob < 1.0)) throw ValidationError("p must lie in [0, 1)");
    if (prob == 0.0) return 0.0;
    const double g = boost::math::gamma_p_inv(p.mu, prob);
    return p.h_hat * std::pow(g / p.mu, 1.0 / p.alpha);
}

double fading_moment(int n, const MisalignmentParams& p) {
    if (n <= 0) throw ValidationError("moment order n must be >= 1");
    const double g2 = p.gamma * p.gamma;
    return std::pow(p.a0, n) * g2 / (g2 + n);
}

double fading_moment(int n, const AlphaMuParams& p) {
    if (n <= 0) throw ValidationError("moment order n must be >= 1");
    const double r = n / p.alpha;
    return std::pow(p.h_hat, n) *
           std::exp(std::lgamma(p.mu + r) - std::lgamma(p.mu) - r * std::log(p.mu));
}

}  // namespace thzsim
