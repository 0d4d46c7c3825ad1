#pragma once

#include <cmath>

namespace thzsim {

struct MisalignmentGeometry {
    double aperture_radius_m = 0.0;  // a, receiver effective aperture radius
    double beam_waist_m = 0.0;       // w_d, beam footprint radius at the RX plane
    double jitter_sigma_m = 0.0;     // sigma_s, radial displacement std dev

    bool operator==(const MisalignmentGeometry&) const = default;
};

/// Derived pointing-error quantities parameterizing the misalignment density.
struct MisalignmentParams {
    double v = 0.0;
    double a0 = 0.0;      // fraction of collected power at perfect alignment
    double w_eq_m = 0.0;  // equivalent beam width radius at the RX
    double gamma = 0.0;   // w_eq / (2 sigma_s)
};

struct AlphaMuParams {
    double alpha = 2.0;  // nonlinearity parameter
    double mu = 1.0;     // clustering parameter
    double h_hat = 1.0;  // alpha-root mean envelope value

    bool operator==(const AlphaMuParams&) const = default;
};

void validate(const MisalignmentGeometry&);
void validate(const AlphaMuParams&);

/// v = sqrt(pi) a / (sqrt(2) w_d); A0 = erf(v)^2;
/// w_eq^2 = w_d^2 sqrt(pi) erf(v) / (2 v exp(-v^2)); gamma = w_eq / (2 sigma_s).
MisalignmentParams derive_misalignment(const MisalignmentGeometry&);

/// Misalignment density gamma^2/A0^gamma^2 * x^(gamma^2 - 1) on [0, A0].
/// At x = 0 the density diverges when gamma^2 < 1; this returns +inf there,
/// the finite limit at gamma^2 = 1 and 0 when the exponent is positive.
double pointing_pdf(double x, const MisalignmentParams&);
double pointing_cdf(double x, const MisalignmentParams&);

/// Inverse-CDF draw A0 * u^(1/gamma^2); u in (0, 1], output in (0, A0].
double sample_pointing(double u, const MisalignmentParams&);

/// Generalized alpha-mu envelope density; same x = 0 convention as the
/// pointing density with exponent alpha*mu - 1.
double alpha_mu_pdf(double x, const AlphaMuParams&);
double alpha_mu_cdf(double x, const AlphaMuParams&);
/// Inverse of alpha_mu_cdf; p in [0, 1).
double alpha_mu_quantile(double p, const AlphaMuParams&);

/// n-th raw moments in closed form, the sampler test oracles:
/// pointing A0^n gamma^2/(gamma^2+n); alpha-mu
/// h^n Gamma(mu + n/alpha) / (mu^(n/alpha) Gamma(mu)).
double fading_moment(int n, const MisalignmentParams&);
double fading_moment(int n, const AlphaMuParams&);

namespace detail {

/// Standard normal via the Marsaglia polar method. The spare variate is
/// discarded so the draw is a pure function of the stream position.
template <class Rng>
double standard_normal(Rng& rng) {
    for (;;) {
        const double u = 2.0 * rng.uniform01() - 1.0;
        const double v = 2.0 * rng.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

/// Gamma(shape, scale 1) draw. Shape 1 short-circuits to -log(U) so the
/// exponential case consumes exactly one uniform; shape < 1 uses the
/// power-of-uniform boost; shape >= 1 is Marsaglia-Tsang.
template <class Rng>
double gamma_draw(Rng& rng, double shape) {
    if (shape == 1.0) return -std::log(rng.uniform01());
    if (shape < 1.0) {
        const double boost = std::pow(rng.uniform01(), 1.0 / shape);
        return gamma_draw(rng, shape + 1.0) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = standard_normal(rng);
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = rng.uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

}  // namespace detail

/// Exact multipath envelope draw h_hat * (G/mu)^(1/alpha), G ~ Gamma(mu, 1).
template <class Rng>
double sample_alpha_mu(Rng& rng, const AlphaMuParams& p) {
    const double g = detail::gamma_draw(rng, p.mu);
    return p.h_hat * std::pow(g / p.mu, 1.0 / p.alpha);
}

}  // namespace thzsim
