#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thzsim {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // [m/s] defined constant

struct LinkGeometry {
    double frequency_hz = 0.0;  // carrier f [Hz]
    double distance_m = 0.0;    // TX-RX range d [m]
    double gain_tx_dbi = 0.0;   // G_t [dBi]
    double gain_rx_dbi = 0.0;   // G_r [dBi]

    bool operator==(const LinkGeometry&) const = default;
};

struct Environment {
    double temperature_k = 296.0;    // T [K]
    double pressure_pa = 101325.0;   // p [Pa]
    double relative_humidity = 0.5;  // phi, fraction in [0, 1]

    bool operator==(const Environment&) const = default;
};

void validate(const LinkGeometry&);
void validate(const Environment&);

/// Source of the molecular absorption coefficient kappa [1/m]. Immutable
/// after construction and safe to share across threads.
///
/// Table mode interpolates linearly between (frequency, kappa) knots and
/// refuses to extrapolate: absorption is strongly non-monotonic across THz
/// windows, so values outside the tabulated range are rejected.
class AbsorptionProvider {
public:
    enum class Mode { none, constant, table };

    struct Knot {
        double frequency_hz = 0.0;
        double kappa_per_m = 0.0;

        bool operator==(const Knot&) const = default;
    };

    static AbsorptionProvider none();
    static AbsorptionProvider constant(double kappa_per_m);
    /// Knots must be strictly increasing in frequency, at least 2 of them,
    /// with kappa >= 0 everywhere. source_path is kept for serialization.
    static AbsorptionProvider table(std::vector<Knot> knots, std::string source_path = {});

    Mode mode() const { return mode_; }
    double constant_kappa() const { return kappa_; }
    const std::vector<Knot>& knots() const { return knots_; }
    const std::string& source_path() const { return source_path_; }

    /// kappa [1/m] at the given frequency.
    double coefficient(double frequency_hz) const;

    bool operator==(const AbsorptionProvider&) const = default;

private:
    AbsorptionProvider() = default;

    Mode mode_ = Mode::none;
    double kappa_ = 0.0;
    std::vector<Knot> knots_;
    std::string source_path_;
};

/// Free-space amplitude gain h_fl = c/(4 pi f d) * sqrt(Gt_lin * Gr_lin).
/// Amplitude convention: received power scales with the square of this.
double friis_amplitude(const LinkGeometry&);

/// Absorption coefficient for the link. The environment is carried for
/// forward compatibility with environment-keyed tables; current provider
/// modes depend on frequency only.
double absorption_coefficient(const Environment&, double frequency_hz,
                              const AbsorptionProvider&);

/// Deterministic path amplitude h_l = h_fl * exp(-kappa d / 2). exp(-kappa d)
/// is the Beer-Lambert power transmittance; the amplitude factor is its
/// square root.
double path_amplitude(const LinkGeometry&, const Environment&, const AbsorptionProvider&);

/// Parses the absorption table format: required header line
/// `frequency_ghz,kappa_per_m`, one `<ghz>,<kappa>` record per line,
/// `#` comments and blank lines allowed. Frequencies are converted to Hz.
AbsorptionProvider load_absorption_table(std::istream&, std::string source_path = {});
AbsorptionProvider load_absorption_table_file(const std::string& path);

}  // namespace thzsim
