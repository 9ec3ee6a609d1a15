#pragma once

// Surrogate radar platform: deterministic point-scatterer targets and
// noisy bistatic stepped-frequency returns.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cogatr/types.hpp"

namespace cogatr {

inline constexpr double kSpeedOfLight = 299'792'458.0;

using Complex = std::complex<double>;
using KSpace = std::vector<Complex>;

/// Stepped-frequency sweep. Samples sit at fc - B/2 + n*B/N, so the DFT
/// bin spacing is exactly c / (2B).
struct RadarBand {
    double center_frequency_hz = 1.0e9;
    double bandwidth_hz = kSpeedOfLight / (2.0 * 0.3);
    std::size_t num_frequency_samples = 64;

    /// Band with bandwidth chosen for a monostatic range resolution.
    static RadarBand from_resolution(double center_frequency_hz, double resolution_m,
                                     std::size_t num_samples);

    /// Throws GeometryError on a non-physical band.
    void validate() const;

    double frequency_step_hz() const { return bandwidth_hz / static_cast<double>(num_frequency_samples); }
    double frequency_hz(std::size_t n) const;
    double range_bin_m() const { return kSpeedOfLight / (2.0 * bandwidth_hz); }

    bool operator==(const RadarBand&) const = default;
};

/// Bistatic acquisition geometry. The receiver always sits at
/// tx azimuth + beta; it is derived, never stored.
class Geometry {
public:
    static constexpr double kMaxBistaticDeg = 60.0;
    static constexpr double kMinElevationDeg = 10.0;
    static constexpr double kMaxElevationDeg = 15.0;

    /// Throws GeometryError unless 0 <= beta < 60 and elevation in [10, 15].
    /// The transmitter azimuth is reduced into [0, 360).
    Geometry(double tx_azimuth_deg, double bistatic_angle_deg, double elevation_deg);

    double tx_azimuth_deg() const { return tx_azimuth_deg_; }
    double bistatic_angle_deg() const { return bistatic_angle_deg_; }
    double elevation_deg() const { return elevation_deg_; }
    double rx_azimuth_deg() const;
    double bisector_azimuth_deg() const;

    /// Same geometry with the transmitter (and so the receiver) moved by delta.
    Geometry rotated(double delta_deg) const;

    bool operator==(const Geometry&) const = default;

private:
    double tx_azimuth_deg_;
    double bistatic_angle_deg_;
    double elevation_deg_;
};

struct Scatterer {
    std::array<double, 3> position{};  // meters, target frame
    double base_amplitude = 0.0;
    double directivity_center_deg = 0.0;
    double directivity_width_deg = 1.0;
    /// Scattering-mechanism exponent: amplitude scales as (f / fc)^exponent
    /// (1 flat plate, 0.5 singly curved, 0 doubly curved, -0.5 edge, -1 tip).
    double frequency_exponent = 0.0;

    bool operator==(const Scatterer&) const = default;
};

struct TargetModel {
    TargetClass class_label = TargetClass::APC;
    std::uint64_t seed = 0;
    std::vector<Scatterer> scatterers;

    bool operator==(const TargetModel&) const = default;
};

/// Class-specific parameter ranges the target generator draws from.
struct ClassLayout {
    std::size_t min_scatterers;
    std::size_t max_scatterers;
    std::array<double, 3> box_m;  // length, width, height
    double min_amplitude;
    double max_amplitude;
    double min_width_deg;
    double max_width_deg;
    /// Relative weights of the exponents {-1, -0.5, 0, 0.5, 1}.
    std::array<double, 5> mechanism_weights;
    /// The first `dominant_scatterers` scatterers are strong returns
    /// (amplitude scaled by `dominant_gain`) of the class's most likely mechanism.
    std::size_t dominant_scatterers;
    double dominant_gain;
};

inline constexpr std::array<double, 5> kFrequencyExponents = {-1.0, -0.5, 0.0, 0.5, 1.0};

const ClassLayout& class_layout(TargetClass c);

TargetModel make_target(TargetClass class_label, std::uint64_t seed);

/// Noiseless far-field return: one complex sample per swept frequency.
/// Throws GeometryError if the band is invalid.
KSpace synthesize_kspace(const TargetModel& target, const Geometry& geom, const RadarBand& band);

/// Adds circular complex Gaussian noise at the requested per-sample SNR.
/// An infinite SNR returns the input unchanged. Throws DegenerateSignal for
/// a zero-power input with finite SNR.
KSpace add_noise(std::span<const Complex> kspace, double snr_db, std::uint64_t noise_seed);

/// Mean squared magnitude.
double mean_power(std::span<const Complex> samples);

struct Look {
    Geometry geometry;
    KSpace kspace;
    double snr_db;
};

Look acquire_look(const TargetModel& target, const Geometry& geom, const RadarBand& band,
                  double snr_db, std::uint64_t noise_seed);

/// Reduces an angle into [0, 360).
double wrap_degrees(double deg);

}  // namespace cogatr
