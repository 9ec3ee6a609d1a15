#include "cogatr/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "cogatr/errors.hpp"
#include "cogatr/seeding.hpp"

namespace cogatr {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Tags keep the target and noise streams apart for equal user seeds.
constexpr std::uint64_t kTargetStreamTag = 0x7461726765740001ULL;
constexpr std::uint64_t kNoiseStreamTag = 0x6e6f697365000001ULL;

std::array<double, 3> line_of_sight(double azimuth_deg, double elevation_deg) {
    const double az = azimuth_deg * kDegToRad;
    const double el = elevation_deg * kDegToRad;
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

// Signed difference a - b folded into [-180, 180).
double angle_difference(double a, double b) {
    return wrap_degrees(a - b + 180.0) - 180.0;
}

}  // namespace

double wrap_degrees(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    // fmod of a tiny negative value can round up to exactly 360
    if (r >= 360.0) r = 0.0;
    return r;
}

RadarBand RadarBand::from_resolution(double center_frequency_hz, double resolution_m,
                                     std::size_t num_samples) {
    RadarBand band;
    band.center_frequency_hz = center_frequency_hz;
    band.bandwidth_hz = kSpeedOfLight / (2.0 * resolution_m);
    band.num_frequency_samples = num_samples;
    band.validate();
    return band;
}

void RadarBand::validate() const {
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
        throw GeometryError("bandwidth must be positive and finite");
    }
    if (!(center_frequency_hz > bandwidth_hz / 2.0) || !std::isfinite(center_frequency_hz)) {
        throw GeometryError("center frequency must exceed half the bandwidth");
    }
    if (num_frequency_samples < 2) {
        throw GeometryError("at least two frequency samples are required");
    }
}

double RadarBand::frequency_hz(std::size_t n) const {
    return center_frequency_hz - bandwidth_hz / 2.0 + static_cast<double>(n) * frequency_step_hz();
}

Geometry::Geometry(double tx_azimuth_deg, double bistatic_angle_deg, double elevation_deg)
    : tx_azimuth_deg_(wrap_degrees(tx_azimuth_deg)),
      bistatic_angle_deg_(bistatic_angle_deg),
      elevation_deg_(elevation_deg) {
    if (!std::isfinite(tx_azimuth_deg)) {
        throw GeometryError("transmitter azimuth must be finite");
    }
    if (!(bistatic_angle_deg >= 0.0 && bistatic_angle_deg < kMaxBistaticDeg)) {
        std::ostringstream msg;
        msg << "bistatic angle " << bistatic_angle_deg << " deg outside [0, 60)";
        throw GeometryError(msg.str());
    }
    if (!(elevation_deg >= kMinElevationDeg && elevation_deg <= kMaxElevationDeg)) {
        std::ostringstream msg;
        msg << "elevation " << elevation_deg << " deg outside [10, 15]";
        throw GeometryError(msg.str());
    }
}

double Geometry::rx_azimuth_deg() const {
    return wrap_degrees(tx_azimuth_deg_ + bistatic_angle_deg_);
}

double Geometry::bisector_azimuth_deg() const {
    return wrap_degrees(tx_azimuth_deg_ + bistatic_angle_deg_ / 2.0);
}

Geometry Geometry::rotated(double delta_deg) const {
    return Geometry(tx_azimuth_deg_ + delta_deg, bistatic_angle_deg_, elevation_deg_);
}

const ClassLayout& class_layout(TargetClass c) {
    // Vehicle-scale boxes (<= 12 x 4 x 4 m); the ranges overlap on purpose
    // so that classes are separable but not trivially.
    static const std::array<ClassLayout, kNumClasses> layouts = {{
        {12, 16, {7.0, 3.0, 2.4}, 0.5, 1.5, 15.0, 45.0, {0.0, 0.0, 0.05, 0.15, 0.8}, 2, 3.0},   // APC
        {18, 24, {9.5, 3.6, 2.4}, 0.5, 2.0, 10.0, 40.0, {0.0, 0.05, 0.1, 0.8, 0.05}, 2, 3.0},  // MBT
        {14, 18, {8.5, 2.8, 3.2}, 0.4, 1.6, 20.0, 60.0, {0.1, 0.8, 0.1, 0.0, 0.0}, 2, 3.0},  // MSL
        {8, 12, {5.5, 2.6, 2.8}, 0.6, 1.4, 25.0, 70.0, {0.85, 0.15, 0.0, 0.0, 0.0}, 2, 3.0},   // STR
    }};
    return layouts[index_of(c)];
}

TargetModel make_target(TargetClass class_label, std::uint64_t seed) {
    const ClassLayout& layout = class_layout(class_label);
    auto rng = make_rng({kTargetStreamTag, static_cast<std::uint64_t>(index_of(class_label)), seed});

    std::uniform_int_distribution<std::size_t> count_dist(layout.min_scatterers, layout.max_scatterers);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::discrete_distribution<std::size_t> mechanism(layout.mechanism_weights.begin(),
                                                      layout.mechanism_weights.end());
    const auto primary = static_cast<std::size_t>(
        std::max_element(layout.mechanism_weights.begin(), layout.mechanism_weights.end()) -
        layout.mechanism_weights.begin());

    TargetModel target;
    target.class_label = class_label;
    target.seed = seed;
    const std::size_t count = count_dist(rng);
    target.scatterers.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Scatterer s;
        s.position = {(unit(rng) - 0.5) * layout.box_m[0], (unit(rng) - 0.5) * layout.box_m[1],
                      unit(rng) * layout.box_m[2]};
        s.base_amplitude = layout.min_amplitude + unit(rng) * (layout.max_amplitude - layout.min_amplitude);
        s.directivity_center_deg = unit(rng) * 360.0;
        s.directivity_width_deg =
            layout.min_width_deg + unit(rng) * (layout.max_width_deg - layout.min_width_deg);
        s.frequency_exponent = kFrequencyExponents[mechanism(rng)];
        if (i < layout.dominant_scatterers) {
            s.base_amplitude *= layout.dominant_gain;
            s.frequency_exponent = kFrequencyExponents[primary];
        }
        target.scatterers.push_back(s);
    }
    return target;
}

KSpace synthesize_kspace(const TargetModel& target, const Geometry& geom, const RadarBand& band) {
    band.validate();
    const auto k_tx = line_of_sight(geom.tx_azimuth_deg(), geom.elevation_deg());
    const auto k_rx = line_of_sight(geom.rx_azimuth_deg(), geom.elevation_deg());
    const std::array<double, 3> k_sum = {k_tx[0] + k_rx[0], k_tx[1] + k_rx[1], k_tx[2] + k_rx[2]};
    const double bisector = geom.bisector_azimuth_deg();

    const std::size_t n_f = band.num_frequency_samples;
    KSpace out(n_f, Complex(0.0, 0.0));
    for (const Scatterer& s : target.scatterers) {
        const double off = angle_difference(bisector, s.directivity_center_deg);
        const double amplitude = s.base_amplitude *
            std::exp(-(off * off) / (2.0 * s.directivity_width_deg * s.directivity_width_deg));
        if (amplitude == 0.0) continue;
        const double path = k_sum[0] * s.position[0] + k_sum[1] * s.position[1] + k_sum[2] * s.position[2];
        for (std::size_t n = 0; n < n_f; ++n) {
            const double f = band.frequency_hz(n);
            const double phase = -2.0 * std::numbers::pi * f * path / kSpeedOfLight;
            const double spectral = s.frequency_exponent == 0.0
                                        ? 1.0
                                        : std::pow(f / band.center_frequency_hz, s.frequency_exponent);
            out[n] += std::polar(amplitude * spectral, phase);
        }
    }
    return out;
}

double mean_power(std::span<const Complex> samples) {
    if (samples.empty()) return 0.0;
    double acc = 0.0;
    for (const Complex& z : samples) acc += std::norm(z);
    return acc / static_cast<double>(samples.size());
}

KSpace add_noise(std::span<const Complex> kspace, double snr_db, std::uint64_t noise_seed) {
    if (kspace.empty()) throw DegenerateSignal("cannot add noise to an empty k-space vector");
    KSpace out(kspace.begin(), kspace.end());
    if (snr_db == std::numeric_limits<double>::infinity()) return out;
    if (std::isnan(snr_db)) throw DegenerateSignal("SNR is NaN");

    const double signal_power = mean_power(kspace);
    if (signal_power == 0.0) {
        throw DegenerateSignal("zero-power signal: SNR undefined");
    }
    const double noise_power = signal_power / std::pow(10.0, snr_db / 10.0);
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise_power / 2.0));
    auto rng = make_rng({kNoiseStreamTag, noise_seed});
    for (Complex& z : out) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        z += Complex(re, im);
    }
    return out;
}

Look acquire_look(const TargetModel& target, const Geometry& geom, const RadarBand& band,
                  double snr_db, std::uint64_t noise_seed) {
    KSpace clean = synthesize_kspace(target, geom, band);
    return Look{geom, add_noise(clean, snr_db, noise_seed), snr_db};
}

}  // namespace cogatr
