#pragma once

// Sectored naive-Gaussian decision maker: one mean template per
// (class, azimuth sector) and one diagonal covariance shared by all of them.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "cogatr/dsp.hpp"
#include "cogatr/scene.hpp"
#include "cogatr/types.hpp"

namespace cogatr {

inline constexpr int kNumSectors = 25;
inline constexpr double kSectorWidthDeg = 360.0 / kNumSectors;  // 14.4
inline constexpr double kVarianceFloor = 1e-12;

class SectorIndex {
public:
    /// Throws std::out_of_range outside [0, 25).
    explicit SectorIndex(int value);

    int value() const { return value_; }

    bool operator==(const SectorIndex&) const = default;

private:
    int value_;
};

SectorIndex sector_of(double azimuth_deg);

struct TrainingSample {
    FeatureVector feature;
    TargetClass label;
    double azimuth_deg;
};

struct ClassScores {
    std::array<double, kNumClasses> log_likelihood{};
    TargetClass best_class = TargetClass::APC;
    SectorIndex best_sector{0};
};

class TemplateBank {
public:
    static constexpr const char* kFormat = "cogatr-bank-v1";

    /// Assembles a bank from explicit parts. `means` is laid out
    /// [class][sector][dimension]; `counts` is [class][sector].
    /// Throws DimensionMismatch on inconsistent sizes.
    TemplateBank(Domain domain, RadarBand band, std::size_t dimension, std::vector<double> means,
                 std::vector<double> shared_variance, std::vector<std::size_t> counts);

    Domain domain() const { return domain_; }
    const RadarBand& band() const { return band_; }
    std::size_t dimension() const { return dimension_; }

    std::span<const double> mean(TargetClass c, SectorIndex s) const;
    std::span<const double> shared_variance() const { return shared_variance_; }
    std::size_t training_count(TargetClass c, SectorIndex s) const;

    /// Text serialization, bit-stable at 17 significant digits.
    void save(std::ostream& out) const;
    static TemplateBank load(std::istream& in);

    bool operator==(const TemplateBank&) const = default;

private:
    std::size_t cell(TargetClass c, SectorIndex s) const;

    Domain domain_;
    RadarBand band_;
    std::size_t dimension_;
    std::vector<double> means_;
    std::vector<double> shared_variance_;
    std::vector<std::size_t> counts_;
};

/// Cell means and pooled within-cell variance. Throws EmptyCell listing
/// every unpopulated (class, sector), MixedDomain or DimensionMismatch.
TemplateBank train(std::span<const TrainingSample> samples, const RadarBand& band);

/// Per-class log-likelihood maximized over sectors (aspect unknown).
/// Throws DimensionMismatch on a length or domain mismatch.
ClassScores score(const TemplateBank& bank, const FeatureVector& feature);

}  // namespace cogatr
