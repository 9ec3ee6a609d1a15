#pragma once

#include <span>
#include <vector>

#include "cogatr/scene.hpp"
#include "cogatr/types.hpp"

namespace cogatr {

struct RangeProfile {
    std::vector<Complex> samples;
    double bin_spacing_m = 0.0;
};

/// Unitary forward DFT (1/sqrt(N) scaling), X_k = sum_n x_n exp(-j 2 pi k n / N) / sqrt(N).
std::vector<Complex> unitary_dft(std::span<const Complex> input);

/// Range profile of a k-space vector swept over `band`.
RangeProfile dft(std::span<const Complex> kspace, const RadarBand& band);

struct FeatureVector {
    Domain domain = Domain::RANGE;
    std::vector<double> values;
};

/// L2-normalized magnitude of the range profile (RANGE) or of the k-space
/// samples themselves (FREQUENCY). Throws DegenerateSignal on all-zero input.
FeatureVector extract_features(std::span<const Complex> kspace, Domain domain);
FeatureVector extract_features(const Look& look, Domain domain);

}  // namespace cogatr
