#include "cogatr/dsp.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "cogatr/errors.hpp"

namespace cogatr {

namespace {

// FFTW planning is not thread-safe, execution with new-array execute is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan forward(std::size_t n) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<Complex> in(n), out(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(n, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void normalize(std::vector<double>& values) {
    double sum_sq = 0.0;
    for (double v : values) sum_sq += v * v;
    if (sum_sq == 0.0) throw DegenerateSignal("all-zero signal has no features");
    const double inv = 1.0 / std::sqrt(sum_sq);
    for (double& v : values) v *= inv;
}

}  // namespace

std::vector<Complex> unitary_dft(std::span<const Complex> input) {
    if (input.empty()) throw std::invalid_argument("DFT of an empty vector");
    const std::size_t n = input.size();
    std::vector<Complex> in(input.begin(), input.end());
    std::vector<Complex> out(n);
    fftw_execute_dft(plan_cache().forward(n), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Complex& z : out) z *= scale;
    return out;
}

RangeProfile dft(std::span<const Complex> kspace, const RadarBand& band) {
    return RangeProfile{unitary_dft(kspace), band.range_bin_m()};
}

FeatureVector extract_features(std::span<const Complex> kspace, Domain domain) {
    if (kspace.empty()) throw DegenerateSignal("empty k-space vector");
    FeatureVector feature;
    feature.domain = domain;
    feature.values.reserve(kspace.size());
    if (domain == Domain::RANGE) {
        for (const Complex& z : unitary_dft(kspace)) feature.values.push_back(std::abs(z));
    } else {
        for (const Complex& z : kspace) feature.values.push_back(std::abs(z));
    }
    normalize(feature.values);
    return feature;
}

FeatureVector extract_features(const Look& look, Domain domain) {
    return extract_features(look.kspace, domain);
}

}  // namespace cogatr
