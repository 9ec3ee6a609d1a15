#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "cogatr/classifier.hpp"
#include "cogatr/cognition.hpp"

namespace oracle {

using cogatr::Complex;

// O(N^2) textbook DFT with unitary scaling.
inline std::vector<Complex> brute_dft(std::span<const Complex> x) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    const long double scale = 1.0L / std::sqrt(static_cast<long double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<long double> acc = 0;
        for (std::size_t m = 0; m < n; ++m) {
            const long double phase = -2.0L * std::numbers::pi_v<long double> *
                                      static_cast<long double>((k * m) % n) / static_cast<long double>(n);
            acc += std::complex<long double>(x[m].real(), x[m].imag()) *
                   std::complex<long double>(std::cos(phase), std::sin(phase));
        }
        out[k] = Complex(static_cast<double>(acc.real() * scale), static_cast<double>(acc.imag() * scale));
    }
    return out;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double max_abs(std::span<const Complex> a) {
    double worst = 0.0;
    for (const auto& v : a) worst = std::max(worst, std::abs(v));
    return worst;
}

inline std::vector<Complex> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> v(n);
    for (auto& x : v) x = Complex(g(rng), g(rng));
    return v;
}

// Nearest template under the variance-weighted squared distance, scanning
// (class, sector) cells in class order so the first strict minimum wins.
struct Nearest {
    cogatr::TargetClass label;
    int sector;
};

inline Nearest nearest_template(const cogatr::TemplateBank& bank, std::span<const double> x) {
    double best = std::numeric_limits<double>::infinity();
    Nearest out{cogatr::TargetClass::APC, 0};
    const auto var = bank.shared_variance();
    for (cogatr::TargetClass c : cogatr::kAllClasses) {
        for (int s = 0; s < cogatr::kNumSectors; ++s) {
            const auto mu = bank.mean(c, cogatr::SectorIndex(s));
            double d = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] - mu[i]) * (x[i] - mu[i]) / var[i];
            if (d < best) {
                best = d;
                out = {c, s};
            }
        }
    }
    return out;
}

// Bank with the given means, unit variance and one sample per cell.
inline cogatr::TemplateBank make_bank(cogatr::Domain domain, std::size_t dim,
                                      const std::vector<std::vector<double>>& cell_means,
                                      std::vector<double> variance = {}) {
    std::vector<double> means;
    for (const auto& m : cell_means) means.insert(means.end(), m.begin(), m.end());
    if (variance.empty()) variance.assign(dim, 1.0);
    return cogatr::TemplateBank(domain, cogatr::RadarBand{}, dim, std::move(means), std::move(variance),
                                std::vector<std::size_t>(cell_means.size(), 1));
}

// Invariants every finished trial must satisfy; returns the number violated.
inline int trial_violations(const cogatr::TrialOutcome& o, const cogatr::CognitivePolicy& policy) {
    using namespace cogatr;
    int bad = 0;
    const TrialState& s = o.final_state;
    int sum = 0;
    for (int v : s.votes) {
        if (v < 0) ++bad;
        sum += v;
    }
    if (sum != s.total_votes) ++bad;
    if (o.perspectives_used < 1 || o.perspectives_used > policy.max_perspectives) ++bad;
    if (o.perspectives_used != s.perspectives_used) ++bad;
    if (static_cast<int>(o.history.size()) != o.perspectives_used) ++bad;
    const int n = policy.profiles_per_perspective;
    int cast = 0;
    for (std::size_t p = 0; p < o.history.size(); ++p) {
        const auto& h = o.history[p];
        cast += h.votes_cast;
        int expected = n;
        if (policy.variant == ProcessingVariant::TIME_FREQ_SIMULTANEOUS) expected = 2 * n;
        if (policy.variant == ProcessingVariant::TIME_THEN_FREQ && h.frequency_bolstered) expected = 2 * n;
        if (h.votes_cast != expected) ++bad;
        if (policy.variant != ProcessingVariant::TIME_THEN_FREQ && h.frequency_bolstered) ++bad;
        // Only the last perspective may be confident under gating.
        if (policy.confidence_gating && p + 1 < o.history.size() && h.confidence == Confidence::CONFIDENT) ++bad;
    }
    if (cast != s.total_votes) ++bad;
    if (s.terminal == Terminal::IN_PROGRESS) ++bad;
    if (o.declared_class.has_value() != (s.terminal == Terminal::CLASSIFIED)) ++bad;
    if (policy.confidence_gating) {
        if (s.terminal == Terminal::CLASSIFIED && s.confidence != Confidence::CONFIDENT) ++bad;
        if (s.terminal == Terminal::UNCLASSIFIED && o.perspectives_used != policy.max_perspectives) ++bad;
        if (s.confidence == Confidence::CONFIDENT && s.terminal != Terminal::CLASSIFIED) ++bad;
    } else if (o.perspectives_used != policy.max_perspectives) {
        ++bad;
    }
    // Confidence must agree with the strict-majority rule on the final tally.
    const int top = *std::max_element(s.votes.begin(), s.votes.end());
    const bool majority = static_cast<double>(top) > policy.majority_fraction * s.total_votes;
    if (majority != (s.confidence == Confidence::CONFIDENT)) ++bad;
    if (o.declared_class && s.votes[index_of(*o.declared_class)] != top) ++bad;
    if (o.correct != (o.declared_class && *o.declared_class == o.true_class)) ++bad;
    return bad;
}

}  // namespace oracle
