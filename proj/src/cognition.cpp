#include "cogatr/cognition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cogatr/errors.hpp"
#include "cogatr/seeding.hpp"

namespace cogatr {

std::string_view to_string(ProcessingVariant v) {
    switch (v) {
        case ProcessingVariant::TIME_ONLY: return "TIME_ONLY";
        case ProcessingVariant::TIME_FREQ_SIMULTANEOUS: return "TIME_FREQ_SIMULTANEOUS";
        case ProcessingVariant::TIME_THEN_FREQ: return "TIME_THEN_FREQ";
    }
    return "?";
}

std::optional<ProcessingVariant> parse_variant(std::string_view name) {
    for (ProcessingVariant v : kAllVariants) {
        if (to_string(v) == name) return v;
    }
    return std::nullopt;
}

std::string_view to_string(Confidence c) {
    return c == Confidence::CONFIDENT ? "CONFIDENT" : "NOT_CONFIDENT";
}

std::string_view to_string(Terminal t) {
    switch (t) {
        case Terminal::IN_PROGRESS: return "IN_PROGRESS";
        case Terminal::CLASSIFIED: return "CLASSIFIED";
        case Terminal::UNCLASSIFIED: return "UNCLASSIFIED";
    }
    return "?";
}

CognitivePolicy CognitivePolicy::for_variant(ProcessingVariant variant) {
    CognitivePolicy policy;
    policy.variant = variant;
    policy.profiles_per_perspective = variant == ProcessingVariant::TIME_FREQ_SIMULTANEOUS ? 1 : 2;
    return policy;
}

void CognitivePolicy::validate() const {
    if (!(delta_theta_deg >= 0.0) || !std::isfinite(delta_theta_deg)) {
        throw std::invalid_argument("delta_theta_deg must be finite and >= 0");
    }
    if (max_perspectives < 1) throw std::invalid_argument("max_perspectives must be >= 1");
    if (profiles_per_perspective < 1) throw std::invalid_argument("profiles_per_perspective must be >= 1");
    if (!(majority_fraction > 0.0 && majority_fraction <= 1.0)) {
        throw std::invalid_argument("majority_fraction must lie in (0, 1]");
    }
}

const TemplateBank& DomainBanks::at(Domain d) const {
    const auto& bank = d == Domain::RANGE ? range : frequency;
    if (!bank) throw MissingBank("no template bank for domain " + std::string(to_string(d)));
    return *bank;
}

TrialState cast_votes(TrialState state, std::span<const FeatureVector> features, const DomainBanks& banks) {
    for (const FeatureVector& feature : features) {
        const ClassScores scores = score(banks.at(feature.domain), feature);
        ++state.votes[index_of(scores.best_class)];
        ++state.total_votes;
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            state.summed_log_likelihood[c] += scores.log_likelihood[c];
        }
    }
    return state;
}

Confidence check_confidence(const TrialState& state, const CognitivePolicy& policy) {
    if (state.total_votes <= 0) throw NoVotes("confidence is undefined without votes");
    const int top = *std::max_element(state.votes.begin(), state.votes.end());
    return static_cast<double>(top) > policy.majority_fraction * static_cast<double>(state.total_votes)
               ? Confidence::CONFIDENT
               : Confidence::NOT_CONFIDENT;
}

TargetClass leading_class(const TrialState& state) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
        if (state.votes[c] > state.votes[best] ||
            (state.votes[c] == state.votes[best] &&
             state.summed_log_likelihood[c] > state.summed_log_likelihood[best])) {
            best = c;
        }
    }
    return kAllClasses[best];
}

namespace {

std::vector<FeatureVector> features_of(const std::vector<KSpace>& profiles, Domain domain) {
    std::vector<FeatureVector> out;
    out.reserve(profiles.size());
    for (const KSpace& k : profiles) out.push_back(extract_features(k, domain));
    return out;
}

}  // namespace

TrialOutcome run_cognitive_loop(TargetClass true_class, const Geometry& start_geom, const DomainBanks& banks,
                                const CognitivePolicy& policy, const KSpaceSource& source) {
    policy.validate();

    TrialOutcome outcome;
    outcome.true_class = true_class;
    TrialState state;
    Geometry geom = start_geom;
    state.current_tx_azimuth_deg = geom.tx_azimuth_deg();

    for (int p = 0; p < policy.max_perspectives; ++p) {
        state.perspectives_used = p + 1;
        std::vector<KSpace> profiles;
        profiles.reserve(static_cast<std::size_t>(policy.profiles_per_perspective));
        for (int i = 0; i < policy.profiles_per_perspective; ++i) profiles.push_back(source(geom, p, i));

        const int votes_before = state.total_votes;
        bool bolstered = false;
        const auto range_features = features_of(profiles, Domain::RANGE);
        switch (policy.variant) {
            case ProcessingVariant::TIME_ONLY:
                state = cast_votes(std::move(state), range_features, banks);
                break;
            case ProcessingVariant::TIME_FREQ_SIMULTANEOUS: {
                std::vector<FeatureVector> both;
                const auto freq_features = features_of(profiles, Domain::FREQUENCY);
                for (std::size_t i = 0; i < profiles.size(); ++i) {
                    both.push_back(range_features[i]);
                    both.push_back(freq_features[i]);
                }
                state = cast_votes(std::move(state), both, banks);
                break;
            }
            case ProcessingVariant::TIME_THEN_FREQ:
                state = cast_votes(std::move(state), range_features, banks);
                if (check_confidence(state, policy) == Confidence::NOT_CONFIDENT) {
                    state = cast_votes(std::move(state), features_of(profiles, Domain::FREQUENCY), banks);
                    bolstered = true;
                }
                break;
        }
        state.confidence = check_confidence(state, policy);
        outcome.history.push_back(
            {geom.tx_azimuth_deg(), state.total_votes - votes_before, bolstered, state.confidence});

        if (policy.confidence_gating && state.confidence == Confidence::CONFIDENT) {
            state.terminal = Terminal::CLASSIFIED;
            break;
        }
        if (p + 1 == policy.max_perspectives) break;
        geom = geom.rotated(policy.delta_theta_deg);
        state.current_tx_azimuth_deg = geom.tx_azimuth_deg();
    }

    outcome.provisional_class = leading_class(state);
    if (state.terminal == Terminal::CLASSIFIED) {
        outcome.declared_class = outcome.provisional_class;
    } else if (policy.confidence_gating) {
        state.terminal = Terminal::UNCLASSIFIED;
    } else {
        state.terminal = Terminal::CLASSIFIED;
        outcome.declared_class = outcome.provisional_class;
    }
    outcome.confidence = state.confidence;
    outcome.perspectives_used = state.perspectives_used;
    outcome.correct = outcome.declared_class.has_value() && *outcome.declared_class == true_class;
    outcome.final_state = state;
    return outcome;
}

std::uint64_t profile_noise_seed(std::uint64_t trial_noise_seed, int perspective, int profile) {
    return derive_seed({trial_noise_seed, static_cast<std::uint64_t>(perspective),
                        static_cast<std::uint64_t>(profile)});
}

TrialOutcome run_trial(const TargetModel& target, const Geometry& start_geom, const RadarBand& band,
                       const DomainBanks& banks, const CognitivePolicy& policy, double snr_db,
                       std::uint64_t noise_seed) {
    // Profiles of one perspective share a geometry; synthesize it once.
    std::optional<Geometry> cached_geom;
    KSpace cached;
    KSpaceSource source = [&](const Geometry& geom, int perspective, int profile) {
        if (!cached_geom || !(*cached_geom == geom)) {
            cached = synthesize_kspace(target, geom, band);
            cached_geom = geom;
        }
        return add_noise(cached, snr_db, profile_noise_seed(noise_seed, perspective, profile));
    };
    return run_cognitive_loop(target.class_label, start_geom, banks, policy, source);
}

}  // namespace cogatr
