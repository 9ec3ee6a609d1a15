#pragma once

// Vote-accumulating cognitive loop: classify each profile, check for a
// strict vote majority, otherwise move the transmitter by delta-theta and
// look again, up to K perspectives.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cogatr/classifier.hpp"
#include "cogatr/dsp.hpp"
#include "cogatr/scene.hpp"
#include "cogatr/types.hpp"

namespace cogatr {

enum class ProcessingVariant { TIME_ONLY, TIME_FREQ_SIMULTANEOUS, TIME_THEN_FREQ };

inline constexpr std::array<ProcessingVariant, 3> kAllVariants = {
    ProcessingVariant::TIME_ONLY, ProcessingVariant::TIME_FREQ_SIMULTANEOUS,
    ProcessingVariant::TIME_THEN_FREQ};

std::string_view to_string(ProcessingVariant v);
std::optional<ProcessingVariant> parse_variant(std::string_view name);

struct CognitivePolicy {
    double delta_theta_deg = 3.6;
    int max_perspectives = 10;
    int profiles_per_perspective = 1;
    double majority_fraction = 0.5;
    ProcessingVariant variant = ProcessingVariant::TIME_FREQ_SIMULTANEOUS;
    /// When false the loop never stops early: it always takes K perspectives
    /// and declares the max-vote class (fixed multi-perspective baseline).
    bool confidence_gating = true;

    /// Default profile count per variant: 2 for the single-channel variants
    /// that vote on range profiles first, 1 for simultaneous dual-domain.
    static CognitivePolicy for_variant(ProcessingVariant variant);

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

enum class Confidence { CONFIDENT, NOT_CONFIDENT };
enum class Terminal { IN_PROGRESS, CLASSIFIED, UNCLASSIFIED };

std::string_view to_string(Confidence c);
std::string_view to_string(Terminal t);

struct TrialState {
    std::array<int, kNumClasses> votes{};
    int total_votes = 0;
    int perspectives_used = 0;
    double current_tx_azimuth_deg = 0.0;
    Confidence confidence = Confidence::NOT_CONFIDENT;
    Terminal terminal = Terminal::IN_PROGRESS;
    /// Sum of every voting feature's per-class log-likelihood; breaks vote ties.
    std::array<double, kNumClasses> summed_log_likelihood{};

    bool operator==(const TrialState&) const = default;
};

/// Template banks keyed by domain; either may be absent.
struct DomainBanks {
    std::shared_ptr<const TemplateBank> range;
    std::shared_ptr<const TemplateBank> frequency;

    /// Throws MissingBank when the domain has no bank.
    const TemplateBank& at(Domain d) const;
};

/// One vote per feature for its score-argmax class.
TrialState cast_votes(TrialState state, std::span<const FeatureVector> features,
                      const DomainBanks& banks);

/// CONFIDENT iff the top class holds strictly more than
/// majority_fraction * total_votes. Throws NoVotes on an empty tally.
Confidence check_confidence(const TrialState& state, const CognitivePolicy& policy);

/// Max-vote class; ties go to the larger summed log-likelihood, then class order.
TargetClass leading_class(const TrialState& state);

struct PerspectiveRecord {
    double tx_azimuth_deg;
    int votes_cast;
    bool frequency_bolstered;  // TIME_THEN_FREQ fell back to frequency votes
    Confidence confidence;     // after all votes of this perspective

    bool operator==(const PerspectiveRecord&) const = default;
};

struct TrialOutcome {
    std::optional<TargetClass> declared_class;  // empty => UNCLASSIFIED
    Confidence confidence = Confidence::NOT_CONFIDENT;
    int perspectives_used = 0;
    TargetClass true_class = TargetClass::APC;
    bool correct = false;
    /// Max-vote class at termination, reported even when unclassified.
    TargetClass provisional_class = TargetClass::APC;
    TrialState final_state;
    std::vector<PerspectiveRecord> history;

    bool operator==(const TrialOutcome&) const = default;
};

/// Supplies the k-space vector for (geometry, perspective index, profile index).
using KSpaceSource = std::function<KSpace(const Geometry&, int perspective, int profile)>;

/// The cognitive loop over an arbitrary k-space source.
TrialOutcome run_cognitive_loop(TargetClass true_class, const Geometry& start_geom,
                                const DomainBanks& banks, const CognitivePolicy& policy,
                                const KSpaceSource& source);

/// Noise seed for one profile of one perspective of a trial.
std::uint64_t profile_noise_seed(std::uint64_t trial_noise_seed, int perspective, int profile);

/// The cognitive loop against the surrogate scene.
TrialOutcome run_trial(const TargetModel& target, const Geometry& start_geom, const RadarBand& band,
                       const DomainBanks& banks, const CognitivePolicy& policy, double snr_db,
                       std::uint64_t noise_seed);

}  // namespace cogatr
