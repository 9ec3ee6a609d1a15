#pragma once

// Dataset generation, bank training and Monte Carlo sweeps.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cogatr/cognition.hpp"
#include "cogatr/config.hpp"
#include "cogatr/scene.hpp"

namespace cogatr {

struct DatasetRecord {
    TargetClass label = TargetClass::APC;
    std::uint64_t target_seed = 0;
    double tx_az_deg = 0.0;
    double beta_deg = 0.0;
    double elev_deg = 0.0;
    double snr_db = 0.0;
    KSpace kspace;
};

struct Dataset {
    static constexpr const char* kFormat = "cogatr-ds-v1";

    RadarBand band;
    std::vector<DatasetRecord> records;
};

/// Seed of the surrogate target used for `label` under `master_seed`.
std::uint64_t target_seed_for(std::uint64_t master_seed, TargetClass label);

/// The four surrogate targets derived from `master_seed`, in class order.
std::vector<TargetModel> default_targets(std::uint64_t master_seed);

/// Noiseless looks for every class, elevation and training azimuth.
Dataset generate_dataset(const ExperimentConfig& config);
/// Same, for explicit targets (one per class, in class order).
Dataset generate_dataset(const ExperimentConfig& config, std::span<const TargetModel> targets);

/// Newline-delimited JSON: one header object, then one object per look.
void write_dataset(const Dataset& dataset, std::ostream& out);
Dataset read_dataset(std::istream& in);

struct ElevationBanks {
    double elevation_deg;
    DomainBanks banks;
};

/// One RANGE and one FREQUENCY bank per distinct elevation, in first-seen order.
std::vector<ElevationBanks> train_banks(const Dataset& dataset);

struct SweepRow {
    ProcessingVariant variant = ProcessingVariant::TIME_ONLY;
    double delta_theta_deg = 0.0;
    double snr_db = 0.0;
    double pcc_percent = 0.0;
    double unclassified_percent = 0.0;
    double misclassified_percent = 0.0;
    double median_perspectives = 0.0;
    int trials = 0;
};

SweepRow summarize(ProcessingVariant variant, double delta_theta_deg, double snr_db,
                   std::span<const TrialOutcome> outcomes);

/// Trained surrogate world: targets plus per-elevation banks.
class Experiment {
public:
    /// Validates the config, builds targets and trains banks from a fresh dataset.
    explicit Experiment(ExperimentConfig config);
    Experiment(ExperimentConfig config, const Dataset& dataset);
    /// Explicit targets (one per class, in class order) instead of the
    /// seed-derived surrogates; banks are trained on their looks.
    Experiment(ExperimentConfig config, std::vector<TargetModel> targets);

    const ExperimentConfig& config() const { return config_; }
    const TargetModel& target(TargetClass c) const { return targets_[index_of(c)]; }
    const std::vector<ElevationBanks>& banks() const { return banks_; }

    /// Start azimuth of test trial `trial` for class `c`; never within 0.1
    /// degrees of a training azimuth.
    double test_start_azimuth(TargetClass c, int trial) const;
    double test_elevation(int trial) const;
    std::uint64_t trial_noise_seed(TargetClass c, int trial) const;

    /// test_trials_per_class trials per class, ordered by (class, trial).
    std::vector<TrialOutcome> run_trials(const CognitivePolicy& policy, double snr_db) const;
    SweepRow run_point(const CognitivePolicy& policy, double snr_db) const;

private:
    Experiment(ExperimentConfig config, std::vector<TargetModel> targets, const Dataset& dataset);

    ExperimentConfig config_;
    std::vector<TargetModel> targets_;
    std::vector<ElevationBanks> banks_;
};

inline constexpr double kMinTrainOffsetDeg = 0.1;

/// Each variant over the delta-theta grid at the configured test SNR.
std::vector<SweepRow> run_sweep_dtheta(const Experiment& experiment);

/// Each variant over the SNR grid at delta-theta = 3.6 degrees.
std::vector<SweepRow> run_sweep_snr(const Experiment& experiment);

inline constexpr double kSnrSweepDeltaThetaDeg = 3.6;

/// Conventional single-perspective ATR: delta-theta 0, K = 1, per variant.
std::vector<SweepRow> single_perspective_baseline(const Experiment& experiment);

/// Exactly two perspectives, no confidence gating, cumulative vote fusion.
SweepRow fixed_two_perspective_baseline(
    const Experiment& experiment, double delta_theta_deg,
    ProcessingVariant variant = ProcessingVariant::TIME_FREQ_SIMULTANEOUS);

inline constexpr const char* kSweepCsvHeader =
    "variant,delta_theta_deg,snr_db,pcc_percent,unclassified_percent,median_perspectives,trials";

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);

/// gnuplot script plotting Pcc from `csv_name` against `x_column`
/// ("delta_theta_deg" or "snr_db"), one curve per variant.
void write_plot_script(const std::string& csv_name, const std::string& x_column,
                       const std::string& title, std::ostream& out);

/// One-line human summary of a row.
std::string describe(const SweepRow& row);

/// Writes to a sibling temp file and renames into place.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace cogatr
