#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cogatr/cognition.hpp"
#include "cogatr/scene.hpp"

namespace cogatr {

/// Policy fields shared by every sweep; the profile count depends on the variant.
struct PolicyDefaults {
    double delta_theta_deg = 3.6;
    int max_perspectives = 10;
    double majority_fraction = 0.5;
    int profiles_time_only = 2;
    int profiles_time_freq_simultaneous = 1;
    int profiles_time_then_freq = 2;

    CognitivePolicy policy_for(ProcessingVariant variant, double delta_theta_deg) const;
};

struct ExperimentConfig {
    RadarBand band;
    std::vector<double> elevations_deg{10.0, 11.7, 13.3, 15.0};
    double beta_deg = 30.0;
    double train_azimuth_step_deg = 2.5;
    int test_trials_per_class = 1000;
    double test_snr_db = 10.0;
    std::vector<double> snr_grid_db;
    std::vector<double> delta_theta_grid_deg;
    std::vector<ProcessingVariant> variants;
    PolicyDefaults policy;
    double baseline_delta_theta_deg = 5.0;
    std::uint64_t master_seed = 20100512;
    /// Worker threads for trial execution; 0 picks the hardware concurrency.
    int threads = 0;

    ExperimentConfig();

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// Every key accepted in a config file or as a --set override.
const std::vector<std::string>& known_config_keys();

bool is_known_config_key(std::string_view key);

/// Sets one `section.key` from its text value. Throws ConfigError.
void apply_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Parses `[section]` headers and `key = value` lines on top of the defaults.
/// `#` and `;` start comments. Throws ConfigError / FormatError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

/// Canonical text form of a config (round-trips through parse_config).
std::string format_config(const ExperimentConfig& config);

/// Parses a real, accepting inf / +inf / -inf.
double parse_real(std::string_view text);

/// Shortest text that reads back to the same double ("inf" for infinity).
std::string format_real(double value);

}  // namespace cogatr
