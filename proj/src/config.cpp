#include "cogatr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cogatr/classifier.hpp"
#include "cogatr/errors.hpp"

namespace cogatr {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = text.find(',');
        items.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return items;
}

template <typename T>
T parse_integer(std::string_view key, std::string_view text) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError(std::string(key), "expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

double parse_real_for(std::string_view key, std::string_view text) {
    try {
        return parse_real(text);
    } catch (const std::invalid_argument&) {
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    }
}

std::vector<double> parse_real_list(std::string_view key, std::string_view text) {
    std::vector<double> values;
    for (auto item : split_list(text)) values.push_back(parse_real_for(key, item));
    return values;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_real(values[i]);
    }
    return out;
}

}  // namespace

double parse_real(std::string_view text) {
    text = trim(text);
    if (text == "inf" || text == "+inf" || text == "infinity" || text == "+infinity") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf" || text == "-infinity") return -std::numeric_limits<double>::infinity();
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || std::isnan(value)) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string format_real(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

CognitivePolicy PolicyDefaults::policy_for(ProcessingVariant variant, double delta_theta) const {
    CognitivePolicy policy;
    policy.variant = variant;
    policy.delta_theta_deg = delta_theta;
    policy.max_perspectives = max_perspectives;
    policy.majority_fraction = majority_fraction;
    switch (variant) {
        case ProcessingVariant::TIME_ONLY: policy.profiles_per_perspective = profiles_time_only; break;
        case ProcessingVariant::TIME_FREQ_SIMULTANEOUS:
            policy.profiles_per_perspective = profiles_time_freq_simultaneous;
            break;
        case ProcessingVariant::TIME_THEN_FREQ: policy.profiles_per_perspective = profiles_time_then_freq; break;
    }
    return policy;
}

ExperimentConfig::ExperimentConfig()
    : snr_grid_db{-20.0, -10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 30.0, std::numeric_limits<double>::infinity()},
      delta_theta_grid_deg{0.0, 1.8, 3.6, 5.0, 7.2, 10.0},
      variants(kAllVariants.begin(), kAllVariants.end()) {}

void ExperimentConfig::validate() const {
    try {
        band.validate();
    } catch (const GeometryError& e) {
        throw ConfigError("band", e.what());
    }
    if (elevations_deg.empty()) throw ConfigError("scene.elevations_deg", "must not be empty");
    for (double e : elevations_deg) {
        if (!(e >= 10.0 && e <= 15.0)) throw ConfigError("scene.elevations_deg", "elevations must lie in [10, 15]");
    }
    if (!(beta_deg >= 0.0 && beta_deg < 60.0)) throw ConfigError("scene.beta_deg", "must lie in [0, 60)");

    const double step = train_azimuth_step_deg;
    if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("train.azimuth_step_deg", "must be positive");
    const double per_turn = 360.0 / step;
    if (std::abs(per_turn - std::round(per_turn)) > 1e-9) {
        throw ConfigError("train.azimuth_step_deg", "must divide 360 evenly");
    }
    std::array<int, kNumSectors> per_sector{};
    for (long i = 0; i < std::lround(per_turn); ++i) {
        ++per_sector[static_cast<std::size_t>(sector_of(static_cast<double>(i) * step).value())];
    }
    if (*std::min_element(per_sector.begin(), per_sector.end()) < 2) {
        throw ConfigError("train.azimuth_step_deg", "every azimuth sector needs at least 2 training looks");
    }

    if (test_trials_per_class < 1) throw ConfigError("test.trials_per_class", "must be >= 1");
    if (std::isnan(test_snr_db)) throw ConfigError("test.snr_db", "must be a number");
    if (snr_grid_db.empty()) throw ConfigError("sweep.snr_grid_db", "must not be empty");
    if (delta_theta_grid_deg.empty()) throw ConfigError("sweep.delta_theta_grid_deg", "must not be empty");
    for (double d : delta_theta_grid_deg) {
        if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("sweep.delta_theta_grid_deg", "entries must be >= 0");
    }
    if (variants.empty()) throw ConfigError("sweep.variants", "must not be empty");

    if (!(policy.delta_theta_deg >= 0.0) || !std::isfinite(policy.delta_theta_deg)) {
        throw ConfigError("policy.delta_theta_deg", "must be >= 0");
    }
    if (policy.max_perspectives < 1) throw ConfigError("policy.max_perspectives", "must be >= 1");
    if (!(policy.majority_fraction > 0.0 && policy.majority_fraction <= 1.0)) {
        throw ConfigError("policy.majority_fraction", "must lie in (0, 1]");
    }
    if (policy.profiles_time_only < 1) throw ConfigError("policy.profiles_time_only", "must be >= 1");
    if (policy.profiles_time_freq_simultaneous < 1) {
        throw ConfigError("policy.profiles_time_freq_simultaneous", "must be >= 1");
    }
    if (policy.profiles_time_then_freq < 1) throw ConfigError("policy.profiles_time_then_freq", "must be >= 1");
    if (!(baseline_delta_theta_deg >= 0.0) || !std::isfinite(baseline_delta_theta_deg)) {
        throw ConfigError("baseline.delta_theta_deg", "must be >= 0");
    }
    if (threads < 0) throw ConfigError("run.threads", "must be >= 0");
}

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "band.center_frequency_hz",
        "band.bandwidth_hz",
        "band.num_frequency_samples",
        "scene.elevations_deg",
        "scene.beta_deg",
        "train.azimuth_step_deg",
        "test.trials_per_class",
        "test.snr_db",
        "sweep.snr_grid_db",
        "sweep.delta_theta_grid_deg",
        "sweep.variants",
        "policy.delta_theta_deg",
        "policy.max_perspectives",
        "policy.majority_fraction",
        "policy.profiles_time_only",
        "policy.profiles_time_freq_simultaneous",
        "policy.profiles_time_then_freq",
        "baseline.delta_theta_deg",
        "seed.master",
        "run.threads",
    };
    return keys;
}

bool is_known_config_key(std::string_view key) {
    const auto& keys = known_config_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void apply_config_value(ExperimentConfig& c, std::string_view key, std::string_view raw) {
    const std::string_view value = trim(raw);
    const std::string k(key);
    if (key == "band.center_frequency_hz") c.band.center_frequency_hz = parse_real_for(key, value);
    else if (key == "band.bandwidth_hz") c.band.bandwidth_hz = parse_real_for(key, value);
    else if (key == "band.num_frequency_samples") c.band.num_frequency_samples = parse_integer<std::size_t>(key, value);
    else if (key == "scene.elevations_deg") c.elevations_deg = parse_real_list(key, value);
    else if (key == "scene.beta_deg") c.beta_deg = parse_real_for(key, value);
    else if (key == "train.azimuth_step_deg") c.train_azimuth_step_deg = parse_real_for(key, value);
    else if (key == "test.trials_per_class") c.test_trials_per_class = parse_integer<int>(key, value);
    else if (key == "test.snr_db") c.test_snr_db = parse_real_for(key, value);
    else if (key == "sweep.snr_grid_db") c.snr_grid_db = parse_real_list(key, value);
    else if (key == "sweep.delta_theta_grid_deg") c.delta_theta_grid_deg = parse_real_list(key, value);
    else if (key == "sweep.variants") {
        std::vector<ProcessingVariant> variants;
        for (auto name : split_list(value)) {
            const auto v = parse_variant(name);
            if (!v) throw ConfigError(k, "unknown processing variant '" + std::string(name) + "'");
            variants.push_back(*v);
        }
        c.variants = std::move(variants);
    }
    else if (key == "policy.delta_theta_deg") c.policy.delta_theta_deg = parse_real_for(key, value);
    else if (key == "policy.max_perspectives") c.policy.max_perspectives = parse_integer<int>(key, value);
    else if (key == "policy.majority_fraction") c.policy.majority_fraction = parse_real_for(key, value);
    else if (key == "policy.profiles_time_only") c.policy.profiles_time_only = parse_integer<int>(key, value);
    else if (key == "policy.profiles_time_freq_simultaneous") {
        c.policy.profiles_time_freq_simultaneous = parse_integer<int>(key, value);
    }
    else if (key == "policy.profiles_time_then_freq") c.policy.profiles_time_then_freq = parse_integer<int>(key, value);
    else if (key == "baseline.delta_theta_deg") c.baseline_delta_theta_deg = parse_real_for(key, value);
    else if (key == "seed.master") c.master_seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "run.threads") c.threads = parse_integer<int>(key, value);
    else throw ConfigError(k, "unknown config key");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find_first_of("#;"); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw FormatError("line " + std::to_string(line_no) + ": unterminated section");
            section = std::string(trim(text.substr(1, text.size() - 2)));
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = section.empty() ? std::string(trim(text.substr(0, eq)))
                                                : section + "." + std::string(trim(text.substr(0, eq)));
        apply_config_value(config, key, text.substr(eq + 1));
    }
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "[band]\n"
        << "center_frequency_hz = " << format_real(c.band.center_frequency_hz) << '\n'
        << "bandwidth_hz = " << format_real(c.band.bandwidth_hz) << '\n'
        << "num_frequency_samples = " << c.band.num_frequency_samples << "\n\n"
        << "[scene]\n"
        << "elevations_deg = " << join(c.elevations_deg) << '\n'
        << "beta_deg = " << format_real(c.beta_deg) << "\n\n"
        << "[train]\n"
        << "azimuth_step_deg = " << format_real(c.train_azimuth_step_deg) << "\n\n"
        << "[test]\n"
        << "trials_per_class = " << c.test_trials_per_class << '\n'
        << "snr_db = " << format_real(c.test_snr_db) << "\n\n"
        << "[sweep]\n"
        << "snr_grid_db = " << join(c.snr_grid_db) << '\n'
        << "delta_theta_grid_deg = " << join(c.delta_theta_grid_deg) << '\n'
        << "variants = ";
    for (std::size_t i = 0; i < c.variants.size(); ++i) out << (i ? ", " : "") << to_string(c.variants[i]);
    out << "\n\n"
        << "[policy]\n"
        << "delta_theta_deg = " << format_real(c.policy.delta_theta_deg) << '\n'
        << "max_perspectives = " << c.policy.max_perspectives << '\n'
        << "majority_fraction = " << format_real(c.policy.majority_fraction) << '\n'
        << "profiles_time_only = " << c.policy.profiles_time_only << '\n'
        << "profiles_time_freq_simultaneous = " << c.policy.profiles_time_freq_simultaneous << '\n'
        << "profiles_time_then_freq = " << c.policy.profiles_time_then_freq << "\n\n"
        << "[baseline]\n"
        << "delta_theta_deg = " << format_real(c.baseline_delta_theta_deg) << "\n\n"
        << "[seed]\n"
        << "master = " << c.master_seed << "\n\n"
        << "[run]\n"
        << "threads = " << c.threads << '\n';
    return out.str();
}

}  // namespace cogatr
