#include "cogatr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cogatr/classifier.hpp"
#include "cogatr/dsp.hpp"
#include "cogatr/errors.hpp"
#include "cogatr/seeding.hpp"

namespace cogatr {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t kTargetSeedTag = 0x5441524745540000ULL;
constexpr std::uint64_t kStartAzimuthTag = 0x535441525441005AULL;
constexpr std::uint64_t kTrialNoiseTag = 0x545249414C4E0000ULL;

nlohmann::ordered_json snr_to_json(double snr_db) {
    if (std::isinf(snr_db)) return snr_db > 0 ? "inf" : "-inf";
    return snr_db;
}

double snr_from_json(const nlohmann::json& value) {
    if (value.is_string()) {
        const auto text = value.get<std::string>();
        if (text == "inf") return std::numeric_limits<double>::infinity();
        if (text == "-inf") return -std::numeric_limits<double>::infinity();
        throw FormatError("bad snr_db string '" + text + "'");
    }
    return value.get<double>();
}

}  // namespace

std::uint64_t target_seed_for(std::uint64_t master_seed, TargetClass label) {
    return derive_seed({kTargetSeedTag, master_seed, static_cast<std::uint64_t>(index_of(label))});
}

std::vector<TargetModel> default_targets(std::uint64_t master_seed) {
    std::vector<TargetModel> targets;
    for (TargetClass c : kAllClasses) targets.push_back(make_target(c, target_seed_for(master_seed, c)));
    return targets;
}

Dataset generate_dataset(const ExperimentConfig& config) {
    return generate_dataset(config, default_targets(config.master_seed));
}

namespace {

void check_targets(std::span<const TargetModel> targets) {
    if (targets.size() != kNumClasses) throw std::invalid_argument("expected one target per class");
    for (TargetClass c : kAllClasses) {
        if (targets[index_of(c)].class_label != c) throw std::invalid_argument("targets must be in class order");
    }
}

}  // namespace

Dataset generate_dataset(const ExperimentConfig& config, std::span<const TargetModel> targets) {
    config.validate();
    check_targets(targets);
    Dataset dataset;
    dataset.band = config.band;
    const long per_turn = std::lround(360.0 / config.train_azimuth_step_deg);
    for (const TargetModel& target : targets) {
        const TargetClass c = target.class_label;
        const std::uint64_t seed = target.seed;
        for (double elevation : config.elevations_deg) {
            for (long i = 0; i < per_turn; ++i) {
                const double az = static_cast<double>(i) * config.train_azimuth_step_deg;
                const Geometry geom(az, config.beta_deg, elevation);
                DatasetRecord record;
                record.label = c;
                record.target_seed = seed;
                record.tx_az_deg = geom.tx_azimuth_deg();
                record.beta_deg = geom.bistatic_angle_deg();
                record.elev_deg = geom.elevation_deg();
                record.snr_db = std::numeric_limits<double>::infinity();
                record.kspace = synthesize_kspace(target, geom, config.band);
                dataset.records.push_back(std::move(record));
            }
        }
    }
    return dataset;
}

void write_dataset(const Dataset& dataset, std::ostream& out) {
    ordered_json header;
    header["format"] = Dataset::kFormat;
    header["center_frequency_hz"] = dataset.band.center_frequency_hz;
    header["bandwidth_hz"] = dataset.band.bandwidth_hz;
    header["num_frequency_samples"] = dataset.band.num_frequency_samples;
    out << header.dump() << '\n';
    for (const DatasetRecord& r : dataset.records) {
        ordered_json rec;
        rec["class"] = std::string(to_string(r.label));
        rec["target_seed"] = r.target_seed;
        rec["tx_az_deg"] = r.tx_az_deg;
        rec["beta_deg"] = r.beta_deg;
        rec["elev_deg"] = r.elev_deg;
        rec["snr_db"] = snr_to_json(r.snr_db);
        std::vector<double> re, im;
        re.reserve(r.kspace.size());
        im.reserve(r.kspace.size());
        for (const Complex& z : r.kspace) {
            re.push_back(z.real());
            im.push_back(z.imag());
        }
        rec["kspace_re"] = re;
        rec["kspace_im"] = im;
        out << rec.dump() << '\n';
    }
}

Dataset read_dataset(std::istream& in) {
    Dataset dataset;
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty dataset file");
    try {
        const auto header = nlohmann::json::parse(line);
        if (header.at("format").get<std::string>() != Dataset::kFormat) {
            throw FormatError("dataset format is not " + std::string(Dataset::kFormat));
        }
        dataset.band.center_frequency_hz = header.at("center_frequency_hz").get<double>();
        dataset.band.bandwidth_hz = header.at("bandwidth_hz").get<double>();
        dataset.band.num_frequency_samples = header.at("num_frequency_samples").get<std::size_t>();
        dataset.band.validate();

        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const auto rec = nlohmann::json::parse(line);
            DatasetRecord r;
            const auto label = parse_class(rec.at("class").get<std::string>());
            if (!label) throw FormatError("line " + std::to_string(line_no) + ": unknown class");
            r.label = *label;
            r.target_seed = rec.at("target_seed").get<std::uint64_t>();
            r.tx_az_deg = rec.at("tx_az_deg").get<double>();
            r.beta_deg = rec.at("beta_deg").get<double>();
            r.elev_deg = rec.at("elev_deg").get<double>();
            r.snr_db = snr_from_json(rec.at("snr_db"));
            const auto re = rec.at("kspace_re").get<std::vector<double>>();
            const auto im = rec.at("kspace_im").get<std::vector<double>>();
            if (re.size() != dataset.band.num_frequency_samples || im.size() != re.size()) {
                throw FormatError("line " + std::to_string(line_no) + ": k-space length does not match the band");
            }
            r.kspace.reserve(re.size());
            for (std::size_t i = 0; i < re.size(); ++i) r.kspace.emplace_back(re[i], im[i]);
            dataset.records.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed dataset record: ") + e.what());
    } catch (const GeometryError& e) {
        throw FormatError(std::string("invalid band in dataset header: ") + e.what());
    }
    return dataset;
}

std::vector<ElevationBanks> train_banks(const Dataset& dataset) {
    std::vector<double> elevations;
    for (const auto& r : dataset.records) {
        if (std::find(elevations.begin(), elevations.end(), r.elev_deg) == elevations.end()) {
            elevations.push_back(r.elev_deg);
        }
    }
    if (elevations.empty()) throw EmptyCell({});

    std::vector<ElevationBanks> out;
    for (double elevation : elevations) {
        std::vector<TrainingSample> range, frequency;
        for (const auto& r : dataset.records) {
            if (r.elev_deg != elevation) continue;
            range.push_back({extract_features(r.kspace, Domain::RANGE), r.label, r.tx_az_deg});
            frequency.push_back({extract_features(r.kspace, Domain::FREQUENCY), r.label, r.tx_az_deg});
        }
        DomainBanks banks;
        banks.range = std::make_shared<const TemplateBank>(train(range, dataset.band));
        banks.frequency = std::make_shared<const TemplateBank>(train(frequency, dataset.band));
        out.push_back({elevation, std::move(banks)});
    }
    return out;
}

SweepRow summarize(ProcessingVariant variant, double delta_theta_deg, double snr_db,
                   std::span<const TrialOutcome> outcomes) {
    SweepRow row;
    row.variant = variant;
    row.delta_theta_deg = delta_theta_deg;
    row.snr_db = snr_db;
    row.trials = static_cast<int>(outcomes.size());
    if (outcomes.empty()) return row;

    std::size_t correct = 0, unclassified = 0;
    std::vector<int> perspectives;
    perspectives.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        if (o.correct) ++correct;
        if (!o.declared_class) ++unclassified;
        perspectives.push_back(o.perspectives_used);
    }
    const double n = static_cast<double>(outcomes.size());
    const std::size_t misclassified = outcomes.size() - correct - unclassified;
    row.pcc_percent = 100.0 * static_cast<double>(correct) / n;
    row.unclassified_percent = 100.0 * static_cast<double>(unclassified) / n;
    row.misclassified_percent = 100.0 * static_cast<double>(misclassified) / n;

    std::sort(perspectives.begin(), perspectives.end());
    const std::size_t mid = perspectives.size() / 2;
    row.median_perspectives = perspectives.size() % 2 == 1
                                  ? perspectives[mid]
                                  : 0.5 * (perspectives[mid - 1] + perspectives[mid]);
    return row;
}

Experiment::Experiment(ExperimentConfig config) : Experiment(config, generate_dataset(config)) {}

Experiment::Experiment(ExperimentConfig config, const Dataset& dataset)
    : Experiment(config, default_targets(config.master_seed), dataset) {}

Experiment::Experiment(ExperimentConfig config, std::vector<TargetModel> targets)
    : Experiment(config, targets, generate_dataset(config, targets)) {}

Experiment::Experiment(ExperimentConfig config, std::vector<TargetModel> targets, const Dataset& dataset)
    : config_(std::move(config)), targets_(std::move(targets)) {
    config_.validate();
    check_targets(targets_);
    if (!(dataset.band == config_.band)) throw ConfigError("band", "dataset band differs from the config band");

    auto trained = train_banks(dataset);
    for (double elevation : config_.elevations_deg) {
        const auto it = std::find_if(trained.begin(), trained.end(),
                                     [&](const ElevationBanks& b) { return b.elevation_deg == elevation; });
        if (it == trained.end()) {
            throw ConfigError("scene.elevations_deg",
                              "no training data at elevation " + format_real(elevation) + " deg");
        }
        banks_.push_back(*it);
    }
}

double Experiment::test_start_azimuth(TargetClass c, int trial) const {
    auto rng = make_rng({kStartAzimuthTag, config_.master_seed, static_cast<std::uint64_t>(index_of(c)),
                         static_cast<std::uint64_t>(trial)});
    std::uniform_real_distribution<double> azimuth(0.0, 360.0);
    const double step = config_.train_azimuth_step_deg;
    while (true) {
        const double az = azimuth(rng);
        const double offset = std::fmod(az, step);
        if (std::min(offset, step - offset) >= kMinTrainOffsetDeg) return az;
    }
}

double Experiment::test_elevation(int trial) const {
    return config_.elevations_deg[static_cast<std::size_t>(trial) % config_.elevations_deg.size()];
}

std::uint64_t Experiment::trial_noise_seed(TargetClass c, int trial) const {
    return derive_seed({kTrialNoiseTag, config_.master_seed, static_cast<std::uint64_t>(index_of(c)),
                        static_cast<std::uint64_t>(trial)});
}

std::vector<TrialOutcome> Experiment::run_trials(const CognitivePolicy& policy, double snr_db) const {
    policy.validate();
    const int per_class = config_.test_trials_per_class;
    const std::size_t total = kNumClasses * static_cast<std::size_t>(per_class);
    std::vector<TrialOutcome> outcomes(total);

    auto run_one = [&](std::size_t idx) {
        const TargetClass c = kAllClasses[idx / static_cast<std::size_t>(per_class)];
        const int trial = static_cast<int>(idx % static_cast<std::size_t>(per_class));
        const std::size_t elevation_idx = static_cast<std::size_t>(trial) % config_.elevations_deg.size();
        const Geometry start(test_start_azimuth(c, trial), config_.beta_deg, test_elevation(trial));
        outcomes[idx] = run_trial(target(c), start, config_.band, banks_[elevation_idx].banks, policy, snr_db,
                                  trial_noise_seed(c, trial));
    };

    std::size_t workers = config_.threads > 0 ? static_cast<std::size_t>(config_.threads)
                                              : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, total);
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) run_one(i);
        return outcomes;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < total; i = next++) {
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = total;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return outcomes;
}

SweepRow Experiment::run_point(const CognitivePolicy& policy, double snr_db) const {
    const auto outcomes = run_trials(policy, snr_db);
    return summarize(policy.variant, policy.delta_theta_deg, snr_db, outcomes);
}

std::vector<SweepRow> run_sweep_dtheta(const Experiment& experiment) {
    const auto& config = experiment.config();
    std::vector<SweepRow> rows;
    for (double dtheta : config.delta_theta_grid_deg) {
        for (ProcessingVariant v : config.variants) {
            rows.push_back(experiment.run_point(config.policy.policy_for(v, dtheta), config.test_snr_db));
        }
    }
    return rows;
}

std::vector<SweepRow> run_sweep_snr(const Experiment& experiment) {
    const auto& config = experiment.config();
    std::vector<SweepRow> rows;
    for (double snr : config.snr_grid_db) {
        for (ProcessingVariant v : config.variants) {
            rows.push_back(experiment.run_point(config.policy.policy_for(v, kSnrSweepDeltaThetaDeg), snr));
        }
    }
    return rows;
}

std::vector<SweepRow> single_perspective_baseline(const Experiment& experiment) {
    const auto& config = experiment.config();
    std::vector<SweepRow> rows;
    for (ProcessingVariant v : config.variants) {
        CognitivePolicy policy = config.policy.policy_for(v, 0.0);
        policy.max_perspectives = 1;
        rows.push_back(experiment.run_point(policy, config.test_snr_db));
    }
    return rows;
}

SweepRow fixed_two_perspective_baseline(const Experiment& experiment, double delta_theta_deg,
                                        ProcessingVariant variant) {
    const auto& config = experiment.config();
    CognitivePolicy policy = config.policy.policy_for(variant, delta_theta_deg);
    policy.max_perspectives = 2;
    policy.confidence_gating = false;
    return experiment.run_point(policy, config.test_snr_db);
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << to_string(r.variant) << ',' << format_real(r.delta_theta_deg) << ',' << format_real(r.snr_db) << ','
            << format_real(r.pcc_percent) << ',' << format_real(r.unclassified_percent) << ','
            << format_real(r.median_perspectives) << ',' << r.trials << '\n';
    }
}

void write_plot_script(const std::string& csv_name, const std::string& x_column, const std::string& title,
                       std::ostream& out) {
    const int x = x_column == "snr_db" ? 3 : 2;
    out << "# gnuplot script; run: gnuplot -p " << "<this file>" << '\n'
        << "set datafile separator \",\"\n"
        << "set title \"" << title << "\"\n"
        << "set xlabel \"" << (x == 3 ? "SNR (dB)" : "delta theta (deg)") << "\"\n"
        << "set ylabel \"Pcc (%)\"\n"
        << "set yrange [0:100]\n"
        << "set grid\n"
        << "set key bottom right\n"
        << "variants = \"TIME_ONLY TIME_FREQ_SIMULTANEOUS TIME_THEN_FREQ\"\n"
        << "plot for [v in variants] \"" << csv_name << "\" every ::1 using (strcol(1) eq v ? $" << x
        << " : NaN):4 with linespoints title v\n";
}

std::string describe(const SweepRow& row) {
    std::ostringstream out;
    out << to_string(row.variant) << " dtheta=" << format_real(row.delta_theta_deg)
        << " snr_db=" << format_real(row.snr_db) << " pcc=" << format_real(row.pcc_percent)
        << "% unclassified=" << format_real(row.unclassified_percent)
        << "% median_perspectives=" << format_real(row.median_perspectives) << " trials=" << row.trials;
    return out.str();
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << contents;
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw Error("write failed for '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace cogatr
