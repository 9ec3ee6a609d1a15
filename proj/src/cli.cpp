#include "cogatr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cogatr/config.hpp"
#include "cogatr/harness.hpp"

namespace cogatr::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kDatasetFile = "dataset.ndjson";

std::string bank_file_name(Domain domain, double elevation_deg) {
    return "bank_" + std::string(to_string(domain)) + "_el" + format_real(elevation_deg) + ".txt";
}

int threads_from_env(int configured) {
    const char* raw = std::getenv("COGATR_THREADS");
    if (raw == nullptr || *raw == '\0') return configured;
    int cap = 0;
    try {
        std::size_t used = 0;
        cap = std::stoi(raw, &used);
        if (used != std::string(raw).size()) cap = 0;
    } catch (const std::exception&) {
        cap = 0;
    }
    if (cap < 1) throw ConfigError("COGATR_THREADS", "must be a positive integer");
    return configured > 0 ? std::min(configured, cap) : cap;
}

Dataset load_or_generate(const fs::path& out_dir, const ExperimentConfig& config) {
    const fs::path path = out_dir / kDatasetFile;
    if (!fs::exists(path)) return generate_dataset(config);
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path.string() + "'");
    Dataset dataset = read_dataset(in);
    for (const auto& r : dataset.records) {
        if (r.target_seed != target_seed_for(config.master_seed, r.label)) {
            throw ConfigError("seed.master", "'" + path.string() + "' was generated with a different master seed");
        }
    }
    return dataset;
}

std::string csv_text(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_sweep_csv(rows, out);
    return out.str();
}

void emit_rows(const std::vector<SweepRow>& rows, std::ostream& out) {
    for (const auto& row : rows) out << describe(row) << '\n';
}

void write_sweep(const fs::path& out_dir, const std::string& stem, const std::vector<SweepRow>& rows,
                 const std::string& x_column, const std::string& title) {
    write_file_atomically(out_dir / (stem + ".csv"), csv_text(rows));
    std::ostringstream plot;
    write_plot_script(stem + ".csv", x_column, title, plot);
    write_file_atomically(out_dir / (stem + ".gp"), plot.str());
}

}  // namespace

const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v = {"gen-dataset", "train",    "evaluate",
                                               "sweep-dtheta", "sweep-snr", "baseline-2p"};
    return v;
}

CliCommand parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Cognitive angular-diversity ATR simulator", argv.empty() ? "cogatr" : argv.front()};
    CliCommand cmd;
    std::vector<std::string> sets;
    app.add_option("verb", cmd.verb, "gen-dataset | train | evaluate | sweep-dtheta | sweep-snr | baseline-2p")
        ->required()
        ->check(CLI::IsMember(verbs()));
    app.add_option("--config", cmd.config_path, "experiment config file")->required();
    app.add_option("--out", cmd.out_dir, "output directory")->required();
    app.add_option("--set", sets, "override a config value (section.key=value)")->take_all();

    std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n" + app.help());
    }

    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + s + "'");
        std::string key = s.substr(0, eq);
        if (!is_known_config_key(key)) throw UsageError("unknown config key '" + key + "'");
        cmd.overrides.emplace_back(std::move(key), s.substr(eq + 1));
    }
    return cmd;
}

int execute(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        ExperimentConfig config = load_config_file(cmd.config_path);
        for (const auto& [key, value] : cmd.overrides) apply_config_value(config, key, value);
        config.threads = threads_from_env(config.threads);
        config.validate();

        const fs::path out_dir(cmd.out_dir);
        fs::create_directories(out_dir);

        if (cmd.verb == "gen-dataset") {
            const Dataset dataset = generate_dataset(config);
            std::ostringstream text;
            write_dataset(dataset, text);
            write_file_atomically(out_dir / kDatasetFile, text.str());
            std::ostringstream manifest;
            manifest << "format = " << Dataset::kFormat << '\n'
                     << "dataset = " << kDatasetFile << '\n'
                     << "records = " << dataset.records.size() << "\n\n"
                     << format_config(config);
            write_file_atomically(out_dir / "manifest.txt", manifest.str());
            out << "wrote " << dataset.records.size() << " records to " << (out_dir / kDatasetFile).string() << '\n';
        } else if (cmd.verb == "train") {
            const Dataset dataset = load_or_generate(out_dir, config);
            for (const auto& eb : train_banks(dataset)) {
                for (Domain d : {Domain::RANGE, Domain::FREQUENCY}) {
                    std::ostringstream text;
                    eb.banks.at(d).save(text);
                    const fs::path path = out_dir / bank_file_name(d, eb.elevation_deg);
                    write_file_atomically(path, text.str());
                    out << "trained " << to_string(d) << " bank at elevation " << format_real(eb.elevation_deg)
                        << " deg -> " << path.string() << '\n';
                }
            }
        } else {
            const Experiment experiment(config, load_or_generate(out_dir, config));
            if (cmd.verb == "evaluate") {
                std::vector<SweepRow> rows;
                for (ProcessingVariant v : config.variants) {
                    rows.push_back(experiment.run_point(config.policy.policy_for(v, config.policy.delta_theta_deg),
                                                        config.test_snr_db));
                }
                write_file_atomically(out_dir / "evaluate.csv", csv_text(rows));
                emit_rows(rows, out);
            } else if (cmd.verb == "sweep-dtheta") {
                const auto rows = run_sweep_dtheta(experiment);
                const auto baseline = single_perspective_baseline(experiment);
                write_sweep(out_dir, "sweep_dtheta", rows, "delta_theta_deg", "Pcc vs delta theta");
                write_file_atomically(out_dir / "baseline_single.csv", csv_text(baseline));
                emit_rows(rows, out);
                out << "single-perspective baseline (K=1):\n";
                emit_rows(baseline, out);
            } else if (cmd.verb == "sweep-snr") {
                const auto rows = run_sweep_snr(experiment);
                write_sweep(out_dir, "sweep_snr", rows, "snr_db", "Pcc vs SNR");
                emit_rows(rows, out);
            } else if (cmd.verb == "baseline-2p") {
                std::vector<SweepRow> fixed;
                for (ProcessingVariant v : config.variants) {
                    fixed.push_back(fixed_two_perspective_baseline(experiment, config.baseline_delta_theta_deg, v));
                }
                write_file_atomically(out_dir / "baseline_2p.csv", csv_text(fixed));
                out << "fixed two perspectives:\n";
                emit_rows(fixed, out);
                out << "cognitive (confidence gated, K=" << config.policy.max_perspectives << "):\n";
                for (ProcessingVariant v : config.variants) {
                    out << describe(experiment.run_point(
                               config.policy.policy_for(v, config.baseline_delta_theta_deg), config.test_snr_db))
                        << '\n';
                }
            }
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: config key '" << e.key() << "': " << e.what() << '\n';
    } catch (const EmptyCell& e) {
        err << "error: training failed: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitRuntime;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CliCommand cmd;
    try {
        cmd = parse_args(argv);
    } catch (const HelpRequested& e) {
        out << e.what();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return execute(cmd, out, err);
}

}  // namespace cogatr::cli
