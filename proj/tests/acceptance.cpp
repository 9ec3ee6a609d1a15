// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "cogatr/harness.hpp"
#include "oracles.hpp"

using namespace cogatr;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Result {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string csv_of(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_sweep_csv(rows, out);
    return out.str();
}

const SweepRow& find_row(const std::vector<SweepRow>& rows, ProcessingVariant v, double dtheta, double snr) {
    for (const auto& r : rows) {
        if (r.variant == v && r.delta_theta_deg == dtheta && r.snr_db == snr) return r;
    }
    throw std::runtime_error("missing sweep row");
}

Result dft_oracle() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (std::size_t n : {1u, 2u, 8u, 64u}) {
        for (int rep = 0; rep < 100; ++rep) {
            const auto x = oracle::random_vector(rng, n);
            const auto slow = oracle::brute_dft(x);
            worst = std::max(worst, oracle::max_abs_diff(unitary_dft(x), slow) / oracle::max_abs(slow));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 5.0, "max relative error " + fmt(worst * 1e15, 3) + "e-15, " + fmt(secs, 3) + " s"};
}

Result classifier_equivalence() {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> var(0.05, 4.0);
    std::uniform_int_distribution<int> dim_of(1, 64);
    int agree = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t dim = static_cast<std::size_t>(dim_of(rng));
        std::vector<std::vector<double>> cells(kNumClasses * kNumSectors, std::vector<double>(dim));
        for (auto& cell : cells)
            for (double& v : cell) v = g(rng);
        std::vector<double> variance(dim);
        for (double& v : variance) v = var(rng);
        const TemplateBank bank = oracle::make_bank(Domain::RANGE, dim, cells, variance);
        std::vector<double> x(dim);
        for (double& v : x) v = g(rng);
        const ClassScores s = score(bank, FeatureVector{Domain::RANGE, x});
        const oracle::Nearest n = oracle::nearest_template(bank, x);
        agree += s.best_class == n.label && s.best_sector.value() == n.sector;
    }
    return {agree == 1000, std::to_string(agree) + "/1000 agree"};
}

Result noise_calibration() {
    std::mt19937_64 rng(3);
    const auto signal = oracle::random_vector(rng, 100000);
    const double p_sig = mean_power(signal);
    bool ok = true;
    std::string detail;
    for (double snr : {0.0, 10.0, 30.0}) {
        const KSpace noisy = add_noise(signal, snr, 77);
        KSpace noise(signal.size());
        for (std::size_t i = 0; i < signal.size(); ++i) noise[i] = noisy[i] - signal[i];
        const double measured = 10.0 * std::log10(p_sig / mean_power(noise));
        ok = ok && std::abs(measured - snr) <= 0.5;
        detail += fmt(snr, 0) + "->" + fmt(measured, 3) + " dB ";
    }
    return {ok, detail};
}

Result loop_invariants(const Experiment& exp) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> variant(0, 2), k(1, 10), n(1, 3), cls(0, 3), elev(0, 3);
    std::uniform_real_distribution<double> dtheta(0.0, 10.0), az(0.0, 360.0), snr(-20.0, 30.0), frac(0.25, 0.95);
    std::bernoulli_distribution gated(0.8), noiseless(0.1);
    long violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        CognitivePolicy p;
        p.variant = kAllVariants[variant(rng)];
        p.max_perspectives = k(rng);
        p.profiles_per_perspective = n(rng);
        p.delta_theta_deg = dtheta(rng);
        p.majority_fraction = frac(rng);
        p.confidence_gating = gated(rng);
        const TargetClass c = kAllClasses[cls(rng)];
        const auto& eb = exp.banks()[static_cast<std::size_t>(elev(rng))];
        const Geometry start(az(rng), exp.config().beta_deg, eb.elevation_deg);
        const double s = noiseless(rng) ? kInf : snr(rng);
        const std::uint64_t seed = rng();
        const auto o = run_trial(exp.target(c), start, exp.config().band, eb.banks, p, s, seed);
        violations += oracle::trial_violations(o, p);
        if (!(o == run_trial(exp.target(c), start, exp.config().band, eb.banks, p, s, seed))) ++violations;
    }
    return {violations == 0, "10000 randomized trials, " + std::to_string(violations) + " violations"};
}

}  // namespace

int main() {
    const auto t_all = Clock::now();
    int failures = 0;
    auto report = [&](int id, const std::string& name, const Result& r) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << ": " << r.detail
                  << std::endl;
        failures += !r.pass;
    };

    report(1, "DFT oracle", dft_oracle());
    report(2, "classifier equivalence", classifier_equivalence());
    report(3, "noise calibration", noise_calibration());

    ExperimentConfig cfg;  // canonical experiment, 1000 trials per class
    cfg.threads = 1;
    const auto t_build = Clock::now();
    const Experiment exp(cfg);

    // Criterion 4 timing covers world construction plus both Pcc estimates.
    const auto tfs = cfg.policy.policy_for(ProcessingVariant::TIME_FREQ_SIMULTANEOUS, 3.6);
    const SweepRow cognitive = exp.run_point(tfs, 10.0);
    const auto single = single_perspective_baseline(exp);
    const double c4_secs = seconds_since(t_build);
    const auto& single_tfs = single[1];
    const auto& single_to = single[0];
    {
        const double gain_same = cognitive.pcc_percent - single_tfs.pcc_percent;
        const double gain_to = cognitive.pcc_percent - single_to.pcc_percent;
        report(4, "cognitive gain",
               {gain_same >= 5.0 && gain_to >= 5.0 && c4_secs < 600.0,
                "TFS dtheta=3.6 K=10 " + fmt(cognitive.pcc_percent) + "% vs K=1 TFS " + fmt(single_tfs.pcc_percent) +
                    "% (+" + fmt(gain_same) + "), K=1 TIME_ONLY " + fmt(single_to.pcc_percent) + "% (+" +
                    fmt(gain_to) + "), " + fmt(c4_secs, 1) + " s"});
    }

    const auto dtheta_rows = run_sweep_dtheta(exp);
    const auto snr_rows = run_sweep_snr(exp);

    {
        const double d10 = find_row(dtheta_rows, ProcessingVariant::TIME_FREQ_SIMULTANEOUS, 3.6, 10.0).pcc_percent -
                           find_row(dtheta_rows, ProcessingVariant::TIME_ONLY, 3.6, 10.0).pcc_percent;
        const double dinf = find_row(snr_rows, ProcessingVariant::TIME_FREQ_SIMULTANEOUS, 3.6, kInf).pcc_percent -
                            find_row(snr_rows, ProcessingVariant::TIME_ONLY, 3.6, kInf).pcc_percent;
        report(5, "dual-channel superiority",
               {d10 >= -1.0 && dinf >= -1.0,
                "TFS - TIME_ONLY = " + fmt(d10) + " at 10 dB, " + fmt(dinf) + " at +inf"});
    }

    {
        std::vector<double> finite;
        for (double s : cfg.snr_grid_db)
            if (std::isfinite(s)) finite.push_back(s);
        std::sort(finite.begin(), finite.end());
        bool ok = finite.size() >= 2;
        std::string detail;
        for (std::size_t i = finite.size() - 2; ok && i < finite.size(); ++i) {
            const double to = find_row(snr_rows, ProcessingVariant::TIME_ONLY, 3.6, finite[i]).pcc_percent;
            for (ProcessingVariant v : {ProcessingVariant::TIME_FREQ_SIMULTANEOUS, ProcessingVariant::TIME_THEN_FREQ}) {
                const double d = find_row(snr_rows, v, 3.6, finite[i]).pcc_percent - to;
                ok = ok && d >= 0.0;
                detail += std::string(to_string(v)) + "@" + fmt(finite[i], 0) + "dB " + (d >= 0 ? "+" : "") + fmt(d) + " ";
            }
        }
        report(6, "high-SNR ordering", {ok, detail + "(vs TIME_ONLY)"});
    }

    {
        bool ok = true;
        std::string detail;
        for (ProcessingVariant v : kAllVariants) {
            double lo = 1e9, hi = -1e9;
            detail += std::string(to_string(v)) + " [";
            for (double d : {1.8, 3.6, 5.0}) {
                const double m = find_row(dtheta_rows, v, d, 10.0).median_perspectives;
                ok = ok && m >= 1.0 && m < cfg.policy.max_perspectives;
                lo = std::min(lo, m);
                hi = std::max(hi, m);
                detail += fmt(m, 1) + (d == 5.0 ? "" : " ");
            }
            ok = ok && hi - lo <= 2.0;  // all within +-1 of a common value
            detail += "] ";
        }
        report(7, "median perspectives", {ok, detail + "at dtheta 1.8/3.6/5"});
    }

    report(8, "loop invariants", loop_invariants(exp));

    {
        bool ok = true;
        std::string detail;
        for (ProcessingVariant v : kAllVariants) {
            const double pcc = exp.run_point(cfg.policy.policy_for(v, 3.6), -20.0).pcc_percent;
            ok = ok && std::abs(pcc - 25.0) <= 5.0;
            detail += std::string(to_string(v)) + " " + fmt(pcc) + "% ";
        }
        report(9, "chance floor at -20 dB", {ok, detail});
    }

    {
        std::ostringstream a, b;
        write_dataset(generate_dataset(cfg), a);
        write_dataset(generate_dataset(cfg), b);
        ExperimentConfig wide = cfg;
        wide.threads = static_cast<int>(std::max(8u, std::thread::hardware_concurrency()));
        const Experiment parallel(wide);
        const bool dataset_same = a.str() == b.str();
        const bool dtheta_same = csv_of(dtheta_rows) == csv_of(run_sweep_dtheta(parallel));
        const bool snr_same = csv_of(snr_rows) == csv_of(run_sweep_snr(parallel));
        report(10, "byte reproducibility",
               {dataset_same && dtheta_same && snr_same,
                std::string("dataset ") + (dataset_same ? "identical" : "DIFFERS") + ", sweep CSVs 1 vs " +
                    std::to_string(wide.threads) + " threads " + (dtheta_same && snr_same ? "identical" : "DIFFER")});
    }

    std::cout << "\n" << csv_of(dtheta_rows) << "\n" << csv_of(snr_rows) << "\n" << csv_of(single) << std::endl;
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
              << fmt(seconds_since(t_all), 1) << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}
