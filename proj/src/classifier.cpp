#include "cogatr/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cogatr/config.hpp"
#include "cogatr/errors.hpp"

namespace cogatr {

SectorIndex::SectorIndex(int value) : value_(value) {
    if (value < 0 || value >= kNumSectors) {
        throw std::out_of_range("sector index " + std::to_string(value) + " outside [0, 25)");
    }
}

SectorIndex sector_of(double azimuth_deg) {
    const int raw = static_cast<int>(std::floor(wrap_degrees(azimuth_deg) / kSectorWidthDeg));
    return SectorIndex(std::clamp(raw, 0, kNumSectors - 1));
}

TemplateBank::TemplateBank(Domain domain, RadarBand band, std::size_t dimension, std::vector<double> means,
                           std::vector<double> shared_variance, std::vector<std::size_t> counts)
    : domain_(domain),
      band_(band),
      dimension_(dimension),
      means_(std::move(means)),
      shared_variance_(std::move(shared_variance)),
      counts_(std::move(counts)) {
    constexpr std::size_t cells = kNumClasses * kNumSectors;
    if (dimension_ == 0 || means_.size() != cells * dimension_ || shared_variance_.size() != dimension_ ||
        counts_.size() != cells) {
        throw DimensionMismatch("template bank parts have inconsistent sizes");
    }
    for (double v : shared_variance_) {
        if (!(v >= kVarianceFloor) || !std::isfinite(v)) {
            throw std::invalid_argument("shared variance entries must be finite and >= the variance floor");
        }
    }
}

std::size_t TemplateBank::cell(TargetClass c, SectorIndex s) const {
    return index_of(c) * kNumSectors + static_cast<std::size_t>(s.value());
}

std::span<const double> TemplateBank::mean(TargetClass c, SectorIndex s) const {
    return std::span<const double>(means_).subspan(cell(c, s) * dimension_, dimension_);
}

std::size_t TemplateBank::training_count(TargetClass c, SectorIndex s) const {
    return counts_[cell(c, s)];
}

namespace {

void write_values(std::ostream& out, std::span<const double> values) {
    for (double v : values) out << ' ' << format_real(v);
}

std::vector<double> read_values(std::istringstream& line, std::size_t n, const std::string& what) {
    std::vector<double> values;
    values.reserve(n);
    std::string token;
    while (line >> token) {
        try {
            values.push_back(parse_real(token));
        } catch (const std::exception&) {
            throw FormatError("bad number '" + token + "' in " + what);
        }
    }
    if (values.size() != n) {
        throw FormatError(what + ": expected " + std::to_string(n) + " values, got " +
                          std::to_string(values.size()));
    }
    return values;
}

std::string expect_line(std::istream& in, const std::string& what) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("bank file truncated before " + what);
    return line;
}

}  // namespace

void TemplateBank::save(std::ostream& out) const {
    out << kFormat << '\n';
    out << "domain " << to_string(domain_) << '\n';
    out << "n_f " << dimension_ << '\n';
    out << "center_frequency_hz " << format_real(band_.center_frequency_hz) << '\n';
    out << "bandwidth_hz " << format_real(band_.bandwidth_hz) << '\n';
    out << "num_frequency_samples " << band_.num_frequency_samples << '\n';
    out << "shared_variance";
    write_values(out, shared_variance_);
    out << '\n';
    for (TargetClass c : kAllClasses) {
        for (int s = 0; s < kNumSectors; ++s) {
            const SectorIndex sector(s);
            out << "mean " << to_string(c) << ' ' << s << ' ' << training_count(c, sector);
            write_values(out, mean(c, sector));
            out << '\n';
        }
    }
}

TemplateBank TemplateBank::load(std::istream& in) {
    if (expect_line(in, "format") != kFormat) throw FormatError("not a cogatr-bank-v1 file");

    auto keyed = [&in](const std::string& key) {
        std::istringstream line(expect_line(in, key));
        std::string name, value;
        line >> name >> value;
        if (name != key || value.empty()) throw FormatError("expected '" + key + "' line");
        return value;
    };

    const auto domain = parse_domain(keyed("domain"));
    if (!domain) throw FormatError("unknown domain in bank file");
    std::size_t dimension = 0;
    RadarBand band;
    try {
        dimension = std::stoul(keyed("n_f"));
        band.center_frequency_hz = parse_real(keyed("center_frequency_hz"));
        band.bandwidth_hz = parse_real(keyed("bandwidth_hz"));
        band.num_frequency_samples = std::stoul(keyed("num_frequency_samples"));
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        throw FormatError(std::string("bad bank header value: ") + e.what());
    }

    std::istringstream var_line(expect_line(in, "shared_variance"));
    std::string tag;
    var_line >> tag;
    if (tag != "shared_variance") throw FormatError("expected 'shared_variance' line");
    std::vector<double> variance = read_values(var_line, dimension, "shared_variance");

    constexpr std::size_t cells = kNumClasses * kNumSectors;
    std::vector<double> means(cells * dimension, 0.0);
    std::vector<std::size_t> counts(cells, 0);
    std::vector<bool> seen(cells, false);
    for (std::size_t i = 0; i < cells; ++i) {
        std::istringstream line(expect_line(in, "mean"));
        std::string class_name;
        int sector = -1;
        std::size_t count = 0;
        line >> tag >> class_name >> sector >> count;
        const auto label = parse_class(class_name);
        if (tag != "mean" || !label || sector < 0 || sector >= kNumSectors || line.fail()) {
            throw FormatError("malformed mean line " + std::to_string(i));
        }
        const std::size_t idx = index_of(*label) * kNumSectors + static_cast<std::size_t>(sector);
        if (seen[idx]) throw FormatError("duplicate mean for a (class, sector) cell");
        seen[idx] = true;
        counts[idx] = count;
        const auto values = read_values(line, dimension, "mean");
        std::copy(values.begin(), values.end(), means.begin() + static_cast<std::ptrdiff_t>(idx * dimension));
    }
    return TemplateBank(*domain, band, dimension, std::move(means), std::move(variance), std::move(counts));
}

TemplateBank train(std::span<const TrainingSample> samples, const RadarBand& band) {
    if (samples.empty()) {
        std::vector<std::pair<TargetClass, int>> all;
        for (TargetClass c : kAllClasses)
            for (int s = 0; s < kNumSectors; ++s) all.emplace_back(c, s);
        throw EmptyCell(std::move(all));
    }
    const Domain domain = samples.front().feature.domain;
    const std::size_t dim = samples.front().feature.values.size();
    if (dim == 0) throw DimensionMismatch("empty feature vectors");
    for (const auto& sample : samples) {
        if (sample.feature.domain != domain) throw MixedDomain("training samples mix RANGE and FREQUENCY");
        if (sample.feature.values.size() != dim) throw DimensionMismatch("training feature lengths differ");
    }

    constexpr std::size_t cells = kNumClasses * kNumSectors;
    std::vector<std::size_t> counts(cells, 0);
    std::vector<double> sums(cells * dim, 0.0);
    std::vector<std::size_t> cell_of(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& sample = samples[i];
        const std::size_t cell =
            index_of(sample.label) * kNumSectors + static_cast<std::size_t>(sector_of(sample.azimuth_deg).value());
        cell_of[i] = cell;
        ++counts[cell];
        for (std::size_t n = 0; n < dim; ++n) sums[cell * dim + n] += sample.feature.values[n];
    }

    std::vector<std::pair<TargetClass, int>> empty;
    for (TargetClass c : kAllClasses) {
        for (int s = 0; s < kNumSectors; ++s) {
            if (counts[index_of(c) * kNumSectors + static_cast<std::size_t>(s)] == 0) empty.emplace_back(c, s);
        }
    }
    if (!empty.empty()) throw EmptyCell(std::move(empty));

    std::vector<double> means(cells * dim);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        for (std::size_t n = 0; n < dim; ++n) {
            means[cell * dim + n] = sums[cell * dim + n] / static_cast<double>(counts[cell]);
        }
    }

    // Pooled within-cell variance, one degree of freedom lost per occupied cell.
    std::vector<double> variance(dim, 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& values = samples[i].feature.values;
        for (std::size_t n = 0; n < dim; ++n) {
            const double r = values[n] - means[cell_of[i] * dim + n];
            variance[n] += r * r;
        }
    }
    const std::size_t dof = samples.size() - cells;
    for (double& v : variance) {
        v = dof > 0 ? v / static_cast<double>(dof) : 0.0;
        v = std::max(v, kVarianceFloor);
    }
    return TemplateBank(domain, band, dim, std::move(means), std::move(variance), std::move(counts));
}

ClassScores score(const TemplateBank& bank, const FeatureVector& feature) {
    if (feature.values.size() != bank.dimension()) {
        throw DimensionMismatch("feature length " + std::to_string(feature.values.size()) +
                                " does not match bank dimension " + std::to_string(bank.dimension()));
    }
    if (feature.domain != bank.domain()) {
        throw DimensionMismatch("feature domain does not match bank domain");
    }
    const auto variance = bank.shared_variance();
    const std::size_t dim = bank.dimension();

    ClassScores result;
    double best = -std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (TargetClass c : kAllClasses) {
        double class_best = -std::numeric_limits<double>::infinity();
        int class_sector = 0;
        for (int s = 0; s < kNumSectors; ++s) {
            const SectorIndex sector(s);
            if (bank.training_count(c, sector) == 0) continue;
            const auto mu = bank.mean(c, sector);
            double d2 = 0.0;
            for (std::size_t n = 0; n < dim; ++n) {
                const double r = feature.values[n] - mu[n];
                d2 += r * r / variance[n];
            }
            const double ll = -0.5 * d2;
            if (ll > class_best) {
                class_best = ll;
                class_sector = s;
            }
        }
        result.log_likelihood[index_of(c)] = class_best;
        if (!have_best || class_best > best) {
            best = class_best;
            have_best = true;
            result.best_class = c;
            result.best_sector = SectorIndex(class_sector);
        }
    }
    return result;
}

}  // namespace cogatr
