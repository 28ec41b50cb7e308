#include "entropia/entropy.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

namespace entropia {

ThresholdTable::ThresholdTable(std::vector<ThresholdBand> bands) : bands_(std::move(bands)) {
    if (bands_.size() < 2) {
        throw ThresholdConfigError("threshold table needs at least 2 categories");
    }
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        const auto& b = bands_[i];
        if (i + 1 < bands_.size()) {
            if (!b.upper) {
                throw ThresholdConfigError("only the last band may be unbounded");
            }
            if (bands_[i + 1].lower != *b.upper) {
                throw ThresholdConfigError("bands must share boundaries (band '" + b.label +
                                           "' ends at " + std::to_string(*b.upper) +
                                           ", next starts at " +
                                           std::to_string(bands_[i + 1].lower) + ")");
            }
        }
        if (b.upper && *b.upper < b.lower) {
            throw ThresholdConfigError("band '" + b.label + "' has max < min");
        }
    }
    if (bands_.back().upper) {
        throw ThresholdConfigError("last band must be unbounded");
    }
}

ThresholdTable ThresholdTable::nasa_satc() {
    return ThresholdTable({
        {"1", 1.0, 20.0, "Good values of class complexity."},
        {"2", 20.0, 100.0, "Moderate high values of complexity."},
        {"3", 100.0, std::nullopt, "High class complexity, cause for investigation."},
    });
}

ThresholdTable ThresholdTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ThresholdConfigError("cannot open threshold file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ThresholdConfigError("invalid threshold JSON in '" + path + "': " + e.what());
    }
    if (!j.is_array()) throw ThresholdConfigError("threshold file must hold a JSON array");
    std::vector<ThresholdBand> bands;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("label") || !e.contains("min") ||
            !e.contains("max") || !e.contains("risk")) {
            throw ThresholdConfigError("each band needs label, min, max, risk");
        }
        ThresholdBand b;
        b.label = e.at("label").get<std::string>();
        b.lower = e.at("min").get<double>();
        if (!e.at("max").is_null()) b.upper = e.at("max").get<double>();
        b.risk = e.at("risk").get<std::string>();
        bands.push_back(std::move(b));
    }
    return ThresholdTable(std::move(bands));
}

std::optional<std::size_t> ThresholdTable::category_of(double value) const {
    if (value < bands_.front().lower) return std::nullopt;
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        if (!bands_[i].upper || value <= *bands_[i].upper) return i;
    }
    return bands_.size() - 1;  // unreachable: last band is unbounded
}

long CategoryDistribution::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0L);
}

std::vector<double> CategoryDistribution::probabilities() const {
    const long n = total();
    if (n <= 0) throw EmptySystemError("category distribution is empty");
    std::vector<double> p;
    p.reserve(counts.size());
    for (long c : counts) p.push_back(static_cast<double>(c) / static_cast<double>(n));
    return p;
}

Categorization categorize(const std::vector<double>& values, const ThresholdTable& table,
                          bool strict) {
    Categorization out;
    out.distribution.counts.assign(table.size(), 0);
    for (double v : values) {
        auto cat = table.category_of(v);
        if (!cat) {
            if (strict) {
                throw ValueBelowTableError("value " + std::to_string(v) +
                                           " falls below the threshold table");
            }
            out.warnings.push_back("value " + std::to_string(v) +
                                   " is below the threshold table; assigned to category '" +
                                   table.bands().front().label + "'");
            cat = 0;
        }
        ++out.distribution.counts[*cat];
    }
    return out;
}

Distribution::Distribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
    if (p_.empty()) throw std::invalid_argument("distribution needs at least one outcome");
    double sum = 0.0;
    for (double p : p_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("probabilities must be finite and non-negative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("probabilities must sum to 1 (got " +
                                    std::to_string(sum) + ")");
    }
}

Distribution Distribution::from_counts(const std::vector<long>& counts) {
    CategoryDistribution c{counts};
    return Distribution(c.probabilities());
}

double shannon_entropy(const Distribution& d) {
    double h = 0.0;
    for (double p : d.probabilities()) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

double renyi_entropy(const Distribution& d, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("Renyi order must be positive");
    if (alpha == 1.0) return shannon_entropy(d);
    double sum = 0.0;
    for (double p : d.probabilities()) {
        if (p > 0.0) sum += std::pow(p, alpha);
    }
    return std::log2(sum) / (1.0 - alpha);
}

DegradationScore degradation_score(const CategoryDistribution& c) {
    const long n = c.total();
    if (n < 1) throw EmptySystemError("cannot score an empty system");
    DegradationScore s;
    s.entropy_bits = shannon_entropy(Distribution(c.probabilities()));
    s.score = static_cast<double>(n) * s.entropy_bits;
    return s;
}

Distribution product_distribution(const Distribution& d1, const Distribution& d2) {
    std::vector<double> p;
    p.reserve(d1.size() * d2.size());
    for (double a : d1.probabilities()) {
        for (double b : d2.probabilities()) p.push_back(a * b);
    }
    return Distribution(std::move(p));
}

}  // namespace entropia
