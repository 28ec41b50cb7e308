#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace entropia {

class ValueBelowTableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptySystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ThresholdConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ThresholdBand {
    std::string label;
    double lower = 0.0;                 // inclusive
    std::optional<double> upper;        // inclusive; empty = unbounded
    std::string risk;
};

// Ordered complexity bands partitioning [lower_0, inf). Adjacent bands share
// their boundary value; a value equal to a boundary falls in the lower band.
class ThresholdTable {
public:
    explicit ThresholdTable(std::vector<ThresholdBand> bands);

    // NASA-SATC WMC risk bands: [1,20] good, (20,100] moderate, (100,inf) high.
    static ThresholdTable nasa_satc();

    // Loads an ordered JSON array of {label, min, max|null, risk}.
    static ThresholdTable load(const std::string& path);

    const std::vector<ThresholdBand>& bands() const { return bands_; }
    std::size_t size() const { return bands_.size(); }

    // Category index for a value, or empty when the value falls below the
    // first band's lower bound.
    std::optional<std::size_t> category_of(double value) const;

private:
    std::vector<ThresholdBand> bands_;
};

struct CategoryDistribution {
    std::vector<long> counts;

    long total() const;
    std::vector<double> probabilities() const;
};

struct Categorization {
    CategoryDistribution distribution;
    std::vector<std::string> warnings;
};

// Assigns each value to exactly one band, in table order. Values below the
// table go to the first category with a warning, or raise in strict mode.
Categorization categorize(const std::vector<double>& values, const ThresholdTable& table,
                          bool strict = false);

// A discrete probability distribution; probabilities must be non-negative
// and sum to 1 within 1e-12.
class Distribution {
public:
    explicit Distribution(std::vector<double> probabilities);
    static Distribution from_counts(const std::vector<long>& counts);

    const std::vector<double>& probabilities() const { return p_; }
    std::size_t size() const { return p_.size(); }

private:
    std::vector<double> p_;
};

// -sum p_k log2 p_k in bits; zero-probability terms contribute 0.
double shannon_entropy(const Distribution& d);

// (1/(1-alpha)) log2 sum p_k^alpha; alpha = 1 is the Shannon limit.
double renyi_entropy(const Distribution& d, double alpha);

struct DegradationScore {
    double entropy_bits = 0.0;
    double score = 0.0;  // N * H
};

DegradationScore degradation_score(const CategoryDistribution& c);

// Independent product p_ij = p_i * q_j, flattened row-major.
Distribution product_distribution(const Distribution& d1, const Distribution& d2);

}  // namespace entropia
