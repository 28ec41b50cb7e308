#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "entropia/ck_metrics.hpp"

namespace entropia {

enum class MetricId { Wmc, Dit, Noc, Cbo, Rfc, Lcom };

const char* metric_name(MetricId id);
std::vector<MetricId> all_metrics();

enum class Verdict { WitnessFound, NoWitnessInBudget, UniversalHolds, Counterexample };

const char* verdict_name(Verdict v);

struct PropertyVerdict {
    int property = 0;  // 1..6
    MetricId metric = MetricId::Wmc;
    Verdict verdict = Verdict::NoWitnessInBudget;
    std::string witness;  // classes involved and their metric values
    long budget_used = 0;
    std::uint64_t seed = 0;
};

struct WeyukerConfig {
    std::uint64_t seed = 42;
    long budget = 1000;
    WmcWeighting weighting = WmcWeighting::Cyclomatic;
};

// Metric evaluation used by every check; the combined class, when present,
// is appended to the population before evaluation so inheritance context
// stays intact.
long evaluate_metric(MetricId id, WmcWeighting w, const ClassDef& c, const ClassModel& m);
long evaluate_combined(MetricId id, WmcWeighting w, const ClassDef& p, const ClassDef& q,
                       const ClassModel& population);

PropertyVerdict check_property1(MetricId id, const ClassModel& population, WmcWeighting w);
PropertyVerdict check_property2(MetricId id, const ClassModel& population, WmcWeighting w);

// Searches pairs of population classes with identical declared method
// signatures (the operational reading of "same functionality") for a pair
// whose metric values differ.
PropertyVerdict check_property3(MetricId id, const ClassModel& population, WmcWeighting w);

using PairSource = std::function<bool(const ClassModel** model, const ClassDef** p,
                                      const ClassDef** q)>;

PropertyVerdict check_property4(MetricId id, WmcWeighting w, const PairSource& pairs,
                                long budget);
PropertyVerdict check_property5(MetricId id, WmcWeighting w, const ClassModel& population,
                                long budget, std::uint64_t seed);
PropertyVerdict check_property6(MetricId id, WmcWeighting w, const ClassModel& population,
                                long budget, std::uint64_t seed);

// Deterministic population: crafted witness classes, the caller's classes
// (when given), and seeded random classes.
ClassModel default_population(std::uint64_t seed, const std::vector<ClassDef>& extra = {});

// All six properties for all six metrics; deterministic for a fixed config.
std::vector<PropertyVerdict> run_weyuker_suite(const ClassModel& population,
                                               const WeyukerConfig& config);
std::vector<PropertyVerdict> run_weyuker_suite(const WeyukerConfig& config);

}  // namespace entropia
