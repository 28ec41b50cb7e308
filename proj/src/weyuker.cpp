#include "entropia/weyuker.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <sstream>

namespace entropia {
namespace {

long metric_of(MetricId id, WmcWeighting w, const ClassDef& c, const ClassModel& m) {
    switch (id) {
        case MetricId::Wmc: return wmc(c, w);
        case MetricId::Dit: return dit(c, m);
        case MetricId::Noc: return noc(c, m);
        case MetricId::Cbo: return cbo(c, m);
        case MetricId::Rfc: return rfc(c, m);
        case MetricId::Lcom: return lcom_components(c);
    }
    return 0;
}

std::set<std::pair<std::string, int>> signature_set(const ClassDef& c) {
    std::set<std::pair<std::string, int>> sigs;
    for (const auto& m : c.methods) sigs.emplace(m.name, m.arity);
    return sigs;
}

std::string describe(const std::string& name, long value) {
    return name + "(" + std::to_string(value) + ")";
}

// Classes constructed so that every existential property has a reachable
// witness and the known monotonicity counterexamples are present.
std::vector<ClassDef> crafted_classes() {
    auto method = [](std::string name, int arity, int dp, std::set<std::string> uses,
                     std::vector<CallSite> calls) {
        MethodDef m;
        m.name = std::move(name);
        m.arity = arity;
        m.decision_points = dp;
        m.field_uses = std::move(uses);
        m.calls = std::move(calls);
        return m;
    };

    std::vector<ClassDef> out;

    out.push_back({"W_Empty", std::nullopt, {}, {}});
    out.push_back({"W_Base", std::nullopt, {}, {method("base", 0, 0, {}, {})}});

    ClassDef clone{"W_Clone1",
                   std::nullopt,
                   {{"x", "int"}},
                   {method("m", 0, 1, {"x"}, {})}};
    out.push_back(clone);
    clone.name = "W_Clone2";
    out.push_back(clone);

    out.push_back({"W_P3WmcA", std::nullopt, {}, {method("m", 0, 0, {}, {})}});
    out.push_back({"W_P3WmcB", std::nullopt, {}, {method("m", 0, 3, {}, {})}});

    out.push_back({"W_P3LcomA",
                   std::nullopt,
                   {{"x", "int"}, {"y", "int"}},
                   {method("f", 0, 0, {"x"}, {}), method("g", 0, 0, {"y"}, {})}});
    out.push_back({"W_P3LcomB",
                   std::nullopt,
                   {{"x", "int"}, {"y", "int"}},
                   {method("f", 0, 0, {"x"}, {}), method("g", 0, 0, {"x"}, {})}});

    out.push_back({"W_P3RfcA",
                   std::nullopt,
                   {},
                   {method("h", 0, 0, {}, {{"Ext", "q", 0}})}});
    out.push_back({"W_P3RfcB", std::nullopt, {}, {method("h", 0, 0, {}, {})}});

    out.push_back({"W_P3DitA", "W_Base", {}, {method("k", 0, 0, {}, {})}});
    out.push_back({"W_P3DitB", std::nullopt, {}, {method("k", 0, 0, {}, {})}});

    out.push_back({"W_P3NocA", std::nullopt, {}, {method("n", 0, 0, {}, {})}});
    out.push_back({"W_P3NocB", std::nullopt, {}, {method("n", 0, 0, {}, {})}});
    out.push_back({"W_ChildOfNocA", "W_P3NocA", {}, {method("childonly", 0, 0, {}, {})}});

    out.push_back({"W_Q6P", std::nullopt, {}, {method("q6p", 0, 0, {}, {})}});
    out.push_back({"W_Q6",
                   "W_Q6P",
                   {},
                   {method("u", 0, 0, {}, {{"W_Q6P", "q6p", 0}})}});
    out.push_back({"W_RefQ6P",
                   std::nullopt,
                   {},
                   {method("r", 0, 0, {}, {{"W_Q6P", "q6p", 0}})}});

    out.push_back({"W_Bridge",
                   std::nullopt,
                   {{"x", "int"}, {"y", "int"}},
                   {method("br", 0, 0, {"x", "y"}, {})}});

    return out;
}

std::vector<ClassDef> random_classes(std::mt19937_64& rng, int count,
                                     const std::string& prefix) {
    const std::vector<std::string> method_pool = {"m0", "m1", "m2", "m3", "m4",
                                                  "m5", "m6", "m7", "m8", "m9"};
    const std::vector<std::string> field_pool = {"a", "b", "c", "d", "e", "f"};
    const std::vector<std::string> ext_pool = {"ExtA", "ExtB"};

    auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };

    std::vector<ClassDef> out;
    for (int i = 0; i < count; ++i) {
        ClassDef c;
        c.name = prefix + std::to_string(i);
        if (!out.empty() && pick(10) < 4) {
            c.parent = out[pick(out.size())].name;  // depth stays small by construction
        }
        const std::size_t nfields = pick(7);
        for (std::size_t f = 0; f < nfields; ++f) {
            const std::string& fname = field_pool[f];
            std::string type = "int";
            const std::size_t roll = pick(4);
            if (roll == 1 && !out.empty()) {
                type = out[pick(out.size())].name;
            } else if (roll == 2) {
                type = ext_pool[pick(ext_pool.size())];
            }
            c.fields.push_back({fname, type});
        }
        const std::size_t nmethods = pick(9);
        std::set<std::pair<std::string, int>> sigs;
        for (std::size_t m = 0; m < nmethods; ++m) {
            MethodDef md;
            md.name = method_pool[pick(method_pool.size())];
            md.arity = static_cast<int>(pick(3));
            if (!sigs.emplace(md.name, md.arity).second) continue;
            md.decision_points = static_cast<int>(pick(4));
            for (const auto& f : c.fields) {
                if (pick(2) == 0) md.field_uses.insert(f.name);
            }
            const std::size_t ncalls = pick(4);
            for (std::size_t k = 0; k < ncalls; ++k) {
                CallSite cs;
                const std::size_t roll = pick(3);
                if (roll == 0 || out.empty()) {
                    cs.receiver = roll == 0 ? CallSite::kSelf
                                            : ext_pool[pick(ext_pool.size())];
                } else if (roll == 1) {
                    cs.receiver = out[pick(out.size())].name;
                } else {
                    cs.receiver = ext_pool[pick(ext_pool.size())];
                }
                cs.method = method_pool[pick(method_pool.size())];
                cs.arity = static_cast<int>(pick(3));
                md.calls.push_back(std::move(cs));
            }
            c.methods.push_back(std::move(md));
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

const char* metric_name(MetricId id) {
    switch (id) {
        case MetricId::Wmc: return "WMC";
        case MetricId::Dit: return "DIT";
        case MetricId::Noc: return "NOC";
        case MetricId::Cbo: return "CBO";
        case MetricId::Rfc: return "RFC";
        case MetricId::Lcom: return "LCOM";
    }
    return "?";
}

std::vector<MetricId> all_metrics() {
    return {MetricId::Wmc, MetricId::Dit, MetricId::Noc,
            MetricId::Cbo, MetricId::Rfc, MetricId::Lcom};
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::WitnessFound: return "WITNESS_FOUND";
        case Verdict::NoWitnessInBudget: return "NO_WITNESS_IN_BUDGET";
        case Verdict::UniversalHolds: return "UNIVERSAL_HOLDS";
        case Verdict::Counterexample: return "COUNTEREXAMPLE";
    }
    return "?";
}

long evaluate_metric(MetricId id, WmcWeighting w, const ClassDef& c, const ClassModel& m) {
    return metric_of(id, w, c, m);
}

long evaluate_combined(MetricId id, WmcWeighting w, const ClassDef& p, const ClassDef& q,
                       const ClassModel& population) {
    std::vector<ClassDef> classes = population.classes();
    classes.push_back(combine(p, q));
    ClassModel extended =
        ClassModel::build(std::move(classes), std::nullopt, population.externals());
    return metric_of(id, w, extended.classes().back(), extended);
}

PropertyVerdict check_property1(MetricId id, const ClassModel& population, WmcWeighting w) {
    PropertyVerdict v{1, id, Verdict::NoWitnessInBudget, "", 0, 0};
    const auto& cs = population.classes();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            ++v.budget_used;
            const long a = metric_of(id, w, cs[i], population);
            const long b = metric_of(id, w, cs[j], population);
            if (a != b) {
                v.verdict = Verdict::WitnessFound;
                v.witness = describe(cs[i].name, a) + " != " + describe(cs[j].name, b);
                return v;
            }
        }
    }
    return v;
}

PropertyVerdict check_property2(MetricId id, const ClassModel& population, WmcWeighting w) {
    PropertyVerdict v{2, id, Verdict::NoWitnessInBudget, "", 0, 0};
    const auto& cs = population.classes();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            ++v.budget_used;
            const long a = metric_of(id, w, cs[i], population);
            const long b = metric_of(id, w, cs[j], population);
            if (a == b) {
                v.verdict = Verdict::WitnessFound;
                v.witness = describe(cs[i].name, a) + " == " + describe(cs[j].name, b);
                return v;
            }
        }
    }
    return v;
}

PropertyVerdict check_property3(MetricId id, const ClassModel& population, WmcWeighting w) {
    PropertyVerdict v{3, id, Verdict::NoWitnessInBudget, "", 0, 0};
    const auto& cs = population.classes();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            if (signature_set(cs[i]) != signature_set(cs[j])) continue;
            ++v.budget_used;
            const long a = metric_of(id, w, cs[i], population);
            const long b = metric_of(id, w, cs[j], population);
            if (a != b) {
                v.verdict = Verdict::WitnessFound;
                v.witness = "same signatures, " + describe(cs[i].name, a) + " != " +
                            describe(cs[j].name, b);
                return v;
            }
        }
    }
    return v;
}

PropertyVerdict check_property4(MetricId id, WmcWeighting w, const PairSource& pairs,
                                long budget) {
    PropertyVerdict v{4, id, Verdict::UniversalHolds, "", 0, 0};
    const ClassModel* model = nullptr;
    const ClassDef* p = nullptr;
    const ClassDef* q = nullptr;
    while (v.budget_used < budget && pairs(&model, &p, &q)) {
        ++v.budget_used;
        const long mp = metric_of(id, w, *p, *model);
        const long mq = metric_of(id, w, *q, *model);
        const long mc = evaluate_combined(id, w, *p, *q, *model);
        if (mc < std::max(mp, mq)) {
            v.verdict = Verdict::Counterexample;
            v.witness = describe(p->name, mp) + " + " + describe(q->name, mq) +
                        " -> combined " + std::to_string(mc);
            return v;
        }
    }
    return v;
}

PropertyVerdict check_property5(MetricId id, WmcWeighting w, const ClassModel& population,
                                long budget, std::uint64_t seed) {
    PropertyVerdict v{5, id, Verdict::NoWitnessInBudget, "", 0, seed};
    const auto& cs = population.classes();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = 0; j < cs.size(); ++j) {
            if (j == i) continue;
            const long mp = metric_of(id, w, cs[i], population);
            const long mq = metric_of(id, w, cs[j], population);
            if (mp != mq) continue;
            for (std::size_t k = 0; k < cs.size(); ++k) {
                if (k == i || k == j) continue;
                if (v.budget_used >= budget) return v;
                ++v.budget_used;
                const long pr = evaluate_combined(id, w, cs[i], cs[k], population);
                const long qr = evaluate_combined(id, w, cs[j], cs[k], population);
                if (pr != qr) {
                    v.verdict = Verdict::WitnessFound;
                    v.witness = describe(cs[i].name, mp) + " == " + describe(cs[j].name, mq) +
                                ", but +" + cs[k].name + " gives " + std::to_string(pr) +
                                " vs " + std::to_string(qr);
                    return v;
                }
            }
        }
    }
    return v;
}

PropertyVerdict check_property6(MetricId id, WmcWeighting w, const ClassModel& population,
                                long budget, std::uint64_t seed) {
    PropertyVerdict v{6, id, Verdict::NoWitnessInBudget, "", 0, seed};
    const auto& cs = population.classes();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = 0; j < cs.size(); ++j) {
            if (j == i) continue;
            if (v.budget_used >= budget) return v;
            ++v.budget_used;
            const long mp = metric_of(id, w, cs[i], population);
            const long mq = metric_of(id, w, cs[j], population);
            const long mc = evaluate_combined(id, w, cs[i], cs[j], population);
            if (mp + mq < mc) {
                v.verdict = Verdict::WitnessFound;
                v.witness = describe(cs[i].name, mp) + " + " + describe(cs[j].name, mq) +
                            " < combined " + std::to_string(mc);
                return v;
            }
        }
    }
    return v;
}

ClassModel default_population(std::uint64_t seed, const std::vector<ClassDef>& extra) {
    std::mt19937_64 rng(seed);
    std::vector<ClassDef> classes = crafted_classes();
    std::set<std::string> names;
    for (const auto& c : classes) names.insert(c.name);
    for (const auto& c : extra) {
        if (names.insert(c.name).second) classes.push_back(c);
    }
    for (auto& c : random_classes(rng, 12, "G")) {
        if (names.insert(c.name).second) classes.push_back(std::move(c));
    }
    // Any unresolved parent is an external library class.
    std::set<std::string> externals;
    for (const auto& c : classes) {
        if (c.parent && !names.count(*c.parent)) externals.insert(*c.parent);
    }
    return ClassModel::build(std::move(classes), std::nullopt, std::move(externals));
}

// Pair stream for property 4: all ordered population pairs first, then pairs
// of seeded random classes evaluated inside fresh scratch models.
PairSource make_pair_source(const ClassModel& population, std::uint64_t seed) {
    struct PairState {
        const ClassModel* population = nullptr;
        std::size_t i = 0, j = 0;
        std::mt19937_64 rng;
        std::unique_ptr<ClassModel> scratch;
    };
    auto state = std::make_shared<PairState>();
    state->population = &population;
    state->rng.seed(seed ^ 0x9e3779b97f4a7c15ULL);

    return [state](const ClassModel** model, const ClassDef** p, const ClassDef** q) {
        const auto& cs = state->population->classes();
        const std::size_t n = cs.size();
        while (state->i < n) {
            if (state->j >= n) {
                ++state->i;
                state->j = 0;
                continue;
            }
            if (state->i == state->j) {
                ++state->j;
                continue;
            }
            *model = state->population;
            *p = &cs[state->i];
            *q = &cs[state->j];
            ++state->j;
            return true;
        }
        auto fresh = random_classes(state->rng, 6, "R");
        std::set<std::string> names;
        for (const auto& c : fresh) names.insert(c.name);
        std::set<std::string> externals;
        for (const auto& c : fresh) {
            if (c.parent && !names.count(*c.parent)) externals.insert(*c.parent);
        }
        state->scratch = std::make_unique<ClassModel>(
            ClassModel::build(std::move(fresh), std::nullopt, std::move(externals)));
        *model = state->scratch.get();
        *p = &state->scratch->classes()[0];
        *q = &state->scratch->classes()[1];
        return true;
    };
}

std::vector<PropertyVerdict> run_weyuker_suite(const ClassModel& population,
                                               const WeyukerConfig& config) {
    std::vector<PropertyVerdict> out;
    for (MetricId id : all_metrics()) {
        out.push_back(check_property1(id, population, config.weighting));
        out.push_back(check_property2(id, population, config.weighting));
        out.push_back(check_property3(id, population, config.weighting));
        auto v4 = check_property4(id, config.weighting,
                                  make_pair_source(population, config.seed), config.budget);
        v4.seed = config.seed;
        out.push_back(v4);
        out.push_back(
            check_property5(id, config.weighting, population, config.budget, config.seed));
        out.push_back(
            check_property6(id, config.weighting, population, config.budget, config.seed));
    }
    return out;
}

std::vector<PropertyVerdict> run_weyuker_suite(const WeyukerConfig& config) {
    return run_weyuker_suite(default_population(config.seed), config);
}

}  // namespace entropia
