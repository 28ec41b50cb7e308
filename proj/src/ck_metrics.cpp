#include "entropia/ck_metrics.hpp"

#include <array>
#include <set>
#include <tuple>

namespace entropia {
namespace {

bool is_builtin_type(const std::string& name) {
    static const std::array<const char*, 4> kBuiltins = {"void", "int", "bool", "string"};
    for (const char* b : kBuiltins) {
        if (name == b) return true;
    }
    return false;
}

// Placeholder receiver recorded for calls whose receiver expression cannot
// be resolved to a single identifier.
bool is_unknown_receiver(const std::string& name) { return name == "$expr"; }

using Signature = std::pair<std::string, int>;

// Walks the in-model chain from c and returns, per signature, the nearest
// declaring class; this is the statically resolved method set of c.
std::map<Signature, const ClassDef*> resolved_methods(const ClassDef& c,
                                                      const ClassModel& m) {
    std::map<Signature, const ClassDef*> out;
    for (const auto& mm : c.methods) out.emplace(Signature{mm.name, mm.arity}, &c);
    for (const ClassDef* a : m.ancestors(c)) {
        for (const auto& am : a->methods) {
            out.emplace(Signature{am.name, am.arity}, a);  // keeps nearest declaration
        }
    }
    return out;
}

}  // namespace

long wmc(const ClassDef& c, WmcWeighting w) {
    if (w == WmcWeighting::Unit) return static_cast<long>(c.methods.size());
    long total = 0;
    for (const auto& m : c.methods) total += 1 + m.decision_points;
    return total;
}

long dit(const ClassDef& c, const ClassModel& m) {
    long depth = 0;
    const ClassDef* cur = &c;
    while (cur->parent) {
        ++depth;
        const ClassDef* next = m.find(*cur->parent);
        if (!next) break;  // external parent
        cur = next;
    }
    return depth;
}

long noc(const ClassDef& c, const ClassModel& m) {
    long count = 0;
    for (const auto& other : m.classes()) {
        if (other.parent && *other.parent == c.name) ++count;
    }
    return count;
}

long cbo(const ClassDef& c, const ClassModel& m) {
    const std::set<std::string> excluded_up = m.ancestor_names(c);
    const std::set<std::string> excluded_down = m.descendant_names(c);

    std::set<std::string> coupled;
    auto consider = [&](const std::string& name) {
        if (name.empty() || name == c.name) return;
        if (is_builtin_type(name) || is_unknown_receiver(name)) return;
        if (excluded_up.count(name) || excluded_down.count(name)) return;
        coupled.insert(name);
    };

    for (const auto& f : c.fields) consider(f.declared_type);
    for (const auto& mm : c.methods) {
        for (const auto& call : mm.calls) {
            if (!call.is_self()) consider(call.receiver);
        }
    }
    return static_cast<long>(coupled.size());
}

long rfc(const ClassDef& c, const ClassModel& m) {
    using Entry = std::tuple<std::string, std::string, int>;
    std::set<Entry> rs;

    const auto resolved = resolved_methods(c, m);
    std::vector<const MethodDef*> responding;
    for (const auto& [sig, owner] : resolved) {
        rs.emplace(owner->name, sig.first, sig.second);
        if (const MethodDef* md = owner->find_method(sig.first, sig.second)) {
            responding.push_back(md);
        }
    }

    // Remote methods directly called by any responding method; no closure
    // beyond this one level.
    for (const MethodDef* md : responding) {
        for (const auto& call : md->calls) {
            if (call.is_self()) {
                auto it = resolved.find({call.method, call.arity});
                if (it != resolved.end()) {
                    rs.emplace(it->second->name, call.method, call.arity);
                }
                continue;
            }
            rs.emplace(call.receiver, call.method, call.arity);
        }
    }
    return static_cast<long>(rs.size());
}

long lcom_components(const ClassDef& c) {
    const std::size_t n = c.methods.size();
    if (n == 0) return 0;

    std::vector<std::size_t> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = i;
    auto find = [&](std::size_t i) {
        while (root[i] != i) i = root[i] = root[root[i]];
        return i;
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& a = c.methods[i].field_uses;
            const auto& b = c.methods[j].field_uses;
            bool shared = false;
            for (const auto& f : a) {
                if (b.count(f)) {
                    shared = true;
                    break;
                }
            }
            if (shared) root[find(i)] = find(j);
        }
    }

    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) roots.insert(find(i));
    return static_cast<long>(roots.size());
}

double lcom_percent(const ClassDef& c) {
    if (c.methods.empty() || c.fields.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& f : c.fields) {
        long users = 0;
        for (const auto& mm : c.methods) {
            if (mm.field_uses.count(f.name)) ++users;
        }
        sum += 100.0 * static_cast<double>(users) / static_cast<double>(c.methods.size());
    }
    return 100.0 - sum / static_cast<double>(c.fields.size());
}

MetricVector metric_vector(const ClassDef& c, const ClassModel& m, WmcWeighting w) {
    MetricVector v;
    v.wmc = wmc(c, w);
    v.dit = dit(c, m);
    v.noc = noc(c, m);
    v.cbo = cbo(c, m);
    v.rfc = rfc(c, m);
    v.lcom_components = lcom_components(c);
    v.lcom_percent = lcom_percent(c);
    return v;
}

}  // namespace entropia
