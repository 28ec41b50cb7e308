#include "entropia/class_model.hpp"

#include <algorithm>
#include <utility>

namespace entropia {

const MethodDef* ClassDef::find_method(const std::string& name, int arity) const {
    for (const auto& m : methods) {
        if (m.name == name && m.arity == arity) return &m;
    }
    return nullptr;
}

const FieldDef* ClassDef::find_field(const std::string& name) const {
    for (const auto& f : fields) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

SourceStats& SourceStats::operator+=(const SourceStats& o) {
    files += o.files;
    total_lines += o.total_lines;
    blank_lines += o.blank_lines;
    comment_lines += o.comment_lines;
    code_lines += o.code_lines;
    executable_statements += o.executable_statements;
    declarative_statements += o.declarative_statements;
    return *this;
}

ClassModel ClassModel::build(std::vector<ClassDef> classes,
                             std::optional<SourceStats> stats,
                             std::set<std::string> externals) {
    ClassModel m;
    m.classes_ = std::move(classes);
    m.externals_ = std::move(externals);
    m.stats_ = std::move(stats);

    for (std::size_t i = 0; i < m.classes_.size(); ++i) {
        const auto& c = m.classes_[i];
        if (!m.index_.emplace(c.name, i).second) {
            throw DuplicateClassError("duplicate class '" + c.name + "'");
        }
        std::set<std::pair<std::string, int>> sigs;
        for (const auto& mm : c.methods) {
            if (!sigs.emplace(mm.name, mm.arity).second) {
                throw ModelError("duplicate method signature '" + mm.name + "/" +
                                 std::to_string(mm.arity) + "' in class '" + c.name + "'");
            }
            if (mm.decision_points < 0 || mm.arity < 0) {
                throw ModelError("negative count in method '" + c.name + "." + mm.name + "'");
            }
        }
        std::set<std::string> fnames;
        for (const auto& f : c.fields) {
            if (!fnames.insert(f.name).second) {
                throw ModelError("duplicate field '" + f.name + "' in class '" + c.name + "'");
            }
        }
    }

    // Parent resolution: in-model, declared external, or an error.
    for (const auto& c : m.classes_) {
        if (!c.parent) continue;
        if (m.index_.count(*c.parent) || m.externals_.count(*c.parent)) continue;
        throw DanglingParentError("class '" + c.name + "' extends unknown class '" +
                                  *c.parent + "'");
    }

    // Cycle detection over in-model parent edges.
    for (const auto& c : m.classes_) {
        std::set<std::string> seen{c.name};
        const ClassDef* cur = m.parent_of(c);
        while (cur) {
            if (!seen.insert(cur->name).second) {
                throw InheritanceCycleError("inheritance cycle through class '" +
                                            cur->name + "'");
            }
            cur = m.parent_of(*cur);
        }
    }

    // Resolve override flags and clamp field uses to the visible field set.
    for (auto& c : m.classes_) {
        std::set<std::pair<std::string, int>> inherited_sigs;
        for (const ClassDef* a : m.ancestors(c)) {
            for (const auto& am : a->methods) inherited_sigs.emplace(am.name, am.arity);
        }
        const std::set<std::string> visible = m.visible_fields(c);
        for (auto& mm : c.methods) {
            mm.overrides = inherited_sigs.count({mm.name, mm.arity}) > 0;
            std::set<std::string> kept;
            for (const auto& u : mm.field_uses) {
                if (visible.count(u)) kept.insert(u);
            }
            mm.field_uses = std::move(kept);
        }
    }
    return m;
}

const ClassDef* ClassModel::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &classes_[it->second];
}

const ClassDef* ClassModel::parent_of(const ClassDef& c) const {
    return c.parent ? find(*c.parent) : nullptr;
}

std::vector<const ClassDef*> ClassModel::ancestors(const ClassDef& c) const {
    std::vector<const ClassDef*> chain;
    for (const ClassDef* cur = parent_of(c); cur; cur = parent_of(*cur)) {
        chain.push_back(cur);
    }
    return chain;
}

std::set<std::string> ClassModel::ancestor_names(const ClassDef& c) const {
    std::set<std::string> names;
    const ClassDef* cur = &c;
    while (cur->parent) {
        names.insert(*cur->parent);
        const ClassDef* next = find(*cur->parent);
        if (!next) break;  // external parent terminates the chain
        cur = next;
    }
    return names;
}

std::set<std::string> ClassModel::descendant_names(const ClassDef& c) const {
    std::set<std::string> names;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& other : classes_) {
            if (!other.parent || names.count(other.name)) continue;
            if (*other.parent == c.name || names.count(*other.parent)) {
                names.insert(other.name);
                grew = true;
            }
        }
    }
    return names;
}

std::set<std::string> ClassModel::visible_fields(const ClassDef& c) const {
    std::set<std::string> names;
    for (const auto& f : c.fields) names.insert(f.name);
    for (const ClassDef* a : ancestors(c)) {
        for (const auto& f : a->fields) names.insert(f.name);
    }
    return names;
}

ClassDef combine(const ClassDef& p, const ClassDef& q) {
    ClassDef out;
    out.name = p.name + "$" + q.name + "$combined";
    out.parent = p.parent;

    for (const auto& f : p.fields) out.fields.push_back(f);
    for (const auto& f : q.fields) {
        if (!out.find_field(f.name)) out.fields.push_back(f);
    }

    out.methods = p.methods;
    for (const auto& qm : q.methods) {
        MethodDef* existing = nullptr;
        for (auto& om : out.methods) {
            if (om.name == qm.name && om.arity == qm.arity) {
                existing = &om;
                break;
            }
        }
        if (!existing) {
            out.methods.push_back(qm);
            continue;
        }
        // Collision: keep p's body data, union calls and field uses.
        for (const auto& call : qm.calls) {
            if (std::find(existing->calls.begin(), existing->calls.end(), call) ==
                existing->calls.end()) {
                existing->calls.push_back(call);
            }
        }
        existing->field_uses.insert(qm.field_uses.begin(), qm.field_uses.end());
    }
    return out;
}

}  // namespace entropia
