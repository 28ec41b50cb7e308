#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace entropia {

// Errors raised while assembling a class model.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateClassError : public ModelError {
public:
    using ModelError::ModelError;
};

class InheritanceCycleError : public ModelError {
public:
    using ModelError::ModelError;
};

class DanglingParentError : public ModelError {
public:
    using ModelError::ModelError;
};

// A single method invocation site. The receiver is either the reserved
// SELF marker, the name of a class in the model, or an external class name.
struct CallSite {
    static constexpr const char* kSelf = "SELF";

    std::string receiver;
    std::string method;
    int arity = 0;

    bool is_self() const { return receiver == kSelf; }

    friend bool operator==(const CallSite&, const CallSite&) = default;
    friend auto operator<=>(const CallSite&, const CallSite&) = default;
};

struct MethodDef {
    std::string name;
    int arity = 0;
    int decision_points = 0;
    std::vector<CallSite> calls;
    std::set<std::string> field_uses;
    // Set by ClassModel::build when an ancestor declares the same signature.
    bool overrides = false;

    friend bool operator==(const MethodDef&, const MethodDef&) = default;
};

struct FieldDef {
    std::string name;
    std::string declared_type;

    friend bool operator==(const FieldDef&, const FieldDef&) = default;
};

struct ClassDef {
    std::string name;
    std::optional<std::string> parent;
    std::vector<FieldDef> fields;
    std::vector<MethodDef> methods;

    const MethodDef* find_method(const std::string& name, int arity) const;
    const FieldDef* find_field(const std::string& name) const;

    friend bool operator==(const ClassDef&, const ClassDef&) = default;
};

// Per-project source line and statement counts.
struct SourceStats {
    long files = 0;
    long total_lines = 0;
    long blank_lines = 0;
    long comment_lines = 0;
    long code_lines = 0;
    long executable_statements = 0;
    long declarative_statements = 0;

    SourceStats& operator+=(const SourceStats& o);

    friend bool operator==(const SourceStats&, const SourceStats&) = default;
};

// Immutable, validated view of a set of classes. All metric computations
// read from this; once built it never changes, so concurrent reads are safe.
class ClassModel {
public:
    static ClassModel build(std::vector<ClassDef> classes,
                            std::optional<SourceStats> stats = std::nullopt,
                            std::set<std::string> externals = {});

    const std::vector<ClassDef>& classes() const { return classes_; }
    const std::optional<SourceStats>& stats() const { return stats_; }
    const std::set<std::string>& externals() const { return externals_; }

    const ClassDef* find(const std::string& name) const;

    // Parent ClassDef when the parent resolves inside the model, else null.
    const ClassDef* parent_of(const ClassDef& c) const;

    // In-model ancestor chain, nearest first.
    std::vector<const ClassDef*> ancestors(const ClassDef& c) const;

    // Names of all ancestors, including a terminal external parent.
    std::set<std::string> ancestor_names(const ClassDef& c) const;

    // Names of all transitive in-model subclasses.
    std::set<std::string> descendant_names(const ClassDef& c) const;

    // Field names visible to methods of c: own fields plus inherited ones.
    std::set<std::string> visible_fields(const ClassDef& c) const;

private:
    ClassModel() = default;

    std::vector<ClassDef> classes_;
    std::map<std::string, std::size_t> index_;
    std::set<std::string> externals_;
    std::optional<SourceStats> stats_;
};

// Signature-keyed union of two classes: methods identified by name+arity
// (colliding methods keep p's decision data, calls and field uses unioned),
// fields unioned by name, parent taken from p, name freshly synthesized.
ClassDef combine(const ClassDef& p, const ClassDef& q);

}  // namespace entropia
