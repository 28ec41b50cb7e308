#pragma once

#include "entropia/class_model.hpp"

namespace entropia {

enum class WmcWeighting { Unit, Cyclomatic };

// The six CK metric values for one class.
struct MetricVector {
    long wmc = 0;
    long dit = 0;
    long noc = 0;
    long cbo = 0;
    long rfc = 0;
    long lcom_components = 0;
    double lcom_percent = 0.0;  // in [0, 100]

    friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

// Unit weighting counts locally declared methods; cyclomatic weighting sums
// 1 + decision_points per local method. Inherited methods never count.
long wmc(const ClassDef& c, WmcWeighting w);

// Length of the parent chain; a root class is 0, an external parent
// terminates the chain and contributes 1.
long dit(const ClassDef& c, const ClassModel& m);

// Immediate in-model subclasses only.
long noc(const ClassDef& c, const ClassModel& m);

// Distinct other classes (model or external) referenced via field types or
// call receivers, excluding the class itself, its ancestors and descendants.
// Built-in value types (void/int/bool/string) are not classes.
long cbo(const ClassDef& c, const ClassModel& m);

// |RS| with RS = local methods + inherited non-overridden methods + remote
// methods directly called by either set; one level deep, identity is
// (declaring class, name, arity).
long rfc(const ClassDef& c, const ClassModel& m);

// Connected components of the method graph where edges join methods sharing
// at least one used field; field-free methods are isolated vertices.
long lcom_components(const ClassDef& c);

// 100 minus the mean, over the class's own fields, of the percentage of
// methods using each field. Zero methods or zero fields yields 0.
double lcom_percent(const ClassDef& c);

MetricVector metric_vector(const ClassDef& c, const ClassModel& m, WmcWeighting w);

}  // namespace entropia
