#pragma once

#include <map>
#include <string>
#include <vector>

#include "skg/model.hpp"
#include "skg/rational.hpp"

namespace skg {

enum class FlattenRule { InheritDown, SynthesizeUp, RestrictionInherit };

struct FlattenProvenance {
    std::string property_id;
    FlattenRule rule;
    std::vector<std::string> sources; // property/etype ids that triggered the rule
};

// Result of the is-a preprocessing pass: no is-a edges, no anonymous etypes.
struct FlattenedSkg {
    Skg base;
    std::vector<FlattenProvenance> provenance;
};

// Three-phase transform:
//   1. bottom-up synthesis: if every direct subclass of A points (domain side)
//      at the same etype B and A has no property to B, add a synthetic A->B;
//      processed subclasses-first so deep synthesis feeds shallower levels.
//   2. top-down inheritance: copy each property incident to a superclass onto
//      each direct subclass, with the special-case skips for an existing
//      sub-property toward the same target or toward a subclass of the target.
//      Anonymous (restriction) superclasses are inheritance sources only.
//   3. erase is-a edges, anonymous etypes, and properties touching them.
// Precondition: skg passes validation (acyclic is-a).
FlattenedSkg flatten_is_a(const Skg& skg);

struct WeightTable {
    std::string schema;
    std::map<std::string, Rat> entries; // named etypes only
    long long total_properties = 0;     // |L| after preprocessing

    Rat weight(const std::string& etype_id) const;
    Rat sum() const;
};

// Eq-4 weights: weight(E) = |L_E| / (2|L|), endpoint incidences, self-loops
// counting twice. preprocess=true runs flatten_is_a first (Method 3);
// preprocess=false drops is-a edges and anonymous etypes without propagation
// (Method 2). A property-free schema gets uniform weights 1/n.
WeightTable compute_weights(const Skg& skg, bool preprocess);

// Importance degree 1..6 with step 0.02; weights >= 0.10 saturate at 6.
int importance_degree(const Rat& weight);
std::map<std::string, int> bin_importance(const WeightTable& table);

// CSV report: etype_id,weight_numerator,weight_denominator,weight_decimal,degree
// sorted by weight descending then id. `header` lines are emitted as leading
// '#' comments.
std::string weight_report_csv(const WeightTable& table,
                              const std::vector<std::string>& header = {});

} // namespace skg
