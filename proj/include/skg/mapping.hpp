#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "skg/similarity.hpp"

namespace skg {

struct SchemaEtype {
    std::string schema;
    std::string etype;
    auto operator<=>(const SchemaEtype&) const = default;
};

struct PairDecision {
    SchemaEtype a, b; // a < b
    EquivalenceDecision decision;
};

// Cross-schema partition of etypes into equivalence groups.
struct EquivalenceMapping {
    std::vector<std::vector<SchemaEtype>> groups; // members sorted; groups sorted by first member
    std::vector<std::string> canonical;           // per group
    std::vector<PairDecision> pair_decisions;     // equivalent pairs only

    int group_of(const std::string& schema, const std::string& etype) const;
    const std::string* canonical_of(const std::string& schema,
                                    const std::string& etype) const;

    std::map<SchemaEtype, int> index; // rebuilt by finalize()
    void finalize();
};

struct MappingOptions {
    // schemas whose own etypes should also be matched against each other
    std::set<std::string> within_schema;
    bool parallel = true;
};

// Scores all cross-schema (named) etype pairs, merges pairs the engine judges
// equivalent with a union-find closure, and picks canonical ids preferring the
// reference schema (ties: lexicographically smallest (schema, etype)).
EquivalenceMapping build_mapping(const std::vector<const Skg*>& schemas,
                                 const std::string& reference,
                                 const SimilarityConfig& cfg,
                                 const MappingOptions& opts = {});

// Serial reference kernel for the pair-scoring loop; the parallel path must
// produce the same decisions in the same order.
std::vector<PairDecision> score_pairs_serial(
    const std::vector<const Skg*>& schemas, const SimilarityEngine& engine,
    const MappingOptions& opts);
std::vector<PairDecision> score_pairs_parallel(
    const std::vector<const Skg*>& schemas, const SimilarityEngine& engine,
    const MappingOptions& opts);

// Trivial mapping that pairs same-id etypes across schemas; handy for tests
// and for ground-truth synthetic data.
EquivalenceMapping identity_mapping(const std::vector<const Skg*>& schemas,
                                    const std::string& reference);

std::string mapping_to_json(const EquivalenceMapping& mapping,
                            const std::vector<std::string>& header = {});
EquivalenceMapping mapping_from_json(const std::string& text);

} // namespace skg
