#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "skg/mapping.hpp"
#include "skg/metrics.hpp"

namespace skg {

struct RemovalOutcome {
    std::string etype_id;
    int degree = 1;
    int method = 1;
    Rat coverage, flexibility;
    Rat delta_coverage, delta_flexibility; // baseline minus post-removal
    // Y-side weight of the removed etype's group (1/|Y| for method 1);
    // what the coverage drop should equal when the group becomes unshared.
    Rat removed_weight_y;
};

struct AblationResult {
    std::string from_schema, to_schema;
    std::map<int, std::pair<Rat, Rat>> baseline; // method -> (cov, flx)
    std::vector<RemovalOutcome> removals;        // ordered by (etype, method)
    // (degree, method) -> (avg cov, avg flx); cells exist only when populated
    std::map<std::pair<int, int>, std::pair<Rat, Rat>> degree_averages;
    std::map<std::string, int> degrees; // from X's Method-3 table, unablated
    std::vector<std::string> skipped;   // removals that would empty the schema
};

// Removes one named etype of X at a time (with incident properties and is-a
// edges), recomputes Cov(X',Y)/Flx(X',Y) for each requested method, and
// averages per importance degree. Degrees are binned once, before removal.
AblationResult ablate(const Skg& x, const Skg& y,
                      const EquivalenceMapping& mapping,
                      const std::set<int>& methods, bool parallel = true);

// Serial reference for the removal loop.
AblationResult ablate_serial(const Skg& x, const Skg& y,
                             const EquivalenceMapping& mapping,
                             const std::set<int>& methods);

std::string ablation_csv(const AblationResult& result,
                         const std::vector<std::string>& header = {});

struct SyntheticSpec {
    std::uint64_t seed = 1;
    int n_etypes = 10;
    double edge_density = 0.3;  // fraction of candidate ordered pairs
    int is_a_depth = 0;         // 0..3
    double overlap_fraction = 0.5;

    void check() const;
};

struct SyntheticPair {
    Skg x, y;
    EquivalenceMapping truth;
};

// Deterministic under seed. The partner schema shares ceil(overlap * n)
// etypes under perturbed labels; `truth` carries the intended alignment.
SyntheticPair generate_synthetic(const SyntheticSpec& spec);

// Single random schema, for property tests.
Skg generate_schema(std::uint64_t seed, int n_etypes, double edge_density,
                    int is_a_depth, const std::string& name);

struct MethodTrend {
    int method = 1;
    bool flat = false;            // zero variance in metric drops
    double coverage_correlation = 0.0; // drop vs removed weight-in-Y
    bool coverage_monotone_in_degree = false;
    bool flexibility_monotone_in_degree = false;
};

struct TrendReport {
    std::vector<MethodTrend> methods;
    bool coverage_crossover = false; // weighted average falls below unweighted
                                     // at some higher degree
};

TrendReport trend_summary(const std::vector<AblationResult>& results);
std::string trend_to_json(const TrendReport& report);
std::string trend_to_text(const TrendReport& report);

// Removes one etype and everything incident to it.
Skg remove_etype(const Skg& skg, const std::string& etype_id);

} // namespace skg
