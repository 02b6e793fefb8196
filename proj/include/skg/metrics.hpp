#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skg/mapping.hpp"
#include "skg/rational.hpp"
#include "skg/weights.hpp"

namespace skg {

struct ComparisonReport {
    std::string from_schema;
    std::string to_schema;
    int method = 1;
    Rat coverage;
    Rat flexibility;
    std::vector<std::string> shared;  // canonical ids, sorted
    std::vector<std::string> x_only;
    std::vector<std::string> y_only;
    std::optional<WeightTable> weights_x; // methods 2-3 only
    std::optional<WeightTable> weights_y;
};

// Cov(X,Y): method 1 is the plain shared-etype ratio over Y; methods 2/3 sum
// Y-side weights of the shared part (method 2 without is-a preprocessing,
// method 3 with it). Throws when the mapping misses a present etype.
Rat coverage(const Skg& x, const Skg& y, const EquivalenceMapping& mapping,
             int method);
// Flx(X,Y): the X-side weight (or count ratio) of X's uncovered part.
Rat flexibility(const Skg& x, const Skg& y, const EquivalenceMapping& mapping,
                int method);

// Full report for one method. Precomputed weight tables may be supplied to
// avoid recomputation (they must match the method's preprocess setting).
ComparisonReport compare_one(const Skg& x, const Skg& y,
                             const EquivalenceMapping& mapping, int method,
                             const WeightTable* wx = nullptr,
                             const WeightTable* wy = nullptr);

std::vector<ComparisonReport> compare(const Skg& x, const Skg& y,
                                      const EquivalenceMapping& mapping,
                                      const std::set<int>& methods);

std::string report_to_json(const std::vector<ComparisonReport>& reports,
                           const std::vector<std::string>& header = {});
std::string report_summary_csv(const std::vector<ComparisonReport>& reports,
                               const std::vector<std::string>& header = {});

} // namespace skg
