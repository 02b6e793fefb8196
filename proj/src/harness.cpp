#include "skg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

namespace skg {

Skg remove_etype(const Skg& skg, const std::string& etype_id) {
    Skg out;
    out.name = skg.name;
    for (const auto& e : skg.etypes)
        if (e.id != etype_id) out.etypes.push_back(e);
    std::set<std::string> removed_props;
    for (const auto& p : skg.object_properties) {
        if (p.domain == etype_id || p.range == etype_id) {
            removed_props.insert(p.id);
            continue;
        }
        out.object_properties.push_back(p);
    }
    for (auto& p : out.object_properties)
        if (p.sub_property_of && removed_props.count(*p.sub_property_of))
            p.sub_property_of.reset();
    for (const auto& e : skg.is_a)
        if (e.sub != etype_id && e.super != etype_id) out.is_a.push_back(e);
    return out;
}

namespace {

Rat group_weight_in_y(const Skg& y, const EquivalenceMapping& mapping, int group,
                      const WeightTable& wy) {
    Rat sum(0);
    for (const auto& e : y.etypes)
        if (!e.anonymous && mapping.group_of(y.name, e.id) == group)
            sum += wy.weight(e.id);
    return sum;
}

AblationResult run_ablation(const Skg& x, const Skg& y,
                            const EquivalenceMapping& mapping,
                            const std::set<int>& methods, bool parallel) {
    if (methods.empty())
        throw SkgError("config", "ablation needs at least one method");

    AblationResult result;
    result.from_schema = x.name;
    result.to_schema = y.name;
    result.degrees = bin_importance(compute_weights(x, true));

    std::map<int, WeightTable> y_tables; // per weighted method
    for (int m : methods)
        if (m != 1) y_tables[m] = compute_weights(y, m == 3);
    for (int m : methods) {
        const WeightTable* wy = m == 1 ? nullptr : &y_tables[m];
        ComparisonReport base = compare_one(x, y, mapping, m, nullptr, wy);
        result.baseline[m] = {base.coverage, base.flexibility};
    }

    std::vector<std::string> targets;
    for (const auto& e : x.etypes)
        if (!e.anonymous) targets.push_back(e.id);

    const long long y_named = static_cast<long long>(y.named_count());
    std::vector<std::vector<RemovalOutcome>> slots(targets.size());
    std::vector<char> skipped(targets.size(), 0);

    auto run_one = [&](std::size_t i) {
        if (x.named_count() <= 1) { skipped[i] = 1; return; }
        const std::string& id = targets[i];
        Skg reduced = remove_etype(x, id);
        int group = mapping.group_of(x.name, id);
        for (int m : methods) {
            const WeightTable* wy = m == 1 ? nullptr : &y_tables[m];
            ComparisonReport rep = compare_one(reduced, y, mapping, m, nullptr, wy);
            RemovalOutcome out;
            out.etype_id = id;
            out.degree = result.degrees.at(id);
            out.method = m;
            out.coverage = rep.coverage;
            out.flexibility = rep.flexibility;
            out.delta_coverage = result.baseline.at(m).first - rep.coverage;
            out.delta_flexibility = result.baseline.at(m).second - rep.flexibility;
            out.removed_weight_y =
                m == 1 ? (y_named > 0 ? Rat(1, y_named) : Rat(0))
                       : group_weight_in_y(y, mapping, group, y_tables[m]);
            slots[i].push_back(std::move(out));
        }
    };

#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long long i = 0; i < (long long)targets.size(); ++i) run_one(i);
    } else
#endif
    {
        (void)parallel;
        for (std::size_t i = 0; i < targets.size(); ++i) run_one(i);
    }

    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (skipped[i]) result.skipped.push_back(targets[i]);
        for (auto& out : slots[i]) result.removals.push_back(std::move(out));
    }

    std::map<std::pair<int, int>, std::pair<Rat, Rat>> sums;
    std::map<std::pair<int, int>, long long> counts;
    for (const auto& out : result.removals) {
        auto key = std::make_pair(out.degree, out.method);
        sums[key].first += out.coverage;
        sums[key].second += out.flexibility;
        counts[key] += 1;
    }
    for (const auto& [key, sum] : sums)
        result.degree_averages[key] = {sum.first / counts[key],
                                       sum.second / counts[key]};
    return result;
}

} // namespace

AblationResult ablate(const Skg& x, const Skg& y,
                      const EquivalenceMapping& mapping,
                      const std::set<int>& methods, bool parallel) {
    return run_ablation(x, y, mapping, methods, parallel);
}

AblationResult ablate_serial(const Skg& x, const Skg& y,
                             const EquivalenceMapping& mapping,
                             const std::set<int>& methods) {
    return run_ablation(x, y, mapping, methods, false);
}

std::string ablation_csv(const AblationResult& result,
                         const std::vector<std::string>& header) {
    std::ostringstream os;
    for (const auto& line : header) os << "# " << line << "\n";
    os << "degree,etype_id,method,coverage,flexibility,delta_coverage,"
          "delta_flexibility\n";
    std::vector<const RemovalOutcome*> rows;
    for (const auto& out : result.removals) rows.push_back(&out);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const RemovalOutcome* a, const RemovalOutcome* b) {
                         return std::tie(a->degree, a->etype_id, a->method) <
                                std::tie(b->degree, b->etype_id, b->method);
                     });
    for (const RemovalOutcome* r : rows)
        os << r->degree << "," << r->etype_id << "," << r->method << ","
           << to_decimal(r->coverage) << "," << to_decimal(r->flexibility) << ","
           << to_decimal(r->delta_coverage) << ","
           << to_decimal(r->delta_flexibility) << "\n";
    return os.str();
}

void SyntheticSpec::check() const {
    if (n_etypes < 1) throw SkgError("config", "n_etypes must be >= 1");
    if (edge_density < 0 || edge_density > 1)
        throw SkgError("config", "edge_density must be in [0,1]");
    if (overlap_fraction < 0 || overlap_fraction > 1)
        throw SkgError("config", "overlap_fraction must be in [0,1]");
    if (is_a_depth < 0 || is_a_depth > 3)
        throw SkgError("config", "is_a_depth must be in 0..3");
}

namespace {

const char* WORDS[] = {"alpha", "bravo", "charlie", "delta", "echo",  "foxtrot",
                       "golf",  "hotel", "india",   "juliet", "kilo", "lima",
                       "mike",  "nova",  "oscar",   "papa",  "quebec", "romeo"};
constexpr int N_WORDS = 18;

std::string word_label(std::mt19937_64& rng, int idx) {
    std::string l = WORDS[idx % N_WORDS];
    l += " ";
    l += WORDS[rng() % N_WORDS];
    l += std::to_string(idx);
    return l;
}

Skg random_schema(std::mt19937_64& rng, int n_etypes, double edge_density,
                  int is_a_depth, const std::string& name,
                  const std::string& id_prefix) {
    Skg skg;
    skg.name = name;
    std::vector<int> depth(n_etypes, 0);
    for (int i = 0; i < n_etypes; ++i) {
        Etype e;
        e.id = id_prefix + std::to_string(i);
        e.labels = {word_label(rng, i)};
        int n_props = static_cast<int>(rng() % 4);
        for (int k = 0; k < n_props; ++k)
            e.data_properties.push_back(std::string(WORDS[rng() % N_WORDS]) + "_attr");
        int n_inst = static_cast<int>(rng() % 4);
        for (int k = 0; k < n_inst; ++k)
            e.instances.push_back("ind" + std::to_string(rng() % (10u * n_etypes)));
        std::sort(e.instances.begin(), e.instances.end());
        e.instances.erase(std::unique(e.instances.begin(), e.instances.end()),
                          e.instances.end());
        skg.etypes.push_back(std::move(e));
    }
    // is-a forest bounded by is_a_depth
    if (is_a_depth > 0) {
        for (int i = 1; i < n_etypes; ++i) {
            if (rng() % 3 != 0) continue;
            int parent = static_cast<int>(rng() % i);
            if (depth[parent] + 1 > is_a_depth) continue;
            depth[i] = depth[parent] + 1;
            skg.is_a.push_back({skg.etypes[i].id, skg.etypes[parent].id});
        }
    }
    // object properties by density over ordered pairs
    int pid = 0;
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(edge_density * 1000000.0);
    for (int i = 0; i < n_etypes; ++i)
        for (int j = 0; j < n_etypes; ++j) {
            if (i == j) continue;
            if (rng() % 1000000 >= threshold) continue;
            ObjectProperty p;
            p.id = id_prefix + "p" + std::to_string(pid++);
            p.labels = {std::string(WORDS[rng() % N_WORDS]) + "_rel"};
            p.domain = skg.etypes[i].id;
            p.range = skg.etypes[j].id;
            skg.object_properties.push_back(std::move(p));
        }
    // occasional restriction: anonymous superclass with one outgoing property
    if (is_a_depth > 0 && n_etypes >= 2 && rng() % 2 == 0) {
        Etype anon;
        anon.id = id_prefix + "_anon0";
        anon.anonymous = true;
        skg.etypes.push_back(anon);
        int sub = static_cast<int>(rng() % (n_etypes));
        int filler = static_cast<int>(rng() % (n_etypes));
        skg.is_a.push_back({skg.etypes[sub].id, anon.id});
        ObjectProperty p;
        p.id = id_prefix + "p" + std::to_string(pid++);
        p.labels = {"restricted_rel"};
        p.domain = anon.id;
        p.range = skg.etypes[filler].id;
        skg.object_properties.push_back(std::move(p));
    }
    return skg;
}

} // namespace

Skg generate_schema(std::uint64_t seed, int n_etypes, double edge_density,
                    int is_a_depth, const std::string& name) {
    std::mt19937_64 rng(seed);
    return random_schema(rng, n_etypes, edge_density, is_a_depth, name, "e");
}

SyntheticPair generate_synthetic(const SyntheticSpec& spec) {
    spec.check();
    std::mt19937_64 rng(spec.seed);
    SyntheticPair pair;
    pair.x = random_schema(rng, spec.n_etypes, spec.edge_density, spec.is_a_depth,
                           "X", "x");

    const int shared =
        static_cast<int>(std::ceil(spec.overlap_fraction * spec.n_etypes));
    pair.y.name = "Y";
    std::vector<std::pair<SchemaEtype, SchemaEtype>> aligned;
    int named_seen = 0;
    for (const auto& e : pair.x.etypes) {
        if (e.anonymous || named_seen >= shared) continue;
        ++named_seen;
        Etype copy = e;
        copy.id = "y" + e.id.substr(1);
        // perturbed label so matching has to work for it
        copy.labels.clear();
        for (const auto& l : e.labels) copy.labels.push_back(l + " shared");
        pair.y.etypes.push_back(std::move(copy));
        aligned.push_back({{pair.x.name, e.id}, {pair.y.name, pair.y.etypes.back().id}});
    }
    // partner-only etypes
    Skg extra = random_schema(rng, spec.n_etypes - shared >= 1 ? spec.n_etypes - shared : 0,
                              spec.edge_density, 0, "Y", "z");
    for (auto& e : extra.etypes) pair.y.etypes.push_back(std::move(e));
    // partner properties over its own etype set
    int pid = 0;
    const std::uint64_t threshold =
        static_cast<std::uint64_t>(spec.edge_density * 1000000.0);
    for (const auto& a : pair.y.etypes)
        for (const auto& b : pair.y.etypes) {
            if (a.id == b.id) continue;
            if (rng() % 1000000 >= threshold) continue;
            ObjectProperty p;
            p.id = "yp" + std::to_string(pid++);
            p.labels = {std::string(WORDS[rng() % N_WORDS]) + "_rel"};
            p.domain = a.id;
            p.range = b.id;
            pair.y.object_properties.push_back(std::move(p));
        }

    // ground-truth alignment: shared pairs plus singletons
    std::map<SchemaEtype, SchemaEtype> partner;
    for (const auto& [a, b] : aligned) partner[a] = b;
    std::set<SchemaEtype> in_pairs;
    for (const auto& [a, b] : aligned) { in_pairs.insert(a); in_pairs.insert(b); }
    for (const auto& [a, b] : aligned) {
        pair.truth.groups.push_back({a, b});
        pair.truth.canonical.push_back(a.etype);
    }
    for (const Skg* s : {&pair.x, &pair.y})
        for (const auto& e : s->etypes) {
            if (e.anonymous) continue;
            SchemaEtype key{s->name, e.id};
            if (in_pairs.count(key)) continue;
            pair.truth.groups.push_back({key});
            pair.truth.canonical.push_back(e.id);
        }
    std::vector<std::size_t> order(pair.truth.groups.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pair.truth.groups[a] < pair.truth.groups[b];
    });
    EquivalenceMapping sorted;
    for (std::size_t i : order) {
        sorted.groups.push_back(pair.truth.groups[i]);
        sorted.canonical.push_back(pair.truth.canonical[i]);
    }
    pair.truth = std::move(sorted);
    pair.truth.finalize();
    return pair;
}

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < n; ++i) { ma += a[i]; mb += b[i]; }
    ma /= n;
    mb /= n;
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    if (va == 0 || vb == 0) return 0.0;
    return cov / std::sqrt(va * vb);
}

} // namespace

TrendReport trend_summary(const std::vector<AblationResult>& results) {
    if (results.empty())
        throw SkgError("config", "trend summary needs at least one result");
    TrendReport report;
    std::set<int> methods;
    for (const auto& r : results)
        for (const auto& [m, base] : r.baseline) methods.insert(m);

    for (int m : methods) {
        MethodTrend trend;
        trend.method = m;
        std::vector<double> drops, weights;
        for (const auto& r : results)
            for (const auto& out : r.removals)
                if (out.method == m) {
                    drops.push_back(to_double(out.delta_coverage));
                    weights.push_back(to_double(out.removed_weight_y));
                }
        bool varies = false;
        for (double d : drops)
            if (d != drops.front()) { varies = true; break; }
        trend.flat = !varies;
        trend.coverage_correlation = varies ? pearson(drops, weights) : 0.0;

        // monotonicity over populated degrees, averaged across results
        std::map<int, std::pair<double, long long>> cov_by_degree, flx_by_degree;
        for (const auto& r : results)
            for (const auto& [key, avg] : r.degree_averages) {
                if (key.second != m) continue;
                cov_by_degree[key.first].first += to_double(avg.first);
                cov_by_degree[key.first].second += 1;
                flx_by_degree[key.first].first += to_double(avg.second);
                flx_by_degree[key.first].second += 1;
            }
        auto monotone = [](const std::map<int, std::pair<double, long long>>& cells,
                           bool decreasing) {
            if (cells.size() < 2) return false;
            double prev = 0;
            bool first = true;
            for (const auto& [deg, cell] : cells) {
                double v = cell.first / cell.second;
                if (!first && (decreasing ? v >= prev : v <= prev)) return false;
                prev = v;
                first = false;
            }
            return true;
        };
        // coverage should fall, flexibility should rise, as removed degree grows
        trend.coverage_monotone_in_degree = monotone(cov_by_degree, true);
        trend.flexibility_monotone_in_degree = monotone(flx_by_degree, false);
        report.methods.push_back(trend);
    }

    // crossover: method-2 average coverage below method-1 at some degree after
    // being at or above it at the lowest populated degree
    if (methods.count(1) && methods.count(2)) {
        std::map<int, std::pair<double, long long>> m1, m2;
        for (const auto& r : results)
            for (const auto& [key, avg] : r.degree_averages) {
                auto& cell = key.second == 1 ? m1 : key.second == 2 ? m2 : m1;
                if (key.second != 1 && key.second != 2) continue;
                cell[key.first].first += to_double(avg.first);
                cell[key.first].second += 1;
            }
        bool started_above = false, fell_below = false;
        bool first = true;
        for (const auto& [deg, cell] : m2) {
            auto it = m1.find(deg);
            if (it == m1.end()) continue;
            double v2 = cell.first / cell.second;
            double v1 = it->second.first / it->second.second;
            if (first) { started_above = v2 >= v1; first = false; }
            else if (v2 < v1) fell_below = true;
        }
        report.coverage_crossover = started_above && fell_below;
    }
    return report;
}

std::string trend_to_json(const TrendReport& report) {
    nlohmann::ordered_json doc;
    doc["methods"] = nlohmann::json::array();
    for (const auto& t : report.methods) {
        nlohmann::ordered_json j;
        j["method"] = t.method;
        j["flat"] = t.flat;
        j["coverage_correlation"] = t.coverage_correlation;
        j["coverage_monotone_in_degree"] = t.coverage_monotone_in_degree;
        j["flexibility_monotone_in_degree"] = t.flexibility_monotone_in_degree;
        doc["methods"].push_back(std::move(j));
    }
    doc["coverage_crossover"] = report.coverage_crossover;
    return doc.dump(2) + "\n";
}

std::string trend_to_text(const TrendReport& report) {
    std::ostringstream os;
    for (const auto& t : report.methods) {
        os << "method " << t.method << ": ";
        if (t.flat) {
            os << "flat (zero variance in coverage drops)";
        } else {
            os << "coverage drop vs removed weight correlation "
               << t.coverage_correlation;
        }
        os << "; coverage " << (t.coverage_monotone_in_degree ? "decreases" : "is not monotone")
           << " across degrees; flexibility "
           << (t.flexibility_monotone_in_degree ? "increases" : "is not monotone")
           << " across degrees\n";
    }
    os << "coverage crossover (weighted below unweighted at high degree): "
       << (report.coverage_crossover ? "yes" : "no") << "\n";
    return os.str();
}

} // namespace skg
