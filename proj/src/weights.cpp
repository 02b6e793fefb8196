#include "skg/weights.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace skg {

namespace {

struct Indexed {
    std::unordered_map<std::string, int> etype_idx;
    std::vector<std::vector<int>> direct_subs;   // per etype
    std::vector<std::vector<int>> direct_supers; // per etype
    std::vector<std::vector<bool>> subclass_le;  // reflexive-transitive closure
    std::vector<int> depth;  // longest path from a root
    std::vector<int> height; // longest path down to a leaf
};

Indexed index_hierarchy(const Skg& skg) {
    Indexed ix;
    const int n = static_cast<int>(skg.etypes.size());
    for (int i = 0; i < n; ++i) ix.etype_idx[skg.etypes[i].id] = i;
    ix.direct_subs.resize(n);
    ix.direct_supers.resize(n);
    for (const auto& e : skg.is_a) {
        int s = ix.etype_idx.at(e.sub), p = ix.etype_idx.at(e.super);
        ix.direct_subs[p].push_back(s);
        ix.direct_supers[s].push_back(p);
    }
    ix.subclass_le.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) ix.subclass_le[i][i] = true;
    // closure by repeated relaxation; hierarchies are shallow
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < n; ++s)
            for (int p : ix.direct_supers[s])
                for (int j = 0; j < n; ++j)
                    if (ix.subclass_le[p][j] && !ix.subclass_le[s][j]) {
                        ix.subclass_le[s][j] = true;
                        changed = true;
                    }
    }
    ix.depth.assign(n, 0);
    ix.height.assign(n, 0);
    // acyclic by precondition, so relaxation terminates
    changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < n; ++s)
            for (int p : ix.direct_supers[s]) {
                if (ix.depth[s] < ix.depth[p] + 1) { ix.depth[s] = ix.depth[p] + 1; changed = true; }
                if (ix.height[p] < ix.height[s] + 1) { ix.height[p] = ix.height[s] + 1; changed = true; }
            }
    }
    return ix;
}

std::vector<int> order_by(const std::vector<int>& key, int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return key[a] < key[b]; });
    return order;
}

struct WorkProp {
    int dom, rng;
    int origin; // index of the root original (or self for synthesized ones)
};

} // namespace

FlattenedSkg flatten_is_a(const Skg& skg) {
    if (skg.is_a.empty()) {
        // nothing to propagate; just shed anonymous etypes
        FlattenedSkg out;
        out.base.name = skg.name;
        std::unordered_map<std::string, bool> anon;
        for (const auto& e : skg.etypes) {
            anon[e.id] = e.anonymous;
            if (!e.anonymous) out.base.etypes.push_back(e);
        }
        for (const auto& p : skg.object_properties)
            if (!anon.at(p.domain) && !anon.at(p.range))
                out.base.object_properties.push_back(p);
        return out;
    }
    const int n = static_cast<int>(skg.etypes.size());
    Indexed ix = index_hierarchy(skg);

    std::vector<WorkProp> props;
    std::vector<std::string> prop_ids;
    std::vector<std::vector<std::string>> prop_labels;
    std::vector<bool> prop_synth;
    props.reserve(skg.object_properties.size());
    for (const auto& p : skg.object_properties) {
        props.push_back({ix.etype_idx.at(p.domain), ix.etype_idx.at(p.range),
                         static_cast<int>(props.size())});
        prop_ids.push_back(p.id);
        prop_labels.push_back(p.labels);
        prop_synth.push_back(p.synthetic);
    }
    const int n_original = static_cast<int>(props.size());

    // reflexive-transitive sub-property closure over the original properties
    std::vector<std::vector<bool>> subprop_le(n_original,
                                              std::vector<bool>(n_original, false));
    {
        std::unordered_map<std::string, int> pid_idx;
        for (int i = 0; i < n_original; ++i) pid_idx[prop_ids[i]] = i;
        for (int i = 0; i < n_original; ++i) {
            int cur = i;
            subprop_le[i][i] = true;
            while (true) {
                const auto& sub = skg.object_properties[cur].sub_property_of;
                if (!sub) break;
                auto it = pid_idx.find(*sub);
                if (it == pid_idx.end()) break;
                cur = it->second;
                if (subprop_le[i][cur]) break; // guards against cyclic input
                subprop_le[i][cur] = true;
            }
        }
    }
    // per prop index: the subclass properties a synthesized one generalizes
    std::vector<std::vector<int>> synth_sources(props.size());
    // q <= p when q's origin is a (transitive) sub-property of p's origin;
    // properties synthesized bottom-up generalize their source properties
    std::function<bool(int, int)> origin_le = [&](int a, int b) -> bool {
        int oa = props[a].origin, ob = props[b].origin;
        if (oa == ob) return true;
        if (oa < n_original && ob < n_original) return (bool)subprop_le[oa][ob];
        if (ob >= n_original)
            for (int src : synth_sources[ob])
                if (origin_le(a, src)) return true;
        return false;
    };

    FlattenedSkg out;
    out.base.name = skg.name;
    int synth_counter = 0;
    auto fresh_id = [&](const std::string& stem) {
        std::string id = stem;
        while (std::find(prop_ids.begin(), prop_ids.end(), id) != prop_ids.end())
            id = stem + "#" + std::to_string(++synth_counter);
        return id;
    };

    // Phase 1: bottom-up synthesis, subclasses processed before superclasses.
    for (int a : order_by(ix.height, n)) {
        if (skg.etypes[a].anonymous) continue;
        const auto& subs = ix.direct_subs[a];
        if (subs.empty()) continue;
        for (int b = 0; b < n; ++b) {
            bool all_point = true;
            std::vector<std::string> sources;
            std::vector<int> source_idx;
            for (int s : subs) {
                int found = -1;
                for (int pi = 0; pi < (int)props.size(); ++pi)
                    if (props[pi].dom == s && props[pi].rng == b) { found = pi; break; }
                if (found < 0) { all_point = false; break; }
                sources.push_back(prop_ids[found]);
                source_idx.push_back(found);
            }
            if (!all_point) continue;
            bool already = false;
            for (const auto& p : props)
                if (p.dom == a && p.rng == b) { already = true; break; }
            if (already) continue;
            std::string id =
                fresh_id("syn:" + skg.etypes[a].id + "->" + skg.etypes[b].id);
            props.push_back({a, b, static_cast<int>(props.size())});
            prop_ids.push_back(id);
            prop_labels.push_back({});
            prop_synth.push_back(true);
            synth_sources.push_back(std::move(source_idx));
            out.provenance.push_back({id, FlattenRule::SynthesizeUp, std::move(sources)});
        }
    }

    // Phase 2: top-down inheritance, superclasses processed before subclasses.
    // Per subclass: gather candidates from every direct superclass, then prune
    // a candidate when an existing property of s (or a more specific fellow
    // candidate) already reaches the target or a subclass of it.
    struct Cand {
        int src;       // prop of the superclass being copied
        bool dom_role; // s takes the domain side of the copy
        int target;
        bool from_restriction;
    };
    for (int s : order_by(ix.depth, n)) {
        std::vector<Cand> cands;
        for (int a : ix.direct_supers[s]) {
            const bool from_restriction = skg.etypes[a].anonymous;
            for (int pi = 0; pi < (int)props.size(); ++pi) {
                if (props[pi].dom == a)
                    cands.push_back({pi, true, props[pi].rng, from_restriction});
                if (props[pi].rng == a)
                    cands.push_back({pi, false, props[pi].dom, from_restriction});
            }
        }
        std::vector<char> keep(cands.size(), 1);
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const Cand& c = cands[i];
            for (int qi = 0; qi < (int)props.size() && keep[i]; ++qi) {
                const int q_side = c.dom_role ? props[qi].dom : props[qi].rng;
                const int q_tgt = c.dom_role ? props[qi].rng : props[qi].dom;
                if (q_side == s && ix.subclass_le[q_tgt][c.target] &&
                    origin_le(qi, c.src))
                    keep[i] = 0;
            }
            for (std::size_t j = 0; j < cands.size() && keep[i]; ++j) {
                if (j == i || cands[j].dom_role != c.dom_role) continue;
                if (!ix.subclass_le[cands[j].target][c.target]) continue;
                if (!origin_le(cands[j].src, c.src)) continue;
                // a strictly more specific candidate always wins; among
                // equivalent ones the first stays
                if (!origin_le(c.src, cands[j].src) || j < i) keep[i] = 0;
            }
        }
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (!keep[i]) continue;
            const Cand& c = cands[i];
            std::string id =
                fresh_id("inh:" + prop_ids[c.src] + "@" + skg.etypes[s].id);
            WorkProp np;
            np.dom = c.dom_role ? s : c.target;
            np.rng = c.dom_role ? c.target : s;
            np.origin = props[c.src].origin;
            props.push_back(np);
            prop_ids.push_back(id);
            prop_labels.push_back(prop_labels[c.src]);
            prop_synth.push_back(true);
            synth_sources.emplace_back();
            out.provenance.push_back({id,
                                      c.from_restriction
                                          ? FlattenRule::RestrictionInherit
                                          : FlattenRule::InheritDown,
                                      {prop_ids[c.src], skg.etypes[s].id}});
        }
    }

    // Phase 3: erase is-a edges, anonymous etypes, and properties touching them.
    std::vector<bool> keep_etype(n, false);
    for (int i = 0; i < n; ++i) keep_etype[i] = !skg.etypes[i].anonymous;
    for (int i = 0; i < n; ++i)
        if (keep_etype[i]) out.base.etypes.push_back(skg.etypes[i]);
    for (int pi = 0; pi < (int)props.size(); ++pi) {
        if (!keep_etype[props[pi].dom] || !keep_etype[props[pi].rng]) continue;
        ObjectProperty op;
        op.id = prop_ids[pi];
        op.labels = prop_labels[pi];
        op.domain = skg.etypes[props[pi].dom].id;
        op.range = skg.etypes[props[pi].rng].id;
        op.synthetic = prop_synth[pi];
        if (pi < n_original) {
            const auto& sub = skg.object_properties[pi].sub_property_of;
            if (sub) {
                const ObjectProperty* tgt = skg.find_property(*sub);
                bool survives = tgt && keep_etype[ix.etype_idx.at(tgt->domain)] &&
                                keep_etype[ix.etype_idx.at(tgt->range)];
                if (survives) op.sub_property_of = *sub;
            }
        }
        out.base.object_properties.push_back(std::move(op));
    }
    // drop provenance entries for properties that got erased with an anonymous
    // endpoint
    std::erase_if(out.provenance, [&](const FlattenProvenance& fp) {
        return out.base.find_property(fp.property_id) == nullptr;
    });
    return out;
}

Rat WeightTable::weight(const std::string& etype_id) const {
    auto it = entries.find(etype_id);
    return it == entries.end() ? Rat(0) : it->second;
}

Rat WeightTable::sum() const {
    Rat s(0);
    for (const auto& [id, w] : entries) s += w;
    return s;
}

WeightTable compute_weights(const Skg& skg, bool preprocess) {
    Skg flat;
    if (preprocess) {
        flat = flatten_is_a(skg).base;
    } else {
        flat.name = skg.name;
        std::unordered_map<std::string, bool> anon;
        for (const auto& e : skg.etypes) {
            anon[e.id] = e.anonymous;
            if (!e.anonymous) flat.etypes.push_back(e);
        }
        for (const auto& p : skg.object_properties)
            if (!anon.at(p.domain) && !anon.at(p.range))
                flat.object_properties.push_back(p);
    }

    WeightTable table;
    table.schema = skg.name;
    table.total_properties = static_cast<long long>(flat.object_properties.size());

    std::map<std::string, long long> incidence;
    for (const auto& e : flat.etypes) incidence[e.id] = 0;
    for (const auto& p : flat.object_properties) {
        incidence[p.domain] += 1;
        incidence[p.range] += 1; // a self-loop counts twice, once per role
    }
    if (table.total_properties == 0) {
        const long long count = static_cast<long long>(flat.etypes.size());
        for (const auto& e : flat.etypes)
            table.entries[e.id] = Rat(1, count);
        return table;
    }
    for (const auto& [id, inc] : incidence)
        table.entries[id] = Rat(inc, 2 * table.total_properties);
    return table;
}

int importance_degree(const Rat& weight) {
    // floor(weight / 0.02) + 1, clamped to 6
    long long bucket = (weight.numerator() * 50) / weight.denominator();
    if (bucket >= 5) return 6;
    return static_cast<int>(bucket) + 1;
}

std::map<std::string, int> bin_importance(const WeightTable& table) {
    std::map<std::string, int> degrees;
    for (const auto& [id, w] : table.entries) degrees[id] = importance_degree(w);
    return degrees;
}

std::string weight_report_csv(const WeightTable& table,
                              const std::vector<std::string>& header) {
    std::vector<std::pair<std::string, Rat>> rows(table.entries.begin(),
                                                  table.entries.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::ostringstream os;
    for (const auto& line : header) os << "# " << line << "\n";
    os << "etype_id,weight_numerator,weight_denominator,weight_decimal,degree\n";
    for (const auto& [id, w] : rows)
        os << id << "," << w.numerator() << "," << w.denominator() << ","
           << to_decimal(w) << "," << importance_degree(w) << "\n";
    return os.str();
}

} // namespace skg
