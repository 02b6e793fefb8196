#pragma once

// Brute-force reference for the is-a flattening rules, written against the
// rules themselves rather than the library's data structures. Used by the
// acceptance suite to cross-check flatten_is_a over an exhaustive enumeration
// of small schema shapes. Only the observable that feeds the weights — the
// multiset of (domain, range) pairs over named etypes — is reported.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "skg/model.hpp"

namespace flatten_oracle {

struct Inst {
    int dom = -1, rng = -1;
    // lineage: either an original property (by index) or a synthesized one
    // (by the instance index of the synthesis); copies keep their source's
    int lin_orig = -1;
    int lin_synth = -1;
    std::vector<int> covers; // on synthesis roots: the generalized instances
};

class Oracle {
public:
    explicit Oracle(const skg::Skg& in) : skg_(in) {
        for (int i = 0; i < (int)in.etypes.size(); ++i) idx_[in.etypes[i].id] = i;
        children_.resize(in.etypes.size());
        parents_.resize(in.etypes.size());
        for (const auto& e : in.is_a) {
            children_[idx_.at(e.super)].push_back(idx_.at(e.sub));
            parents_[idx_.at(e.sub)].push_back(idx_.at(e.super));
        }
        for (int p = 0; p < (int)in.object_properties.size(); ++p) {
            Inst inst;
            inst.dom = idx_.at(in.object_properties[p].domain);
            inst.rng = idx_.at(in.object_properties[p].range);
            inst.lin_orig = p;
            insts_.push_back(inst);
        }
    }

    std::vector<std::pair<std::string, std::string>> run() {
        synthesize_up();
        inherit_down();
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& inst : insts_) {
            if (skg_.etypes[inst.dom].anonymous || skg_.etypes[inst.rng].anonymous)
                continue;
            out.emplace_back(skg_.etypes[inst.dom].id, skg_.etypes[inst.rng].id);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    // e1 is e2 or one of its descendants through is-a edges
    bool below(int e1, int e2) const {
        if (e1 == e2) return true;
        for (int p : parents_[e1])
            if (below(p, e2)) return true;
        return false;
    }

    // original property p1 is p2 or a transitive sub-property of it
    bool sub_prop(int p1, int p2) const {
        if (p1 == p2) return true;
        const auto& link = skg_.object_properties[p1].sub_property_of;
        if (!link) return false;
        for (int p = 0; p < (int)skg_.object_properties.size(); ++p)
            if (skg_.object_properties[p].id == *link && p != p1)
                return sub_prop(p, p2);
        return false;
    }

    // instance a carries a property at least as specific as instance b's
    bool at_least_as_specific(int a, int b) const {
        const Inst& ia = insts_[a];
        const Inst& ib = insts_[b];
        if (ib.lin_synth >= 0) {
            if (ia.lin_synth == ib.lin_synth) return true;
            // the synthesis generalizes its sources, hence anything below one
            for (int c : insts_[ib.lin_synth].covers)
                if (at_least_as_specific(a, c)) return true;
            return false;
        }
        if (ia.lin_synth >= 0) return false;
        return sub_prop(ia.lin_orig, ib.lin_orig);
    }

    int height_of(int e) const {
        int h = 0;
        for (int c : children_[e]) h = std::max(h, height_of(c) + 1);
        return h;
    }

    int depth_of(int e) const {
        int d = 0;
        for (int p : parents_[e]) d = std::max(d, depth_of(p) + 1);
        return d;
    }

    std::vector<int> order_by_key(bool by_height) const {
        std::vector<int> order;
        for (int e = 0; e < (int)skg_.etypes.size(); ++e) order.push_back(e);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return (by_height ? height_of(a) : depth_of(a)) <
                   (by_height ? height_of(b) : depth_of(b));
        });
        return order;
    }

    void synthesize_up() {
        for (int a : order_by_key(true)) {
            if (skg_.etypes[a].anonymous || children_[a].empty()) continue;
            for (int b = 0; b < (int)skg_.etypes.size(); ++b) {
                std::vector<int> found;
                bool every_child = true;
                for (int c : children_[a]) {
                    int hit = -1;
                    for (int k = 0; k < (int)insts_.size(); ++k)
                        if (insts_[k].dom == c && insts_[k].rng == b) { hit = k; break; }
                    if (hit < 0) { every_child = false; break; }
                    found.push_back(hit);
                }
                if (!every_child) continue;
                bool has_own = false;
                for (const auto& inst : insts_)
                    if (inst.dom == a && inst.rng == b) has_own = true;
                if (has_own) continue;
                Inst syn;
                syn.dom = a;
                syn.rng = b;
                syn.lin_synth = (int)insts_.size();
                syn.covers = found;
                insts_.push_back(syn);
            }
        }
    }

    void inherit_down() {
        struct Cand {
            int src;
            bool as_domain;
            int target;
        };
        for (int s : order_by_key(false)) {
            std::vector<Cand> cands;
            for (int a : parents_[s])
                for (int k = 0; k < (int)insts_.size(); ++k) {
                    if (insts_[k].dom == a) cands.push_back({k, true, insts_[k].rng});
                    if (insts_[k].rng == a) cands.push_back({k, false, insts_[k].dom});
                }
            std::vector<bool> blocked(cands.size(), false);
            for (std::size_t i = 0; i < cands.size(); ++i) {
                // an existing property of s toward the target (or below it)
                // that is at least as specific makes the copy redundant
                for (int k = 0; k < (int)insts_.size(); ++k) {
                    int side = cands[i].as_domain ? insts_[k].dom : insts_[k].rng;
                    int tgt = cands[i].as_domain ? insts_[k].rng : insts_[k].dom;
                    if (side == s && below(tgt, cands[i].target) &&
                        at_least_as_specific(k, cands[i].src))
                        blocked[i] = true;
                }
                // so does a strictly more specific fellow candidate (ties go
                // to the earlier one)
                for (std::size_t j = 0; j < cands.size(); ++j) {
                    if (i == j || cands[j].as_domain != cands[i].as_domain) continue;
                    if (!below(cands[j].target, cands[i].target)) continue;
                    if (!at_least_as_specific(cands[j].src, cands[i].src)) continue;
                    bool mutual = at_least_as_specific(cands[i].src, cands[j].src);
                    if (!mutual || j < i) blocked[i] = true;
                }
            }
            for (std::size_t i = 0; i < cands.size(); ++i) {
                if (blocked[i]) continue;
                Inst copy;
                copy.dom = cands[i].as_domain ? s : cands[i].target;
                copy.rng = cands[i].as_domain ? cands[i].target : s;
                copy.lin_orig = insts_[cands[i].src].lin_orig;
                copy.lin_synth = insts_[cands[i].src].lin_synth;
                insts_.push_back(copy);
            }
        }
    }

    const skg::Skg& skg_;
    std::map<std::string, int> idx_;
    std::vector<std::vector<int>> children_, parents_;
    std::vector<Inst> insts_;
};

inline std::vector<std::pair<std::string, std::string>> flatten_pairs(
    const skg::Skg& in) {
    return Oracle(in).run();
}

} // namespace flatten_oracle
