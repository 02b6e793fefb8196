#include "skg/mapping.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skg {

int EquivalenceMapping::group_of(const std::string& schema,
                                 const std::string& etype) const {
    auto it = index.find({schema, etype});
    return it == index.end() ? -1 : it->second;
}

const std::string* EquivalenceMapping::canonical_of(const std::string& schema,
                                                    const std::string& etype) const {
    int g = group_of(schema, etype);
    return g < 0 ? nullptr : &canonical[g];
}

void EquivalenceMapping::finalize() {
    index.clear();
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (const auto& m : groups[g]) index[m] = static_cast<int>(g);
}

namespace {

struct FlatEtype {
    int schema;
    int etype;
};

std::vector<FlatEtype> flatten_named(const std::vector<const Skg*>& schemas) {
    std::vector<FlatEtype> out;
    for (int s = 0; s < (int)schemas.size(); ++s)
        for (int e = 0; e < (int)schemas[s]->etypes.size(); ++e)
            if (!schemas[s]->etypes[e].anonymous) out.push_back({s, e});
    return out;
}

std::vector<std::pair<int, int>> candidate_pairs(
    const std::vector<const Skg*>& schemas, const std::vector<FlatEtype>& flat,
    const MappingOptions& opts) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < (int)flat.size(); ++i)
        for (int j = i + 1; j < (int)flat.size(); ++j) {
            if (flat[i].schema == flat[j].schema &&
                !opts.within_schema.count(schemas[flat[i].schema]->name))
                continue;
            pairs.emplace_back(i, j);
        }
    return pairs;
}

SchemaEtype key_of(const std::vector<const Skg*>& schemas, const FlatEtype& f) {
    return {schemas[f.schema]->name, schemas[f.schema]->etypes[f.etype].id};
}

std::vector<PairDecision> score_pairs(const std::vector<const Skg*>& schemas,
                                      const SimilarityEngine& engine,
                                      const MappingOptions& opts, bool parallel) {
    std::vector<FlatEtype> flat = flatten_named(schemas);
    std::vector<EtypeProfile> profiles(flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i)
        profiles[i] = engine.profile(schemas[flat[i].schema]->etypes[flat[i].etype],
                                     *schemas[flat[i].schema]);

    std::vector<std::pair<int, int>> pairs = candidate_pairs(schemas, flat, opts);
    std::vector<EquivalenceDecision> decisions(pairs.size());

#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long long k = 0; k < (long long)pairs.size(); ++k)
            decisions[k] =
                engine.semantic_similarity(profiles[pairs[k].first],
                                           profiles[pairs[k].second]);
    } else
#endif
    {
        (void)parallel;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            decisions[k] =
                engine.semantic_similarity(profiles[pairs[k].first],
                                           profiles[pairs[k].second]);
    }

    std::vector<PairDecision> out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (!decisions[k].equivalent) continue;
        SchemaEtype a = key_of(schemas, flat[pairs[k].first]);
        SchemaEtype b = key_of(schemas, flat[pairs[k].second]);
        if (b < a) std::swap(a, b);
        out.push_back({std::move(a), std::move(b), decisions[k]});
    }
    return out;
}

} // namespace

std::vector<PairDecision> score_pairs_serial(const std::vector<const Skg*>& schemas,
                                             const SimilarityEngine& engine,
                                             const MappingOptions& opts) {
    return score_pairs(schemas, engine, opts, false);
}

std::vector<PairDecision> score_pairs_parallel(const std::vector<const Skg*>& schemas,
                                               const SimilarityEngine& engine,
                                               const MappingOptions& opts) {
    return score_pairs(schemas, engine, opts, true);
}

namespace {

EquivalenceMapping group_up(const std::vector<const Skg*>& schemas,
                            const std::string& reference,
                            std::vector<PairDecision> equivalent_pairs) {
    std::vector<FlatEtype> flat = flatten_named(schemas);
    std::map<SchemaEtype, int> pos;
    for (int i = 0; i < (int)flat.size(); ++i) pos[key_of(schemas, flat[i])] = i;

    std::vector<int> parent(flat.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& pd : equivalent_pairs) {
        int ra = find(pos.at(pd.a)), rb = find(pos.at(pd.b));
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }

    std::map<int, std::vector<SchemaEtype>> by_root;
    for (int i = 0; i < (int)flat.size(); ++i)
        by_root[find(i)].push_back(key_of(schemas, flat[i]));

    EquivalenceMapping mapping;
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        mapping.groups.push_back(std::move(members));
    }
    std::sort(mapping.groups.begin(), mapping.groups.end());
    for (const auto& group : mapping.groups) {
        const SchemaEtype* pick = nullptr;
        for (const auto& m : group)
            if (m.schema == reference && (!pick || m.etype < pick->etype)) pick = &m;
        if (!pick) pick = &group.front();
        mapping.canonical.push_back(pick->etype);
    }
    mapping.pair_decisions = std::move(equivalent_pairs);
    mapping.finalize();
    return mapping;
}

} // namespace

EquivalenceMapping build_mapping(const std::vector<const Skg*>& schemas,
                                 const std::string& reference,
                                 const SimilarityConfig& cfg,
                                 const MappingOptions& opts) {
    if (schemas.size() < 2)
        throw SkgError("config", "build_mapping needs at least two schemas");
    bool have_ref = false;
    for (const Skg* s : schemas)
        if (s->name == reference) have_ref = true;
    if (!have_ref)
        throw SkgError("config", "reference schema '" + reference + "' not among inputs");

    SimilarityEngine engine(cfg);
    std::vector<PairDecision> decisions =
        opts.parallel ? score_pairs_parallel(schemas, engine, opts)
                      : score_pairs_serial(schemas, engine, opts);
    return group_up(schemas, reference, std::move(decisions));
}

EquivalenceMapping identity_mapping(const std::vector<const Skg*>& schemas,
                                    const std::string& reference) {
    std::map<std::string, std::vector<SchemaEtype>> by_id;
    for (const Skg* s : schemas)
        for (const auto& e : s->etypes)
            if (!e.anonymous) by_id[e.id].push_back({s->name, e.id});
    EquivalenceMapping mapping;
    for (auto& [id, members] : by_id) {
        std::sort(members.begin(), members.end());
        mapping.groups.push_back(std::move(members));
        mapping.canonical.push_back(id);
    }
    (void)reference;
    mapping.finalize();
    return mapping;
}

std::string mapping_to_json(const EquivalenceMapping& mapping,
                            const std::vector<std::string>& header) {
    nlohmann::ordered_json doc;
    if (!header.empty()) doc["meta"] = header;
    doc["groups"] = nlohmann::json::array();
    for (std::size_t g = 0; g < mapping.groups.size(); ++g) {
        nlohmann::ordered_json jg;
        jg["canonical"] = mapping.canonical[g];
        jg["members"] = nlohmann::json::array();
        for (const auto& m : mapping.groups[g])
            jg["members"].push_back({{"schema", m.schema}, {"etype", m.etype}});
        doc["groups"].push_back(std::move(jg));
    }
    doc["pair_decisions"] = nlohmann::json::array();
    for (const auto& pd : mapping.pair_decisions) {
        nlohmann::ordered_json jd;
        jd["a"] = {{"schema", pd.a.schema}, {"etype", pd.a.etype}};
        jd["b"] = {{"schema", pd.b.schema}, {"etype", pd.b.etype}};
        jd["score"] = pd.decision.score;
        jd["tier"] = tier_name(pd.decision.tier);
        if (pd.decision.sim_label) jd["sim_label"] = *pd.decision.sim_label;
        if (pd.decision.sim_property) jd["sim_property"] = *pd.decision.sim_property;
        if (pd.decision.sim_individual)
            jd["sim_individual"] = *pd.decision.sim_individual;
        doc["pair_decisions"].push_back(std::move(jd));
    }
    return doc.dump(2) + "\n";
}

EquivalenceMapping mapping_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SkgError("syntax", std::string("mapping JSON parse error: ") + e.what());
    }
    EquivalenceMapping mapping;
    for (const auto& jg : doc.at("groups")) {
        std::vector<SchemaEtype> members;
        for (const auto& jm : jg.at("members"))
            members.push_back({jm.at("schema").get<std::string>(),
                               jm.at("etype").get<std::string>()});
        mapping.groups.push_back(std::move(members));
        mapping.canonical.push_back(jg.at("canonical").get<std::string>());
    }
    if (doc.contains("pair_decisions")) {
        for (const auto& jd : doc["pair_decisions"]) {
            PairDecision pd;
            pd.a = {jd.at("a").at("schema").get<std::string>(),
                    jd.at("a").at("etype").get<std::string>()};
            pd.b = {jd.at("b").at("schema").get<std::string>(),
                    jd.at("b").at("etype").get<std::string>()};
            pd.decision.score = jd.at("score").get<double>();
            pd.decision.equivalent = true;
            std::string tier = jd.at("tier").get<std::string>();
            pd.decision.tier = tier == "label"      ? Tier::Label
                               : tier == "property" ? Tier::Property
                                                    : Tier::Individual;
            if (jd.contains("sim_label")) pd.decision.sim_label = jd["sim_label"].get<double>();
            if (jd.contains("sim_property"))
                pd.decision.sim_property = jd["sim_property"].get<double>();
            if (jd.contains("sim_individual"))
                pd.decision.sim_individual = jd["sim_individual"].get<double>();
            mapping.pair_decisions.push_back(std::move(pd));
        }
    }
    mapping.finalize();
    return mapping;
}

} // namespace skg
