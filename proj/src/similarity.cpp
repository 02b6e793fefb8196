#include "skg/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "skg/assignment.hpp"

namespace skg {

void SimilarityConfig::check() const {
    if (t_label < 0 || t_property < 0 || t_overall < 0)
        throw SkgError("config", "similarity thresholds must be non-negative");
    if (!(t_overall < t_label))
        throw SkgError("config", "t_overall must be strictly below t_label");
    if (!(t_overall < t_property))
        throw SkgError("config", "t_overall must be strictly below t_property");
    if (label_backend == LabelBackend::VectorFile && vector_path.empty())
        throw SkgError("config", "vector-file backend needs vector_path");
}

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::Label: return "label";
        case Tier::Property: return "property";
        case Tier::Individual: return "individual";
    }
    return "?";
}

std::vector<std::string> tokenize_label(const std::string& raw) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : raw) {
        if (std::isalnum(c)) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

namespace {

// union-find with string keys, collapsed to smallest member per class
std::map<std::string, std::string> close_synonyms(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::map<std::string, std::string> parent;
    auto find = [&](std::string x) {
        parent.emplace(x, x);
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (const auto& [a, b] : pairs) {
        std::string ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
    std::map<std::string, std::string> smallest; // root -> min member
    for (const auto& [k, v] : parent) {
        std::string r = find(k);
        auto it = smallest.find(r);
        if (it == smallest.end() || k < it->second) smallest[r] = k;
    }
    std::map<std::string, std::string> canon;
    for (const auto& [k, v] : parent) canon[k] = smallest[find(k)];
    return canon;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += '_';
        out += t;
    }
    return out;
}

} // namespace

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SkgError("io", "cannot open lexicon file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw SkgError("syntax", "lexicon line without a tab: '" + line + "'");
        std::string a = join_tokens(tokenize_label(line.substr(0, tab)));
        std::string b = join_tokens(tokenize_label(line.substr(tab + 1)));
        if (!a.empty() && !b.empty()) pairs.emplace_back(a, b);
    }
    return from_pairs(pairs);
}

Lexicon Lexicon::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    Lexicon lex;
    lex.canon_ = close_synonyms(pairs);
    return lex;
}

const std::string& Lexicon::canonical(const std::string& token) const {
    auto it = canon_.find(token);
    return it == canon_.end() ? token : it->second;
}

VectorTable VectorTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SkgError("io", "cannot open vector file '" + path + "'");
    VectorTable table;
    std::string line;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw SkgError("syntax", "vector line without a tab: '" + line + "'");
        std::string key = join_tokens(tokenize_label(line.substr(0, tab)));
        std::vector<double> vec;
        std::stringstream ss(line.substr(tab + 1));
        std::string item;
        while (std::getline(ss, item, ',')) vec.push_back(std::stod(item));
        if (dim == 0) dim = vec.size();
        if (vec.size() != dim || dim == 0)
            throw SkgError("syntax", "vector for '" + key + "' has dimension " +
                                         std::to_string(vec.size()) + ", expected " +
                                         std::to_string(dim));
        table.vectors_[key] = std::move(vec);
    }
    return table;
}

const std::vector<double>* VectorTable::find(const std::string& label) const {
    auto it = vectors_.find(label);
    return it == vectors_.end() ? nullptr : &it->second;
}

SimilarityEngine::SimilarityEngine(SimilarityConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.check();
    if (!cfg_.lexicon_path.empty()) lexicon_ = Lexicon::load(cfg_.lexicon_path);
    if (!cfg_.vector_path.empty()) vectors_ = VectorTable::load(cfg_.vector_path);
}

namespace {

TokenizedLabel make_tokenized(const std::string& raw, const Lexicon& lex,
                              bool canonicalize) {
    TokenizedLabel out;
    std::vector<std::string> toks = tokenize_label(raw);
    if (canonicalize)
        for (auto& t : toks) t = lex.canonical(t);
    std::string joined = join_tokens(toks);
    out.joined = canonicalize ? lex.canonical(joined) : joined;
    std::sort(toks.begin(), toks.end());
    toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
    out.tokens = std::move(toks);
    return out;
}

} // namespace

EtypeProfile SimilarityEngine::profile(const Etype& etype, const Skg& schema) const {
    const bool canon = cfg_.label_backend == LabelBackend::TokenLexical;
    EtypeProfile p;
    p.id = etype.id;
    p.anonymous = etype.anonymous;
    for (const auto& l : etype.labels)
        p.labels.push_back(make_tokenized(l, lexicon_, canon));
    if (cfg_.use_data_properties)
        for (const auto& d : etype.data_properties)
            p.property_names.push_back(make_tokenized(d, lexicon_, canon));
    if (cfg_.use_object_property_labels)
        for (const auto& op : schema.object_properties)
            if (op.domain == etype.id || op.range == etype.id)
                for (const auto& l : op.labels)
                    p.property_names.push_back(make_tokenized(l, lexicon_, canon));
    p.instances = etype.instances;
    std::sort(p.instances.begin(), p.instances.end());
    return p;
}

double SimilarityEngine::label_pair_score(const TokenizedLabel& a,
                                          const TokenizedLabel& b) const {
    switch (cfg_.label_backend) {
        case LabelBackend::Exact:
            return a.joined == b.joined ? 1.0 : 0.0;
        case LabelBackend::TokenLexical: {
            if (a.joined == b.joined) return 1.0;
            if (a.tokens.empty() || b.tokens.empty()) return 0.0;
            std::size_t inter = 0;
            auto it = a.tokens.begin();
            for (const auto& t : b.tokens) {
                while (it != a.tokens.end() && *it < t) ++it;
                if (it != a.tokens.end() && *it == t) { ++inter; ++it; }
            }
            std::size_t uni = a.tokens.size() + b.tokens.size() - inter;
            return static_cast<double>(inter) / static_cast<double>(uni);
        }
        case LabelBackend::VectorFile: {
            const std::vector<double>* va = vectors_.find(a.joined);
            const std::vector<double>* vb = vectors_.find(b.joined);
            if (!va || !vb) {
                std::lock_guard<std::mutex> lock(warn_mutex_);
                warnings_.push_back("no vector for label '" +
                                    (va ? b.joined : a.joined) + "'");
                return 0.0;
            }
            double dot = 0, na = 0, nb = 0;
            for (std::size_t i = 0; i < va->size(); ++i) {
                dot += (*va)[i] * (*vb)[i];
                na += (*va)[i] * (*va)[i];
                nb += (*vb)[i] * (*vb)[i];
            }
            if (na == 0 || nb == 0) return 0.0;
            double cos = dot / (std::sqrt(na) * std::sqrt(nb));
            return (1.0 + cos) / 2.0;
        }
    }
    return 0.0;
}

double SimilarityEngine::label_similarity(const EtypeProfile& a,
                                          const EtypeProfile& b) const {
    if (a.anonymous || b.anonymous || a.labels.empty() || b.labels.empty())
        return 0.0;
    double best = 0.0;
    for (const auto& la : a.labels)
        for (const auto& lb : b.labels)
            best = std::max(best, label_pair_score(la, lb));
    return best;
}

double SimilarityEngine::property_similarity(const EtypeProfile& u,
                                             const EtypeProfile& v) const {
    const auto& pu = u.property_names;
    const auto& pv = v.property_names;
    if (pu.empty() || pv.empty()) return 0.0;
    if (cfg_.property_mode == PropertyMode::PaperLiteral) {
        // accumulate in sorted order so the result is exactly symmetric
        std::vector<double> scores;
        scores.reserve(pu.size() * pv.size());
        for (const auto& a : pu)
            for (const auto& b : pv) scores.push_back(label_pair_score(a, b));
        std::sort(scores.begin(), scores.end());
        double sum = 0.0;
        for (double s : scores) sum += s;
        return sum;
    }
    std::vector<std::vector<double>> score(pu.size(),
                                           std::vector<double>(pv.size(), 0.0));
    for (std::size_t i = 0; i < pu.size(); ++i)
        for (std::size_t j = 0; j < pv.size(); ++j)
            score[i][j] = label_pair_score(pu[i], pv[j]);
    double value = max_weight_assignment(score);
    return value / static_cast<double>(std::max(pu.size(), pv.size()));
}

double SimilarityEngine::individual_similarity(const EtypeProfile& u,
                                               const EtypeProfile& v) const {
    if (u.instances.empty() || v.instances.empty()) return 0.0;
    std::size_t inter = 0;
    auto it = u.instances.begin();
    for (const auto& x : v.instances) {
        while (it != u.instances.end() && *it < x) ++it;
        if (it != u.instances.end() && *it == x) { ++inter; ++it; }
    }
    std::size_t m = std::min(u.instances.size(), v.instances.size());
    return static_cast<double>(inter) / static_cast<double>(m);
}

EquivalenceDecision SimilarityEngine::semantic_similarity(
    const EtypeProfile& u, const EtypeProfile& v) const {
    EquivalenceDecision d;
    double sim_l = label_similarity(u, v);
    d.sim_label = sim_l;
    if (sim_l > cfg_.t_label) {
        d.score = sim_l;
        d.equivalent = true;
        d.tier = Tier::Label;
        return d;
    }
    double sim_p = property_similarity(u, v);
    d.sim_property = sim_p;
    if (sim_p > cfg_.t_property) {
        d.score = sim_l + sim_p;
        d.equivalent = true;
        d.tier = Tier::Property;
        return d;
    }
    double sim_i = individual_similarity(u, v);
    d.sim_individual = sim_i;
    d.individual_not_applicable = u.instances.empty() || v.instances.empty();
    d.score = sim_l + sim_p + sim_i;
    d.equivalent = d.score > cfg_.t_overall;
    d.tier = Tier::Individual;
    return d;
}

EquivalenceDecision SimilarityEngine::semantic_similarity(const Etype& u,
                                                          const Skg& su,
                                                          const Etype& v,
                                                          const Skg& sv) const {
    return semantic_similarity(profile(u, su), profile(v, sv));
}

std::vector<std::string> SimilarityEngine::take_warnings() const {
    std::lock_guard<std::mutex> lock(warn_mutex_);
    std::vector<std::string> out;
    out.swap(warnings_);
    return out;
}

} // namespace skg
