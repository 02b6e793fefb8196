#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "skg/model.hpp"

namespace skg {

enum class PropertyMode { PaperLiteral, NormalizedBestMatch };
enum class LabelBackend { Exact, TokenLexical, VectorFile };

struct SimilarityConfig {
    double t_label = 0.85;
    double t_property = 1.5; // paper-literal scale; 0.7 suits normalized mode
    double t_overall = 0.5;
    PropertyMode property_mode = PropertyMode::PaperLiteral;
    LabelBackend label_backend = LabelBackend::TokenLexical;
    std::string lexicon_path;
    std::string vector_path;
    // which names feed Sim_P
    bool use_data_properties = true;
    bool use_object_property_labels = true;

    // throws SkgError("config", ...) when thresholds are inconsistent
    void check() const;
};

enum class Tier { Label, Property, Individual };

const char* tier_name(Tier t);

struct EquivalenceDecision {
    double score = 0.0;
    bool equivalent = false;
    Tier tier = Tier::Label;
    std::optional<double> sim_label;
    std::optional<double> sim_property;
    std::optional<double> sim_individual;
    bool individual_not_applicable = false; // an instance list was empty
};

// Synonym lexicon: tab-separated pairs, symmetric-transitive closure.
class Lexicon {
public:
    static Lexicon load(const std::string& path);
    static Lexicon from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);
    const std::string& canonical(const std::string& token) const;

private:
    std::map<std::string, std::string> canon_;
};

// Label vectors: lines `label<TAB>v1,v2,...,vd` with a fixed d per file.
class VectorTable {
public:
    static VectorTable load(const std::string& path);
    const std::vector<double>* find(const std::string& label) const;

private:
    std::map<std::string, std::vector<double>> vectors_;
};

// Normalized view of one label: lowercased, punctuation-stripped, tokenized.
struct TokenizedLabel {
    std::string joined;              // tokens joined by '_', lexicon-canonical
    std::vector<std::string> tokens; // sorted unique canonical tokens
};

// Everything Sim_L/Sim_P/Sim_I need, precomputed once per etype.
struct EtypeProfile {
    std::string id;
    bool anonymous = false;
    std::vector<TokenizedLabel> labels;
    std::vector<TokenizedLabel> property_names;
    std::vector<std::string> instances; // sorted
};

class SimilarityEngine {
public:
    explicit SimilarityEngine(SimilarityConfig cfg);

    const SimilarityConfig& config() const { return cfg_; }

    EtypeProfile profile(const Etype& etype, const Skg& schema) const;

    // Sim_L in [0,1], symmetric; anonymous or label-less items score 0.
    double label_similarity(const EtypeProfile& a, const EtypeProfile& b) const;
    // Sim_P: paper-literal double sum (unbounded) or assignment / max(m,n).
    double property_similarity(const EtypeProfile& u, const EtypeProfile& v) const;
    // Sim_I = |intersection| / min(m, n); empty lists are not applicable.
    double individual_similarity(const EtypeProfile& u, const EtypeProfile& v) const;

    // Tiered Def-3.1 evaluation.
    EquivalenceDecision semantic_similarity(const EtypeProfile& u,
                                            const EtypeProfile& v) const;

    EquivalenceDecision semantic_similarity(const Etype& u, const Skg& su,
                                            const Etype& v, const Skg& sv) const;

    std::vector<std::string> take_warnings() const;

private:
    double label_pair_score(const TokenizedLabel& a, const TokenizedLabel& b) const;

    SimilarityConfig cfg_;
    Lexicon lexicon_;
    VectorTable vectors_;
    mutable std::mutex warn_mutex_;
    mutable std::vector<std::string> warnings_;
};

std::vector<std::string> tokenize_label(const std::string& raw);

} // namespace skg
