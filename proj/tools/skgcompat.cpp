// Command-line front end: validate / import / equiv / weights / compare /
// ablate / gen, all over the SKG JSON interchange format.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skg/harness.hpp"
#include "skg/mapping.hpp"
#include "skg/metrics.hpp"
#include "skg/model.hpp"
#include "skg/turtle.hpp"
#include "skg/weights.hpp"

namespace {

constexpr int EXIT_VALIDATION = 1;
constexpr int EXIT_IO = 2;

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw skg::SkgError("io", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-" || path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw skg::SkgError("io", "cannot write '" + path + "'");
    out << content;
}

skg::Skg load_schema_file(const std::string& path, bool strict) {
    return skg::load_skg(read_file(path), strict);
}

struct CommonOpts {
    std::string config_path;
    bool strict = false;
    std::string output = "-";
};

// flags > config file > defaults
skg::SimilarityConfig effective_similarity(const std::string& config_path,
                                           CLI::App* cmd) {
    skg::SimilarityConfig cfg;
    if (!config_path.empty()) {
        nlohmann::json j = nlohmann::json::parse(read_file(config_path));
        if (j.contains("similarity")) {
            const auto& s = j["similarity"];
            if (s.contains("t_label")) cfg.t_label = s["t_label"].get<double>();
            if (s.contains("t_property")) cfg.t_property = s["t_property"].get<double>();
            if (s.contains("t_overall")) cfg.t_overall = s["t_overall"].get<double>();
            if (s.contains("property_mode"))
                cfg.property_mode = s["property_mode"] == "normalized-best-match"
                                        ? skg::PropertyMode::NormalizedBestMatch
                                        : skg::PropertyMode::PaperLiteral;
            if (s.contains("label_backend")) {
                std::string b = s["label_backend"].get<std::string>();
                cfg.label_backend = b == "exact"       ? skg::LabelBackend::Exact
                                    : b == "vector-file" ? skg::LabelBackend::VectorFile
                                                         : skg::LabelBackend::TokenLexical;
            }
            if (s.contains("lexicon_path")) cfg.lexicon_path = s["lexicon_path"];
            if (s.contains("vector_path")) cfg.vector_path = s["vector_path"];
        }
    }
    if (cmd) {
        auto override_double = [&](const char* flag, double& target) {
            auto* opt = cmd->get_option_no_throw(flag);
            if (opt && opt->count() > 0) target = opt->as<double>();
        };
        override_double("--t-label", cfg.t_label);
        override_double("--t-property", cfg.t_property);
        override_double("--t-overall", cfg.t_overall);
        auto* backend = cmd->get_option_no_throw("--label-backend");
        if (backend && backend->count() > 0) {
            std::string b = backend->as<std::string>();
            cfg.label_backend = b == "exact"       ? skg::LabelBackend::Exact
                                : b == "vector-file" ? skg::LabelBackend::VectorFile
                                                     : skg::LabelBackend::TokenLexical;
        }
        auto* mode = cmd->get_option_no_throw("--property-mode");
        if (mode && mode->count() > 0)
            cfg.property_mode = mode->as<std::string>() == "normalized-best-match"
                                    ? skg::PropertyMode::NormalizedBestMatch
                                    : skg::PropertyMode::PaperLiteral;
        auto* lex = cmd->get_option_no_throw("--lexicon");
        if (lex && lex->count() > 0) cfg.lexicon_path = lex->as<std::string>();
        auto* vec = cmd->get_option_no_throw("--vectors");
        if (vec && vec->count() > 0) cfg.vector_path = vec->as<std::string>();
    }
    return cfg;
}

std::string config_echo(const skg::SimilarityConfig& cfg) {
    nlohmann::ordered_json j;
    j["t_label"] = cfg.t_label;
    j["t_property"] = cfg.t_property;
    j["t_overall"] = cfg.t_overall;
    j["property_mode"] = cfg.property_mode == skg::PropertyMode::PaperLiteral
                             ? "paper-literal"
                             : "normalized-best-match";
    j["label_backend"] = cfg.label_backend == skg::LabelBackend::Exact ? "exact"
                         : cfg.label_backend == skg::LabelBackend::VectorFile
                             ? "vector-file"
                             : "token-lexical";
    if (!cfg.lexicon_path.empty()) j["lexicon"] = cfg.lexicon_path;
    if (!cfg.vector_path.empty()) j["vectors"] = cfg.vector_path;
    return "config: " + j.dump();
}

std::set<int> parse_methods(const std::string& arg) {
    std::set<int> methods;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item != "1" && item != "2" && item != "3")
            throw skg::SkgError("config", "unknown method '" + item + "'");
        methods.insert(std::stoi(item));
    }
    if (methods.empty())
        throw skg::SkgError("config", "at least one method is required");
    return methods;
}

void add_similarity_flags(CLI::App* cmd) {
    cmd->add_option("--t-label", "label-tier threshold");
    cmd->add_option("--t-property", "property-tier threshold");
    cmd->add_option("--t-overall", "overall threshold");
    cmd->add_option("--label-backend", "exact | token-lexical | vector-file");
    cmd->add_option("--property-mode", "paper-literal | normalized-best-match");
    cmd->add_option("--lexicon", "synonym lexicon file");
    cmd->add_option("--vectors", "label vector file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"schema knowledge graph compatibility analyzer"};
    app.require_subcommand(1);

    std::string config_path;
    bool strict = false;
    app.add_option("--config", config_path, "run configuration JSON");
    app.add_flag("--strict", strict, "treat recoverable issues as errors");
    if (const char* env = std::getenv("SKG_COMPAT_STRICT"); env && std::string(env) == "1")
        strict = true;

    // validate <skg.json>
    auto* c_validate = app.add_subcommand("validate", "validate an SKG file");
    std::string v_input;
    c_validate->add_option("input", v_input, "SKG JSON file")->required();

    // import <file.ttl> -o <skg.json>
    auto* c_import = app.add_subcommand("import", "import a Turtle subset file");
    std::string i_input, i_output = "-", i_name;
    c_import->add_option("input", i_input, "Turtle file")->required();
    c_import->add_option("-o,--output", i_output, "output SKG JSON ('-' = stdout)");
    c_import->add_option("--name", i_name, "schema name (default: file stem)");

    // equiv <a.json> <b.json> [--reference a] -o mapping.json
    auto* c_equiv = app.add_subcommand("equiv", "build a cross-schema equivalence mapping");
    std::vector<std::string> e_inputs;
    std::string e_reference, e_output = "-";
    std::vector<std::string> e_within;
    c_equiv->add_option("inputs", e_inputs, "two or more SKG JSON files")
        ->expected(2, -1);
    c_equiv->add_option("--reference", e_reference, "reference schema name");
    c_equiv->add_option("-o,--output", e_output, "output mapping JSON");
    c_equiv->add_option("--within", e_within, "schemas matched against themselves");
    add_similarity_flags(c_equiv);

    // weights <skg.json> [--preprocess]
    auto* c_weights = app.add_subcommand("weights", "compute etype weights");
    std::string w_input, w_output = "-";
    bool w_preprocess = false;
    c_weights->add_option("input", w_input, "SKG JSON file")->required();
    c_weights->add_flag("--preprocess", w_preprocess, "apply is-a flattening first");
    c_weights->add_option("-o,--output", w_output, "output CSV");

    // compare <x.json> <y.json> --mapping m.json --methods 1,2,3
    auto* c_compare = app.add_subcommand("compare", "coverage/flexibility of X to Y");
    std::string cm_x, cm_y, cm_mapping, cm_methods = "1,2,3", cm_output = "-";
    std::string cm_directions = "xy", cm_format = "json";
    c_compare->add_option("x", cm_x, "SKG JSON file (X)")->required();
    c_compare->add_option("y", cm_y, "SKG JSON file (Y)")->required();
    c_compare->add_option("--mapping", cm_mapping, "mapping JSON")->required();
    c_compare->add_option("--methods", cm_methods, "comma list from {1,2,3}");
    c_compare->add_option("--directions", cm_directions, "xy | yx | both");
    c_compare->add_option("--format", cm_format, "json | csv");
    c_compare->add_option("-o,--output", cm_output, "output file");

    // ablate <x.json> <y.json> --mapping m.json
    auto* c_ablate = app.add_subcommand("ablate", "degree-binned etype-removal ablation");
    std::string a_x, a_y, a_mapping, a_methods = "1,2,3", a_output = "-";
    bool a_trend = false;
    c_ablate->add_option("x", a_x, "SKG JSON file to ablate")->required();
    c_ablate->add_option("y", a_y, "SKG JSON file compared against")->required();
    c_ablate->add_option("--mapping", a_mapping, "mapping JSON")->required();
    c_ablate->add_option("--methods", a_methods, "comma list from {1,2,3}");
    c_ablate->add_flag("--trend", a_trend, "append a trend summary");
    c_ablate->add_option("-o,--output", a_output, "output CSV");

    // gen --seed N --etypes K --overlap F
    auto* c_gen = app.add_subcommand("gen", "generate a synthetic schema pair");
    skg::SyntheticSpec g_spec;
    std::string g_outdir = ".";
    c_gen->add_option("--seed", g_spec.seed, "RNG seed");
    c_gen->add_option("--etypes", g_spec.n_etypes, "number of etypes");
    c_gen->add_option("--density", g_spec.edge_density, "object property density");
    c_gen->add_option("--depth", g_spec.is_a_depth, "is-a depth 0..3");
    c_gen->add_option("--overlap", g_spec.overlap_fraction, "shared fraction");
    c_gen->add_option("--out-dir", g_outdir, "directory for x.json/y.json/truth.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : EXIT_VALIDATION;
    }

    try {
        if (*c_validate) {
            skg::Skg schema = load_schema_file(v_input, strict);
            skg::ValidationReport rep = skg::validate(schema);
            for (const auto& i : rep.errors)
                std::cout << "error " << i.code << " " << i.location << ": "
                          << i.message << "\n";
            for (const auto& i : rep.warnings)
                std::cout << "warning " << i.code << " " << i.location << ": "
                          << i.message << "\n";
            if (!rep.ok()) return EXIT_VALIDATION;
            std::cout << "ok: " << schema.name << " (" << schema.etypes.size()
                      << " etypes, " << schema.object_properties.size()
                      << " object properties)\n";
            return 0;
        }
        if (*c_import) {
            std::string name = i_name;
            if (name.empty()) {
                name = i_input;
                auto slash = name.find_last_of('/');
                if (slash != std::string::npos) name = name.substr(slash + 1);
                auto dot = name.rfind('.');
                if (dot != std::string::npos) name = name.substr(0, dot);
            }
            std::vector<std::string> warnings;
            skg::Skg schema =
                skg::import_turtle(read_file(i_input), name, strict, &warnings);
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
            write_output(i_output, skg::save_skg(schema));
            return 0;
        }
        if (*c_equiv) {
            skg::SimilarityConfig cfg = effective_similarity(config_path, c_equiv);
            std::vector<skg::Skg> schemas;
            for (const auto& path : e_inputs)
                schemas.push_back(load_schema_file(path, strict));
            std::vector<const skg::Skg*> ptrs;
            for (const auto& s : schemas) ptrs.push_back(&s);
            std::string reference = e_reference.empty() ? schemas.front().name
                                                        : e_reference;
            skg::MappingOptions opts;
            for (const auto& w : e_within) opts.within_schema.insert(w);
            skg::EquivalenceMapping mapping =
                skg::build_mapping(ptrs, reference, cfg, opts);
            write_output(e_output, skg::mapping_to_json(mapping, {config_echo(cfg)}));
            return 0;
        }
        if (*c_weights) {
            skg::Skg schema = load_schema_file(w_input, strict);
            skg::ValidationReport rep = skg::validate(schema);
            if (!rep.ok()) {
                for (const auto& i : rep.errors)
                    std::cerr << "error " << i.code << " " << i.location << ": "
                              << i.message << "\n";
                return EXIT_VALIDATION;
            }
            skg::WeightTable table = skg::compute_weights(schema, w_preprocess);
            std::string header = "schema: " + schema.name +
                                 (w_preprocess ? " (preprocessed)" : "");
            write_output(w_output, skg::weight_report_csv(table, {header}));
            return 0;
        }
        if (*c_compare) {
            skg::Skg x = load_schema_file(cm_x, strict);
            skg::Skg y = load_schema_file(cm_y, strict);
            skg::EquivalenceMapping mapping =
                skg::mapping_from_json(read_file(cm_mapping));
            std::set<int> methods = parse_methods(cm_methods);
            if (cm_directions != "xy" && cm_directions != "yx" &&
                cm_directions != "both")
                throw skg::SkgError("config", "--directions must be xy, yx or both");
            std::vector<skg::ComparisonReport> reports;
            if (cm_directions != "yx")
                for (auto& r : skg::compare(x, y, mapping, methods))
                    reports.push_back(std::move(r));
            if (cm_directions != "xy")
                for (auto& r : skg::compare(y, x, mapping, methods))
                    reports.push_back(std::move(r));
            std::vector<std::string> header = {"methods: " + cm_methods};
            write_output(cm_output, cm_format == "csv"
                                        ? skg::report_summary_csv(reports, header)
                                        : skg::report_to_json(reports, header));
            return 0;
        }
        if (*c_ablate) {
            skg::Skg x = load_schema_file(a_x, strict);
            skg::Skg y = load_schema_file(a_y, strict);
            skg::EquivalenceMapping mapping =
                skg::mapping_from_json(read_file(a_mapping));
            std::set<int> methods = parse_methods(a_methods);
            skg::AblationResult result = skg::ablate(x, y, mapping, methods);
            std::string out = skg::ablation_csv(result, {"methods: " + a_methods});
            if (a_trend) out += skg::trend_to_text(skg::trend_summary({result}));
            write_output(a_output, out);
            return 0;
        }
        if (*c_gen) {
            skg::SyntheticPair pair = skg::generate_synthetic(g_spec);
            write_output(g_outdir + "/x.json", skg::save_skg(pair.x));
            write_output(g_outdir + "/y.json", skg::save_skg(pair.y));
            write_output(g_outdir + "/truth.json", skg::mapping_to_json(pair.truth));
            return 0;
        }
    } catch (const skg::SkgError& e) {
        std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
        return (e.code() == "io" || e.code() == "syntax" || e.code() == "turtle")
                   ? EXIT_IO
                   : EXIT_VALIDATION;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    }
    return 0;
}
