#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace skg {

// Entity type of a schema knowledge graph. Anonymous etypes model OWL
// restrictions: they only ever appear on the superclass side of is-a edges
// and carry no labels of their own.
struct Etype {
    std::string id;
    std::vector<std::string> labels;
    std::vector<std::string> data_properties;
    std::vector<std::string> instances;
    bool anonymous = false;
};

// Directed labeled edge between two etypes. `synthetic` marks properties
// created by the is-a flattening pass, never by hand.
struct ObjectProperty {
    std::string id;
    std::vector<std::string> labels;
    std::string domain;
    std::string range;
    std::optional<std::string> sub_property_of;
    bool synthetic = false;
};

struct IsAEdge {
    std::string sub;
    std::string super;
};

struct Skg {
    std::string name;
    std::vector<Etype> etypes;
    std::vector<ObjectProperty> object_properties;
    std::vector<IsAEdge> is_a;

    const Etype* find_etype(std::string_view id) const;
    const ObjectProperty* find_property(std::string_view id) const;
    // Named (non-anonymous) etype count; the denominator of Method-1 ratios.
    std::size_t named_count() const;
};

struct Issue {
    std::string code;
    std::string location;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;
    bool ok() const { return errors.empty(); }
};

// Thrown on malformed input files and unresolvable references.
class SkgError : public std::runtime_error {
public:
    SkgError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Structural validation: duplicate ids, dangling references, is-a cycles,
// anonymous etypes on the wrong side of is-a, empty labels. Violations are
// data, not exceptions; ordering is deterministic by (code, location).
ValidationReport validate(const Skg& skg);

// SKG JSON interchange. Strict mode rejects unknown keys; lenient mode
// downgrades them to warnings collected in `warnings` when given.
Skg load_skg(const std::string& text, bool strict = true,
             std::vector<std::string>* warnings = nullptr);
std::string save_skg(const Skg& skg);

bool structurally_equal(const Skg& a, const Skg& b);

} // namespace skg
