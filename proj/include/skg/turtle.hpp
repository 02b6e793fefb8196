#pragma once

#include <map>
#include <string>
#include <vector>

#include "skg/model.hpp"

namespace skg {

enum class TermKind { Iri, Blank, LiteralString, LiteralInt };

struct Term {
    TermKind kind = TermKind::Iri;
    std::string value; // resolved IRI, blank label, or literal lexical form
    bool operator==(const Term&) const = default;
};

struct Triple {
    Term subject, predicate, object;
    int line = 0, col = 0;
};

struct TurtleDocument {
    std::map<std::string, std::string> prefixes;
    std::vector<Triple> triples;
};

// Thrown with 1-based line/column on lexical errors, undeclared prefixes and
// unterminated brackets.
class TurtleError : public SkgError {
public:
    TurtleError(const std::string& message, int line, int col)
        : SkgError("turtle", message + " at " + std::to_string(line) + ":" +
                                 std::to_string(col)),
          line(line), col(col) {}
    int line, col;
};

// Restricted Turtle subset: @prefix, `a`, ';'/',' abbreviations, [ ... ]
// blank nodes, _:labels, string and integer literals. No collections, no
// datatyped literals, no relative IRI resolution.
TurtleDocument parse_turtle(const std::string& text);

// Lowers the recognized RDFS/OWL vocabulary into an Skg: owl:Class ->
// named etype, owl:ObjectProperty with rdfs:domain/range -> ObjectProperty,
// rdfs:subClassOf / rdfs:subPropertyOf -> hierarchy, owl:Restriction blank
// nodes -> anonymous etypes with a property toward the filler, `x a Class`
// -> instance membership. Strict mode turns unsupported constructs into
// errors instead of warnings.
Skg lower_to_skg(const TurtleDocument& doc, const std::string& schema_name,
                 bool strict = false, std::vector<std::string>* warnings = nullptr);

Skg import_turtle(const std::string& text, const std::string& schema_name,
                  bool strict = false, std::vector<std::string>* warnings = nullptr);

} // namespace skg
