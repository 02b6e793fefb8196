#include "skg/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace skg {

namespace {

const char* RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const char* RDFS_SUBCLASS = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
const char* RDFS_SUBPROP = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
const char* RDFS_DOMAIN = "http://www.w3.org/2000/01/rdf-schema#domain";
const char* RDFS_RANGE = "http://www.w3.org/2000/01/rdf-schema#range";
const char* RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label";
const char* OWL_CLASS = "http://www.w3.org/2002/07/owl#Class";
const char* OWL_OBJPROP = "http://www.w3.org/2002/07/owl#ObjectProperty";
const char* OWL_RESTRICTION = "http://www.w3.org/2002/07/owl#Restriction";
const char* OWL_ONPROPERTY = "http://www.w3.org/2002/07/owl#onProperty";
const char* OWL_SOMEVALUES = "http://www.w3.org/2002/07/owl#someValuesFrom";
const char* OWL_ALLVALUES = "http://www.w3.org/2002/07/owl#allValuesFrom";
const char* OWL_CARDINALITY = "http://www.w3.org/2002/07/owl#cardinality";

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    char peek2() const { return pos + 1 < text.size() ? text[pos + 1] : '\0'; }

    char advance() {
        char c = text[pos++];
        if (c == '\n') { ++line; col = 1; } else ++col;
        return c;
    }

    void skip_ws() {
        while (pos < text.size()) {
            char c = peek();
            if (c == '#') {
                while (pos < text.size() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
};

struct Parser {
    Lexer lex;
    TurtleDocument doc;
    int blank_counter = 0;

    explicit Parser(const std::string& text) : lex(text) {}

    [[noreturn]] void fail(const std::string& msg) {
        throw TurtleError(msg, lex.line, lex.col);
    }

    bool at_end() {
        lex.skip_ws();
        return lex.peek() == '\0';
    }

    void expect(char c) {
        lex.skip_ws();
        if (lex.peek() != c)
            fail(std::string("expected '") + c + "'");
        lex.advance();
    }

    bool name_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
               c == '.';
    }

    std::string read_name() {
        std::string out;
        while (name_char(lex.peek())) out += lex.advance();
        // a trailing dot belongs to the statement terminator
        while (!out.empty() && out.back() == '.') {
            out.pop_back();
            --lex.pos;
            --lex.col;
        }
        return out;
    }

    std::string read_iriref() {
        lex.advance(); // '<'
        std::string out;
        while (lex.peek() != '>') {
            if (lex.peek() == '\0' || lex.peek() == '\n') fail("unterminated IRI");
            out += lex.advance();
        }
        lex.advance();
        return out;
    }

    Term read_term() {
        lex.skip_ws();
        int line = lex.line, col = lex.col;
        char c = lex.peek();
        if (c == '<') return {TermKind::Iri, read_iriref()};
        if (c == '"') {
            lex.advance();
            std::string out;
            while (lex.peek() != '"') {
                if (lex.peek() == '\0') fail("unterminated string literal");
                char ch = lex.advance();
                if (ch == '\\') {
                    char esc = lex.advance();
                    switch (esc) {
                        case 'n': out += '\n'; break;
                        case 't': out += '\t'; break;
                        case '"': out += '"'; break;
                        case '\\': out += '\\'; break;
                        default: fail(std::string("unsupported escape '\\") + esc + "'");
                    }
                } else {
                    out += ch;
                }
            }
            lex.advance();
            return {TermKind::LiteralString, out};
        }
        if (c == '_' && lex.peek2() == ':') {
            lex.advance();
            lex.advance();
            return {TermKind::Blank, read_name()};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && std::isdigit(static_cast<unsigned char>(lex.peek2())))) {
            std::string out;
            if (c == '-') out += lex.advance();
            while (std::isdigit(static_cast<unsigned char>(lex.peek()))) out += lex.advance();
            return {TermKind::LiteralInt, out};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == ':') {
            std::string prefix;
            if (c != ':') prefix = read_name();
            if (lex.peek() != ':') {
                if (prefix == "a") return {TermKind::Iri, RDF_TYPE};
                throw TurtleError("unexpected bare name '" + prefix + "'", line, col);
            }
            lex.advance(); // ':'
            std::string local = read_name();
            auto it = doc.prefixes.find(prefix);
            if (it == doc.prefixes.end())
                throw TurtleError("undeclared prefix '" + prefix + ":'", line, col);
            return {TermKind::Iri, it->second + local};
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Term fresh_blank() {
        return {TermKind::Blank, "b#" + std::to_string(++blank_counter)};
    }

    void emit(const Term& s, const Term& p, const Term& o, int line, int col) {
        doc.triples.push_back({s, p, o, line, col});
    }

    // '[' predicateObjectList? ']' -> fresh blank node
    Term read_bracketed() {
        int line = lex.line, col = lex.col;
        expect('[');
        Term node = fresh_blank();
        lex.skip_ws();
        if (lex.peek() != ']') parse_predicate_object_list(node);
        lex.skip_ws();
        if (lex.peek() != ']')
            throw TurtleError("unterminated '['", line, col);
        lex.advance();
        return node;
    }

    Term read_object() {
        lex.skip_ws();
        if (lex.peek() == '[') return read_bracketed();
        return read_term();
    }

    void parse_predicate_object_list(const Term& subject) {
        while (true) {
            lex.skip_ws();
            int line = lex.line, col = lex.col;
            Term predicate = read_term();
            if (predicate.kind != TermKind::Iri)
                throw TurtleError("predicate must be an IRI", line, col);
            while (true) {
                Term object = read_object();
                emit(subject, predicate, object, line, col);
                lex.skip_ws();
                if (lex.peek() != ',') break;
                lex.advance();
            }
            lex.skip_ws();
            if (lex.peek() != ';') break;
            lex.advance();
            lex.skip_ws();
            // dangling ';' before '.' or ']' is allowed
            if (lex.peek() == '.' || lex.peek() == ']') break;
        }
    }

    void parse_directive() {
        // @prefix name: <iri> .
        for (const char* kw = "@prefix"; *kw; ++kw)
            if (lex.advance() != *kw) fail("malformed @prefix directive");
        lex.skip_ws();
        std::string name = read_name();
        if (lex.peek() != ':') fail("expected ':' in @prefix directive");
        lex.advance();
        lex.skip_ws();
        if (lex.peek() != '<') fail("expected IRI in @prefix directive");
        std::string iri = read_iriref();
        expect('.');
        doc.prefixes[name] = iri;
    }

    TurtleDocument parse() {
        while (!at_end()) {
            if (lex.peek() == '@') {
                parse_directive();
                continue;
            }
            Term subject = lex.peek() == '[' ? read_bracketed() : read_term();
            if (subject.kind == TermKind::LiteralString ||
                subject.kind == TermKind::LiteralInt)
                fail("literal cannot be a subject");
            parse_predicate_object_list(subject);
            expect('.');
        }
        return std::move(doc);
    }
};

std::string local_name(const std::string& iri) {
    auto hash = iri.rfind('#');
    if (hash != std::string::npos) return iri.substr(hash + 1);
    auto slash = iri.rfind('/');
    if (slash != std::string::npos) return iri.substr(slash + 1);
    return iri;
}

} // namespace

TurtleDocument parse_turtle(const std::string& text) {
    return Parser(text).parse();
}

namespace {

struct Lowering {
    const TurtleDocument& doc;
    bool strict;
    std::vector<std::string>* warnings;
    Skg skg;
    std::unordered_map<std::string, std::size_t> etype_pos; // id -> index
    std::unordered_map<std::string, std::size_t> prop_pos;
    int anon_counter = 0;

    void warn_or_fail(const std::string& msg) {
        if (strict) throw SkgError("unsupported", msg);
        if (warnings) warnings->push_back(msg);
    }

    std::size_t ensure_etype(const std::string& id, bool anonymous) {
        auto it = etype_pos.find(id);
        if (it != etype_pos.end()) return it->second;
        Etype e;
        e.id = id;
        e.anonymous = anonymous;
        if (!anonymous) e.labels.push_back(id);
        etype_pos[id] = skg.etypes.size();
        skg.etypes.push_back(std::move(e));
        return skg.etypes.size() - 1;
    }

    // triples about one blank node
    std::vector<const Triple*> about_blank(const std::string& label) const {
        std::vector<const Triple*> out;
        for (const auto& t : doc.triples)
            if (t.subject.kind == TermKind::Blank && t.subject.value == label)
                out.push_back(&t);
        return out;
    }

    const Term* blank_object(const std::vector<const Triple*>& triples,
                             const char* predicate) const {
        for (const Triple* t : triples)
            if (t->predicate.value == predicate) return &t->object;
        return nullptr;
    }
};

} // namespace

Skg lower_to_skg(const TurtleDocument& doc, const std::string& schema_name,
                 bool strict, std::vector<std::string>* warnings) {
    Lowering low{doc, strict, warnings, {}, {}, {}, 0};
    low.skg.name = schema_name;

    std::unordered_set<std::string> class_iris, prop_iris;
    for (const auto& t : doc.triples) {
        if (t.predicate.value != RDF_TYPE || t.subject.kind != TermKind::Iri) continue;
        if (t.object.value == OWL_CLASS) class_iris.insert(t.subject.value);
        if (t.object.value == OWL_OBJPROP) prop_iris.insert(t.subject.value);
    }

    // declared classes first, in document order
    for (const auto& t : doc.triples)
        if (t.predicate.value == RDF_TYPE && t.subject.kind == TermKind::Iri &&
            t.object.value == OWL_CLASS)
            low.ensure_etype(local_name(t.subject.value), false);

    std::unordered_map<std::string, std::vector<std::string>> labels;
    for (const auto& t : doc.triples)
        if (t.predicate.value == RDFS_LABEL && t.subject.kind == TermKind::Iri) {
            if (t.object.kind != TermKind::LiteralString) {
                low.warn_or_fail("rdfs:label of <" + t.subject.value +
                                 "> is not a string literal");
                continue;
            }
            labels[t.subject.value].push_back(t.object.value);
        }

    auto named_class_ref = [&](const Term& term, const char* what) -> std::string {
        if (term.kind != TermKind::Iri)
            throw SkgError("filler", std::string(what) + " is not a named class");
        std::string id = local_name(term.value);
        if (!class_iris.count(term.value) && !low.etype_pos.count(id)) {
            low.warn_or_fail("undeclared class <" + term.value +
                             "> implicitly created");
            if (strict)
                throw SkgError("unresolved-reference",
                               "undeclared class <" + term.value + ">");
        }
        low.ensure_etype(id, false);
        return id;
    };

    // object properties with domain and range
    struct PendingProp {
        std::string iri, id;
        std::optional<std::string> domain, range, sub;
    };
    std::vector<PendingProp> pending;
    std::unordered_map<std::string, std::size_t> pending_by_iri;
    for (const auto& t : doc.triples)
        if (t.predicate.value == RDF_TYPE && t.subject.kind == TermKind::Iri &&
            t.object.value == OWL_OBJPROP && !pending_by_iri.count(t.subject.value)) {
            pending_by_iri[t.subject.value] = pending.size();
            pending.push_back({t.subject.value, local_name(t.subject.value), {}, {}, {}});
        }
    for (const auto& t : doc.triples) {
        if (t.subject.kind != TermKind::Iri) continue;
        auto it = pending_by_iri.find(t.subject.value);
        if (it == pending_by_iri.end()) continue;
        PendingProp& pp = pending[it->second];
        if (t.predicate.value == RDFS_DOMAIN)
            pp.domain = named_class_ref(t.object, "rdfs:domain");
        else if (t.predicate.value == RDFS_RANGE)
            pp.range = named_class_ref(t.object, "rdfs:range");
        else if (t.predicate.value == RDFS_SUBPROP) {
            if (t.object.kind == TermKind::Iri)
                pp.sub = local_name(t.object.value);
            else
                low.warn_or_fail("rdfs:subPropertyOf of <" + pp.iri +
                                 "> is not an IRI");
        }
    }
    for (const auto& pp : pending) {
        if (!pp.domain || !pp.range) {
            low.warn_or_fail("object property <" + pp.iri +
                             "> lacks rdfs:domain or rdfs:range and was skipped");
            continue;
        }
        ObjectProperty op;
        op.id = pp.id;
        auto lit = labels.find(pp.iri);
        op.labels = lit != labels.end() ? lit->second
                                        : std::vector<std::string>{pp.id};
        op.domain = *pp.domain;
        op.range = *pp.range;
        op.sub_property_of = pp.sub;
        low.prop_pos[op.id] = low.skg.object_properties.size();
        low.skg.object_properties.push_back(std::move(op));
    }
    // drop sub_property_of links to properties that were skipped
    for (auto& op : low.skg.object_properties)
        if (op.sub_property_of && !low.prop_pos.count(*op.sub_property_of)) {
            low.warn_or_fail("property '" + op.id + "' references sub-property '" +
                             *op.sub_property_of + "' that produced no edge");
            op.sub_property_of.reset();
        }

    // subClassOf: named -> named, or named -> restriction blank node
    for (const auto& t : doc.triples) {
        if (t.predicate.value != RDFS_SUBCLASS) continue;
        if (t.subject.kind != TermKind::Iri) {
            low.warn_or_fail("rdfs:subClassOf with a non-IRI subject skipped");
            continue;
        }
        std::string sub_id = named_class_ref(t.subject, "rdfs:subClassOf subject");
        if (t.object.kind == TermKind::Iri) {
            std::string super_id = named_class_ref(t.object, "rdfs:subClassOf object");
            low.skg.is_a.push_back({sub_id, super_id});
            continue;
        }
        if (t.object.kind != TermKind::Blank) {
            low.warn_or_fail("rdfs:subClassOf object must be a class or restriction");
            continue;
        }
        auto about = low.about_blank(t.object.value);
        const Term* type = low.blank_object(about, RDF_TYPE);
        if (!type || type->value != OWL_RESTRICTION) {
            low.warn_or_fail("blank superclass _:" + t.object.value +
                             " is not an owl:Restriction");
            continue;
        }
        const Term* on_prop = low.blank_object(about, OWL_ONPROPERTY);
        if (!on_prop || on_prop->kind != TermKind::Iri)
            throw SkgError("restriction", "restriction _:" + t.object.value +
                                              " lacks owl:onProperty");
        const Term* filler = low.blank_object(about, OWL_SOMEVALUES);
        if (!filler) filler = low.blank_object(about, OWL_ALLVALUES);
        std::string filler_id;
        if (filler) {
            if (filler->kind != TermKind::Iri)
                throw SkgError("restriction", "restriction _:" + t.object.value +
                                                  " filler is not a named class");
            filler_id = named_class_ref(*filler, "restriction filler");
        } else if (low.blank_object(about, OWL_CARDINALITY)) {
            // cardinality restrictions borrow the restricted property's range
            std::string pid = local_name(on_prop->value);
            auto pit = low.prop_pos.find(pid);
            if (pit != low.prop_pos.end()) {
                filler_id = low.skg.object_properties[pit->second].range;
            } else {
                low.warn_or_fail("cardinality restriction on <" + on_prop->value +
                                 "> has no resolvable range; no edge created");
            }
        } else {
            throw SkgError("restriction",
                           "restriction _:" + t.object.value +
                               " lacks owl:someValuesFrom/allValuesFrom/cardinality");
        }

        std::string anon_id = "_anon" + std::to_string(++low.anon_counter);
        low.ensure_etype(anon_id, true);
        low.skg.is_a.push_back({sub_id, anon_id});
        if (!filler_id.empty()) {
            std::string pid = local_name(on_prop->value);
            ObjectProperty op;
            op.id = anon_id + "." + pid;
            op.labels = {pid};
            op.domain = anon_id;
            op.range = filler_id;
            if (low.prop_pos.count(pid)) op.sub_property_of = pid;
            low.prop_pos[op.id] = low.skg.object_properties.size();
            low.skg.object_properties.push_back(std::move(op));
        }
    }

    // instance membership: i a C with declared class C
    for (const auto& t : doc.triples) {
        if (t.predicate.value != RDF_TYPE || t.subject.kind != TermKind::Iri) continue;
        if (!class_iris.count(t.object.value)) continue;
        if (class_iris.count(t.subject.value) || prop_iris.count(t.subject.value))
            continue;
        std::string cid = local_name(t.object.value);
        auto it = low.etype_pos.find(cid);
        if (it == low.etype_pos.end()) continue;
        auto& instances = low.skg.etypes[it->second].instances;
        std::string iid = local_name(t.subject.value);
        if (std::find(instances.begin(), instances.end(), iid) == instances.end())
            instances.push_back(iid);
    }

    // apply collected labels to etypes (replacing the default id label)
    for (auto& e : low.skg.etypes) {
        for (const auto& [iri, ls] : labels)
            if (local_name(iri) == e.id && class_iris.count(iri)) {
                e.labels = ls;
                break;
            }
    }

    return low.skg;
}

Skg import_turtle(const std::string& text, const std::string& schema_name,
                  bool strict, std::vector<std::string>* warnings) {
    return lower_to_skg(parse_turtle(text), schema_name, strict, warnings);
}

} // namespace skg
