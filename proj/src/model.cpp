#include "skg/model.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace skg {

const Etype* Skg::find_etype(std::string_view id) const {
    for (const auto& e : etypes)
        if (e.id == id) return &e;
    return nullptr;
}

const ObjectProperty* Skg::find_property(std::string_view id) const {
    for (const auto& p : object_properties)
        if (p.id == id) return &p;
    return nullptr;
}

std::size_t Skg::named_count() const {
    std::size_t n = 0;
    for (const auto& e : etypes)
        if (!e.anonymous) ++n;
    return n;
}

namespace {

void add_issue(std::vector<Issue>& out, std::string code, std::string loc,
               std::string msg) {
    out.push_back({std::move(code), std::move(loc), std::move(msg)});
}

void sort_issues(std::vector<Issue>& v) {
    std::sort(v.begin(), v.end(), [](const Issue& a, const Issue& b) {
        return std::tie(a.code, a.location) < std::tie(b.code, b.location);
    });
}

} // namespace

ValidationReport validate(const Skg& skg) {
    ValidationReport rep;
    std::unordered_map<std::string, const Etype*> etype_by_id;
    for (const auto& e : skg.etypes) {
        if (e.id.empty())
            add_issue(rep.errors, "empty-id", "etype", "etype with empty id");
        if (!etype_by_id.emplace(e.id, &e).second)
            add_issue(rep.errors, "duplicate-id", "etype:" + e.id,
                      "duplicate etype id '" + e.id + "'");
        if (e.labels.empty() && !e.anonymous)
            add_issue(rep.errors, "missing-label", "etype:" + e.id,
                      "named etype '" + e.id + "' has no labels");
        std::unordered_set<std::string> seen;
        for (const auto& inst : e.instances)
            if (!seen.insert(inst).second)
                add_issue(rep.errors, "duplicate-instance", "etype:" + e.id,
                          "instance '" + inst + "' listed twice in etype '" + e.id + "'");
    }

    std::unordered_map<std::string, const ObjectProperty*> prop_by_id;
    for (const auto& p : skg.object_properties) {
        if (!prop_by_id.emplace(p.id, &p).second)
            add_issue(rep.errors, "duplicate-id", "property:" + p.id,
                      "duplicate object property id '" + p.id + "'");
        for (const std::string* ref : {&p.domain, &p.range})
            if (!etype_by_id.count(*ref))
                add_issue(rep.errors, "unresolved-reference", "property:" + p.id,
                          "property '" + p.id + "' references unknown etype '" + *ref + "'");
    }
    for (const auto& p : skg.object_properties) {
        if (p.sub_property_of && !prop_by_id.count(*p.sub_property_of))
            add_issue(rep.errors, "unresolved-reference", "property:" + p.id,
                      "property '" + p.id + "' references unknown property '" +
                          *p.sub_property_of + "'");
    }

    // sub_property_of chains must be acyclic
    {
        std::unordered_map<std::string, int> state; // 0 unvisited, 1 on stack, 2 done
        std::function<bool(const std::string&)> walk = [&](const std::string& id) {
            int& st = state[id];
            if (st == 1) return false;
            if (st == 2) return true;
            st = 1;
            auto it = prop_by_id.find(id);
            if (it != prop_by_id.end() && it->second->sub_property_of &&
                prop_by_id.count(*it->second->sub_property_of)) {
                if (!walk(*it->second->sub_property_of)) {
                    state[id] = 2;
                    return false;
                }
            }
            st = 2;
            return true;
        };
        for (const auto& p : skg.object_properties)
            if (state[p.id] == 0 && !walk(p.id))
                add_issue(rep.errors, "subproperty-cycle", "property:" + p.id,
                          "sub_property_of chain through '" + p.id + "' is cyclic");
    }

    for (std::size_t i = 0; i < skg.is_a.size(); ++i) {
        const auto& edge = skg.is_a[i];
        const std::string loc = "is_a:" + std::to_string(i);
        for (const std::string* ref : {&edge.sub, &edge.super})
            if (!etype_by_id.count(*ref))
                add_issue(rep.errors, "unresolved-reference", loc,
                          "is-a edge references unknown etype '" + *ref + "'");
        auto it = etype_by_id.find(edge.sub);
        if (it != etype_by_id.end() && it->second->anonymous)
            add_issue(rep.errors, "anonymous-subclass", loc,
                      "anonymous etype '" + edge.sub + "' used as an is-a subclass");
    }

    // is-a cycle detection over resolvable edges
    {
        std::unordered_map<std::string, std::vector<std::string>> supers;
        for (const auto& e : skg.is_a)
            if (etype_by_id.count(e.sub) && etype_by_id.count(e.super))
                supers[e.sub].push_back(e.super);
        std::unordered_map<std::string, int> state;
        std::function<bool(const std::string&)> walk = [&](const std::string& id) {
            int& st = state[id];
            if (st == 1) return false;
            if (st == 2) return true;
            st = 1;
            for (const auto& up : supers[id])
                if (!walk(up)) {
                    state[id] = 2;
                    return false;
                }
            st = 2;
            return true;
        };
        for (const auto& e : skg.etypes)
            if (state[e.id] == 0 && !walk(e.id))
                add_issue(rep.errors, "is-a-cycle", "etype:" + e.id,
                          "is-a cycle through etype '" + e.id + "'");
    }

    sort_issues(rep.errors);
    sort_issues(rep.warnings);
    return rep;
}

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where, bool strict,
                std::vector<std::string>* warnings) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known) {
            std::string msg = "unknown key '" + it.key() + "' in " + where;
            if (strict) throw SkgError("unknown-key", msg);
            if (warnings) warnings->push_back(msg);
        }
    }
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array())
        throw SkgError("syntax", where + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string())
            throw SkgError("syntax", where + " must contain only strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

const json& required(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw SkgError("syntax", "missing key '" + std::string(key) + "' in " + where);
    return *it;
}

} // namespace

Skg load_skg(const std::string& text, bool strict,
             std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SkgError("syntax", std::string("JSON parse error at byte ") +
                                     std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object())
        throw SkgError("syntax", "top-level value must be an object");
    check_keys(doc, {"name", "etypes", "object_properties", "is_a"}, "document",
               strict, warnings);

    Skg skg;
    skg.name = required(doc, "name", "document").get<std::string>();

    for (const auto& je : required(doc, "etypes", "document")) {
        check_keys(je, {"id", "labels", "anonymous", "data_properties", "instances"},
                   "etype", strict, warnings);
        Etype e;
        e.id = required(je, "id", "etype").get<std::string>();
        e.labels = string_list(required(je, "labels", "etype " + e.id), "labels");
        e.anonymous = required(je, "anonymous", "etype " + e.id).get<bool>();
        e.data_properties =
            string_list(required(je, "data_properties", "etype " + e.id), "data_properties");
        e.instances = string_list(required(je, "instances", "etype " + e.id), "instances");
        skg.etypes.push_back(std::move(e));
    }
    for (const auto& jp : required(doc, "object_properties", "document")) {
        check_keys(jp, {"id", "labels", "domain", "range", "sub_property_of", "synthetic"},
                   "object_property", strict, warnings);
        ObjectProperty p;
        p.id = required(jp, "id", "object_property").get<std::string>();
        p.labels = string_list(required(jp, "labels", "property " + p.id), "labels");
        p.domain = required(jp, "domain", "property " + p.id).get<std::string>();
        p.range = required(jp, "range", "property " + p.id).get<std::string>();
        const json& sub = required(jp, "sub_property_of", "property " + p.id);
        if (!sub.is_null()) p.sub_property_of = sub.get<std::string>();
        p.synthetic = required(jp, "synthetic", "property " + p.id).get<bool>();
        skg.object_properties.push_back(std::move(p));
    }
    for (const auto& ja : required(doc, "is_a", "document")) {
        check_keys(ja, {"sub", "super"}, "is_a edge", strict, warnings);
        skg.is_a.push_back({required(ja, "sub", "is_a edge").get<std::string>(),
                            required(ja, "super", "is_a edge").get<std::string>()});
    }

    // duplicate ids and unresolved references are load-time failures
    {
        std::unordered_set<std::string> ids;
        for (const auto& e : skg.etypes)
            if (!ids.insert(e.id).second)
                throw SkgError("duplicate-id", "duplicate etype id '" + e.id + "'");
        std::unordered_set<std::string> pids;
        for (const auto& p : skg.object_properties) {
            if (!pids.insert(p.id).second)
                throw SkgError("duplicate-id", "duplicate property id '" + p.id + "'");
            for (const std::string* ref : {&p.domain, &p.range})
                if (!ids.count(*ref))
                    throw SkgError("unresolved-reference",
                                   "property '" + p.id + "' references unknown etype '" +
                                       *ref + "'");
        }
        for (const auto& p : skg.object_properties)
            if (p.sub_property_of && !pids.count(*p.sub_property_of))
                throw SkgError("unresolved-reference",
                               "property '" + p.id + "' references unknown property '" +
                                   *p.sub_property_of + "'");
        for (const auto& e : skg.is_a)
            for (const std::string* ref : {&e.sub, &e.super})
                if (!ids.count(*ref))
                    throw SkgError("unresolved-reference",
                                   "is-a edge references unknown etype '" + *ref + "'");
    }
    return skg;
}

std::string save_skg(const Skg& skg) {
    nlohmann::ordered_json doc;
    doc["name"] = skg.name;
    doc["etypes"] = json::array();
    for (const auto& e : skg.etypes) {
        nlohmann::ordered_json je;
        je["id"] = e.id;
        je["labels"] = e.labels;
        je["anonymous"] = e.anonymous;
        je["data_properties"] = e.data_properties;
        je["instances"] = e.instances;
        doc["etypes"].push_back(std::move(je));
    }
    doc["object_properties"] = json::array();
    for (const auto& p : skg.object_properties) {
        nlohmann::ordered_json jp;
        jp["id"] = p.id;
        jp["labels"] = p.labels;
        jp["domain"] = p.domain;
        jp["range"] = p.range;
        if (p.sub_property_of)
            jp["sub_property_of"] = *p.sub_property_of;
        else
            jp["sub_property_of"] = nullptr;
        jp["synthetic"] = p.synthetic;
        doc["object_properties"].push_back(std::move(jp));
    }
    doc["is_a"] = json::array();
    for (const auto& e : skg.is_a) {
        nlohmann::ordered_json ja;
        ja["sub"] = e.sub;
        ja["super"] = e.super;
        doc["is_a"].push_back(std::move(ja));
    }
    return doc.dump(2) + "\n";
}

bool structurally_equal(const Skg& a, const Skg& b) {
    auto etype_eq = [](const Etype& x, const Etype& y) {
        return x.id == y.id && x.labels == y.labels && x.anonymous == y.anonymous &&
               x.data_properties == y.data_properties && x.instances == y.instances;
    };
    auto prop_eq = [](const ObjectProperty& x, const ObjectProperty& y) {
        return x.id == y.id && x.labels == y.labels && x.domain == y.domain &&
               x.range == y.range && x.sub_property_of == y.sub_property_of &&
               x.synthetic == y.synthetic;
    };
    if (a.name != b.name || a.etypes.size() != b.etypes.size() ||
        a.object_properties.size() != b.object_properties.size() ||
        a.is_a.size() != b.is_a.size())
        return false;
    for (std::size_t i = 0; i < a.etypes.size(); ++i)
        if (!etype_eq(a.etypes[i], b.etypes[i])) return false;
    for (std::size_t i = 0; i < a.object_properties.size(); ++i)
        if (!prop_eq(a.object_properties[i], b.object_properties[i])) return false;
    for (std::size_t i = 0; i < a.is_a.size(); ++i)
        if (a.is_a[i].sub != b.is_a[i].sub || a.is_a[i].super != b.is_a[i].super)
            return false;
    return true;
}

} // namespace skg
