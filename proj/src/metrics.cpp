#include "skg/metrics.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace skg {

namespace {

struct SharedView {
    // group ids present in x resp. y
    std::unordered_set<int> in_x, in_y;
};

SharedView shared_view(const Skg& x, const Skg& y,
                       const EquivalenceMapping& mapping) {
    SharedView v;
    auto collect = [&](const Skg& s, std::unordered_set<int>& into) {
        for (const auto& e : s.etypes) {
            if (e.anonymous) continue;
            int g = mapping.group_of(s.name, e.id);
            if (g < 0)
                throw SkgError("unmapped-etype", "mapping does not mention etype '" +
                                                     e.id + "' of schema '" + s.name + "'");
            into.insert(g);
        }
    };
    collect(x, v.in_x);
    collect(y, v.in_y);
    return v;
}

bool is_shared(const SharedView& v, int g) {
    return v.in_x.count(g) && v.in_y.count(g);
}

void check_method(int method) {
    if (method < 1 || method > 3)
        throw SkgError("config", "method must be 1, 2 or 3");
}

} // namespace

Rat coverage(const Skg& x, const Skg& y, const EquivalenceMapping& mapping,
             int method) {
    check_method(method);
    SharedView v = shared_view(x, y, mapping);
    if (method == 1) {
        long long shared_count = 0, total = 0;
        for (const auto& e : y.etypes) {
            if (e.anonymous) continue;
            ++total;
            if (is_shared(v, mapping.group_of(y.name, e.id))) ++shared_count;
        }
        return total == 0 ? Rat(0) : Rat(shared_count, total);
    }
    WeightTable wy = compute_weights(y, method == 3);
    Rat sum(0);
    for (const auto& e : y.etypes) {
        if (e.anonymous) continue;
        if (is_shared(v, mapping.group_of(y.name, e.id))) sum += wy.weight(e.id);
    }
    return sum;
}

Rat flexibility(const Skg& x, const Skg& y, const EquivalenceMapping& mapping,
                int method) {
    check_method(method);
    SharedView v = shared_view(x, y, mapping);
    if (method == 1) {
        long long only = 0, total = 0;
        for (const auto& e : x.etypes) {
            if (e.anonymous) continue;
            ++total;
            if (!is_shared(v, mapping.group_of(x.name, e.id))) ++only;
        }
        return total == 0 ? Rat(0) : Rat(only, total);
    }
    WeightTable wx = compute_weights(x, method == 3);
    Rat sum(0);
    for (const auto& e : x.etypes) {
        if (e.anonymous) continue;
        if (!is_shared(v, mapping.group_of(x.name, e.id))) sum += wx.weight(e.id);
    }
    return sum;
}

ComparisonReport compare_one(const Skg& x, const Skg& y,
                             const EquivalenceMapping& mapping, int method,
                             const WeightTable* wx, const WeightTable* wy) {
    check_method(method);
    SharedView v = shared_view(x, y, mapping);

    ComparisonReport rep;
    rep.from_schema = x.name;
    rep.to_schema = y.name;
    rep.method = method;

    std::set<std::string> shared, x_only, y_only;
    for (const auto& e : x.etypes) {
        if (e.anonymous) continue;
        int g = mapping.group_of(x.name, e.id);
        (is_shared(v, g) ? shared : x_only).insert(mapping.canonical[g]);
    }
    for (const auto& e : y.etypes) {
        if (e.anonymous) continue;
        int g = mapping.group_of(y.name, e.id);
        if (!is_shared(v, g)) y_only.insert(mapping.canonical[g]);
    }
    rep.shared.assign(shared.begin(), shared.end());
    rep.x_only.assign(x_only.begin(), x_only.end());
    rep.y_only.assign(y_only.begin(), y_only.end());

    if (method == 1) {
        rep.coverage = coverage(x, y, mapping, 1);
        rep.flexibility = flexibility(x, y, mapping, 1);
        return rep;
    }
    const bool preprocess = method == 3;
    WeightTable local_x, local_y;
    if (!wx) { local_x = compute_weights(x, preprocess); wx = &local_x; }
    if (!wy) { local_y = compute_weights(y, preprocess); wy = &local_y; }
    Rat cov(0), flx(0);
    for (const auto& e : y.etypes) {
        if (e.anonymous) continue;
        if (is_shared(v, mapping.group_of(y.name, e.id))) cov += wy->weight(e.id);
    }
    for (const auto& e : x.etypes) {
        if (e.anonymous) continue;
        if (!is_shared(v, mapping.group_of(x.name, e.id))) flx += wx->weight(e.id);
    }
    rep.coverage = cov;
    rep.flexibility = flx;
    rep.weights_x = *wx;
    rep.weights_y = *wy;
    return rep;
}

std::vector<ComparisonReport> compare(const Skg& x, const Skg& y,
                                      const EquivalenceMapping& mapping,
                                      const std::set<int>& methods) {
    if (methods.empty())
        throw SkgError("config", "at least one method must be requested");
    std::vector<ComparisonReport> out;
    for (int m : methods) out.push_back(compare_one(x, y, mapping, m));
    return out;
}

namespace {

std::string rat_string(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

nlohmann::ordered_json table_json(const WeightTable& t) {
    nlohmann::ordered_json j;
    j["schema"] = t.schema;
    j["total_properties"] = t.total_properties;
    j["entries"] = nlohmann::ordered_json::object();
    for (const auto& [id, w] : t.entries)
        j["entries"][id] = {{"exact", rat_string(w)}, {"decimal", to_double(w)}};
    return j;
}

} // namespace

std::string report_to_json(const std::vector<ComparisonReport>& reports,
                           const std::vector<std::string>& header) {
    nlohmann::ordered_json doc;
    if (!header.empty()) doc["meta"] = header;
    doc["reports"] = nlohmann::json::array();
    for (const auto& rep : reports) {
        nlohmann::ordered_json j;
        j["from"] = rep.from_schema;
        j["to"] = rep.to_schema;
        j["method"] = rep.method;
        j["coverage"] = {{"exact", rat_string(rep.coverage)},
                         {"decimal", to_double(rep.coverage)}};
        j["flexibility"] = {{"exact", rat_string(rep.flexibility)},
                            {"decimal", to_double(rep.flexibility)}};
        j["shared"] = rep.shared;
        j["x_only"] = rep.x_only;
        j["y_only"] = rep.y_only;
        if (rep.weights_x) j["weights_x"] = table_json(*rep.weights_x);
        if (rep.weights_y) j["weights_y"] = table_json(*rep.weights_y);
        doc["reports"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string report_summary_csv(const std::vector<ComparisonReport>& reports,
                               const std::vector<std::string>& header) {
    std::ostringstream os;
    for (const auto& line : header) os << "# " << line << "\n";
    os << "from,to,method,coverage,flexibility\n";
    for (const auto& rep : reports)
        os << rep.from_schema << "," << rep.to_schema << "," << rep.method << ","
           << to_decimal(rep.coverage) << "," << to_decimal(rep.flexibility) << "\n";
    return os.str();
}

} // namespace skg
