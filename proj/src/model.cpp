#include "gbpd/model.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

namespace gbpd {

using nlohmann::json;

namespace {

json load_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON document");
    return j;
}

Region region_from(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected an array of variable ids");
    std::vector<Var> vars;
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw ParseError(where + ": variable ids are integers");
        vars.push_back(v.get<Var>());
    }
    try {
        return Region(std::move(vars));
    } catch (const PreconditionError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

} // namespace

Model parse_model_text(const std::string& text) {
    json j = load_json(text);
    if (!j.is_object()) throw ParseError("model document must be a JSON object");

    if (!j.contains("variables") || !j["variables"].is_array() || j["variables"].empty())
        throw ParseError("variables: required non-empty array");
    Space space;
    {
        std::set<Var> seen;
        std::vector<std::pair<Var, int>> decl;
        std::size_t k = 0;
        for (const auto& v : j["variables"]) {
            std::string where = "variables[" + std::to_string(k++) + "]";
            if (!v.is_object() || !v.contains("id") || !v.contains("cardinality"))
                throw ParseError(where + ": expected {id, cardinality}");
            Var id = v["id"].get<Var>();
            int card = v["cardinality"].get<int>();
            if (id < 0) throw ParseError(where + ".id: must be non-negative");
            if (card < 1 || card > (1 << 16))
                throw ParseError(where + ".cardinality: out of range");
            if (!seen.insert(id).second) throw ParseError(where + ".id: duplicate");
            decl.emplace_back(id, card);
        }
        std::sort(decl.begin(), decl.end());
        for (auto [id, card] : decl) {
            space.vars.push_back(id);
            space.cards.push_back(card);
        }
    }

    bool close = true, include_empty = true;
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) throw ParseError("options: expected an object");
        if (o.contains("close")) close = o["close"].get<bool>();
        if (o.contains("include_empty")) include_empty = o["include_empty"].get<bool>();
    }

    std::vector<Region> regions;
    std::set<Region> region_set;
    auto add_region = [&](const Region& r) {
        if (region_set.insert(r).second) regions.push_back(r);
    };
    if (j.contains("regions")) {
        if (!j["regions"].is_array()) throw ParseError("regions: expected an array");
        std::size_t k = 0;
        for (const auto& r : j["regions"])
            add_region(region_from(r, "regions[" + std::to_string(k++) + "]"));
    }

    struct FactorSpec {
        Region support;
        std::vector<double> table;
        bool is_energy = true;
    };
    std::vector<FactorSpec> factors;
    if (j.contains("factors")) {
        if (!j["factors"].is_array()) throw ParseError("factors: expected an array");
        std::size_t k = 0;
        for (const auto& f : j["factors"]) {
            std::string where = "factors[" + std::to_string(k++) + "]";
            if (!f.is_object() || !f.contains("vars") || !f.contains("table"))
                throw ParseError(where + ": expected {vars, table, kind?}");
            FactorSpec fs;
            fs.support = region_from(f["vars"], where + ".vars");
            for (Var v : fs.support.vars())
                if (std::find(space.vars.begin(), space.vars.end(), v) == space.vars.end())
                    throw ParseError(where + ".vars: variable " + std::to_string(v) +
                                     " not declared");
            if (!f["table"].is_array()) throw ParseError(where + ".table: expected an array");
            for (const auto& x : f["table"]) {
                if (!x.is_number()) throw ParseError(where + ".table: numeric entries only");
                fs.table.push_back(x.get<double>());
            }
            std::size_t expected = space.shape(fs.support).size();
            if (fs.table.size() != expected)
                throw ParseError(where + ".table: length " + std::to_string(fs.table.size()) +
                                 " does not match configuration count " +
                                 std::to_string(expected));
            if (f.contains("kind")) {
                std::string kind = f["kind"].get<std::string>();
                if (kind == "energy")
                    fs.is_energy = true;
                else if (kind == "potential")
                    fs.is_energy = false;
                else
                    throw ParseError(where + ".kind: must be \"energy\" or \"potential\"");
            }
            if (!fs.is_energy)
                for (double x : fs.table)
                    if (!(x > 0))
                        throw ParseError(where + ".table: potential tables must be positive");
            add_region(fs.support);
            factors.push_back(std::move(fs));
        }
    }
    if (regions.empty()) throw ParseError("model declares neither regions nor factors");

    Model model;
    model.complex = std::make_shared<Complex>(build(regions, close, include_empty), space);
    const Complex& C = *model.complex;

    model.h = make_field(C, 0);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        int a = C.X().index_of(factors[k].support);
        if (a < 0)
            throw ParseError("factors[" + std::to_string(k) +
                             "].vars: support is not a member of the built hypergraph");
        Tensor t(C.member_shape(a), factors[k].table);
        if (!factors[k].is_energy)
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = -std::log(t[i]);
        model.h.values[static_cast<std::size_t>(a)] += t;
    }

    if (j.contains("boundary")) {
        const auto& b = j["boundary"];
        if (!b.is_object() || !b.contains("vars"))
            throw ParseError("boundary: expected {vars, clamp?}");
        Region bvars = region_from(b["vars"], "boundary.vars");
        BoundaryClamp clamp;
        clamp.split = boundary_split(C.X(), bvars);
        clamp.values = make_field(C, 0);
        for (int i : clamp.split.boundary)
            clamp.values.values[static_cast<std::size_t>(i)] =
                model.h.values[static_cast<std::size_t>(i)];
        if (b.contains("clamp")) {
            if (!b["clamp"].is_array()) throw ParseError("boundary.clamp: expected an array");
            std::size_t k = 0;
            for (const auto& c : b["clamp"]) {
                std::string where = "boundary.clamp[" + std::to_string(k++) + "]";
                if (!c.is_object() || !c.contains("vars") || !c.contains("table"))
                    throw ParseError(where + ": expected {vars, table}");
                Region r = region_from(c["vars"], where + ".vars");
                int i = C.X().index_of(r);
                if (i < 0 || !clamp.split.is_boundary[static_cast<std::size_t>(i)])
                    throw ParseError(where + ".vars: not a boundary member");
                std::vector<double> table;
                for (const auto& x : c["table"]) table.push_back(x.get<double>());
                if (table.size() != C.member_shape(i).size())
                    throw ParseError(where + ".table: wrong length");
                clamp.values.values[static_cast<std::size_t>(i)] =
                    Tensor(C.member_shape(i), table);
            }
        }
        model.clamp = std::move(clamp);
    }

    return model;
}

Model parse_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_model_text(text);
}

} // namespace gbpd
