#include "lagspec/cli.hpp"

#include "lagspec/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace lagspec {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

const Json& array_of(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
}

Point point_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) fail(where, "expected a pair [q, p]");
    return {rational_from_json(j[0], where + "/0"), rational_from_json(j[1], where + "/1")};
}

RVec rvec_from_json(const Json& j, const std::string& where) {
    RVec v;
    std::size_t i = 0;
    for (const auto& x : array_of(j, where)) {
        v.push_back(rational_from_json(x, where + "/" + std::to_string(i)));
        ++i;
    }
    return v;
}

}  // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path + ": cannot write file");
    out << text;
}

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.dump());
    if (!j.is_string()) fail(where, "expected an exact rational string such as \"3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
        fail(where, e.what());
    }
}

Json rational_to_json(const Rational& r) { return to_string(r); }

void require_schema(const Json& j, const std::string& where) {
    const Json& s = field(j, "schema", where);
    if (!s.is_string() || s.get<std::string>() != "v1") fail(where + "/schema", "unsupported schema, expected \"v1\"");
}

Json point_to_json(const Point& z) { return Json::array({to_string(z.q), to_string(z.p)}); }

Json rvec_to_json(const RVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

Json curve_to_json(const PLCurve& l) {
    Json vs = Json::array();
    for (const auto& v : l.vertices()) vs.push_back(point_to_json(v));
    return Json{{"schema", "v1"},
                {"period", to_string(l.period())},
                {"brane_constant", to_string(l.brane_constant())},
                {"vertices", vs}};
}

PLCurve curve_from_json(const Json& j, const std::string& where) {
    require_schema(j, where);
    Rational period = rational_from_json(field(j, "period", where), where + "/period");
    Rational brane = rational_from_json(field(j, "brane_constant", where), where + "/brane_constant");
    std::vector<Point> lift;
    std::size_t i = 0;
    for (const auto& v : array_of(field(j, "vertices", where), where + "/vertices")) {
        lift.push_back(point_from_json(v, where + "/vertices/" + std::to_string(i)));
        ++i;
    }
    try {
        return PLCurve(period, std::move(lift), brane);
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

Json function_to_json(const PLFunction& f) {
    Json ks = Json::array(), vs = Json::array();
    for (const auto& k : f.knots) ks.push_back(to_string(k));
    for (const auto& v : f.values) vs.push_back(to_string(v));
    return Json{{"schema", "v1"}, {"period", to_string(f.period)}, {"knots", ks}, {"values", vs}};
}

PLFunction function_from_json(const Json& j, const std::string& where) {
    require_schema(j, where);
    PLFunction f{rational_from_json(field(j, "period", where), where + "/period"),
                 rvec_from_json(field(j, "knots", where), where + "/knots"),
                 rvec_from_json(field(j, "values", where), where + "/values")};
    if (f.knots.empty() || f.knots.size() != f.values.size()) fail(where, "knots and values must match and be non-empty");
    if (f.period <= 0) fail(where + "/period", "period must be positive");
    for (std::size_t i = 0; i < f.knots.size(); ++i) {
        if (f.knots[i] < 0 || f.knots[i] >= f.period) fail(where + "/knots", "knots must lie in [0, period)");
        if (i > 0 && !(f.knots[i - 1] < f.knots[i])) fail(where + "/knots", "knots must increase");
    }
    return f;
}

Json barcode_to_json(const Barcode& b) {
    Json bars = Json::array();
    for (const auto& bar : b.canonical().bars)
        bars.push_back(Json{{"birth", to_string(bar.birth)}, {"death", to_string(bar.death)}, {"degree", bar.degree}});
    return Json{{"schema", "v1"}, {"bars", bars}};
}

Barcode barcode_from_json(const Json& j, const std::string& where) {
    require_schema(j, where);
    Barcode b;
    std::size_t i = 0;
    for (const auto& bar : array_of(field(j, "bars", where), where + "/bars")) {
        std::string w = where + "/bars/" + std::to_string(i++);
        const Json& birth = field(bar, "birth", w);
        const Json& death = field(bar, "death", w);
        const Json& degree = field(bar, "degree", w);
        if (!birth.is_string() || !death.is_string()) fail(w, "bar endpoints must be strings");
        if (!degree.is_number_integer()) fail(w + "/degree", "degree must be an integer");
        try {
            b.bars.push_back({ExtRational::parse(birth.get<std::string>()), ExtRational::parse(death.get<std::string>()),
                              degree.get<int>()});
        } catch (const InputError& e) {
            fail(w, e.what());
        }
        if (!(b.bars.back().birth < b.bars.back().death)) fail(w, "birth must precede death");
    }
    return b;
}

Json plset_to_json(const PLSet& V) {
    Json cells = Json::array();
    for (const auto& cell : V.cells) {
        Json c = Json::array();
        for (const auto& v : cell) c.push_back(rvec_to_json(v));
        cells.push_back(c);
    }
    return Json{{"schema", "v1"},
                {"n", V.n},
                {"split", V.split == CoordinateSplit::blocked ? "blocked" : "interleaved"},
                {"cells", cells}};
}

PLSet plset_from_json(const Json& j, const std::string& where) {
    require_schema(j, where);
    PLSet V;
    const Json& n = field(j, "n", where);
    if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) fail(where + "/n", "n must be a positive integer");
    V.n = n.get<std::size_t>();
    const Json& split = field(j, "split", where);
    if (split == "blocked")
        V.split = CoordinateSplit::blocked;
    else if (split == "interleaved")
        V.split = CoordinateSplit::interleaved;
    else
        fail(where + "/split", "split must be \"blocked\" or \"interleaved\"");
    std::size_t i = 0;
    for (const auto& cell : array_of(field(j, "cells", where), where + "/cells")) {
        std::string w = where + "/cells/" + std::to_string(i++);
        std::vector<RVec> vs;
        std::size_t k = 0;
        for (const auto& v : array_of(cell, w)) {
            vs.push_back(rvec_from_json(v, w + "/" + std::to_string(k++)));
            if (vs.back().size() != 2 * V.n) fail(w, "vertex has the wrong dimension");
        }
        if (vs.empty()) fail(w, "cell without vertices");
        V.cells.push_back(std::move(vs));
    }
    return V;
}

Json certificate_to_json(const Certificate& c) {
    Json j{{"name", c.name},
           {"claim", c.claim},
           {"value", to_string(c.value)},
           {"bound", to_string(c.bound)},
           {"pass", c.pass}};
    if (c.chain_bound) j["chain_bound"] = to_string(*c.chain_bound);
    return j;
}

Json probe_report_to_json(const ProbeReport& r) {
    Json j{{"schema", "v1"},
           {"z", point_to_json(r.z)},
           {"radius", to_string(r.radius)},
           {"gamma_lower_bound", to_string(r.gamma_lower_bound)},
           {"positive", r.positive},
           {"evaluated", r.evaluated}};
    if (r.witness) {
        Json path = Json::array();
        for (const auto& p : r.witness->path) path.push_back(point_to_json(p));
        j["witness"] = Json{{"segment", r.witness->segment},
                            {"direction", point_to_json(r.witness->direction)},
                            {"amplitude", to_string(r.witness->amplitude)},
                            {"gamma", to_string(r.witness->gamma)},
                            {"path", path}};
    }
    return j;
}

Json verdict_to_json(const RVec& x, const CoisotropyVerdict& v) {
    Json orth = Json::array();
    for (const auto& y : v.orthogonal_of_span) orth.push_back(rvec_to_json(y));
    Json j{{"point", rvec_to_json(x)}, {"cone_coisotropic", v.coisotropic}, {"orthogonal_of_span", orth}};
    if (v.witness_normal)
        j["witness"] = Json{{"hyperplane_normal", rvec_to_json(*v.witness_normal)},
                            {"orthogonal_direction", rvec_to_json(*v.witness_direction)}};
    return j;
}

ExperimentConfig config_from_json(const Json& j, const std::string& where) {
    require_schema(j, where);
    ExperimentConfig c;
    const Json& kind = field(j, "kind", where);
    if (!kind.is_string()) fail(where + "/kind", "expected a string");
    c.kind = kind.get<std::string>();
    if (auto it = j.find("inputs"); it != j.end()) {
        if (!it->is_object()) fail(where + "/inputs", "expected an object of file paths");
        auto base = std::filesystem::path(where).parent_path();
        for (const auto& [k, v] : it->items()) {
            if (!v.is_string()) fail(where + "/inputs/" + k, "expected a file path");
            auto p = std::filesystem::path(v.get<std::string>());
            if (p.is_relative()) p = base / p;
            c.inputs[k] = p.lexically_normal().string();
        }
    }
    if (auto it = j.find("parameters"); it != j.end()) {
        if (!it->is_object()) fail(where + "/parameters", "expected an object");
        c.parameters = *it;
    }
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_unsigned()) fail(where + "/seed", "seed must be a non-negative integer");
        c.seed = it->get<std::uint64_t>();
    }
    if (auto it = j.find("out"); it != j.end()) {
        if (!it->is_string()) fail(where + "/out", "expected a directory path");
        c.out_dir = it->get<std::string>();
    }
    return c;
}

Json config_to_json(const ExperimentConfig& c) {
    Json inputs = Json::object();
    for (const auto& [k, v] : c.inputs) inputs[k] = std::filesystem::path(v).filename().string();
    return Json{{"schema", "v1"}, {"kind", c.kind}, {"inputs", inputs}, {"parameters", c.parameters}, {"seed", c.seed}};
}

}  // namespace lagspec
