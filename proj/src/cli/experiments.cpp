#include "lagspec/cli.hpp"

#include "lagspec/errors.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>

namespace lagspec {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Params {
    const Json& j;

    const Json* find(const char* key) const {
        auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    }
    Rational rational(const char* key, const Rational& fallback) const {
        const Json* v = find(key);
        return v ? rational_from_json(*v, std::string("parameters/") + key) : fallback;
    }
    std::size_t count(const char* key, std::size_t fallback) const {
        const Json* v = find(key);
        if (!v) return fallback;
        if (!v->is_number_unsigned()) throw InputError(std::string("parameters/") + key + ": expected a non-negative integer");
        return v->get<std::size_t>();
    }
    std::string text(const char* key, const std::string& fallback) const {
        const Json* v = find(key);
        if (!v) return fallback;
        if (!v->is_string()) throw InputError(std::string("parameters/") + key + ": expected a string");
        return v->get<std::string>();
    }
    bool flag(const char* key, bool fallback) const {
        const Json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) throw InputError(std::string("parameters/") + key + ": expected true or false");
        return v->get<bool>();
    }
};

Genericity genericity_of(const Params& p) {
    std::string g = p.text("genericity", "strict");
    if (g == "strict") return Genericity::strict;
    if (g == "limit") return Genericity::limit;
    throw InputError("parameters/genericity: expected \"strict\" or \"limit\"");
}

const std::string& input(const ExperimentConfig& c, const std::string& key) {
    auto it = c.inputs.find(key);
    if (it == c.inputs.end()) throw InputError("config: missing input '" + key + "'");
    return it->second;
}

CheckResult check(std::string name, std::string claim, const Rational& value, const Rational& bound, bool pass) {
    return {std::move(name), std::move(claim), to_string(value), to_string(bound), pass};
}

CheckResult from_certificate(const Certificate& c) { return {c.name, c.claim, to_string(c.value), to_string(c.bound), c.pass}; }

void add_file(RunReport& r, const std::string& name, const std::string& text) {
    r.artifacts.push_back(name);
    r.files[name] = text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Square square_of(const Params& p) {
    Square K;
    if (const Json* k = p.find("K")) {
        Params kp{*k};
        K.q0 = kp.rational("q0", 0);
        K.p0 = kp.rational("p0", 0);
        K.side = kp.rational("side", 1);
        if (K.side <= 0) throw InputError("parameters/K/side: must be positive");
    }
    return K;
}

std::vector<Point> dense_points_of(const Params& p, const Square& K) {
    const Json* d = p.find("dense_points");
    if (!d || d->is_string()) {
        if (d && d->get<std::string>() != "halton") throw InputError("parameters/dense_points: expected \"halton\" or a list");
        return halton_points(K, p.count("dense_count", 64), p.count("halton_skip", 1));
    }
    if (!d->is_array()) throw InputError("parameters/dense_points: expected \"halton\" or a list of points");
    std::vector<Point> out;
    std::size_t i = 0;
    for (const auto& z : *d) {
        std::string w = "parameters/dense_points/" + std::to_string(i++);
        if (!z.is_array() || z.size() != 2) throw InputError(w + ": expected [q, p]");
        out.push_back({rational_from_json(z[0], w), rational_from_json(z[1], w)});
    }
    return out;
}

TongueSchedule schedule_of(const Params& p) {
    Square K = square_of(p);
    Rational ratio = p.rational("ratio", Rational(1, 21));
    Rational eps0 = p.rational("epsilon0", ratio);
    std::size_t steps = p.count("steps", 6);
    if (!(ratio > 0 && ratio < 1)) throw InputError("parameters/ratio: must lie in (0, 1)");
    if (eps0 <= 0) throw InputError("parameters/epsilon0: must be positive");
    try {
        return run_schedule(dense_points_of(p, K), geometric_epsilons(eps0, ratio, steps + 1), K, steps);
    } catch (const PreconditionError& e) {
        throw InputError(std::string("parameters: ") + e.what());
    }
}

Grid grid_of(const Params& p, const Grid& fallback) {
    const Json* g = p.find("grid");
    if (!g) return fallback;
    Params gp{*g};
    Grid out{gp.rational("q0", fallback.q0), gp.rational("q1", fallback.q1), gp.rational("p0", fallback.p0),
             gp.rational("p1", fallback.p1), gp.count("nq", fallback.nq), gp.count("np", fallback.np)};
    if (!(out.q0 < out.q1 && out.p0 < out.p1) || out.nq == 0 || out.np == 0)
        throw InputError("parameters/grid: empty grid");
    return out;
}

// the open sup-box B(z, eps) meets the curve
bool box_meets_curve(const PLCurve& l, const Point& z, const Rational& eps) {
    const Rational& Q = l.period();
    const long n = static_cast<long>(l.size());
    for (long i = 0; i < n; ++i) {
        Point a = l.vertex(i), b = l.vertex(i + 1);
        Rational lo = min_of(a.q, b.q), hi = max_of(a.q, b.q);
        for (Rational k = ceil_of((z.q - eps - hi) / Q) - 1; k <= floor_of((z.q + eps - lo) / Q) + 1; k += 1) {
            Point as{a.q + k * Q, a.p}, d{b.q - a.q, b.p - a.p};
            Rational t0 = 0, t1 = 1;
            bool ok = true;
            for (int c = 0; c < 2 && ok; ++c) {
                Rational x0 = c == 0 ? as.q : as.p, dx = c == 0 ? d.q : d.p, zc = c == 0 ? z.q : z.p;
                if (dx == 0) {
                    ok = zc - eps < x0 && x0 < zc + eps;
                    continue;
                }
                Rational ta = (zc - eps - x0) / dx, tb = (zc + eps - x0) / dx;
                if (tb < ta) std::swap(ta, tb);
                t0 = max_of(t0, ta);
                t1 = min_of(t1, tb);
                ok = t0 < t1;
            }
            if (ok) return true;
        }
    }
    return false;
}

}  // namespace

bool RunReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Json RunReport::to_json() const {
    Json cs = Json::array();
    for (const auto& c : checks)
        cs.push_back(Json{{"name", c.name}, {"claim", c.claim}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
    return Json{{"schema", "v1"},
                {"config", config},
                {"pass", pass()},
                {"certificates", cs},
                {"results", results},
                {"artifacts", artifacts}};
}

RunReport run_pair_metrics(const ExperimentConfig& c) {
    RunReport r;
    r.config = config_to_json(c);
    Params p{c.parameters};
    const Genericity g = genericity_of(p);
    auto t0 = Clock::now();

    std::optional<PLFunction> f1, f2;
    PLCurve l1 = zero_section(1), l2 = zero_section(1);
    if (c.inputs.count("function_1") || c.inputs.count("function_2")) {
        const auto& a = input(c, "function_1");
        const auto& b = input(c, "function_2");
        f1 = function_from_json(load_json_file(a), a);
        f2 = function_from_json(load_json_file(b), b);
        if (f1->period != f2->period) throw InputError(b + ": functions live on circles of different length");
        l1 = graph_of_differential(*f1);
        l2 = graph_of_differential(*f2);
    } else {
        const auto& a = input(c, "curve_1");
        const auto& b = input(c, "curve_2");
        l1 = curve_from_json(load_json_file(a), a);
        l2 = curve_from_json(load_json_file(b), b);
        if (l1.period() != l2.period()) throw InputError(b + ": curves live on annuli of different length");
    }
    r.timings["load"] = seconds_since(t0);

    t0 = Clock::now();
    Barcode bc = barcode_of_pair(l1, l2, g);
    auto [cm, cp] = c_pm_pair(l1, l2, g);
    Rational gamma = gamma_pair(l1, l2, g);
    Rational gamma_rev = gamma_pair(l2, l1, g);
    Rational cmetric = c_metric_pair(l1, l2, g);
    r.timings["invariants"] = seconds_since(t0);

    r.results["c_minus"] = to_string(cm);
    r.results["c_plus"] = to_string(cp);
    r.results["gamma"] = to_string(gamma);
    r.results["c_metric"] = to_string(cmetric);
    r.results["barcode"] = barcode_to_json(bc);

    r.checks.push_back(check("gamma_nonnegative", "gamma(L1, L2) >= 0", gamma, 0, gamma >= 0));
    r.checks.push_back(check("gamma_spread", "gamma = c+ - c-", gamma, cp - cm, gamma == cp - cm));
    r.checks.push_back(check("gamma_symmetric", "gamma(L1, L2) = gamma(L2, L1)", gamma, gamma_rev, gamma == gamma_rev));
    r.checks.push_back(check("c_metric_dominates", "c(L1, L2) >= gamma(L1, L2)", cmetric, gamma, cmetric >= gamma));
    if (f1) {
        Rational osc = difference(*f1, *f2).oscillation();
        r.checks.push_back(check("graph_identity", "gamma(gr df1, gr df2) = osc(f1 - f2)", gamma, osc, gamma == osc));
    }

    SvgScene scene;
    Rational Q = l1.period();
    scene.q0 = 0;
    scene.q1 = Q;
    Rational lo = min_of(l1.min_p(), l2.min_p()), hi = max_of(l1.max_p(), l2.max_p());
    Rational pad = (hi - lo) / 8 + Rational(1, 8);
    scene.p0 = lo - pad;
    scene.p1 = hi + pad;
    scene.curves = {{l1, "#1f77b4", "L1"}, {l2, "#d62728", "L2"}};
    scene.title = "pair, gamma = " + to_string(gamma);
    if (g == Genericity::strict) {
        std::vector<IntersectionPoint> pts = intersect(l1, l2);
        r.results["intersections"] = pts.size();
        for (const auto& x : pts) scene.marks.push_back(x.location);
        Json lunes = Json::array();
        for (const auto& lu : lunes_of_pair(l1, l2)) {
            scene.shaded.push_back(lu.boundary);
            lunes.push_back(Json{{"upper", lu.upper}, {"lower", lu.lower}, {"area", to_string(lu.area)}});
        }
        r.results["lunes"] = lunes;
    }
    add_file(r, "pair.svg", svg_scene(scene));
    add_file(r, "barcode.svg", svg_barcode(bc, "barcode of the pair"));
    add_file(r, "barcode.json", dump(barcode_to_json(bc)));
    return r;
}

RunReport run_peano(const ExperimentConfig& c) {
    RunReport r;
    r.config = config_to_json(c);
    Params p{c.parameters};
    auto t0 = Clock::now();
    TongueSchedule s = schedule_of(p);
    r.timings["schedule"] = seconds_since(t0);
    const std::size_t m = s.steps.size();

    t0 = Clock::now();
    Json steps = Json::array();
    for (std::size_t k = 0; k < m; ++k) {
        const auto& st = s.steps[k];
        std::string tag = "step " + std::to_string(k);
        r.checks.push_back(check(tag + " displacement", "gamma(L_{k+1}, L_k) < eps_k", st.gamma_step, st.epsilon,
                                 st.gamma_step < st.epsilon));
        r.checks.push_back(check(tag + " probe", "gamma(probe(L_{k+1}), L_{k+1}) > eps_k/5", st.gamma_probe,
                                 st.epsilon / 5, st.gamma_probe > st.epsilon / 5));
        steps.push_back(Json{{"z", point_to_json(st.z)},
                             {"epsilon", to_string(st.epsilon)},
                             {"upward", st.upward},
                             {"r", to_string(st.r)},
                             {"s", to_string(st.s)},
                             {"probe_ball_half", to_string(st.probe_ball.half)},
                             {"corridor_width", to_string(st.corridor_width)},
                             {"corridor_length", to_string(st.corridor_length)},
                             {"tongue_area", to_string(st.tongue_area)},
                             {"notch_depth", to_string(st.notch_depth)},
                             {"clearance", to_string(st.clearance)},
                             {"gamma_step", to_string(st.gamma_step)},
                             {"gamma_probe", to_string(st.gamma_probe)},
                             {"vertices", st.curve_after.size()}});
    }
    for (std::size_t k = 0; k < m; ++k) r.checks.push_back(from_certificate(verify_cauchy_tail(s, k, m)));
    for (std::size_t k = 0; k < m; ++k) r.checks.push_back(from_certificate(verify_separation(s, k, m)));
    r.timings["certificates"] = seconds_since(t0);

    Json skipped = Json::array();
    for (const auto& sk : s.skipped) skipped.push_back(Json{{"z", point_to_json(sk.z)}, {"reason", sk.reason}});
    Json eps = Json::array();
    for (const auto& e : s.epsilons) eps.push_back(to_string(e));
    r.results["epsilons"] = eps;
    r.results["steps"] = steps;
    r.results["skipped"] = skipped;

    Json stages = Json::array();
    for (const auto& l : s.stages) stages.push_back(curve_to_json(l));
    add_file(r, "schedule.json",
             dump(Json{{"schema", "v1"},
                       {"K", Json{{"q0", to_string(s.K.q0)}, {"p0", to_string(s.K.p0)}, {"side", to_string(s.K.side)}}},
                       {"epsilons", eps},
                       {"stages", stages}}));
    for (std::size_t k = 0; k < m; ++k) {
        SvgScene scene;
        scene.q0 = s.K.q0 - s.K.side / 4;
        scene.q1 = s.K.q0 + s.K.side * Rational(5, 4);
        scene.p0 = s.K.p0 - s.K.side / 4;
        scene.p1 = s.K.p0 + s.K.side * Rational(5, 4);
        scene.curves = {{s.stages[k], "#bbbbbb", "L" + std::to_string(k)},
                        {s.stages[k + 1], "#1f77b4", "L" + std::to_string(k + 1)}};
        for (std::size_t j = 0; j <= k; ++j) {
            scene.boxes.push_back(s.steps[j].probe_ball);
            scene.marks.push_back(s.steps[j].z);
        }
        scene.title = "tongue step " + std::to_string(k + 1) + ", eps = " + to_string(s.steps[k].epsilon);
        char name[32];
        std::snprintf(name, sizeof name, "frame_%02zu.svg", k + 1);
        add_file(r, name, svg_scene(scene));
    }
    return r;
}

RunReport run_support_sweep(const ExperimentConfig& c) {
    RunReport r;
    r.config = config_to_json(c);
    Params p{c.parameters};
    auto t0 = Clock::now();

    PLCurve l = zero_section(1);
    Grid fallback;
    std::string source = p.text("curve", c.inputs.count("curve") ? "file" : "zero-section");
    if (source == "file") {
        const auto& path = input(c, "curve");
        l = curve_from_json(load_json_file(path), path);
        fallback = {0, l.period(), l.min_p() - 1, l.max_p() + 1, 64, 64};
    } else if (source == "zero-section") {
        l = zero_section(p.rational("period", 1));
        fallback = {0, l.period(), Rational(-1, 2), Rational(1, 2), 64, 64};
    } else if (source == "peano") {
        TongueSchedule s = schedule_of(p);
        l = s.stages.back();
        fallback = {s.K.q0, s.K.q0 + s.K.side, s.K.p0, s.K.p0 + s.K.side, 64, 64};
    } else {
        throw InputError("parameters/curve: expected \"file\", \"zero-section\" or \"peano\"");
    }
    Grid grid = grid_of(p, fallback);
    Rational eps = p.rational("eps", Rational(1, 8));
    Rational delta = p.rational("delta", 0);
    std::size_t family = p.count("family_size", 32);
    if (eps <= 0) throw InputError("parameters/eps: must be positive");
    if (delta < 0) throw InputError("parameters/delta: must be non-negative");
    r.timings["setup"] = seconds_since(t0);

    t0 = Clock::now();
    auto support = estimate_support(l, grid, eps, delta, family);
    r.timings["sweep"] = seconds_since(t0);

    std::size_t stored_ok = 0;
    for (const auto& sp : support)
        if (sp.certificate.witness && sp.certificate.witness->gamma == sp.certificate.gamma_lower_bound &&
            sp.certificate.gamma_lower_bound > delta)
            ++stored_ok;
    r.checks.push_back(check("stored_certificates", "every returned point stores a probe with gamma > delta",
                             static_cast<unsigned long>(stored_ok), static_cast<unsigned long>(support.size()),
                             stored_ok == support.size()));

    if (p.flag("recheck", true)) {
        t0 = Clock::now();
        std::size_t rechecked = 0;
        for (const auto& sp : support) {
            const auto& w = *sp.certificate.witness;
            std::vector<Point> lift = l.vertices();
            lift.insert(lift.begin() + static_cast<long>(w.segment) + 1, w.path.begin(), w.path.end());
            PLCurve pushed(l.period(), lift, l.brane_constant());
            if (gamma_pair(pushed, l, Genericity::limit) == w.gamma) ++rechecked;
        }
        r.timings["recheck"] = seconds_since(t0);
        r.checks.push_back(check("rederived_certificates", "stored probe curves reproduce their gamma",
                                 static_cast<unsigned long>(rechecked), static_cast<unsigned long>(support.size()),
                                 rechecked == support.size()));
    }
    if (p.flag("expect_band", false)) {
        std::size_t mismatches = 0;
        std::size_t k = 0;
        for (const auto& z : grid.points()) {
            bool returned = k < support.size() && support[k].z == z;
            if (returned) ++k;
            if (returned != box_meets_curve(l, z, eps)) ++mismatches;
        }
        r.checks.push_back(check("exact_band", "returned points = grid points within sup-distance eps of the curve",
                                 static_cast<unsigned long>(mismatches), 0, mismatches == 0));
    }

    const std::size_t total = grid.nq * grid.np;
    r.results["grid_points"] = total;
    r.results["returned"] = support.size();
    r.results["coverage"] = to_string(ratio(static_cast<long>(support.size()), static_cast<long>(total)));
    Json pts = Json::array();
    for (const auto& sp : support) pts.push_back(probe_report_to_json(sp.certificate));
    add_file(r, "support.json", dump(Json{{"schema", "v1"}, {"eps", to_string(eps)}, {"delta", to_string(delta)},
                                           {"curve", curve_to_json(l)}, {"points", pts}}));
    add_file(r, "heatmap.svg", svg_heatmap(grid, support, eps, l, "probe-positive grid points, eps = " + to_string(eps)));
    return r;
}

RunReport run_coisotropy_check(const ExperimentConfig& c) {
    RunReport r;
    r.config = config_to_json(c);
    Params p{c.parameters};
    const auto& path = input(c, "set");
    PLSet V = plset_from_json(load_json_file(path), path);
    const Json* pts = p.find("points");
    if (!pts || !pts->is_array()) throw InputError("parameters/points: expected a list of points");
    const Json* expect = p.find("expect");
    if (expect && (!expect->is_array() || expect->size() != pts->size()))
        throw InputError("parameters/expect: expected one boolean per point");

    auto t0 = Clock::now();
    Json verdicts = Json::array();
    for (std::size_t i = 0; i < pts->size(); ++i) {
        std::string w = "parameters/points/" + std::to_string(i);
        const Json& pj = (*pts)[i];
        if (!pj.is_array() || pj.size() != V.dimension()) throw InputError(w + ": point has the wrong dimension");
        RVec x;
        for (const auto& e : pj) x.push_back(rational_from_json(e, w));
        if (!V.contains(x)) throw InputError(w + ": point is not in the set");
        CoisotropyVerdict v = is_cone_coisotropic_at(V, x);
        verdicts.push_back(verdict_to_json(x, v));
        std::string tag = "point " + std::to_string(i);
        if (v.witness_normal) {
            // H contains C+ and the line H^omega is not in C-
            Cone plus = paratingent_cone(V, x), minus = contingent_cone(V, x);
            bool contains = true;
            for (const auto& piece : plus.pieces)
                for (const auto& g : piece) {
                    Rational s = 0;
                    for (std::size_t k = 0; k < g.size(); ++k) s += (*v.witness_normal)[k] * g[k];
                    contains = contains && s == 0;
                }
            bool outside = !minus.contains(*v.witness_direction);
            r.checks.push_back(check(tag + " witness", "C+ in H and H^omega not in C-", contains && outside ? 1 : 0, 1,
                                     contains && outside));
        }
        if (expect) {
            const Json& e = (*expect)[i];
            if (!e.is_boolean()) throw InputError("parameters/expect/" + std::to_string(i) + ": expected a boolean");
            bool want = e.get<bool>();
            r.checks.push_back({tag + " verdict", want ? "cone-coisotropic" : "not cone-coisotropic", v.coisotropic,
                                want, v.coisotropic == want});
        }
    }
    r.timings["verdicts"] = seconds_since(t0);
    r.results["verdicts"] = verdicts;
    add_file(r, "verdicts.json", dump(Json{{"schema", "v1"}, {"set", plset_to_json(V)}, {"verdicts", verdicts}}));
    return r;
}

RunReport run(const ExperimentConfig& c) {
    if (c.kind == "pair-metrics") return run_pair_metrics(c);
    if (c.kind == "peano-run") return run_peano(c);
    if (c.kind == "support-sweep") return run_support_sweep(c);
    if (c.kind == "coisotropy-check") return run_coisotropy_check(c);
    if (c.kind == "property-suite") return run_property_suite(c);
    throw InputError("config/kind: unknown experiment '" + c.kind + "'");
}

int execute(const ExperimentConfig& c, std::ostream& log) {
    namespace fs = std::filesystem;
    const fs::path out(c.out_dir);
    std::optional<Json> stored;
    if (c.verify_only) {
        if (!fs::exists(out / "report.json"))
            throw InputError((out / "report.json").string() + ": no stored report to verify against");
        stored = load_json_file((out / "report.json").string());
    }
    RunReport r = run(c);
    Json j = r.to_json();
    for (const auto& ch : r.checks)
        log << (ch.pass ? "PASS " : "FAIL ") << ch.name << "  value=" << ch.value.dump() << " bound=" << ch.bound.dump()
            << "\n";

    if (stored) {
        if (*stored != j) {
            log << "report differs from " << (out / "report.json").string() << "\n";
            return 1;
        }
        for (const auto& name : r.artifacts) {
            std::ifstream in(out / name, std::ios::binary);
            std::string have((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            if (have != r.files.at(name)) {
                log << "artifact differs: " << name << "\n";
                return 1;
            }
        }
        log << "verified against stored report\n";
        return r.pass() ? 0 : 1;
    }

    fs::create_directories(out);
    write_text_file((out / "report.json").string(), dump(j));
    Json t = Json::object();
    for (const auto& [k, v] : r.timings) t[k] = v;
    write_text_file((out / "timings.json").string(), dump(Json{{"schema", "v1"}, {"seconds", t}}));
    for (const auto& [name, text] : r.files) write_text_file((out / name).string(), text);
    log << (r.pass() ? "all certificates pass" : "certificate failure") << "; report at " << (out / "report.json").string()
        << "\n";
    return r.pass() ? 0 : 1;
}

}  // namespace lagspec
