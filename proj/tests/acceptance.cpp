#include "lagspec/cli.hpp"
#include "lagspec/coisotropy.hpp"
#include "lagspec/errors.hpp"
#include "lagspec/floer.hpp"
#include "lagspec/peano.hpp"
#include "lagspec/support_probe.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace lagspec;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
    if (!pass) ++failures;
}

void guarded(int id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string secs(double s) {
    std::ostringstream o;
    o.precision(3);
    o << std::fixed << s << "s";
    return o.str();
}

// corpus shared by criteria 3 and 4
std::vector<PLCurve> corpus;

void barcode_oracle() {
    auto t0 = Clock::now();
    Rng rng(101);
    std::size_t mismatches = 0, comparisons = 0;
    for (int i = 0; i < 500; ++i) {
        FilteredComplex c = random_complex(rng, 12);
        Barcode b = decompose(c);
        std::set<Rational> levels;
        for (const auto& g : c.generators) levels.insert(g.action);
        for (auto a = levels.begin(); a != levels.end(); ++a)
            for (auto bb = a; bb != levels.end(); ++bb)
                for (int k = 0; k <= 2; ++k) {
                    ++comparisons;
                    if (rank_function(b, *a, *bb, k) != oracle::sublevel_rank(c, *a, *bb, k)) ++mismatches;
                }
    }
    double t = since(t0);
    report(1, mismatches == 0 && t < 30,
           std::to_string(mismatches) + " mismatches in " + std::to_string(comparisons) + " rank comparisons, " +
               secs(t) + " (limit 30s)");
}

void graph_identity() {
    Rng rng(202);
    std::vector<std::pair<PLFunction, PLFunction>> pairs;
    for (int i = 0; i < 100; ++i) {
        PLFunction f1 = random_pl_function(rng, 1, 16);
        PLFunction f2 = random_pl_function(rng, 1, 16);
        pairs.emplace_back(f1, f2);
    }
    std::size_t bad = 0;
    auto t0 = Clock::now();
    for (const auto& [f1, f2] : pairs) {
        Rational g = gamma_pair(graph_of_differential(f1), graph_of_differential(f2), Genericity::limit);
        if (g != oracle::osc_difference(f1, f2)) ++bad;
    }
    double t = since(t0);
    report(2, bad == 0 && t < 10, std::to_string(bad) + "/100 pairs differ from osc(f1 - f2), " + secs(t) + " (limit 10s)");
}

void metric_axioms() {
    Rng rng(303);
    std::size_t triples = 0, resampled = 0, bad = 0;
    while (triples < 100) {
        PLCurve a = random_curve(rng), b = random_curve(rng), c = random_curve(rng);
        Rational ab, ba, bc, ac, ca;
        try {
            ab = gamma_pair(a, b);
            ba = gamma_pair(b, a);
            bc = gamma_pair(b, c);
            ac = gamma_pair(a, c);
            ca = gamma_pair(c, a);
        } catch (const NonTransverse&) {
            ++resampled;
            continue;
        } catch (const UnsupportedPair&) {
            ++resampled;
            continue;
        }
        ++triples;
        if (ab < 0 || bc < 0 || ac < 0) ++bad;
        if (ab != ba || ac != ca) ++bad;
        if (ac > ab + bc) ++bad;
        corpus.push_back(a);
        corpus.push_back(b);
        corpus.push_back(c);
    }
    PLCurve zero = zero_section(4);
    std::size_t degenerate = 0;
    for (const auto& l : corpus)
        if (!(gamma_pair(l, zero, Genericity::limit) > 0)) ++degenerate;
    report(3, bad == 0 && degenerate == 0,
           std::to_string(bad) + " axiom violations over 100 transverse triples (" + std::to_string(resampled) +
               " non-transverse draws resampled), " + std::to_string(degenerate) + "/" +
               std::to_string(corpus.size()) + " curves with gamma(L, 0) = 0");
}

void duality() {
    PLCurve zero = zero_section(4);
    std::size_t bad = 0;
    for (const auto& l : corpus) {
        auto [cm, cp] = c_pm_pair(l, zero, Genericity::limit);
        auto [ncm, ncp] = c_pm_pair(negate_curve(l), zero, Genericity::limit);
        if (cp != -ncm) ++bad;
    }
    report(4, !corpus.empty() && bad == 0,
           std::to_string(bad) + "/" + std::to_string(corpus.size()) + " curves with c+(L, 0) != -c-(-L, 0)");
}

void bump_bound() {
    std::size_t bad = 0;
    std::string values;
    for (const Rational& eps : {Rational(1, 4), Rational(1, 8), Rational(1, 16)}) {
        // bump of height eps^2 built directly from its primitive
        PLFunction f{1, {Rational(1, 2) - eps, Rational(1, 2), Rational(1, 2) + eps}, {Rational(0), eps * eps, Rational(0)}};
        Rational g = gamma_pair(graph_of_differential(f), zero_section(1), Genericity::limit);
        Rational h = gamma_pair(figure_one_bump(1, Rational(1, 2), eps), zero_section(1), Genericity::limit);
        if (!(g >= eps * eps) || !(h >= eps * eps)) ++bad;
        values += " gamma(" + to_string(eps) + ")=" + to_string(h);
    }
    report(5, bad == 0, std::to_string(bad) + "/3 radii below eps^2;" + values);
}

void peano() {
    auto t0 = Clock::now();
    const Rational ratio21(1, 21);
    std::vector<Rational> eps;
    Rational e = ratio21;
    for (int k = 0; k <= 6; ++k) {
        eps.push_back(e);
        e *= ratio21;
    }
    Square K{0, 0, 1};
    TongueSchedule s = run_schedule(halton_points(K, 64), eps, K, 6);
    const std::size_t m = s.stages.size() - 1;
    std::size_t bad = 0, checked = 0;
    std::string first_bad;
    auto need = [&](bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            ++bad;
            if (first_bad.empty()) first_bad = " first failure: " + what;
        }
    };
    need(m == 6 && s.steps.size() == 6, "six steps");
    for (std::size_t k = 0; k < s.steps.size() && k < m; ++k) {
        const Rational& ek = eps[k];
        Rational step = gamma_pair(s.stages[k + 1], s.stages[k], Genericity::limit);
        need(step < ek, "gamma(L_k+1, L_k) < eps_k at k=" + std::to_string(k));
        Rational sep = gamma_pair(apply_probe(s.steps[k], s.stages[k + 1]), s.stages[k + 1], Genericity::limit);
        need(sep > ek / 5, "probe separation > eps_k/5 at k=" + std::to_string(k));
        Rational tail = gamma_pair(s.stages[k + 1], s.stages[m], Genericity::limit);
        need(tail < Rational(20, 19) * eps[k + 1], "tail bound at k=" + std::to_string(k));
        Rational far = gamma_pair(apply_probe(s.steps[k], s.stages[m]), s.stages[m], Genericity::limit);
        need(far > ek / 11, "separation at stage 6, k=" + std::to_string(k));
    }
    double t = since(t0);
    report(6, bad == 0 && t < 300,
           std::to_string(checked - bad) + "/" + std::to_string(checked) + " certificates hold, " + secs(t) +
               " (limit 300s)" + first_bad);
}

void stability() {
    Rng rng(707);
    std::size_t pairs = 0, bad = 0, resampled = 0;
    auto small = [&]() -> PLFunction {
        PLFunction g = random_pl_function(rng, 4, 6);
        for (auto& v : g.values) v /= 16;
        Rational v0 = g.values[0];
        for (auto& v : g.values) v -= v0;
        return g;
    };
    while (pairs < 50) {
        PLCurve l1 = random_curve(rng), l2 = random_curve(rng);
        PLFunction g1 = small(), g2 = small();
        try {
            PLCurve m1 = fiberwise_sum(l1, g1), m2 = fiberwise_sum(l2, g2);
            Barcode b = barcode_of_pair(l1, l2, Genericity::limit);
            Barcode bp = barcode_of_pair(m1, m2, Genericity::limit);
            Rational bound = 2 * gamma_pair(l1, m1, Genericity::limit) + gamma_pair(l2, m2, Genericity::limit);
            bool finite = false;
            Rational d = oracle::bottleneck(b, bp, finite);
            ++pairs;
            if (!finite || d > bound) ++bad;
        } catch (const PreconditionError&) {
            ++resampled;
        } catch (const UnsupportedPair&) {
            ++resampled;
        }
    }
    report(7, bad == 0,
           std::to_string(bad) + "/50 perturbed pairs exceed 2 gamma(L1, L1') + gamma(L2, L2') (" +
               std::to_string(resampled) + " draws resampled)");
}

PLSet cell_set(std::size_t n, std::vector<RVec> vertices) {
    PLSet V;
    V.n = n;
    V.split = CoordinateSplit::blocked;
    V.cells.push_back(std::move(vertices));
    return V;
}

RVec unit(std::size_t dim, std::size_t i, const Rational& s = 1) {
    RVec v(dim, Rational(0));
    v[i] = s;
    return v;
}

// vertices of [-1, 1]^k x {0} inside R^dim
std::vector<RVec> box(std::size_t dim, std::size_t k) {
    std::vector<RVec> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        RVec v(dim, Rational(0));
        for (std::size_t i = 0; i < k; ++i) v[i] = (mask >> i & 1) ? 1 : -1;
        out.push_back(std::move(v));
    }
    return out;
}

void coisotropy_zoo() {
    std::size_t bad = 0, checked = 0;
    std::string notes;
    auto expect = [&](bool got, bool want, const std::string& what) {
        ++checked;
        if (got != want) {
            ++bad;
            notes += " [" + what + "]";
        }
    };
    // interval [0,1] x {0} in R^2
    PLSet I = cell_set(1, {{0, 0}, {1, 0}});
    expect(is_cone_coisotropic_at(I, {Rational(1, 2), 0}).coisotropic, true, "interval interior");
    expect(is_cone_coisotropic_at(I, {0, 0}).coisotropic, false, "interval endpoint 0");
    expect(is_cone_coisotropic_at(I, {1, 0}).coisotropic, false, "interval endpoint 1");
    Cone plus = paratingent_cone(I, {0, 0}), minus = contingent_cone(I, {0, 0});
    expect(plus.contains({1, 0}) && plus.contains({-1, 0}) && !plus.contains({0, 1}) && !plus.contains({1, 1}), true,
           "C+ at the endpoint is the q-axis");
    expect(minus.contains({1, 0}) && minus.contains({3, 0}) && !minus.contains({-1, 0}) && !minus.contains({0, 1}), true,
           "C- at the endpoint is the positive q half-axis");
    // isolated point
    expect(is_cone_coisotropic_at(cell_set(1, {{0, 0}}), {0, 0}).coisotropic, false, "isolated point");
    for (std::size_t n : {1u, 2u}) {
        const std::size_t dim = 2 * n;
        // Lagrangian plane R^n x {0}, as a large cube around the test point
        std::vector<RVec> cube;
        for (std::size_t mask = 0; mask < (1u << n); ++mask) {
            RVec v(dim, Rational(0));
            for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? 1 : -1;
            cube.push_back(v);
        }
        expect(is_cone_coisotropic_at(cell_set(n, cube), RVec(dim, Rational(0))).coisotropic, true,
               "Lagrangian plane n=" + std::to_string(n));
        // {(0,0)} x R^{2n-2}: q1 = p1 = 0, all other coordinates free
        std::vector<RVec> slab;
        std::vector<std::size_t> free_axes;
        for (std::size_t i = 0; i < dim; ++i)
            if (i != 0 && i != n) free_axes.push_back(i);
        for (std::size_t mask = 0; mask < (1u << free_axes.size()); ++mask) {
            RVec v(dim, Rational(0));
            for (std::size_t j = 0; j < free_axes.size(); ++j) v[free_axes[j]] = (mask >> j & 1) ? 1 : -1;
            slab.push_back(v);
        }
        expect(is_cone_coisotropic_at(cell_set(n, slab), RVec(dim, Rational(0))).coisotropic, false,
               "{(0,0)} x R^" + std::to_string(dim - 2) + " n=" + std::to_string(n));
        // D^{n+r} x {0}: all q directions and the first r momenta, evaluated at (x, 0, ..., 0)
        for (std::size_t r = 0; r <= n; ++r) {
            PLSet D = cell_set(n, box(dim, n + r));
            bool all = true;
            for (const Rational& x : {Rational(0), Rational(1, 2), Rational(1)}) {
                RVec pt = unit(dim, 0, x);
                all = is_cone_coisotropic_at(D, pt).coisotropic && all;
            }
            expect(all, r >= 1, "D^{n+r}, n=" + std::to_string(n) + " r=" + std::to_string(r));
        }
    }
    report(8, bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " verdicts match" + notes);

    // informational: boundary points off the q1-axis for n = 2, r = 1
    PLSet D = cell_set(2, box(4, 3));
    auto v = is_cone_coisotropic_at(D, unit(4, 1, 1));
    std::cout << "  note: D^3 x {0} in R^4 at (0,1,0,0): cone-coisotropic = " << (v.coisotropic ? "true" : "false")
              << std::endl;
}

void pseudographs() {
    Rng rng(909);
    std::size_t bad = 0, graphs = 0, tongues = 0;
    for (int i = 0; i < 16; ++i) {
        PLCurve g = graph_of_differential(random_pl_function(rng, 4, 16));
        ++graphs;
        if (!is_pseudograph(g, fiber_samples(g, 64))) ++bad;
    }
    while (tongues < 16) {
        PLCurve l = random_curve(rng);
        bool graph = true;
        for (long j = 0; j < static_cast<long>(l.size()) && graph; ++j) graph = l.vertex(j).q <= l.vertex(j + 1).q;
        if (graph) {
            ++graphs;
            if (!is_pseudograph(l, fiber_samples(l, 64))) ++bad;
            continue;
        }
        ++tongues;
        std::vector<Rational> xs = fiber_samples(l, 64), gaps = gap_fibers(l);
        xs.insert(xs.end(), gaps.begin(), gaps.end());
        if (is_pseudograph(l, xs)) ++bad;
    }
    report(9, bad == 0,
           std::to_string(bad) + " misclassified among " + std::to_string(graphs) + " graphs and " +
               std::to_string(tongues) + " tongue curves");
}

void support() {
    auto t0 = Clock::now();
    Square K{0, 0, 1};
    std::vector<Rational> eps;
    Rational e(1, 21);
    for (int k = 0; k <= 6; ++k) {
        eps.push_back(e);
        e /= 21;
    }
    PLCurve L6 = run_schedule(halton_points(K, 64), eps, K, 6).stages.back();
    auto t1 = Clock::now();
    Grid grid{0, 1, 0, 1, 64, 64};
    const Rational radius(1, 64);
    auto pts = estimate_support(L6, grid, radius, 0);
    double sweep = since(t1);
    std::size_t unsound = 0;
    for (const auto& sp : pts) {
        const auto& c = sp.certificate;
        if (!c.positive || !c.witness || !(c.gamma_lower_bound > 0)) {
            ++unsound;
            continue;
        }
        std::vector<Point> lift = L6.vertices();
        lift.insert(lift.begin() + static_cast<long>(c.witness->segment) + 1, c.witness->path.begin(),
                    c.witness->path.end());
        for (const auto& p : c.witness->path) {
            bool inside = sp.z.q - radius < p.q && p.q < sp.z.q + radius && sp.z.p - radius < p.p &&
                          p.p < sp.z.p + radius;
            if (!inside) ++unsound;
        }
        PLCurve pushed(L6.period(), lift, L6.brane_constant(), PLCurve::Check::local);
        if (gamma_pair(pushed, L6, Genericity::limit) != c.gamma_lower_bound) ++unsound;
    }
    double total = since(t0);

    Grid zgrid{0, 1, Rational(-1, 2), Rational(1, 2), 64, 64};
    const Rational zeps(1, 8);
    auto zpts = estimate_support(zero_section(1), zgrid, zeps, 0);
    std::set<std::pair<Rational, Rational>> got, want;
    for (const auto& sp : zpts) got.insert({sp.z.q, sp.z.p});
    for (const auto& z : zgrid.points())
        if (oracle::near_zero_section(z, zeps)) want.insert({z.q, z.p});
    bool band = got == want;
    report(10, unsound == 0 && band && total < 120,
           std::to_string(pts.size()) + "/4096 Peano grid points returned, " + std::to_string(unsound) +
               " without a reproducible positive certificate; zero-section band " + (band ? "exact" : "mismatch") +
               " (" + std::to_string(got.size()) + " vs " + std::to_string(want.size()) + "); sweep " + secs(sweep) +
               ", with rechecks " + secs(total) + " (limit 120s)");
}

}  // namespace

int main() {
    guarded(1, barcode_oracle);
    guarded(2, graph_identity);
    guarded(3, metric_axioms);
    guarded(4, duality);
    guarded(5, bump_bound);
    guarded(6, peano);
    guarded(7, stability);
    guarded(8, coisotropy_zoo);
    guarded(9, pseudographs);
    guarded(10, support);
    std::cout << (failures == 0 ? "all acceptance criteria pass" : std::to_string(failures) + " criteria fail")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
