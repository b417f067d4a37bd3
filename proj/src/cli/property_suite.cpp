#include "lagspec/cli.hpp"

#include "lagspec/errors.hpp"

#include <bitset>
#include <chrono>
#include <set>

namespace lagspec {

namespace {

using Bits = std::bitset<32>;

std::size_t rank_gf2(std::vector<Bits> rows) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < 32 && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv].test(col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].test(col)) rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

Bits image_of(const FilteredComplex& c, std::size_t x) {
    Bits b;
    for (auto y : c.boundary[x]) b.flip(y);
    return b;
}

// rank of H^k(C_{<=a}) -> H^k(C_{<=b}) by direct elimination
std::size_t direct_rank(const FilteredComplex& c, const Rational& a, const Rational& b, int k) {
    const std::size_t n = c.generators.size();
    // cocycles of degree k below a: kernel of d on that span
    std::vector<std::pair<Bits, Bits>> work;  // (combination, image)
    for (std::size_t x = 0; x < n; ++x)
        if (c.generators[x].degree == k && c.generators[x].action <= a) {
            Bits comb;
            comb.set(x);
            work.emplace_back(comb, image_of(c, x));
        }
    std::vector<Bits> cycles;
    std::vector<std::pair<Bits, Bits>> basis;
    for (auto [comb, img] : work) {
        for (const auto& [bc, bi] : basis) {
            std::size_t lead = bi._Find_first();
            if (img.test(lead)) {
                img ^= bi;
                comb ^= bc;
            }
        }
        if (img.none())
            cycles.push_back(comb);
        else {
            std::size_t lead = img._Find_first();
            for (auto& [bc, bi] : basis)
                if (bi.test(lead)) {
                    bi ^= img;
                    bc ^= comb;
                }
            basis.emplace_back(comb, img);
        }
    }
    std::vector<Bits> boundaries;
    for (std::size_t x = 0; x < n; ++x)
        if (c.generators[x].degree == k - 1 && c.generators[x].action <= b) boundaries.push_back(image_of(c, x));
    std::vector<Bits> both = boundaries;
    both.insert(both.end(), cycles.begin(), cycles.end());
    return rank_gf2(both) - rank_gf2(boundaries);
}

CheckResult count_check(const std::string& name, const std::string& claim, std::size_t failures, std::size_t trials) {
    return {name, claim, failures, Json(0), failures == 0 && trials > 0};
}

}  // namespace

RunReport run_property_suite(const ExperimentConfig& c) {
    RunReport r;
    r.config = config_to_json(c);
    const Json& pj = c.parameters;
    auto count = [&](const char* key, std::size_t fallback) -> std::size_t {
        auto it = pj.find(key);
        if (it == pj.end()) return fallback;
        if (!it->is_number_unsigned()) throw InputError(std::string("parameters/") + key + ": expected a non-negative integer");
        return it->get<std::size_t>();
    };
    const std::size_t n_complexes = count("complexes", 500);
    const std::size_t n_functions = count("function_pairs", 100);
    const std::size_t n_triples = count("triples", 100);
    const std::size_t n_perturbed = count("perturbed_pairs", 50);
    const std::size_t n_fibers = count("fibers", 64);
    Rng rng(c.seed);
    using Clock = std::chrono::steady_clock;
    auto t0 = Clock::now();
    auto lap = [&](const char* name) {
        r.timings[name] = std::chrono::duration<double>(Clock::now() - t0).count();
        t0 = Clock::now();
    };

    std::size_t failures = 0;
    for (std::size_t i = 0; i < n_complexes; ++i) {
        FilteredComplex cx = random_complex(rng, 12);
        Barcode bc = decompose(cx);
        std::set<Rational> levels;
        for (const auto& g : cx.generators) levels.insert(g.action);
        for (auto a = levels.begin(); a != levels.end(); ++a)
            for (auto b = a; b != levels.end(); ++b)
                for (int k = 0; k <= 2; ++k)
                    if (rank_function(bc, *a, *b, k) != direct_rank(cx, *a, *b, k)) ++failures;
    }
    r.checks.push_back(count_check("barcode_ranks", "rank_function = direct elimination ranks", failures, n_complexes));
    lap("barcode_ranks");

    failures = 0;
    for (std::size_t i = 0; i < n_functions; ++i) {
        PLFunction f1 = random_pl_function(rng, 1, 16), f2 = random_pl_function(rng, 1, 16);
        Rational g = gamma_pair(graph_of_differential(f1), graph_of_differential(f2), Genericity::limit);
        if (g != difference(f1, f2).oscillation()) ++failures;
    }
    r.checks.push_back(count_check("graph_identity", "gamma(gr df1, gr df2) = osc(f1 - f2)", failures, n_functions));
    lap("graph_identity");

    std::size_t axiom_failures = 0, nondegenerate_failures = 0, duality_failures = 0, resamples = 0;
    std::vector<PLCurve> corpus;
    for (std::size_t i = 0; i < n_triples;) {
        PLCurve a = random_curve(rng), b = random_curve(rng), d = random_curve(rng);
        Rational ab, ba, bd, ad;
        try {
            ab = gamma_pair(a, b);
            ba = gamma_pair(b, a);
            bd = gamma_pair(b, d);
            ad = gamma_pair(a, d);
        } catch (const NonTransverse&) {
            ++resamples;
            continue;
        } catch (const UnsupportedPair&) {
            ++resamples;
            continue;
        }
        ++i;
        if (!(ab >= 0 && ab == ba && ad <= ab + bd)) ++axiom_failures;
        for (const PLCurve* l : {&a, &b, &d}) corpus.push_back(*l);
    }
    PLCurve zero = zero_section(4);
    for (const auto& l : corpus) {
        if (!(gamma_pair(l, zero, Genericity::limit) > 0)) ++nondegenerate_failures;
        auto [cm, cp] = c_pm_pair(l, zero, Genericity::limit);
        auto [ncm, ncp] = c_pm_pair(negate_curve(l), zero, Genericity::limit);
        if (cp != -ncm) ++duality_failures;
    }
    r.checks.push_back(count_check("metric_axioms", "gamma >= 0, symmetric, triangle inequality", axiom_failures, n_triples));
    r.checks.push_back(count_check("nondegeneracy", "gamma(L, 0) > 0", nondegenerate_failures, corpus.size()));
    r.checks.push_back(count_check("duality", "c+(L, 0) = -c-(-L, 0)", duality_failures, corpus.size()));
    r.results["triple_resamples"] = resamples;
    lap("triples");

    failures = 0;
    resamples = 0;
    for (std::size_t i = 0; i < n_perturbed;) {
        PLCurve l1 = random_curve(rng), l2 = random_curve(rng);
        auto small = [&]() -> PLFunction {
            PLFunction g = random_pl_function(rng, 4, 6);
            for (auto& v : g.values) v /= 16;
            Rational v0 = g.values[0];
            for (auto& v : g.values) v -= v0;  // g takes the value 0
            return g;
        };
        try {
            PLCurve m1 = fiberwise_sum(l1, small()), m2 = fiberwise_sum(l2, small());
            Barcode b = barcode_of_pair(l1, l2, Genericity::limit);
            Barcode bp = barcode_of_pair(m1, m2, Genericity::limit);
            ExtRational dist = bottleneck(b, bp);
            Rational bound = 2 * gamma_pair(l1, m1, Genericity::limit) + gamma_pair(l2, m2, Genericity::limit);
            if (!(dist <= ExtRational(bound))) ++failures;
            ++i;
        } catch (const PreconditionError&) {
            ++resamples;
            continue;
        } catch (const UnsupportedPair&) {
            ++resamples;
            continue;
        }
    }
    r.results["stability_resamples"] = resamples;
    r.checks.push_back(count_check("stability", "bottleneck <= 2 gamma(L1, L1') + gamma(L2, L2')", failures, n_perturbed));
    lap("stability");

    failures = 0;
    std::size_t tongues = 0;
    for (std::size_t i = 0; i < 16; ++i) {
        PLCurve g = graph_of_differential(random_pl_function(rng, 4, 16));
        if (!is_pseudograph(g, fiber_samples(g, n_fibers))) ++failures;
    }
    for (const auto& l : corpus) {
        bool graph = true;
        for (long j = 0; j < static_cast<long>(l.size()) && graph; ++j) graph = l.vertex(j).q <= l.vertex(j + 1).q;
        if (graph) continue;
        ++tongues;
        std::vector<Rational> xs = fiber_samples(l, n_fibers), gaps = gap_fibers(l);
        xs.insert(xs.end(), gaps.begin(), gaps.end());
        if (is_pseudograph(l, xs)) ++failures;
    }
    r.checks.push_back(count_check("pseudograph", "graphs are pseudographs and tongue curves are not", failures, 16 + tongues));
    lap("pseudograph");

    failures = 0;
    for (const Rational& eps : {Rational(1, 4), Rational(1, 8), Rational(1, 16)}) {
        Rational g = gamma_pair(figure_one_bump(1, Rational(1, 2), eps), zero_section(1), Genericity::limit);
        if (!(g >= eps * eps)) ++failures;
    }
    r.checks.push_back(count_check("bump_bound", "eps-bump of the zero section has gamma >= eps^2", failures, 3));
    lap("bump_bound");
    return r;
}

}  // namespace lagspec
