#include "lagspec/barcode.hpp"

#include "lagspec/errors.hpp"
#include "lagspec/persistence_reduce.hpp"

#include <algorithm>
#include <map>

namespace lagspec {

bool bar_less(const Bar& a, const Bar& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
}

Barcode Barcode::canonical() const {
    Barcode out = *this;
    std::sort(out.bars.begin(), out.bars.end(), bar_less);
    return out;
}

std::vector<Bar> Barcode::infinite_bars() const {
    std::vector<Bar> out;
    for (const auto& b : bars)
        if (b.infinite()) out.push_back(b);
    return out;
}

std::vector<Bar> Barcode::finite_bars() const {
    std::vector<Bar> out;
    for (const auto& b : bars)
        if (!b.infinite()) out.push_back(b);
    return out;
}

bool operator==(const Barcode& a, const Barcode& b) {
    return a.canonical().bars == b.canonical().bars;
}

namespace {

std::string gen_name(const FilteredComplex& c, std::size_t i) {
    const auto& id = c.generators[i].id;
    return id.empty() ? "#" + std::to_string(i) : id;
}

bool degree_step_ok(Grading g, int deg_x, int deg_y) {
    switch (g) {
        case Grading::cohomological: return deg_y == deg_x + 1;
        case Grading::homological: return deg_y == deg_x - 1;
        case Grading::parity: return ((deg_x - deg_y) % 2 + 2) % 2 == 1;
    }
    return false;
}

}  // namespace

void validate(const FilteredComplex& c) {
    const std::size_t n = c.generators.size();
    if (c.boundary.size() != n)
        throw InvalidComplex("boundary has " + std::to_string(c.boundary.size()) +
                             " columns for " + std::to_string(n) + " generators");
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y : c.boundary[x]) {
            if (y >= n) throw InvalidComplex("boundary of " + gen_name(c, x) + " names unknown generator");
            const auto& gx = c.generators[x];
            const auto& gy = c.generators[y];
            if (!(gy.action < gx.action))
                throw InvalidComplex("differential does not lower action on pair (" + gen_name(c, y) +
                                     ", " + gen_name(c, x) + ")");
            if (!degree_step_ok(c.grading, gx.degree, gy.degree))
                throw InvalidComplex("differential has wrong degree on pair (" + gen_name(c, y) + ", " +
                                     gen_name(c, x) + ")");
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        // entries listed twice cancel
        std::map<std::size_t, int> ycount;
        for (std::size_t y : c.boundary[x]) ycount[y] ^= 1;
        std::map<std::size_t, int> count;
        for (auto [y, odd] : ycount) {
            if (!odd) continue;
            std::map<std::size_t, int> zc;
            for (std::size_t z : c.boundary[y]) zc[z] ^= 1;
            for (auto [z, zodd] : zc)
                if (zodd) count[z] ^= 1;
        }
        for (auto [z, odd] : count)
            if (odd)
                throw InvalidComplex("d^2 != 0: generator " + gen_name(c, z) + " appears in d(d(" +
                                     gen_name(c, x) + "))");
    }
}

Barcode decompose(const FilteredComplex& c) {
    validate(c);
    std::vector<Rational> action;
    action.reserve(c.generators.size());
    for (const auto& g : c.generators) action.push_back(g.action);
    Barcode out;
    for (const auto& p : reduce_filtration(action, c.boundary)) {
        Bar b;
        b.birth = ExtRational(action[p.birth]);
        b.death = p.death ? ExtRational(action[*p.death]) : ExtRational::pos_infinity();
        b.degree = c.generators[p.birth].degree;
        out.bars.push_back(b);
    }
    return out.canonical();
}

std::size_t rank_function(const Barcode& barcode, const Rational& a, const Rational& b, int degree) {
    if (b < a) throw PreconditionError("rank_function requires a <= b");
    std::size_t count = 0;
    for (const auto& bar : barcode.bars) {
        if (bar.degree != degree) continue;
        if (bar.birth <= ExtRational(a) && ExtRational(b) < bar.death) ++count;
    }
    return count;
}

namespace {

const Bar& unique_infinite_at(const Barcode& barcode, bool minimal) {
    std::vector<const Bar*> inf;
    for (const auto& b : barcode.bars)
        if (b.death.is_pos_inf()) inf.push_back(&b);
    if (inf.empty()) throw IllPosedInvariant("barcode has no infinite bar");
    int target = inf.front()->degree;
    for (const auto* b : inf) target = minimal ? std::min(target, b->degree) : std::max(target, b->degree);
    const Bar* found = nullptr;
    for (const auto* b : inf) {
        if (b->degree != target) continue;
        if (found) throw IllPosedInvariant("several infinite bars in degree " + std::to_string(target));
        found = b;
    }
    if (!found->birth.is_finite()) throw IllPosedInvariant("infinite bar born at -inf");
    return *found;
}

}  // namespace

Rational c_minus(const Barcode& barcode) { return unique_infinite_at(barcode, true).birth.value(); }
Rational c_plus(const Barcode& barcode) { return unique_infinite_at(barcode, false).birth.value(); }
Rational gamma_of(const Barcode& barcode) { return c_plus(barcode) - c_minus(barcode); }

Barcode shift(const Barcode& barcode, const Rational& c) {
    Barcode out = barcode;
    for (auto& b : out.bars) {
        b.birth = b.birth.shifted(c);
        b.death = b.death.shifted(c);
    }
    return out;
}

}  // namespace lagspec
