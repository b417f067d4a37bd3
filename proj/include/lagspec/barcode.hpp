#pragma once

#include "lagspec/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace lagspec {

struct Bar {
    ExtRational birth;
    ExtRational death;
    int degree = 0;

    bool infinite() const { return !birth.is_finite() || !death.is_finite(); }
    friend bool operator==(const Bar&, const Bar&) = default;
};

bool bar_less(const Bar& a, const Bar& b);

struct Barcode {
    std::vector<Bar> bars;

    Barcode canonical() const;
    std::size_t size() const { return bars.size(); }
    std::vector<Bar> infinite_bars() const;
    std::vector<Bar> finite_bars() const;
};

// multiset equality
bool operator==(const Barcode& a, const Barcode& b);

// Direction of the differential on degrees.  `parity` is the mod-2 grading
// produced by crossing signs of curve pairs.
enum class Grading { cohomological, homological, parity };

struct Generator {
    std::string id;
    Rational action;
    int degree = 0;
};

struct FilteredComplex {
    std::vector<Generator> generators;
    // boundary[x] lists the y with entry (y, x) = 1
    std::vector<std::vector<std::size_t>> boundary;
    Grading grading = Grading::cohomological;
};

void validate(const FilteredComplex& complex);
Barcode decompose(const FilteredComplex& complex);

// Bars of the given degree with birth <= a and death > b (a <= b).
std::size_t rank_function(const Barcode& barcode, const Rational& a, const Rational& b, int degree);

Rational c_minus(const Barcode& barcode);
Rational c_plus(const Barcode& barcode);
Rational gamma_of(const Barcode& barcode);
Barcode shift(const Barcode& barcode, const Rational& c);

// Returns +inf when the infinite bars cannot be matched.
ExtRational bottleneck(const Barcode& a, const Barcode& b);

}  // namespace lagspec
