#pragma once

#include "lagspec/barcode.hpp"
#include "lagspec/curve.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace lagspec {

// strict: any non-transverse contact is an error.
// limit: the second curve is displaced by an exact infinitesimal exact
// isotopy before counting, and bars are reported by their standard parts.
enum class Genericity { strict, limit };

struct IntersectionPoint {
    Point location;
    Rational action;  // f_{l1}(x) - f_{l2}(x)
    int degree = 0;   // 0 or 1
    std::size_t segment_1 = 0;
    std::size_t segment_2 = 0;
};

struct Lune {
    std::size_t upper = 0;  // generator of larger action
    std::size_t lower = 0;
    Rational area;
    std::vector<Point> boundary;  // closed polygon in the lift, first point not repeated
};

std::vector<IntersectionPoint> intersect(const PLCurve& l1, const PLCurve& l2);
FilteredComplex complex_of_pair(const PLCurve& l1, const PLCurve& l2);
std::vector<Lune> lunes_of_pair(const PLCurve& l1, const PLCurve& l2);

Barcode barcode_of_pair(const PLCurve& l1, const PLCurve& l2, Genericity g = Genericity::strict);
Rational gamma_pair(const PLCurve& l1, const PLCurve& l2, Genericity g = Genericity::strict);
std::pair<Rational, Rational> c_pm_pair(const PLCurve& l1, const PLCurve& l2, Genericity g = Genericity::strict);
// max(c+, 0) - min(c-, 0)
Rational c_metric_pair(const PLCurve& l1, const PLCurve& l2, Genericity g = Genericity::strict);

Barcode barcode_vs_fiber(const PLCurve& l, const Rational& x);
bool is_pseudograph(const PLCurve& l, const std::vector<Rational>& xs);
// count fibre abscissae spread over one period, avoiding vertex abscissae
std::vector<Rational> fiber_samples(const PLCurve& l, std::size_t count);
// one fibre in every gap between consecutive vertex abscissae
std::vector<Rational> gap_fibers(const PLCurve& l);

}  // namespace lagspec
