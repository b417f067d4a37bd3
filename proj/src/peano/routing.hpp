#pragma once

#include "lagspec/peano.hpp"

#include <optional>
#include <vector>

namespace lagspec::detail {

struct Detour {
    std::size_t host = 0;       // segment of the curve carrying both feet
    std::vector<Point> points;  // west foot ... east foot
    Rational width;
    Rational length;
};

struct Notch {
    std::size_t host = 0;
    Point a, apex, b;
    Rational depth;
};

bool segment_meets_closed_box(const Point& a, const Point& b, const SupBox& box);
Rational sup_distance(const Point& z, const Point& a, const Point& b);

// Shortest feasible vertical or Z-shaped corridor from the diagonal to the
// head of a tongue whose cap passes through z.
std::optional<Detour> route_corridor(const PLCurve& l, const Point& z, bool upward, const Rational& epsilon,
                                     const Rational& R, const Rational& g, const Square& K,
                                     const std::vector<SupBox>& keep_out);

std::vector<Point> splice(const std::vector<Point>& lift, std::size_t host, const std::vector<Point>& inner);

// Dyadic number >= sqrt(x) with denominator 2^20.
Rational sqrt_upper(const Rational& x);

// Triangle dent of the diagonal on the side opposite to the tongue, sized so
// the spliced loop is exact again.
std::optional<Notch> place_notch(const Rational& period, const std::vector<Point>& lift, const Rational& near_q, bool upward,
                                 const Rational& tongue_area, const Rational& gap, const Square& K,
                                 const std::vector<SupBox>& keep_out);

}  // namespace lagspec::detail
