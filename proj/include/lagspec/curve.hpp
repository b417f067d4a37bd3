#pragma once

#include "lagspec/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lagspec {

struct Point {
    Rational q;
    Rational p;

    friend bool operator==(const Point&, const Point&) = default;
    Point operator+(const Point& o) const { return {q + o.q, p + o.p}; }
    Point operator-(const Point& o) const { return {q - o.q, p - o.p}; }
    Point operator*(const Rational& s) const { return {q * s, p * s}; }
};

Rational cross(const Point& a, const Point& b);
Rational dot(const Point& a, const Point& b);

// Closed exact PL curve in the annulus R/QZ x R, stored as a lift: vertex i
// joins vertex i+1 and the last vertex joins vertex 0 translated by (Q, 0).
class PLCurve {
public:
    enum class Check { full, local };

    PLCurve(Rational period, std::vector<Point> lift, Rational brane_constant, Check check = Check::full);

    const Rational& period() const { return period_; }
    const Rational& brane_constant() const { return brane_; }
    std::size_t size() const { return vertices_.size(); }
    const std::vector<Point>& vertices() const { return vertices_; }

    // Any integer index; wraps with the period translation.
    Point vertex(long i) const;
    // Primitive at vertex(i) for 0 <= i <= size().
    const Rational& primitive_at_vertex(std::size_t i) const { return primitive_[i]; }
    // f_L at a point of the curve (any lift).
    Rational primitive(const Point& x) const;
    std::optional<std::pair<std::size_t, Rational>> locate(const Point& x) const;

    Rational min_q() const;
    Rational max_q() const;
    Rational min_p() const;
    Rational max_p() const;

private:
    void canonicalize();

    Rational period_;
    std::vector<Point> vertices_;
    Rational brane_;
    std::vector<Rational> primitive_;
};

// Signed area of the lifted loop, the integral of p dq.
Rational loop_action(const Rational& period, const std::vector<Point>& lift);

// Validates embeddedness of a lifted loop; returns a description of the
// first defect or an empty optional.
std::optional<std::string> embedding_defect(const Rational& period, const std::vector<Point>& lift);

PLCurve zero_section(const Rational& period, const Rational& brane_constant = 0, const Rational& base_q = 0);
PLCurve translate_brane(const PLCurve& l, const Rational& c);
PLCurve negate_curve(const PLCurve& l);

// Continuous PL function on R/QZ given by increasing knots in [0, Q).
struct PLFunction {
    Rational period;
    std::vector<Rational> knots;
    std::vector<Rational> values;

    Rational operator()(const Rational& q) const;
    Rational slope(std::size_t i) const;  // on [knot i, knot i+1]
    Rational min_value() const;
    Rational max_value() const;
    Rational oscillation() const { return max_value() - min_value(); }
};

PLFunction difference(const PLFunction& f, const PLFunction& g);
PLCurve graph_of_differential(const PLFunction& f);

}  // namespace lagspec
