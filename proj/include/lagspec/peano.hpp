#pragma once

#include "lagspec/curve.hpp"
#include "lagspec/floer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lagspec {

// Axis-parallel square [q0, q0+side] x [p0, p0+side].
struct Square {
    Rational q0 = 0, p0 = 0, side = 1;

    bool contains_open(const Point& z) const {
        return q0 < z.q && z.q < q0 + side && p0 < z.p && z.p < p0 + side;
    }
};

// Open sup-norm box of half-size `half` around `center`.
struct SupBox {
    Point center;
    Rational half;

    bool contains_open(const Point& x) const;
    bool contains_closed(const Point& x) const;
};

struct TongueStep {
    Point z;
    std::vector<Point> avoid;
    Rational epsilon;
    bool upward = true;
    Rational r, s;  // probe bump width and height
    SupBox probe_ball;
    Point cap_from, cap_to;
    Rational corridor_width;
    Rational corridor_length;  // rectilinear centre line
    Rational tongue_area;
    Rational notch_depth;
    Rational clearance;
    PLCurve curve_after;
    PLCurve probe_curve;
    Rational gamma_step;   // gamma(curve_after, curve before)
    Rational gamma_probe;  // gamma(probe_curve, curve_after)
};

struct SkippedPoint {
    Point z;
    std::string reason;
};

struct TongueSchedule {
    Square K;
    std::vector<Point> dense_points;
    std::vector<Rational> epsilons;
    std::vector<PLCurve> stages;  // stages[0] is the base curve
    std::vector<TongueStep> steps;
    std::vector<SkippedPoint> skipped;
};

struct Certificate {
    std::string name;
    std::string claim;
    Rational value;
    Rational bound;
    bool pass = false;
    std::optional<Rational> chain_bound;
};

// Zig-zag curve of period 4 that runs along the diagonal of [0,1]^2.
PLCurve peano_base_curve();

std::vector<Point> halton_points(const Square& K, std::size_t count, std::size_t skip = 1);
std::vector<Rational> geometric_epsilons(const Rational& epsilon0, const Rational& ratio, std::size_t count);

TongueStep make_tongue(const PLCurve& l, const Point& z, const std::vector<Point>& avoid, const Rational& epsilon,
                       const Square& K, const std::vector<SupBox>& keep_out = {});

TongueSchedule run_schedule(const std::vector<Point>& dense_points, const std::vector<Rational>& epsilons,
                            const Square& K, std::size_t steps);

// Replaces the cap of the given step by the probe step graph.
PLCurve apply_probe(const TongueStep& step, const PLCurve& l);

Certificate verify_cauchy_tail(const TongueSchedule& s, std::size_t k, std::size_t m);
Certificate verify_separation(const TongueSchedule& s, std::size_t k, std::size_t m);

}  // namespace lagspec
