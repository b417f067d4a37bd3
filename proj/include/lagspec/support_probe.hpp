#pragma once

#include "lagspec/curve.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lagspec {

struct ProbeWitness {
    std::size_t segment = 0;
    Point direction;
    Rational amplitude;
    Rational gamma;
    std::vector<Point> path;  // inserted after vertex `segment`, in lift coordinates
};

struct ProbeReport {
    Point z;
    Rational radius;
    Rational gamma_lower_bound = 0;
    bool positive = false;
    std::size_t evaluated = 0;
    std::optional<ProbeWitness> witness;  // the probe attaining the bound
};

// Rectangular lattice of cell centres over [q0,q1] x [p0,p1].
struct Grid {
    Rational q0, q1, p0, p1;
    std::size_t nq = 0, np = 0;

    std::vector<Point> points() const;
};

// Bump pushes supported in the open sup-box B(z, eps).  With stop_above set,
// evaluation stops at the first probe whose gamma exceeds it.
ProbeReport probe(const PLCurve& l, const Point& z, const Rational& eps, std::size_t family_size = 32,
                  std::optional<Rational> stop_above = std::nullopt);
Rational density(const PLCurve& l, const Point& z, const Rational& eps, std::size_t family_size = 32);

struct SupportPoint {
    Point z;
    ProbeReport certificate;
};

std::vector<SupportPoint> estimate_support(const PLCurve& l, const Grid& grid, const Rational& eps,
                                           const Rational& delta, std::size_t family_size = 32);

// Graph of d(eps * (eps - |q - q0|)_+), a bump of oscillation eps^2 inside the eps-ball.
PLCurve figure_one_bump(const Rational& period, const Rational& q0, const Rational& eps);

// Least-squares slope of log(density) against log(eps).
double density_exponent(const std::vector<Rational>& eps, const std::vector<Rational>& densities);

}  // namespace lagspec
