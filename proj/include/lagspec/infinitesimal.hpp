#pragma once

#include "lagspec/rational.hpp"

#include <vector>

namespace lagspec {

// Element of the ordered field Q(d) where d is a positive infinitesimal:
// a ratio of polynomials in d, ordered by the sign of the lowest-order
// nonzero coefficient.  Used to resolve coincident curves exactly.
class Infinitesimal {
public:
    Infinitesimal() = default;
    Infinitesimal(const Rational& c);
    Infinitesimal(long c) : Infinitesimal(Rational(c)) {}

    static Infinitesimal delta();
    // c0 + c1 d
    static Infinitesimal linear(const Rational& c0, const Rational& c1);

    int sign() const;
    bool is_zero() const { return num_.empty(); }
    // Value at d = 0; throws if the element is infinitely large.
    Rational standard() const;

    Infinitesimal operator-() const;
    Infinitesimal& operator+=(const Infinitesimal& o);
    Infinitesimal& operator-=(const Infinitesimal& o);
    Infinitesimal& operator*=(const Infinitesimal& o);
    Infinitesimal& operator/=(const Infinitesimal& o);

    friend Infinitesimal operator+(Infinitesimal a, const Infinitesimal& b) { return a += b; }
    friend Infinitesimal operator-(Infinitesimal a, const Infinitesimal& b) { return a -= b; }
    friend Infinitesimal operator*(Infinitesimal a, const Infinitesimal& b) { return a *= b; }
    friend Infinitesimal operator/(Infinitesimal a, const Infinitesimal& b) { return a /= b; }

    friend int compare(const Infinitesimal& a, const Infinitesimal& b);
    friend bool operator==(const Infinitesimal& a, const Infinitesimal& b) { return compare(a, b) == 0; }
    friend bool operator<(const Infinitesimal& a, const Infinitesimal& b) { return compare(a, b) < 0; }
    friend bool operator>(const Infinitesimal& a, const Infinitesimal& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Infinitesimal& a, const Infinitesimal& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Infinitesimal& a, const Infinitesimal& b) { return compare(a, b) >= 0; }

private:
    using Poly = std::vector<Rational>;
    void normalize();
    bool polynomial() const { return den_.size() == 1 && den_[0] == 1; }

    Poly num_;
    Poly den_{Rational(1)};
};

inline int sign_of(const Infinitesimal& x) { return x.sign(); }
inline Rational standard_part(const Infinitesimal& x) { return x.standard(); }

}  // namespace lagspec
