#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace lagspec {

using Rational = mpq_class;

// Accepts "p/q", integers and finite decimals ("0.125"); always exact.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

inline int sign_of(const Rational& r) { return sgn(r); }
inline Rational standard_part(const Rational& r) { return r; }
inline double to_double(const Rational& r) { return r.get_d(); }
// the two-argument mpq constructor does not reduce
inline Rational ratio(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational min_of(const Rational& a, const Rational& b);
Rational max_of(const Rational& a, const Rational& b);
Rational floor_of(const Rational& r);
Rational ceil_of(const Rational& r);

// A rational or one of the two infinities, used for bar endpoints.
class ExtRational {
public:
    enum class Kind { neg_inf, finite, pos_inf };

    ExtRational() = default;
    ExtRational(const Rational& v) : kind_(Kind::finite), value_(v) {}
    ExtRational(long v) : kind_(Kind::finite), value_(v) {}

    static ExtRational neg_infinity() { return ExtRational(Kind::neg_inf); }
    static ExtRational pos_infinity() { return ExtRational(Kind::pos_inf); }
    static ExtRational parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
    const Rational& value() const;

    ExtRational shifted(const Rational& c) const;

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

private:
    explicit ExtRational(Kind k) : kind_(k) {}
    Kind kind_ = Kind::finite;
    Rational value_;
};

std::string to_string(const ExtRational& r);

}  // namespace lagspec
