#include "lagspec/rational.hpp"

#include "lagspec/errors.hpp"

#include <cctype>

namespace lagspec {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw InputError("empty rational literal");

    bool negative = false;
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational out;
    auto slash = body.find('/');
    auto dot = body.find('.');
    if (slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw InputError("malformed rational literal '" + std::string(text) + "'");
        mpz_class n(std::string(num), 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        out = Rational(n, d);
    } else if (dot != std::string_view::npos) {
        auto ip = body.substr(0, dot);
        auto fp = body.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
            (ip.empty() && fp.empty()))
            throw InputError("malformed decimal literal '" + std::string(text) + "'");
        mpz_class n(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, fp.size());
        out = Rational(n, d);
    } else {
        if (!all_digits(body))
            throw InputError("malformed rational literal '" + std::string(text) + "'");
        out = Rational(mpz_class(std::string(body), 10));
    }
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

Rational min_of(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational floor_of(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(q);
}

Rational ceil_of(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rational(q);
}

ExtRational ExtRational::parse(std::string_view text) {
    if (text == "+inf" || text == "inf") return pos_infinity();
    if (text == "-inf") return neg_infinity();
    return ExtRational(parse_rational(text));
}

const Rational& ExtRational::value() const {
    if (kind_ != Kind::finite) throw PreconditionError("value() of an infinite endpoint");
    return value_;
}

ExtRational ExtRational::shifted(const Rational& c) const {
    if (kind_ != Kind::finite) return *this;
    return ExtRational(Rational(value_ + c));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != ExtRational::Kind::finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != ExtRational::Kind::finite) return std::strong_ordering::equal;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const ExtRational& r) {
    if (r.is_pos_inf()) return "+inf";
    if (r.is_neg_inf()) return "-inf";
    return to_string(r.value());
}

}  // namespace lagspec
