#include "lagspec/infinitesimal.hpp"

#include "lagspec/errors.hpp"

#include <algorithm>

namespace lagspec {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

std::size_t valuation(const Poly& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) return i;
    return p.size();
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

int lowest_sign(const Poly& p) {
    for (const auto& c : p)
        if (c != 0) return sgn(c);
    return 0;
}

}  // namespace

Infinitesimal::Infinitesimal(const Rational& c) {
    if (c != 0) num_.push_back(c);
}

Infinitesimal Infinitesimal::delta() {
    Infinitesimal d;
    d.num_ = {Rational(0), Rational(1)};
    return d;
}

Infinitesimal Infinitesimal::linear(const Rational& c0, const Rational& c1) {
    Infinitesimal d;
    d.num_ = {c0, c1};
    trim(d.num_);
    return d;
}

void Infinitesimal::normalize() {
    trim(num_);
    trim(den_);
    if (den_.empty()) throw PreconditionError("division by zero in infinitesimal field");
    if (num_.empty()) {
        den_ = {Rational(1)};
        return;
    }
    std::size_t k = std::min(valuation(num_), valuation(den_));
    if (k > 0) {
        num_.erase(num_.begin(), num_.begin() + static_cast<std::ptrdiff_t>(k));
        den_.erase(den_.begin(), den_.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (den_.size() == 1) {
        if (den_[0] != 1) {
            Rational inv = 1 / den_[0];
            for (auto& c : num_) c *= inv;
            den_[0] = 1;
        }
        return;
    }
    if (lowest_sign(den_) < 0) {
        for (auto& c : num_) c = -c;
        for (auto& c : den_) c = -c;
    }
}

int Infinitesimal::sign() const { return lowest_sign(num_); }

Rational Infinitesimal::standard() const {
    if (num_.empty()) return Rational(0);
    std::size_t vn = valuation(num_);
    std::size_t vd = valuation(den_);
    if (vn < vd) throw PreconditionError("standard part of an infinitely large element");
    if (vn > vd) return Rational(0);
    return num_[vn] / den_[vd];
}

Infinitesimal Infinitesimal::operator-() const {
    Infinitesimal r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

Infinitesimal& Infinitesimal::operator+=(const Infinitesimal& o) {
    if (polynomial() && o.polynomial()) {
        num_ = add(num_, o.num_);
        return *this;
    }
    if (den_ == o.den_) {
        num_ = add(num_, o.num_);
    } else {
        num_ = add(mul(num_, o.den_), mul(o.num_, den_));
        den_ = mul(den_, o.den_);
    }
    normalize();
    return *this;
}

Infinitesimal& Infinitesimal::operator-=(const Infinitesimal& o) {
    if (polynomial() && o.polynomial()) {
        num_ = sub(num_, o.num_);
        return *this;
    }
    if (den_ == o.den_) {
        num_ = sub(num_, o.num_);
    } else {
        num_ = sub(mul(num_, o.den_), mul(o.num_, den_));
        den_ = mul(den_, o.den_);
    }
    normalize();
    return *this;
}

Infinitesimal& Infinitesimal::operator*=(const Infinitesimal& o) {
    num_ = mul(num_, o.num_);
    if (!(polynomial() && o.polynomial())) den_ = mul(den_, o.den_);
    normalize();
    return *this;
}

Infinitesimal& Infinitesimal::operator/=(const Infinitesimal& o) {
    if (o.num_.empty()) throw PreconditionError("division by zero in infinitesimal field");
    Poly n = mul(num_, o.den_);
    Poly d = mul(den_, o.num_);
    num_ = std::move(n);
    den_ = std::move(d);
    normalize();
    return *this;
}

int compare(const Infinitesimal& a, const Infinitesimal& b) {
    if (a.den_ == b.den_) return lowest_sign(sub(a.num_, b.num_));
    // denominators are normalized to be positive
    return lowest_sign(sub(mul(a.num_, b.den_), mul(b.num_, a.den_)));
}

}  // namespace lagspec
