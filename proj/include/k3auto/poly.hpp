#pragma once

// Dense univariate polynomials and reduced fractions over an exact field.
//
// Both templates are parametrised by the coefficient field F, so they stack:
//   Poly<CycloNum>                      Q(zeta)[t]
//   Fraction<CycloNum>                  Q(zeta)(t)
//   Fraction<Fraction<CycloNum>>        Q(zeta)(t)(x)
// F must be default-constructible as zero, constructible from long long,
// closed under + - * / and provide is_zero() and ==.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace k3auto {

template <class F>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(const F& constant) : c_{constant} { trim(); }

    static Poly monomial(const F& coeff, std::size_t degree) {
        std::vector<F> c(degree + 1);
        c[degree] = coeff;
        return Poly(std::move(c));
    }
    static Poly variable() { return monomial(F(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const std::vector<F>& coeffs() const noexcept { return c_; }
    F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(); }
    const F& leading() const {
        if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<F> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size() && i < b.c_.size()) {
                r[i] = a.c_[i] + b.c_[i];
            } else {
                r[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
            }
        }
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<F> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(r));
    }
    Poly scaled(const F& s) const {
        if (s.is_zero()) return {};
        Poly r = *this;
        for (auto& c : r.c_) c = c * s;
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned e) const {
        Poly result(F(1));
        Poly base = *this;
        while (e > 0) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e > 0) base = base * base;
        }
        return result;
    }

    /// Euclidean division: a = q * b + r with deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly(), a};
        std::vector<F> rem = a.c_;
        std::vector<F> quo(a.c_.size() - b.c_.size() + 1);
        const F inv_lead = F(1) / b.leading();
        const std::size_t db = b.c_.size() - 1;
        for (std::size_t i = rem.size(); i-- > db;) {
            if (rem[i].is_zero()) continue;
            const F q = rem[i] * inv_lead;
            quo[i - db] = q;
            for (std::size_t j = 0; j <= db; ++j) {
                if (!b.c_[j].is_zero()) rem[i - db + j] = rem[i - db + j] - q * b.c_[j];
            }
        }
        rem.resize(db);
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// Quotient that must be exact.
    static Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::logic_error("exact polynomial division left a remainder");
        return q;
    }

    bool divides(const Poly& other) const { return (other % *this).is_zero(); }

    Poly monic() const {
        if (is_zero()) return {};
        if (leading() == F(1)) return *this;
        return scaled(F(1) / leading());
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * F(static_cast<long long>(i));
        return Poly(std::move(r));
    }

    /// Horner evaluation into a ring R; `embed` maps coefficients F -> R.
    template <class R, class Embed>
    R evaluate(const R& at, Embed&& embed) const {
        if (c_.empty()) return R();
        R acc = embed(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * at + embed(c_[i]);
        return acc;
    }
    F evaluate(const F& at) const {
        return evaluate(at, [](const F& c) { return c; });
    }

    /// Reverse the coefficient list as a polynomial of formal degree `deg`:
    /// s^deg * p(1/s).
    Poly reversed(std::size_t deg) const {
        if (c_.size() > deg + 1) throw std::logic_error("reversed: formal degree too small");
        std::vector<F> r(deg + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) r[deg - i] = c_[i];
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<F> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Reduced quotient of two polynomials: gcd(num, den) = 1 and den monic.
/// Equality is therefore structural.
template <class F>
class Fraction {
public:
    Fraction() : den_(F(1)) {}
    Fraction(long long v) : num_(F(v)), den_(F(1)) {}  // NOLINT(google-explicit-constructor)
    explicit Fraction(const F& v) : num_(v), den_(F(1)) {}
    explicit Fraction(Poly<F> p) : num_(std::move(p)), den_(F(1)) {}
    Fraction(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "fraction with zero denominator");
        canonicalize();
    }

    static Fraction variable() { return Fraction(Poly<F>::variable()); }

    const Poly<F>& num() const noexcept { return num_; }
    const Poly<F>& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    bool is_constant() const noexcept { return is_polynomial() && num_.degree() <= 0; }
    /// The constant value; only meaningful when is_constant().
    F constant_value() const { return num_.coeff(0); }

    Fraction operator-() const {
        Fraction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend Fraction operator+(const Fraction& a, const Fraction& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) {
            if (a.is_polynomial()) return Fraction(a.num_ + b.num_);
            return Fraction(a.num_ + b.num_, a.den_);
        }
        return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
    friend Fraction operator*(const Fraction& a, const Fraction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_polynomial() && b.is_polynomial()) return Fraction(a.num_ * b.num_);
        const Poly<F> g1 = gcd(a.num_, b.den_);
        const Poly<F> g2 = gcd(b.num_, a.den_);
        Fraction r;
        r.num_ = Poly<F>::exact_div(a.num_, g1) * Poly<F>::exact_div(b.num_, g2);
        r.den_ = Poly<F>::exact_div(a.den_, g2) * Poly<F>::exact_div(b.den_, g1);
        r.normalize_leading();
        return r;
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b) { return a * b.inverse(); }

    Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
    Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
    Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
    Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

    Fraction inverse() const {
        if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero fraction");
        Fraction r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_leading();
        return r;
    }

    Fraction pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        Fraction r;
        r.num_ = num_.pow(static_cast<unsigned>(e));
        r.den_ = den_.pow(static_cast<unsigned>(e));
        return r;
    }

    /// d/dvar by the quotient rule.
    Fraction derivative() const {
        if (is_polynomial()) return Fraction(num_.derivative());
        return Fraction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    /// Evaluate at an element of a field R, mapping coefficients through `embed`.
    template <class R, class Embed>
    R evaluate(const R& at, Embed&& embed) const {
        R n = num_.evaluate(at, embed);
        if (is_polynomial()) return n;
        return n / den_.evaluate(at, embed);
    }

    friend bool operator==(const Fraction& a, const Fraction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }

private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly<F>(F(1));
            return;
        }
        if (den_.degree() > 0) {
            const Poly<F> g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = Poly<F>::exact_div(num_, g);
                den_ = Poly<F>::exact_div(den_, g);
            }
        }
        normalize_leading();
    }

    void normalize_leading() {
        if (num_.is_zero()) {
            den_ = Poly<F>(F(1));
            return;
        }
        const F lead = den_.leading();
        if (lead == F(1)) return;
        const F inv = F(1) / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }

    Poly<F> num_;
    Poly<F> den_;
};

}  // namespace k3auto
