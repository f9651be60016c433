#pragma once

// Exact scalars: big rationals and elements of cyclotomic fields Q(zeta_n).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace k3auto {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_to_string(const Rational& r) {
    return r.str();
}

/// Integer polynomial helpers used only to build cyclotomic polynomials.
namespace detail {

using IntPoly = std::vector<BigInt>;  // constant term first

inline void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic divisor; the remainder must vanish.
inline IntPoly divide_exact(IntPoly num, const IntPoly& den) {
    trim(num);
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {};
    IntPoly q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const BigInt c = num[i];
        if (c == 0) continue;
        q[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    trim(num);
    if (!num.empty()) throw std::logic_error("cyclotomic: inexact division");
    trim(q);
    return q;
}

}  // namespace detail

/// Phi_n computed by dividing x^n - 1 by Phi_d for every proper divisor d.
inline std::vector<BigInt> cyclotomic_polynomial(int n) {
    if (n < 1) throw Error(ErrorKind::InputError, "cyclotomic order must be >= 1");
    detail::IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) p = detail::divide_exact(p, cyclotomic_polynomial(d));
    }
    return p;
}

inline int euler_phi(int n) {
    int count = 0;
    for (int k = 1; k <= n; ++k) {
        if (std::gcd(k, n) == 1) ++count;
    }
    return count;
}

class CyclotomicField {
public:
    explicit CyclotomicField(int order)
        : order_(order), minpoly_(cyclotomic_polynomial(order)), degree_(euler_phi(order)) {}

    int order() const noexcept { return order_; }
    int degree() const noexcept { return degree_; }
    const std::vector<BigInt>& minimal_polynomial() const noexcept { return minpoly_; }

private:
    int order_;
    std::vector<BigInt> minpoly_;
    int degree_;
};

using FieldHandle = std::shared_ptr<const CyclotomicField>;

inline FieldHandle make_field(int order) {
    return std::make_shared<const CyclotomicField>(order);
}

/// Element of Q(zeta_n), stored as a reduced coefficient vector in powers of zeta.
///
/// A null field handle stands for Q itself (order 1, a single coefficient).
/// Rationals embed in every cyclotomic field, so mixing them with field
/// elements promotes; mixing two different nontrivial fields is an error.
class CycloNum {
public:
    CycloNum() : coeffs_(1) {}
    CycloNum(long long v) : coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
    CycloNum(const Rational& v) : coeffs_{v} {}      // NOLINT(google-explicit-constructor)

    CycloNum(FieldHandle field, std::vector<Rational> coeffs) : field_(std::move(field)) {
        if (!field_ || field_->order() == 1) {
            field_.reset();
            coeffs_ = {coeffs.empty() ? Rational(0) : coeffs[0]};
            for (std::size_t i = 1; i < coeffs.size(); ++i) coeffs_[0] += coeffs[i];
            return;
        }
        coeffs_ = std::move(coeffs);
        coeffs_.resize(std::max(coeffs_.size(), static_cast<std::size_t>(field_->degree())), 0);
        reduce();
    }

    /// Field order n, with 1 meaning the rationals.
    int order() const noexcept { return field_ ? field_->order() : 1; }
    const FieldHandle& field() const noexcept { return field_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_rational() const noexcept {
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != 0) return false;
        }
        return true;
    }
    bool is_zero() const noexcept {
        for (const auto& c : coeffs_) {
            if (c != 0) return false;
        }
        return true;
    }
    bool is_one() const noexcept { return is_rational() && coeffs_[0] == 1; }
    const Rational& rational_part() const noexcept { return coeffs_[0]; }

    CycloNum operator-() const {
        CycloNum r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = promote(a, b);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
        return x;
    }
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = promote(a, b);
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] -= y.coeffs_[i];
        return x;
    }
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
        if (!a.field_ && !b.field_) return CycloNum(a.coeffs_[0] * b.coeffs_[0]);
        if (!a.field_) return b.scaled(a.coeffs_[0]);
        if (!b.field_) return a.scaled(b.coeffs_[0]);
        check_same(a, b);
        const std::size_t d = a.coeffs_.size();
        std::vector<Rational> prod(2 * d - 1, 0);
        for (std::size_t i = 0; i < d; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (b.coeffs_[j] == 0) continue;
                prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        CycloNum r;
        r.field_ = a.field_;
        r.coeffs_ = std::move(prod);
        r.reduce();
        return r;
    }
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

    CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
    CycloNum& operator-=(const CycloNum& o) { return *this = *this - o; }
    CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }
    CycloNum& operator/=(const CycloNum& o) { return *this = *this / o; }

    CycloNum scaled(const Rational& s) const {
        CycloNum r = *this;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }

    /// Multiplicative inverse, by solving (multiplication-by-this) * v = 1 over Q.
    CycloNum inverse() const {
        if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero in Q(zeta)");
        if (!field_) return CycloNum(Rational(1) / coeffs_[0]);
        const std::size_t d = coeffs_.size();
        // Column j is this * zeta^j.
        std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, 0));
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<Rational> basis(d, 0);
            basis[j] = 1;
            CycloNum col = *this * CycloNum(field_, basis);
            for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coeffs_[i];
        }
        m[0][d] = 1;
        for (std::size_t col = 0; col < d; ++col) {
            std::size_t piv = col;
            while (piv < d && m[piv][col] == 0) ++piv;
            if (piv == d) throw std::logic_error("cyclotomic: singular multiplication matrix");
            std::swap(m[piv], m[col]);
            const Rational inv = Rational(1) / m[col][col];
            for (std::size_t k = col; k <= d; ++k) m[col][k] *= inv;
            for (std::size_t r = 0; r < d; ++r) {
                if (r == col || m[r][col] == 0) continue;
                const Rational f = m[r][col];
                for (std::size_t k = col; k <= d; ++k) m[r][k] -= f * m[col][k];
            }
        }
        std::vector<Rational> sol(d);
        for (std::size_t i = 0; i < d; ++i) sol[i] = m[i][d];
        return CycloNum(field_, std::move(sol));
    }

    friend bool operator==(const CycloNum& a, const CycloNum& b) {
        if (a.field_ && b.field_ && a.field_->order() != b.field_->order()) return false;
        const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const Rational x = i < a.coeffs_.size() ? a.coeffs_[i] : Rational(0);
            const Rational y = i < b.coeffs_.size() ? b.coeffs_[i] : Rational(0);
            if (x != y) return false;
        }
        return true;
    }
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

    /// Terms as a polynomial in `z`, highest power first, e.g. "z^3 - 1/2*z + 3".
    std::string to_string() const {
        std::string out;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const Rational& c = coeffs_[i];
            if (c == 0) continue;
            const bool neg = c < 0;
            const Rational mag = neg ? Rational(-c) : c;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            const std::string mono = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
            if (mono.empty()) {
                out += rational_to_string(mag);
            } else if (mag == 1) {
                out += mono;
            } else {
                out += rational_to_string(mag) + "*" + mono;
            }
        }
        return out.empty() ? "0" : out;
    }

    /// Number of nonzero coefficients.
    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& c : coeffs_) n += c != 0 ? 1 : 0;
        return n;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloNum& c) { return os << c.to_string(); }

private:
    static void check_same(const CycloNum& a, const CycloNum& b) {
        if (a.field_->order() != b.field_->order()) {
            throw Error(ErrorKind::MixedFields, "Q(zeta_" + std::to_string(a.field_->order()) +
                                                    ") vs Q(zeta_" + std::to_string(b.field_->order()) + ")");
        }
    }

    CycloNum promoted_to(const FieldHandle& f) const {
        CycloNum r;
        r.field_ = f;
        r.coeffs_.assign(static_cast<std::size_t>(f->degree()), 0);
        r.coeffs_[0] = coeffs_[0];
        return r;
    }

    static std::pair<CycloNum, CycloNum> promote(const CycloNum& a, const CycloNum& b) {
        if (a.field_ && b.field_) {
            check_same(a, b);
            return {a, b};
        }
        if (a.field_) return {a, b.promoted_to(a.field_)};
        if (b.field_) return {a.promoted_to(b.field_), b};
        return {a, b};
    }

    // Reduce an over-long coefficient vector modulo the monic Phi_n.
    void reduce() {
        const auto& phi = field_->minimal_polynomial();
        const std::size_t d = phi.size() - 1;
        for (std::size_t i = coeffs_.size(); i-- > d;) {
            const Rational c = coeffs_[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= d; ++j) {
                if (phi[j] != 0) coeffs_[i - d + j] -= c * Rational(phi[j]);
            }
        }
        coeffs_.resize(d);
    }

    FieldHandle field_;
    std::vector<Rational> coeffs_;
};

/// zeta_n^k, with k reduced modulo n.
inline CycloNum zeta_pow(const FieldHandle& field, long long k) {
    const long long n = field->order();
    long long e = k % n;
    if (e < 0) e += n;
    std::vector<Rational> c(static_cast<std::size_t>(e) + 1, 0);
    c[static_cast<std::size_t>(e)] = 1;
    return CycloNum(field, std::move(c));
}

/// The exponent k in [0, n) with c = zeta^k, if c is a power of zeta.
/// A rational c is compared inside Q(zeta_n) when `field` is given.
inline std::optional<int> as_zeta_power(const CycloNum& c, const FieldHandle& field = nullptr) {
    const FieldHandle f = c.field() ? c.field() : field;
    if (!f) {
        if (c.is_one()) return 0;
        return std::nullopt;
    }
    for (int k = 0; k < f->order(); ++k) {
        if (zeta_pow(f, k) == c) return k;
    }
    return std::nullopt;
}

/// Multiplicative order of zeta_n^k.
inline int zeta_power_order(int n, long long k) {
    long long e = k % n;
    if (e < 0) e += n;
    return n / static_cast<int>(std::gcd(static_cast<long long>(n), e));
}

}  // namespace k3auto
