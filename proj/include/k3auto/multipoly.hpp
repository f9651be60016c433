#pragma once

// Sparse polynomials in x, y, t over Q(zeta_n) and quotients of them.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "poly.hpp"

namespace k3auto {

using UniPoly = Poly<CycloNum>;

/// Exponents of (x, y, t).
using Monomial = std::array<int, 3>;

inline constexpr std::array<char, 3> kVariableNames{'x', 'y', 't'};

inline int variable_index(char v) {
    for (int i = 0; i < 3; ++i) {
        if (kVariableNames[static_cast<std::size_t>(i)] == v) return i;
    }
    return -1;
}

inline std::string monomial_to_string(const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < 3; ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += kVariableNames[i];
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

/// A coefficient times a monomial, rendered in the expression grammar.
/// Returns the body and whether the term is negative.
inline std::pair<std::string, bool> term_to_string(const CycloNum& c, const std::string& mono) {
    bool neg = false;
    std::string coeff;
    if (c.term_count() == 1) {
        // Single power of z with a rational factor.
        std::size_t k = 0;
        while (c.coeffs()[k] == 0) ++k;
        Rational r = c.coeffs()[k];
        if (r < 0) {
            neg = true;
            r = -r;
        }
        const std::string zpart = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
        if (zpart.empty()) {
            coeff = rational_to_string(r);
        } else if (r == 1) {
            coeff = zpart;
        } else {
            coeff = rational_to_string(r) + "*" + zpart;
        }
    } else {
        coeff = "(" + c.to_string() + ")";
    }
    if (mono.empty()) return {coeff, neg};
    if (coeff == "1") return {mono, neg};
    return {coeff + "*" + mono, neg};
}

class MultiPoly {
public:
    // Descending lexicographic order on (x, y, t) exponents.
    using Terms = std::map<Monomial, CycloNum, std::greater<>>;

    MultiPoly() = default;
    explicit MultiPoly(const CycloNum& c) {
        if (!c.is_zero()) terms_[{0, 0, 0}] = c;
    }
    static MultiPoly variable(int index) {
        MultiPoly p;
        Monomial m{0, 0, 0};
        m[static_cast<std::size_t>(index)] = 1;
        p.terms_[m] = CycloNum(1);
        return p;
    }
    static MultiPoly term(const CycloNum& c, const Monomial& m) {
        MultiPoly p;
        if (!c.is_zero()) p.terms_[m] = c;
        return p;
    }
    /// Embed a univariate polynomial in t.
    static MultiPoly from_t(const UniPoly& p) {
        MultiPoly r;
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
            if (!p.coeffs()[i].is_zero()) r.terms_[{0, 0, static_cast<int>(i)}] = p.coeffs()[i];
        }
        return r;
    }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0, 0});
    }
    CycloNum constant_term() const {
        auto it = terms_.find({0, 0, 0});
        return it == terms_.end() ? CycloNum() : it->second;
    }
    /// Bitmask of variables that occur (bit i for variable i).
    unsigned variables() const {
        unsigned mask = 0;
        for (const auto& [m, c] : terms_) {
            for (unsigned i = 0; i < 3; ++i) {
                if (m[i] > 0) mask |= 1U << i;
            }
        }
        return mask;
    }
    int degree_in(int var) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<std::size_t>(var)]);
        return d;
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
            }
        }
        return r;
    }
    MultiPoly scaled(const CycloNum& s) const {
        MultiPoly r;
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }
    MultiPoly pow(unsigned e) const {
        MultiPoly result(CycloNum(1));
        MultiPoly base = *this;
        while (e > 0) {
            if (e & 1U) result = result * base;
            e >>= 1U;
            if (e > 0) base = base * base;
        }
        return result;
    }

    /// Substitute ring elements for x, y, t. `embed` maps coefficients into R.
    template <class R, class Embed>
    R evaluate(const R& x, const R& y, const R& t, Embed&& embed) const {
        const std::array<const R*, 3> at{&x, &y, &t};
        std::array<std::vector<R>, 3> powers;
        R acc{};
        for (const auto& [m, c] : terms_) {
            R term = embed(c);
            for (std::size_t i = 0; i < 3; ++i) {
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(embed(CycloNum(1)));
                while (static_cast<int>(pw.size()) <= m[i]) pw.push_back(pw.back() * *at[i]);
                if (m[i] > 0) term = term * pw[static_cast<std::size_t>(m[i])];
            }
            acc = acc + term;
        }
        return acc;
    }

    /// Univariate view in t; nullopt if x or y occurs.
    std::optional<UniPoly> as_t_poly() const {
        if ((variables() & 0b011U) != 0) return std::nullopt;
        std::vector<CycloNum> c(static_cast<std::size_t>(std::max(degree_in(2), 0)) + 1);
        for (const auto& [m, v] : terms_) c[static_cast<std::size_t>(m[2])] = v;
        return UniPoly(std::move(c));
    }

    /// Division by a nonzero polynomial, if it is exact.
    std::optional<MultiPoly> exact_divide(const MultiPoly& d) const {
        if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "multivariate division by zero");
        MultiPoly rem = *this;
        MultiPoly quo;
        const auto& [lm, lc] = *d.terms_.begin();
        const CycloNum inv = lc.inverse();
        while (!rem.is_zero()) {
            const auto& [rm, rc] = *rem.terms_.begin();
            Monomial q{rm[0] - lm[0], rm[1] - lm[1], rm[2] - lm[2]};
            if (q[0] < 0 || q[1] < 0 || q[2] < 0) return std::nullopt;
            MultiPoly step = term(rc * inv, q);
            quo = quo + step;
            rem = rem - step * d;
        }
        return quo;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            auto [body, neg] = term_to_string(c, monomial_to_string(m));
            if (out.empty()) {
                out = neg ? "-" + body : body;
            } else {
                out += (neg ? " - " : " + ") + body;
            }
        }
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    void add_term(const Monomial& m, const CycloNum& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    Terms terms_;
};

/// Univariate polynomial rendered with an explicit variable name.
inline std::string to_string(const UniPoly& p, char var = 't') {
    MultiPoly m;
    const int idx = variable_index(var);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        Monomial mono{0, 0, 0};
        mono[static_cast<std::size_t>(idx)] = static_cast<int>(i);
        m = m + MultiPoly::term(p.coeffs()[i], mono);
    }
    return m.to_string();
}

/// Quotient of two multivariate polynomials.
///
/// Reduction is partial: constant denominators are absorbed, the common
/// monomial factor is removed, exact divisibility collapses to a polynomial,
/// and quotients in a single common variable are cancelled by gcd. Equality
/// is decided by cross-multiplication.
class RationalFunction {
public:
    RationalFunction() : den_(CycloNum(1)) {}
    explicit RationalFunction(MultiPoly p) : num_(std::move(p)), den_(CycloNum(1)) {}
    RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw Error(ErrorKind::ZeroDenominator, "rational function with zero denominator");
        reduce();
    }

    const MultiPoly& num() const noexcept { return num_; }
    const MultiPoly& den() const noexcept { return den_; }
    bool is_polynomial() const noexcept { return den_.is_constant(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    unsigned variables() const { return num_.variables() | den_.variables(); }

    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by an identically zero expression");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction pow(unsigned e) const {
        RationalFunction r;
        r.num_ = num_.pow(e);
        r.den_ = den_.pow(e);
        return r;
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = MultiPoly(CycloNum(1));
            return;
        }
        if (den_.is_constant()) {
            num_ = num_.scaled(den_.constant_term().inverse());
            den_ = MultiPoly(CycloNum(1));
            return;
        }
        // Common monomial content.
        Monomial low{1 << 30, 1 << 30, 1 << 30};
        for (const auto* p : {&num_, &den_}) {
            for (const auto& [m, c] : p->terms()) {
                for (std::size_t i = 0; i < 3; ++i) low[i] = std::min(low[i], m[i]);
            }
        }
        if (low != Monomial{0, 0, 0}) {
            const MultiPoly mono = MultiPoly::term(CycloNum(1), low);
            num_ = *num_.exact_divide(mono);
            den_ = *den_.exact_divide(mono);
        }
        if (auto q = num_.exact_divide(den_)) {
            num_ = *q;
            den_ = MultiPoly(CycloNum(1));
            return;
        }
        // Single shared variable: cancel the univariate gcd.
        const unsigned vars = num_.variables() | den_.variables();
        if (vars == 1U || vars == 2U || vars == 4U) {
            const int v = vars == 1U ? 0 : (vars == 2U ? 1 : 2);
            const UniPoly n = to_uni(num_, v);
            const UniPoly d = to_uni(den_, v);
            const UniPoly g = gcd(n, d);
            if (g.degree() > 0) {
                num_ = from_uni(UniPoly::exact_div(n, g), v);
                den_ = from_uni(UniPoly::exact_div(d, g), v);
            }
        }
        const CycloNum lead = den_.terms().begin()->second;
        if (!lead.is_one()) {
            const CycloNum inv = lead.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
        if (den_.is_constant()) {
            num_ = num_.scaled(den_.constant_term().inverse());
            den_ = MultiPoly(CycloNum(1));
        }
    }

    static UniPoly to_uni(const MultiPoly& p, int v) {
        std::vector<CycloNum> c(static_cast<std::size_t>(std::max(p.degree_in(v), 0)) + 1);
        for (const auto& [m, val] : p.terms()) c[static_cast<std::size_t>(m[static_cast<std::size_t>(v)])] = val;
        return UniPoly(std::move(c));
    }
    static MultiPoly from_uni(const UniPoly& p, int v) {
        MultiPoly r;
        for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
            Monomial m{0, 0, 0};
            m[static_cast<std::size_t>(v)] = static_cast<int>(i);
            r = r + MultiPoly::term(p.coeffs()[i], m);
        }
        return r;
    }

    MultiPoly num_;
    MultiPoly den_;
};

}  // namespace k3auto
