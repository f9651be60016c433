#pragma once

// The function field Q(zeta)(t)(x)[y] / (y^2 - x^3 - A x - B) of a Weierstrass
// surface, maps of the surface given by coordinate formulas, and the
// chord-tangent group law on the generic fiber.

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "parser.hpp"
#include "surface.hpp"

namespace k3auto {

/// Rational functions of t.
using TFunction = Fraction<CycloNum>;
/// Rational functions of x with coefficients in Q(zeta)(t).
using XFunction = Fraction<TFunction>;

inline TFunction t_function(const UniPoly& p) { return TFunction(p); }
inline XFunction x_constant(const TFunction& c) { return XFunction(c); }
inline XFunction x_variable() { return XFunction::variable(); }

/// Shared curve data for function-field arithmetic.
struct CurveData {
    WeierstrassModel model;
    TFunction a;   // A(t)
    TFunction b;   // B(t)
    XFunction f;   // x^3 + A x + B

    explicit CurveData(WeierstrassModel m)
        : model(std::move(m)), a(t_function(model.a())), b(t_function(model.b())) {
        const XFunction x = x_variable();
        f = x * x * x + x_constant(a) * x + x_constant(b);
    }
};

using CurveHandle = std::shared_ptr<const CurveData>;

inline CurveHandle make_curve(const WeierstrassModel& m) {
    return std::make_shared<const CurveData>(m);
}

/// a + b*y with a, b in Q(zeta)(t)(x); y^2 is always reduced to x^3 + A x + B.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(long long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
    FieldElement(XFunction a, XFunction b, CurveHandle curve)
        : a_(std::move(a)), b_(std::move(b)), curve_(std::move(curve)) {}

    static FieldElement x(const CurveHandle& c) { return {x_variable(), XFunction(), c}; }
    static FieldElement y(const CurveHandle& c) { return {XFunction(), XFunction(1), c}; }
    static FieldElement t(const CurveHandle& c) { return {x_constant(TFunction::variable()), XFunction(), c}; }
    static FieldElement constant(const TFunction& v, const CurveHandle& c) { return {x_constant(v), XFunction(), c}; }

    const XFunction& a() const noexcept { return a_; }
    const XFunction& b() const noexcept { return b_; }
    const CurveHandle& curve() const noexcept { return curve_; }

    bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
    /// Constant in Q(zeta), if the element is one.
    std::optional<CycloNum> as_constant() const {
        if (!b_.is_zero() || !a_.is_constant()) return std::nullopt;
        const TFunction c = a_.constant_value();
        if (!c.is_constant()) return std::nullopt;
        return c.constant_value();
    }

    FieldElement operator-() const { return {-a_, -b_, curve_}; }
    friend FieldElement operator+(const FieldElement& p, const FieldElement& q) {
        return {p.a_ + q.a_, p.b_ + q.b_, pick(p, q)};
    }
    friend FieldElement operator-(const FieldElement& p, const FieldElement& q) {
        return {p.a_ - q.a_, p.b_ - q.b_, pick(p, q)};
    }
    friend FieldElement operator*(const FieldElement& p, const FieldElement& q) {
        const CurveHandle c = pick(p, q);
        if (p.b_.is_zero() && q.b_.is_zero()) return {p.a_ * q.a_, XFunction(), c};
        if (p.b_.is_zero()) return {p.a_ * q.a_, p.a_ * q.b_, c};
        if (q.b_.is_zero()) return {p.a_ * q.a_, p.b_ * q.a_, c};
        return {p.a_ * q.a_ + p.b_ * q.b_ * c->f, p.a_ * q.b_ + p.b_ * q.a_, c};
    }
    /// Inverse via the conjugate: 1/(a + b y) = (a - b y) / (a^2 - b^2 f).
    FieldElement inverse() const {
        if (is_zero()) throw Error(ErrorKind::ZeroDenominatorOnSurface, "division by zero in the function field");
        if (b_.is_zero()) return {a_.inverse(), XFunction(), curve_};
        const XFunction norm = a_ * a_ - b_ * b_ * curve_->f;
        const XFunction inv = norm.inverse();
        return {a_ * inv, -b_ * inv, curve_};
    }
    friend FieldElement operator/(const FieldElement& p, const FieldElement& q) { return p * q.inverse(); }

    FieldElement pow(unsigned e) const {
        FieldElement r(XFunction(1), XFunction(), curve_);
        FieldElement base = *this;
        while (e > 0) {
            if (e & 1U) r = r * base;
            e >>= 1U;
            if (e > 0) base = base * base;
        }
        return r;
    }

    friend bool operator==(const FieldElement& p, const FieldElement& q) { return p.a_ == q.a_ && p.b_ == q.b_; }
    friend bool operator!=(const FieldElement& p, const FieldElement& q) { return !(p == q); }

private:
    static CurveHandle pick(const FieldElement& p, const FieldElement& q) { return p.curve_ ? p.curve_ : q.curve_; }

    XFunction a_;
    XFunction b_;
    CurveHandle curve_;
};

// ---------------------------------------------------------------------------
// Conversions between expressions and function-field elements.

/// Reduce an expression in x, y, t to the a + b*y normal form.
inline FieldElement normalize(const RationalFunction& expr, const CurveHandle& curve) {
    const FieldElement x = FieldElement::x(curve);
    const FieldElement y = FieldElement::y(curve);
    const FieldElement t = FieldElement::t(curve);
    auto embed = [&](const CycloNum& c) { return FieldElement::constant(TFunction(c), curve); };
    const FieldElement num = expr.num().evaluate(x, y, t, embed);
    const FieldElement den = expr.den().evaluate(x, y, t, embed);
    if (den.is_zero()) throw Error(ErrorKind::ZeroDenominatorOnSurface, "denominator " + expr.den().to_string() + " vanishes on the surface");
    return num / den;
}

namespace detail {

inline UniPoly lcm(const UniPoly& p, const UniPoly& q) {
    return UniPoly::exact_div(p * q, gcd(p, q)).monic();
}

// Polynomial in x with Q(zeta)(t) coefficients, scaled by `scale` so that
// every coefficient becomes a polynomial in t.
inline MultiPoly x_poly_to_multipoly(const Poly<TFunction>& p, const UniPoly& scale, int y_exp) {
    MultiPoly out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const TFunction& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        const UniPoly coeff = UniPoly::exact_div(c.num() * scale, c.den());
        for (std::size_t k = 0; k < coeff.coeffs().size(); ++k) {
            out = out + MultiPoly::term(coeff.coeffs()[k], {static_cast<int>(i), y_exp, static_cast<int>(k)});
        }
    }
    return out;
}

inline UniPoly t_denominator_lcm(const Poly<TFunction>& p, UniPoly acc) {
    for (const auto& c : p.coeffs()) {
        if (!c.is_zero()) acc = lcm(acc, c.den());
    }
    return acc;
}

inline RationalFunction x_function_to_expression(const XFunction& f, int y_exp) {
    const UniPoly scale = t_denominator_lcm(f.den(), t_denominator_lcm(f.num(), UniPoly(CycloNum(1))));
    return RationalFunction(x_poly_to_multipoly(f.num(), scale, y_exp), x_poly_to_multipoly(f.den(), scale, 0));
}

}  // namespace detail

/// Expression form of a normal-form element, used for printing.
inline RationalFunction to_expression(const FieldElement& e) {
    if (e.b().is_zero()) return detail::x_function_to_expression(e.a(), 0);
    const RationalFunction by = detail::x_function_to_expression(e.b(), 1);
    if (e.a().is_zero()) return by;
    return detail::x_function_to_expression(e.a(), 0) + by;
}

inline std::string to_string(const FieldElement& e) { return to_expression(e).to_string(); }

inline RationalFunction to_expression(const TFunction& f) {
    return RationalFunction(MultiPoly::from_t(f.num()), MultiPoly::from_t(f.den()));
}

// ---------------------------------------------------------------------------
// Maps of the surface.

/// (x, y, t) -> (u, v, w) with u, v in the function field and w a function of t.
class SurfaceMap {
public:
    struct Ambient {
        MultiPoly u, v, w;
    };

    SurfaceMap(CurveHandle curve, FieldElement u, FieldElement v, TFunction w)
        : curve_(std::move(curve)), u_(std::move(u)), v_(std::move(v)), w_(std::move(w)) {}

    static SurfaceMap identity(const CurveHandle& c) {
        SurfaceMap m(c, FieldElement::x(c), FieldElement::y(c), TFunction::variable());
        m.ambient_ = Ambient{MultiPoly::variable(0), MultiPoly::variable(1), MultiPoly::variable(2)};
        return m;
    }

    /// Map from coordinate expressions; keeps the ambient polynomials when all three are polynomial.
    static SurfaceMap from_expressions(const CurveHandle& c, const RationalFunction& xs, const RationalFunction& ys,
                                       const RationalFunction& ts) {
        if ((ts.variables() & 0b011U) != 0) {
            throw Error(ErrorKind::InputError, "t-component must depend on t alone: " + ts.to_string());
        }
        const TFunction w(*ts.num().as_t_poly(), *ts.den().as_t_poly());
        SurfaceMap m(c, normalize(xs, c), normalize(ys, c), w);
        if (xs.is_polynomial() && ys.is_polynomial() && ts.is_polynomial()) {
            m.ambient_ = Ambient{xs.num(), ys.num(), ts.num()};
        }
        return m;
    }

    const CurveHandle& curve() const noexcept { return curve_; }
    const FieldElement& u() const noexcept { return u_; }
    const FieldElement& v() const noexcept { return v_; }
    const TFunction& w() const noexcept { return w_; }
    const std::optional<Ambient>& ambient() const noexcept { return ambient_; }

    /// Pull a function back along the map: e -> e(u, v, w).
    TFunction pull_back(const TFunction& e) const {
        auto embed = [](const CycloNum& c) { return TFunction(c); };
        return e.evaluate(w_, embed);
    }
    FieldElement pull_back(const XFunction& e) const {
        auto embed = [&](const TFunction& c) { return FieldElement::constant(pull_back(c), curve_); };
        const FieldElement n = e.num().evaluate(u_, embed);
        if (e.is_polynomial()) return n;
        return n / e.den().evaluate(u_, embed);
    }
    FieldElement pull_back(const FieldElement& e) const {
        FieldElement r = pull_back(e.a());
        if (!e.b().is_zero()) r = r + pull_back(e.b()) * v_;
        return r;
    }

    bool is_identity() const {
        return u_ == FieldElement::x(curve_) && v_ == FieldElement::y(curve_) && w_ == TFunction::variable();
    }

    friend bool operator==(const SurfaceMap& p, const SurfaceMap& q) {
        return p.u_ == q.u_ && p.v_ == q.v_ && p.w_ == q.w_;
    }
    friend bool operator!=(const SurfaceMap& p, const SurfaceMap& q) { return !(p == q); }

    std::string to_string() const {
        return "(" + k3auto::to_string(u_) + ", " + k3auto::to_string(v_) + ", " + to_expression(w_).to_string() + ")";
    }

private:
    CurveHandle curve_;
    FieldElement u_;
    FieldElement v_;
    TFunction w_;
    std::optional<Ambient> ambient_;
};

/// (first o second)(P) = first(second(P)).
inline SurfaceMap compose(const SurfaceMap& first, const SurfaceMap& second) {
    return SurfaceMap(second.curve(), second.pull_back(first.u()), second.pull_back(first.v()),
                      second.pull_back(first.w()));
}

inline SurfaceMap power(const SurfaceMap& m, unsigned k) {
    SurfaceMap r = SurfaceMap::identity(m.curve());
    for (unsigned i = 0; i < k; ++i) r = compose(m, r);
    return r;
}

inline constexpr int kDefaultMaxOrder = 64;

/// Least k <= max_order with m^k = id, or nullopt.
inline std::optional<int> order(const SurfaceMap& m, int max_order = kDefaultMaxOrder) {
    SurfaceMap cur = m;
    for (int k = 1; k <= max_order; ++k) {
        if (cur.is_identity()) return k;
        cur = compose(m, cur);
    }
    return std::nullopt;
}

/// m^(ord - 1); fails with OrderBoundExceeded when the order is not found.
inline SurfaceMap inverse(const SurfaceMap& m, int max_order = kDefaultMaxOrder) {
    const auto k = order(m, max_order);
    if (!k) throw Error(ErrorKind::OrderBoundExceeded, "no order <= " + std::to_string(max_order));
    return power(m, static_cast<unsigned>(*k - 1));
}

/// v^2 - u^3 - A(w) u - B(w) in normal form; zero iff the map preserves the surface.
inline FieldElement morphism_residual(const SurfaceMap& m) {
    const CurveHandle& c = m.curve();
    const FieldElement aw = FieldElement::constant(m.pull_back(c->a), c);
    const FieldElement bw = FieldElement::constant(m.pull_back(c->b), c);
    return m.v() * m.v() - m.u() * m.u() * m.u() - aw * m.u() - bw;
}

inline bool verify_morphism(const SurfaceMap& m) {
    return morphism_residual(m).is_zero();
}

/// F(x, y, t) = y^2 - x^3 - A(t) x - B(t) as an ambient polynomial.
inline MultiPoly surface_equation(const WeierstrassModel& w) {
    return MultiPoly::variable(1).pow(2) - MultiPoly::variable(0).pow(3) -
           MultiPoly::from_t(w.a()) * MultiPoly::variable(0) - MultiPoly::from_t(w.b());
}

/// The scalar c with F(u, v, w) = c F, when the map is polynomial and such c exists.
inline std::optional<CycloNum> ambient_scalar(const SurfaceMap& m) {
    if (!m.ambient()) return std::nullopt;
    const MultiPoly f = surface_equation(m.curve()->model);
    const auto& amb = *m.ambient();
    auto embed = [](const CycloNum& c) { return MultiPoly(c); };
    const MultiPoly g = f.evaluate(amb.u, amb.v, amb.w, embed);
    const auto& [mono, coeff] = *f.terms().begin();
    auto it = g.terms().find(mono);
    if (it == g.terms().end()) return std::nullopt;
    const CycloNum c = it->second / coeff;
    if (g != f.scaled(c)) return std::nullopt;
    return c;
}

/// m^* (dx ^ dt / y) / (dx ^ dt / y), which must be a constant of Q(zeta).
///
/// du ^ dw = w'(t) (u_x + u_y (3x^2 + A) / (2y)) dx ^ dt, using
/// 2y dy = (3x^2 + A) dx + (A' x + B') dt to eliminate dy.
inline CycloNum omega_factor(const SurfaceMap& m) {
    if (!verify_morphism(m)) throw Error(ErrorKind::NotAMorphism, "map does not preserve the surface");
    const CurveHandle& c = m.curve();
    const FieldElement y = FieldElement::y(c);
    const FieldElement x = FieldElement::x(c);
    const XFunction& a = m.u().a();
    const XFunction& b = m.u().b();
    const FieldElement ux(a.derivative(), b.derivative(), c);
    const FieldElement uy(b, XFunction(), c);
    const FieldElement dy_dx = (FieldElement(3) * x * x + FieldElement::constant(c->a, c)) / (FieldElement(2) * y);
    const FieldElement wprime = FieldElement::constant(m.w().derivative(), c);
    const FieldElement factor = wprime * (ux + uy * dy_dx) * y / m.v();
    const auto k = factor.as_constant();
    if (!k) throw Error(ErrorKind::NotConstantFactor, to_string(factor));
    return *k;
}

// ---------------------------------------------------------------------------
// Group law on the generic fiber.

/// Point of the generic fiber with coordinates in the function field, or O.
struct FiberPoint {
    bool at_infinity = true;
    FieldElement x;
    FieldElement y;

    static FiberPoint zero() { return {}; }
    static FiberPoint affine(FieldElement px, FieldElement py) { return {false, std::move(px), std::move(py)}; }

    friend bool operator==(const FiberPoint& p, const FiberPoint& q) {
        if (p.at_infinity || q.at_infinity) return p.at_infinity == q.at_infinity;
        return p.x == q.x && p.y == q.y;
    }
};

/// A section t -> (x(t), y(t)), or the zero section O.
class Section {
public:
    static Section zero() { return Section(); }
    static Section affine(const CurveHandle& c, TFunction x, TFunction y) {
        Section s;
        s.at_infinity_ = false;
        s.x_ = std::move(x);
        s.y_ = std::move(y);
        if (s.y_ * s.y_ != s.x_ * s.x_ * s.x_ + c->a * s.x_ + c->b) {
            throw Error(ErrorKind::InputError, "section does not lie on the surface");
        }
        return s;
    }

    bool is_zero() const noexcept { return at_infinity_; }
    const TFunction& x() const noexcept { return x_; }
    const TFunction& y() const noexcept { return y_; }

    FiberPoint as_point(const CurveHandle& c) const {
        if (at_infinity_) return FiberPoint::zero();
        return FiberPoint::affine(FieldElement::constant(x_, c), FieldElement::constant(y_, c));
    }

private:
    bool at_infinity_ = true;
    TFunction x_;
    TFunction y_;
};

inline FiberPoint negate(const FiberPoint& p) {
    if (p.at_infinity) return p;
    return FiberPoint::affine(p.x, -p.y);
}

/// Chord-tangent addition with O as identity.
inline FiberPoint add_points(const FiberPoint& p, const FiberPoint& q, const CurveHandle& c) {
    if (p.at_infinity) return q;
    if (q.at_infinity) return p;
    FieldElement slope;
    if (p.x == q.x) {
        if (p.y == -q.y) return FiberPoint::zero();
        slope = (FieldElement(3) * p.x * p.x + FieldElement::constant(c->a, c)) / (FieldElement(2) * p.y);
    } else {
        slope = (q.y - p.y) / (q.x - p.x);
    }
    FieldElement x3 = slope * slope - p.x - q.x;
    FieldElement y3 = slope * (p.x - x3) - p.y;
    return FiberPoint::affine(std::move(x3), std::move(y3));
}

/// Fiberwise translation P -> P + T, with w = t.
inline SurfaceMap translation_map(const Section& s, const CurveHandle& c) {
    const FiberPoint generic = FiberPoint::affine(FieldElement::x(c), FieldElement::y(c));
    const FiberPoint sum = add_points(generic, s.as_point(c), c);
    if (sum.at_infinity) throw std::logic_error("translation of the generic point hit O");
    return SurfaceMap(c, sum.x, sum.y, TFunction::variable());
}

/// (x, y, t) -> (zeta^ex x, zeta^ey y, zeta^et t).
inline SurfaceMap scaling_map(const CurveHandle& c, int ex, int ey, int et) {
    const FieldHandle& f = c->model.field();
    const CycloNum zx = zeta_pow(f, ex);
    const CycloNum zy = zeta_pow(f, ey);
    const CycloNum zt = zeta_pow(f, et);
    return SurfaceMap::from_expressions(c, RationalFunction(MultiPoly::term(zx, {1, 0, 0})),
                                        RationalFunction(MultiPoly::term(zy, {0, 1, 0})),
                                        RationalFunction(MultiPoly::term(zt, {0, 0, 1})));
}

}  // namespace k3auto
