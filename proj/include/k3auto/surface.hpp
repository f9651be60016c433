#pragma once

// Short Weierstrass models y^2 = x^3 + A(t) x + B(t) over the projective
// t-line and Kodaira classification of their singular fibers.

#include <algorithm>
#include <string>
#include <vector>

#include "places.hpp"

namespace k3auto {

enum class FiberKind { Smooth, In, II, III, IV, InStar, IVStar, IIIStar, IIStar };

struct KodairaType {
    FiberKind kind = FiberKind::Smooth;
    int n = 0;  // index for I_n and I_n*

    int euler() const {
        switch (kind) {
        case FiberKind::Smooth: return 0;
        case FiberKind::In: return n;
        case FiberKind::II: return 2;
        case FiberKind::III: return 3;
        case FiberKind::IV: return 4;
        case FiberKind::InStar: return n + 6;
        case FiberKind::IVStar: return 8;
        case FiberKind::IIIStar: return 9;
        case FiberKind::IIStar: return 10;
        }
        return 0;
    }
    int components() const {
        switch (kind) {
        case FiberKind::Smooth: return 1;
        case FiberKind::In: return n;
        case FiberKind::II: return 1;
        case FiberKind::III: return 2;
        case FiberKind::IV: return 3;
        case FiberKind::InStar: return n + 5;
        case FiberKind::IVStar: return 7;
        case FiberKind::IIIStar: return 8;
        case FiberKind::IIStar: return 9;
        }
        return 1;
    }
    std::string name() const {
        switch (kind) {
        case FiberKind::Smooth: return "smooth";
        case FiberKind::In: return "I" + std::to_string(n);
        case FiberKind::II: return "II";
        case FiberKind::III: return "III";
        case FiberKind::IV: return "IV";
        case FiberKind::InStar: return "I" + std::to_string(n) + "*";
        case FiberKind::IVStar: return "IV*";
        case FiberKind::IIIStar: return "III*";
        case FiberKind::IIStar: return "II*";
        }
        return "?";
    }
    friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

/// Kodaira type from the vanishing orders of A, B and the discriminant
/// (residue characteristic 0). kInfiniteOrder passes every ">= k" test.
inline KodairaType classify_place(Valuation va, Valuation vb, Valuation vd) {
    if (va >= 4 && vb >= 6) {
        throw Error(ErrorKind::NonMinimal, "(" + valuation_to_string(va) + ", " + valuation_to_string(vb) + ", " +
                                               valuation_to_string(vd) + ")");
    }
    if (vd == 0) return {FiberKind::Smooth, 0};
    if (va == 0 && vb == 0 && vd != kInfiniteOrder) return {FiberKind::In, vd};
    if (va >= 1 && vb == 1 && vd == 2) return {FiberKind::II, 0};
    if (va == 1 && vb >= 2 && vd == 3) return {FiberKind::III, 0};
    if (va >= 2 && vb == 2 && vd == 4) return {FiberKind::IV, 0};
    if (vd == 6 && ((va == 2 && vb >= 3) || (va >= 3 && vb == 3))) return {FiberKind::InStar, 0};
    if (va == 2 && vb == 3 && vd != kInfiniteOrder && vd > 6) return {FiberKind::InStar, vd - 6};
    if (va >= 3 && vb == 4 && vd == 8) return {FiberKind::IVStar, 0};
    if (va == 3 && vb >= 5 && vd == 9) return {FiberKind::IIIStar, 0};
    if (va >= 4 && vb == 5 && vd == 10) return {FiberKind::IIStar, 0};
    throw Error(ErrorKind::Unclassifiable, "(" + valuation_to_string(va) + ", " + valuation_to_string(vb) + ", " +
                                               valuation_to_string(vd) + ")");
}

/// y^2 = x^3 + A x + B with deg A <= 8, deg B <= 12 and nonzero discriminant.
class WeierstrassModel {
public:
    static constexpr int kMaxDegA = 8;
    static constexpr int kMaxDegB = 12;

    WeierstrassModel(FieldHandle field, UniPoly a, UniPoly b)
        : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {
        if (a_.degree() > kMaxDegA || b_.degree() > kMaxDegB) {
            throw Error(ErrorKind::DegreeBound, "need deg A <= 8 and deg B <= 12");
        }
        if (discriminant().is_zero()) throw Error(ErrorKind::DegenerateModel, "discriminant vanishes identically");
    }

    const FieldHandle& field() const noexcept { return field_; }
    const UniPoly& a() const noexcept { return a_; }
    const UniPoly& b() const noexcept { return b_; }

    /// -16 (4 A^3 + 27 B^2).
    UniPoly discriminant() const { return discriminant_of(a_, b_); }

    static UniPoly discriminant_of(const UniPoly& a, const UniPoly& b) {
        return (a.pow(3).scaled(CycloNum(4)) + b.pow(2).scaled(CycloNum(27))).scaled(CycloNum(-16));
    }

private:
    FieldHandle field_;
    UniPoly a_;
    UniPoly b_;
};

struct KodairaFiber {
    Place place;
    KodairaType type;
    Valuation va = 0;
    Valuation vb = 0;
    Valuation vd = 0;
    int multiplicity = 1;  // degree of the place

    int euler() const { return type.euler(); }
    int components() const { return type.components(); }
};

struct FiberInventory {
    std::vector<KodairaFiber> fibers;  // finite places sorted by printed form, infinity last
    int euler_total = 0;

    int count(const KodairaType& t) const {
        int n = 0;
        for (const auto& f : fibers) {
            if (f.type == t) n += f.multiplicity;
        }
        return n;
    }
};

/// Remove non-minimality at linear finite places (A -> A/p^4, B -> B/p^6).
inline WeierstrassModel minimalize(const WeierstrassModel& w) {
    UniPoly a = w.a();
    UniPoly b = w.b();
    while (true) {
        std::vector<UniPoly> inputs;
        if (!a.is_zero()) inputs.push_back(a);
        if (!b.is_zero()) inputs.push_back(b);
        const GcdFreeBasis basis = gcd_free_basis(inputs);
        bool reduced = false;
        for (const auto& f : basis.places) {
            if (vanishing_order(a, f) >= 4 && vanishing_order(b, f) >= 6) {
                if (f.degree() > 1) {
                    throw Error(ErrorKind::NonLinearNonMinimalPlace, "non-minimal at " + to_string(f, 't'));
                }
                a = a.is_zero() ? a : UniPoly::exact_div(a, f.pow(4));
                b = b.is_zero() ? b : UniPoly::exact_div(b, f.pow(6));
                reduced = true;
                break;
            }
        }
        if (!reduced) break;
    }
    return WeierstrassModel(w.field(), a, b);
}

namespace detail {

// Orders of A*, B*, Delta* at s = 0 for the 8/12/24 twist t = 1/s.
inline Valuation order_at_infinity(const UniPoly& p, int weight) {
    if (p.is_zero()) return kInfiniteOrder;
    return weight - p.degree();
}

}  // namespace detail

/// One fiber per gcd-free-basis place of the discriminant, plus infinity.
///
/// At infinity the model A*(s) = s^8 A(1/s), B*(s) = s^12 B(1/s) is used;
/// when it is non-minimal there (models of lower weight, such as rational
/// elliptic surfaces) the orders are reduced by (4, 6, 12) until minimal.
inline FiberInventory classify_all(const WeierstrassModel& w) {
    const UniPoly delta = w.discriminant();
    std::vector<UniPoly> inputs{delta};
    if (!w.a().is_zero()) inputs.push_back(w.a());
    if (!w.b().is_zero()) inputs.push_back(w.b());
    const GcdFreeBasis basis = gcd_free_basis(inputs);

    FiberInventory inv;
    for (std::size_t i = 0; i < basis.places.size(); ++i) {
        const UniPoly& f = basis.places[i];
        KodairaFiber fiber;
        fiber.place.poly = f;
        fiber.vd = basis.exponents[i][0];
        if (fiber.vd == 0) continue;
        fiber.va = vanishing_order(w.a(), f);
        fiber.vb = vanishing_order(w.b(), f);
        fiber.type = classify_place(fiber.va, fiber.vb, fiber.vd);
        fiber.multiplicity = f.degree();
        inv.fibers.push_back(fiber);
    }
    std::sort(inv.fibers.begin(), inv.fibers.end(), [](const KodairaFiber& x, const KodairaFiber& y) {
        return x.place.to_string() < y.place.to_string();
    });

    KodairaFiber inf;
    inf.place = Place::infinity();
    inf.va = detail::order_at_infinity(w.a(), WeierstrassModel::kMaxDegA);
    inf.vb = detail::order_at_infinity(w.b(), WeierstrassModel::kMaxDegB);
    inf.vd = detail::order_at_infinity(delta, 24);
    while (inf.va >= 4 && inf.vb >= 6) {
        if (inf.va != kInfiniteOrder) inf.va -= 4;
        if (inf.vb != kInfiniteOrder) inf.vb -= 6;
        inf.vd -= 12;
    }
    inf.type = classify_place(inf.va, inf.vb, inf.vd);
    inv.fibers.push_back(inf);

    for (const auto& f : inv.fibers) inv.euler_total += f.multiplicity * f.euler();
    return inv;
}

inline bool is_k3(const WeierstrassModel& w) {
    return classify_all(w).euler_total == 24;
}

}  // namespace k3auto
