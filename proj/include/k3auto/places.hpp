#pragma once

// Places on the t-line: gcd-free bases and vanishing orders.

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "multipoly.hpp"

namespace k3auto {

/// Vanishing order; kInfiniteOrder stands for v(0).
using Valuation = int;
inline constexpr Valuation kInfiniteOrder = std::numeric_limits<int>::max();

inline std::string valuation_to_string(Valuation v) {
    return v == kInfiniteOrder ? "inf" : std::to_string(v);
}

/// A finite place cluster (monic squarefree polynomial in t) or the point at infinity.
struct Place {
    std::optional<UniPoly> poly;  // nullopt: infinity

    static Place infinity() { return {}; }
    bool is_infinity() const noexcept { return !poly.has_value(); }
    /// Number of geometric points the place stands for.
    int degree() const { return poly ? poly->degree() : 1; }
    std::string to_string() const { return poly ? k3auto::to_string(*poly, 't') : "INFINITY"; }
};

inline UniPoly uni_gcd(const UniPoly& p, const UniPoly& q) {
    return gcd(p, q);
}

/// Largest e with place^e | p, or kInfiniteOrder when p = 0.
inline Valuation vanishing_order(const UniPoly& p, const UniPoly& place) {
    if (p.is_zero()) return kInfiniteOrder;
    if (place.degree() < 1) throw Error(ErrorKind::InputError, "vanishing order at a constant place");
    Valuation e = 0;
    UniPoly rest = p;
    while (true) {
        auto [q, r] = UniPoly::divmod(rest, place);
        if (!r.is_zero()) return e;
        rest = std::move(q);
        ++e;
    }
}

/// Yun's squarefree decomposition: p = lc * prod_k s_k^k with s_k monic,
/// squarefree and pairwise coprime. Entry k-1 holds s_k (possibly 1).
inline std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "squarefree decomposition of 0");
    std::vector<UniPoly> out;
    const UniPoly a = p.monic();
    if (a.degree() == 0) return out;
    const UniPoly b = a.derivative();
    const UniPoly c = gcd(a, b);
    UniPoly w = UniPoly::exact_div(a, c);
    UniPoly y = UniPoly::exact_div(b, c);
    UniPoly z = y - w.derivative();
    while (w.degree() > 0) {
        const UniPoly g = gcd(w, z);
        out.push_back(g);
        w = UniPoly::exact_div(w, g);
        y = UniPoly::exact_div(z, g);
        z = y - w.derivative();
    }
    return out;
}

struct GcdFreeBasis {
    std::vector<UniPoly> places;                 // monic, squarefree, pairwise coprime
    std::vector<std::vector<Valuation>> exponents;  // exponents[i][j]: order of input j at place i
};

namespace detail {

inline bool place_less(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return to_string(a, 't') < to_string(b, 't');
}

}  // namespace detail

/// Pairwise-coprime squarefree f_i with P_j = unit * prod f_i^{e_ij} for every input.
inline GcdFreeBasis gcd_free_basis(const std::vector<UniPoly>& polys) {
    std::vector<UniPoly> pool;
    for (const auto& p : polys) {
        if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "gcd-free basis of the zero polynomial");
        for (const auto& s : squarefree_decomposition(p)) {
            if (s.degree() > 0) pool.push_back(s);
        }
    }
    // Coprime refinement; every element stays squarefree because inputs are.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < pool.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < pool.size() && !changed; ++j) {
                const UniPoly g = gcd(pool[i], pool[j]);
                if (g.degree() <= 0) continue;
                const UniPoly a = UniPoly::exact_div(pool[i], g);
                const UniPoly b = UniPoly::exact_div(pool[j], g);
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
                pool.push_back(g);
                if (a.degree() > 0) pool.push_back(a.monic());
                if (b.degree() > 0) pool.push_back(b.monic());
                changed = true;
            }
        }
    }
    std::sort(pool.begin(), pool.end(), detail::place_less);
    GcdFreeBasis out;
    out.places = pool;
    for (const auto& f : pool) {
        std::vector<Valuation> row;
        row.reserve(polys.size());
        for (const auto& p : polys) row.push_back(vanishing_order(p, f));
        out.exponents.push_back(std::move(row));
    }
    return out;
}

}  // namespace k3auto
