#pragma once

// Shared helpers for the test suites: fixture paths, seeded generators and
// a floating-point shadow of exact values used as an independent oracle.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "k3auto/io.hpp"

namespace k3test {

using namespace k3auto;
using Complex = std::complex<double>;

inline std::string fixture(const std::string& name) { return std::string(K3AUTO_FIXTURES) + "/" + name; }

/// The principal embedding zeta_n -> exp(2 pi i / n).
inline Complex to_complex(const CycloNum& c) {
    const int n = c.order();
    Complex acc = 0.0;
    for (std::size_t k = 0; k < c.coeffs().size(); ++k) {
        const double r = c.coeffs()[k].convert_to<double>();
        acc += r * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / n);
    }
    return acc;
}

inline Complex eval(const MultiPoly& p, Complex x, Complex y, Complex t) {
    return p.evaluate(x, y, t, [](const CycloNum& c) { return to_complex(c); });
}

inline Complex eval(const RationalFunction& f, Complex x, Complex y, Complex t) {
    return eval(f.num(), x, y, t) / eval(f.den(), x, y, t);
}

inline Complex eval(const UniPoly& p, Complex t) {
    return p.evaluate(t, [](const CycloNum& c) { return to_complex(c); });
}

inline bool near(Complex a, Complex b, double tol = 1e-7) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

/// Seeded generator of small random exact objects.
class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    CycloNum cyclo(const FieldHandle& f, int bound = 3) {
        std::vector<Rational> c(static_cast<std::size_t>(f->degree()));
        for (auto& x : c) x = Rational(integer(-bound, bound), integer(1, 3));
        return CycloNum(f, c);
    }

    UniPoly poly(const FieldHandle& f, int max_degree, int bound = 3) {
        std::vector<CycloNum> c(static_cast<std::size_t>(integer(0, max_degree)) + 1);
        for (auto& x : c) x = integer(0, 2) == 0 ? cyclo(f, bound) : CycloNum(integer(-bound, bound));
        return UniPoly(c);
    }

    /// Monic polynomial with rational integer coefficients.
    UniPoly monic_poly(int degree, int bound = 4) {
        std::vector<CycloNum> c(static_cast<std::size_t>(degree) + 1);
        for (auto& x : c) x = CycloNum(integer(-bound, bound));
        c.back() = CycloNum(1);
        return UniPoly(c);
    }

    MultiPoly multipoly(const FieldHandle& f, int terms, int max_exp) {
        MultiPoly p;
        for (int i = 0; i < terms; ++i) {
            p = p + MultiPoly::term(cyclo(f, 2), {integer(0, max_exp), integer(0, max_exp), integer(0, max_exp)});
        }
        return p;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

inline SurfaceData order16_surface() { return load_surface(fixture("order16_surface.txt")); }
inline GraphData order16_graph() { return load_graph(fixture("order16_graph.txt")); }

}  // namespace k3test
