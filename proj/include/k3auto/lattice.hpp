#pragma once

// Even integer lattices: named root lattices, curve lattices, signatures,
// discriminant groups with their quadratic forms, and genus comparison.
// ADE lattices are negative definite (self-intersection -2).

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "rigidity.hpp"

namespace k3auto {

using IntMatrix = std::vector<std::vector<BigInt>>;
using RationalVector = std::vector<Rational>;

inline IntMatrix zero_matrix(std::size_t rows, std::size_t cols) {
    return IntMatrix(rows, std::vector<BigInt>(cols, 0));
}

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

/// Symmetric even integer matrix.
class GramMatrix {
public:
    GramMatrix() = default;
    explicit GramMatrix(IntMatrix m) : m_(std::move(m)) {
        for (std::size_t i = 0; i < m_.size(); ++i) {
            if (m_[i].size() != m_.size()) throw Error(ErrorKind::InputError, "Gram matrix must be square");
            if (m_[i][i] % 2 != 0) throw Error(ErrorKind::InputError, "Gram matrix must be even");
            for (std::size_t j = 0; j < i; ++j) {
                if (m_[i][j] != m_[j][i]) throw Error(ErrorKind::InputError, "Gram matrix must be symmetric");
            }
        }
    }

    std::size_t size() const noexcept { return m_.size(); }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
    const IntMatrix& rows() const noexcept { return m_; }

    friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

private:
    IntMatrix m_;
};

inline GramMatrix direct_sum(const std::vector<GramMatrix>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.size();
    IntMatrix m = zero_matrix(n, n);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = 0; j < p.size(); ++j) m[off + i][off + j] = p(i, j);
        }
        off += p.size();
    }
    return GramMatrix(std::move(m));
}

namespace detail {

// -2 on the diagonal, 1 per edge.
inline GramMatrix dynkin(int n, const std::vector<std::pair<int, int>>& edges) {
    IntMatrix m = zero_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -2;
    for (const auto& [a, b] : edges) {
        m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
        m[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
    }
    return GramMatrix(std::move(m));
}

inline std::vector<std::pair<int, int>> chain(int len) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
    return e;
}

inline int parse_rank(const std::string& name, std::size_t from) {
    if (from >= name.size()) throw Error(ErrorKind::UnknownLattice, name);
    int r = 0;
    for (std::size_t i = from; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i])) || r > 1000) throw Error(ErrorKind::UnknownLattice, name);
        r = r * 10 + (name[i] - '0');
    }
    return r;
}

}  // namespace detail

/// A_n (n >= 1), D_n (n >= 4), E6, E7, E8, U, U(m) (m >= 1).
inline GramMatrix named_lattice(const std::string& name) {
    if (name == "U") return GramMatrix({{0, 1}, {1, 0}});
    if (name.size() > 3 && name.rfind("U(", 0) == 0 && name.back() == ')') {
        const int m = detail::parse_rank(name.substr(0, name.size() - 1), 2);
        if (m < 1) throw Error(ErrorKind::UnknownLattice, name);
        return GramMatrix({{0, m}, {m, 0}});
    }
    if (name.empty()) throw Error(ErrorKind::UnknownLattice, "empty lattice name");
    const int n = detail::parse_rank(name, 1);
    switch (name[0]) {
    case 'A':
        if (n < 1) break;
        return detail::dynkin(n, detail::chain(n));
    case 'D': {
        if (n < 4) break;
        auto e = detail::chain(n - 1);
        e.emplace_back(n - 3, n - 1);
        return detail::dynkin(n, e);
    }
    case 'E': {
        if (n < 6 || n > 8) break;
        auto e = detail::chain(n - 1);
        e.emplace_back(2, n - 1);
        return detail::dynkin(n, e);
    }
    default: break;
    }
    throw Error(ErrorKind::UnknownLattice, name);
}

/// "U(2)+E8+D4"; summands separated by '+', whitespace ignored.
inline GramMatrix parse_lattice_expression(const std::string& src) {
    std::string s;
    for (char c : src) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    std::vector<GramMatrix> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto plus = s.find('+', start);
        const std::string tok = s.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        if (tok.empty()) throw Error(ErrorKind::UnknownLattice, "empty summand in \"" + src + "\"");
        parts.push_back(named_lattice(tok));
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return direct_sum(parts);
}

/// -2 on the diagonal, edge multiplicity off the diagonal.
inline GramMatrix from_curve_config(const CurveConfig& g) {
    const auto n = static_cast<std::size_t>(g.size());
    IntMatrix m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = -2;
    for (const auto& e : g.edges()) {
        m[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)] = e.multiplicity;
        m[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.a)] = e.multiplicity;
    }
    return GramMatrix(std::move(m));
}

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Sylvester sign count by exact symmetric elimination. A zero diagonal with
/// a nonzero off-diagonal entry a_ij is handled by the congruence e_i += e_j.
inline Signature signature(const GramMatrix& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(g(i, j));
    }
    Signature s;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::optional<std::size_t> piv;
        for (std::size_t i = 0; i < n && !piv; ++i) {
            if (!done[i] && a[i][i] != 0) piv = i;
        }
        if (!piv) {
            for (std::size_t i = 0; i < n && !piv; ++i) {
                for (std::size_t j = 0; j < n && !piv; ++j) {
                    if (done[i] || done[j] || i == j || a[i][j] == 0) continue;
                    // e_i -> e_i + e_j makes the (i, i) entry 2 a_ij + a_jj = 2 a_ij.
                    for (std::size_t k = 0; k < n; ++k) a[i][k] += a[j][k];
                    for (std::size_t k = 0; k < n; ++k) a[k][i] += a[k][j];
                    piv = i;
                }
            }
        }
        if (!piv) break;
        const std::size_t p = *piv;
        done[p] = true;
        const Rational d = a[p][p];
        if (d > 0) {
            ++s.positive;
        } else {
            ++s.negative;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || a[i][p] == 0) continue;
            const Rational f = a[i][p] / d;
            for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[p][k];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i]) a[p][i] = a[i][p] = 0;
        }
    }
    s.zero = static_cast<int>(n) - s.positive - s.negative;
    return s;
}

inline int rank(const GramMatrix& g) {
    const Signature s = signature(g);
    return s.positive + s.negative;
}

struct NondegenerateQuotient {
    GramMatrix gram;    // Gram matrix of L / radical
    IntMatrix basis;    // columns: lifts of the quotient basis, in the original coordinates
    IntMatrix radical;  // columns: a basis of the radical
};

/// Unimodular U with G U = [H | 0]; the trailing columns of U span the
/// (saturated) radical and the leading ones a complement.
inline NondegenerateQuotient nondegenerate_quotient(const GramMatrix& g) {
    const std::size_t n = g.size();
    IntMatrix a = g.rows();
    IntMatrix u = identity_matrix(n);
    auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {  // col dst -= f col src
        if (f == 0) return;
        for (std::size_t i = 0; i < n; ++i) {
            a[i][dst] -= f * a[i][src];
            u[i][dst] -= f * u[i][src];
        }
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(a[i][x], a[i][y]);
            std::swap(u[i][x], u[i][y]);
        }
    };
    std::size_t pivot = 0;
    for (std::size_t row = 0; row < n && pivot < n; ++row) {
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t j = pivot; j < n; ++j) {
                if (a[row][j] != 0 && (!best || abs(a[row][j]) < abs(a[row][*best]))) best = j;
            }
            if (!best) break;
            if (*best != pivot) col_swap(*best, pivot);
            bool cleared = true;
            for (std::size_t j = pivot + 1; j < n; ++j) {
                if (a[row][j] == 0) continue;
                col_op(j, pivot, a[row][j] / a[row][pivot]);
                if (a[row][j] != 0) cleared = false;
            }
            if (cleared) {
                ++pivot;
                break;
            }
        }
    }
    NondegenerateQuotient out;
    out.basis = zero_matrix(n, pivot);
    out.radical = zero_matrix(n, n - pivot);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j < pivot) {
                out.basis[i][j] = u[i][j];
            } else {
                out.radical[i][j - pivot] = u[i][j];
            }
        }
    }
    IntMatrix q = zero_matrix(pivot, pivot);
    for (std::size_t x = 0; x < pivot; ++x) {
        for (std::size_t y = 0; y < pivot; ++y) {
            BigInt acc = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (out.basis[i][x] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) acc += out.basis[i][x] * g(i, j) * out.basis[j][y];
            }
            q[x][y] = acc;
        }
    }
    out.gram = GramMatrix(std::move(q));
    return out;
}

struct SmithForm {
    std::vector<BigInt> diagonal;  // d_1 | d_2 | ... (nonnegative)
    IntMatrix col_transform;       // Q with P M Q = D
};

/// Smith normal form with the unimodular column transform.
inline SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    IntMatrix a = m;
    IntMatrix q = identity_matrix(cols);
    auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t j = 0; j < cols; ++j) a[dst][j] -= f * a[src][j];
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t i = 0; i < rows; ++i) a[i][dst] -= f * a[i][src];
        for (std::size_t i = 0; i < cols; ++i) q[i][dst] -= f * q[i][src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(q[i][x], q[i][y]);
    };
    const std::size_t k = std::min(rows, cols);
    for (std::size_t t = 0; t < k; ++t) {
        while (true) {
            // Smallest nonzero entry of the remaining block as pivot.
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second]))) best = {{i, j}};
                }
            }
            if (!best) break;
            std::swap(a[t], a[best->first]);
            col_swap(t, best->second);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                row_op(i, t, a[i][t] / a[t][t]);
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                col_op(j, t, a[t][j] / a[t][t]);
                clean = clean && a[t][j] == 0;
            }
            if (!clean) continue;
            // Divisibility: fold a non-multiple into row t and repeat.
            std::optional<std::size_t> bad;
            for (std::size_t i = t + 1; i < rows && !bad; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
                }
            }
            if (!bad) break;
            row_op(t, *bad, BigInt(-1));
        }
    }
    SmithForm out;
    for (std::size_t t = 0; t < k; ++t) out.diagonal.push_back(abs(a[t][t]));
    out.col_transform = std::move(q);
    return out;
}

inline Rational mod_rational(const Rational& x, int m) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt r = num % (den * m);
    if (r < 0) r += den * m;
    return Rational(r, den);
}

/// L^* / L with q: L^*/L -> Q/2Z and b: L^*/L x L^*/L -> Q/Z.
struct DiscriminantForm {
    std::vector<BigInt> invariant_factors;           // nontrivial ones, ascending
    std::vector<RationalVector> generators;          // in the coordinates of the nondegenerate basis
    std::vector<Rational> q;                         // q(g_i) mod 2
    std::vector<std::vector<Rational>> b;            // b(g_i, g_j) mod 1

    BigInt order() const {
        BigInt o = 1;
        for (const auto& d : invariant_factors) o *= d;
        return o;
    }
};

inline Rational bilinear(const GramMatrix& g, const RationalVector& x, const RationalVector& y) {
    Rational acc = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) acc += x[i] * Rational(g(i, j)) * y[j];
    }
    return acc;
}

struct DiscriminantData {
    Signature sig;
    int rank = 0;
    BigInt abs_det = 1;  // of the nondegenerate part
    GramMatrix nondegenerate;
    DiscriminantForm form;
};

/// Generators Q[:, i] / d_i for P M Q = diag(d_i) on the nondegenerate quotient.
inline DiscriminantData discriminant_data(const GramMatrix& g) {
    DiscriminantData out;
    out.sig = signature(g);
    out.rank = out.sig.positive + out.sig.negative;
    out.nondegenerate = nondegenerate_quotient(g).gram;
    const GramMatrix& m = out.nondegenerate;
    const SmithForm snf = smith_normal_form(m.rows());
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
        const BigInt& d = snf.diagonal[i];
        out.abs_det *= d;
        if (d == 1) continue;
        RationalVector gen(m.size());
        for (std::size_t r = 0; r < m.size(); ++r) gen[r] = Rational(snf.col_transform[r][i], d);
        out.form.invariant_factors.push_back(d);
        out.form.generators.push_back(std::move(gen));
    }
    const auto& gens = out.form.generators;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        out.form.q.push_back(mod_rational(bilinear(m, gens[i], gens[i]), 2));
        std::vector<Rational> row;
        for (std::size_t j = 0; j < gens.size(); ++j) row.push_back(mod_rational(bilinear(m, gens[i], gens[j]), 1));
        out.form.b.push_back(std::move(row));
    }
    return out;
}

namespace detail {

// Element of a finite form as coefficients on its generators.
using Coeffs = std::vector<long long>;

inline Rational form_q(const DiscriminantForm& f, const Coeffs& c) {
    Rational acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += Rational(c[i] * c[i]) * f.q[i];
        for (std::size_t j = i + 1; j < c.size(); ++j) acc += Rational(2 * c[i] * c[j]) * f.b[i][j];
    }
    return mod_rational(acc, 2);
}

inline Rational form_b(const DiscriminantForm& f, const Coeffs& x, const Coeffs& y) {
    Rational acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) acc += Rational(x[i] * y[j]) * f.b[i][j];
    }
    return mod_rational(acc, 1);
}

inline std::vector<Coeffs> all_elements(const DiscriminantForm& f) {
    std::vector<Coeffs> out{Coeffs(f.invariant_factors.size(), 0)};
    for (std::size_t i = 0; i < f.invariant_factors.size(); ++i) {
        const long long d = static_cast<long long>(f.invariant_factors[i]);
        std::vector<Coeffs> next;
        for (const auto& c : out) {
            for (long long k = 0; k < d; ++k) {
                Coeffs e = c;
                e[i] = k;
                next.push_back(std::move(e));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline long long element_order(const DiscriminantForm& f, const Coeffs& c) {
    long long o = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const long long d = static_cast<long long>(f.invariant_factors[i]);
        o = std::lcm(o, d / std::gcd(d, c[i]));
    }
    return o;
}

}  // namespace detail

inline constexpr long long kMaxFormOrder = 1024;

/// Search for an isometry of finite quadratic forms: images of the
/// generators of `x` with matching orders, q-values and pairwise b-values,
/// accepted once the induced map is injective.
inline bool forms_isomorphic(const DiscriminantForm& x, const DiscriminantForm& y) {
    if (x.invariant_factors != y.invariant_factors) return false;
    if (x.order() > kMaxFormOrder) {
        throw Error(ErrorKind::GroupTooLarge, "discriminant group of order " + x.order().str() + " exceeds 1024");
    }
    const auto elems = detail::all_elements(y);
    const std::size_t k = x.invariant_factors.size();
    std::vector<std::size_t> choice(k, 0);
    auto injective = [&] {
        std::set<detail::Coeffs> images;
        for (const auto& c : detail::all_elements(x)) {
            detail::Coeffs img(y.invariant_factors.size(), 0);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < img.size(); ++j) img[j] += c[i] * elems[choice[i]][j];
            }
            for (std::size_t j = 0; j < img.size(); ++j) img[j] %= static_cast<long long>(y.invariant_factors[j]);
            if (!images.insert(img).second) return false;
        }
        return true;
    };
    auto search = [&](auto&& self, std::size_t i) -> bool {
        if (i == k) return injective();
        const long long d = static_cast<long long>(x.invariant_factors[i]);
        for (std::size_t e = 0; e < elems.size(); ++e) {
            const auto& h = elems[e];
            if (d % detail::element_order(y, h) != 0) continue;
            if (detail::form_q(y, h) != x.q[i]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = detail::form_b(y, elems[choice[j]], h) == x.b[j][i];
            if (!ok) continue;
            choice[i] = e;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    return search(search, 0);
}

/// Same signature and isomorphic discriminant forms; both lattices must be nondegenerate.
inline bool genus_equal(const GramMatrix& g1, const GramMatrix& g2) {
    const DiscriminantData d1 = discriminant_data(g1);
    const DiscriminantData d2 = discriminant_data(g2);
    if (d1.sig.zero != 0 || d2.sig.zero != 0) throw Error(ErrorKind::InputError, "genus comparison needs nondegenerate lattices");
    if (!(d1.sig == d2.sig)) return false;
    return forms_isomorphic(d1.form, d2.form);
}

}  // namespace k3auto
