#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"

using namespace k3test;

namespace {

// Phi_n = prod_{d | n} (x^d - 1)^mu(n/d), assembled with integer long division.
int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    return n > 1 ? -result : result;
}

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

std::vector<BigInt> poly_div(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    std::vector<BigInt> q(num.size() - den.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        q[i] = num[i + den.size() - 1] / den.back();
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q[i] * den[j];
    }
    for (const auto& c : num) EXPECT_EQ(c, 0);
    return q;
}

std::vector<BigInt> mobius_cyclotomic(int n) {
    std::vector<BigInt> num{1};
    std::vector<BigInt> den{1};
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        std::vector<BigInt> f(static_cast<std::size_t>(d) + 1, 0);
        f[0] = -1;
        f[static_cast<std::size_t>(d)] = 1;
        const int mu = mobius(n / d);
        if (mu == 1) num = poly_mul(num, f);
        if (mu == -1) den = poly_mul(den, f);
    }
    return poly_div(num, den);
}

const FieldHandle& f16() {
    static const FieldHandle f = make_field(16);
    return f;
}

}  // namespace

TEST(Cyclotomic, SmallPolynomialsAreKnown) {
    EXPECT_EQ(cyclotomic_polynomial(16), (std::vector<BigInt>{1, 0, 0, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(8), (std::vector<BigInt>{1, 0, 0, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<BigInt>{1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<BigInt>{-1, 1}));
}

TEST(Cyclotomic, RecursiveConstructionMatchesMobiusFormula) {
    for (int n = 1; n <= 60; ++n) {
        EXPECT_EQ(cyclotomic_polynomial(n), mobius_cyclotomic(n)) << "n = " << n;
    }
}

TEST(Cyclotomic, DegreeIsTotient) {
    for (int n = 1; n <= 60; ++n) {
        int coprime = 0;
        for (int k = 1; k <= n; ++k) coprime += std::gcd(k, n) == 1 ? 1 : 0;
        EXPECT_EQ(make_field(n)->degree(), coprime);
        EXPECT_EQ(euler_phi(n), coprime);
    }
}

TEST(Cyclotomic, ArithmeticExamples) {
    const auto z = [](int k) { return zeta_pow(f16(), k); };
    EXPECT_EQ(z(8) * z(8), CycloNum(1));
    EXPECT_EQ(z(1) * z(7), CycloNum(-1));
    EXPECT_EQ((CycloNum(1) + z(1)) * (CycloNum(1) - z(1)), CycloNum(1) - z(2));
}

TEST(Cyclotomic, ZetaPowExamples) {
    EXPECT_EQ(zeta_pow(f16(), 0), CycloNum(1));
    EXPECT_EQ(zeta_pow(f16(), 8), CycloNum(-1));
    EXPECT_EQ(zeta_pow(f16(), 20), zeta_pow(f16(), 4));
    EXPECT_EQ(zeta_pow(f16(), -1), zeta_pow(f16(), 15));
    for (int k = 0; k < 16; ++k) EXPECT_EQ(zeta_pow(f16(), k) * zeta_pow(f16(), 16 - k), CycloNum(1));
}

TEST(Cyclotomic, ZetaPowIsAHomomorphism) {
    for (int n : {5, 12, 16}) {
        const FieldHandle f = make_field(n);
        for (int k = 0; k < 2 * n; ++k) {
            for (int m = 0; m < 2 * n; ++m) EXPECT_EQ(zeta_pow(f, k) * zeta_pow(f, m), zeta_pow(f, k + m));
        }
    }
}

TEST(Cyclotomic, AsZetaPowerExamples) {
    EXPECT_EQ(as_zeta_power(CycloNum(-1), f16()), 8);
    EXPECT_EQ(as_zeta_power(zeta_pow(f16(), 6)), 6);
    EXPECT_EQ(as_zeta_power(CycloNum(1) + zeta_pow(f16(), 1)), std::nullopt);
}

TEST(Cyclotomic, AsZetaPowerAgreesWithComplexEmbedding) {
    Gen gen(7);
    for (int trial = 0; trial < 40; ++trial) {
        const CycloNum c = trial % 2 == 0 ? zeta_pow(f16(), gen.integer(0, 31)) : gen.cyclo(f16(), 1);
        std::optional<int> numeric;
        for (int k = 0; k < 16; ++k) {
            if (near(to_complex(c), std::polar(1.0, 2.0 * std::numbers::pi * k / 16))) numeric = k;
        }
        EXPECT_EQ(as_zeta_power(c), numeric) << c;
    }
}

TEST(Cyclotomic, OrderOfZetaPowers) {
    for (int n : {1, 2, 8, 16, 30}) {
        const FieldHandle f = make_field(n);
        for (int k = 0; k < n; ++k) {
            const CycloNum z = zeta_pow(f, k);
            CycloNum acc = z;
            int ord = 1;
            while (!acc.is_one()) {
                acc = acc * z;
                ++ord;
            }
            EXPECT_EQ(zeta_power_order(n, k), ord);
            EXPECT_EQ(ord, n / std::gcd(n, k));
        }
    }
}

TEST(Cyclotomic, FieldAxiomsOnRandomElements) {
    Gen gen(11);
    for (int trial = 0; trial < 60; ++trial) {
        const CycloNum a = gen.cyclo(f16());
        const CycloNum b = gen.cyclo(f16());
        const CycloNum c = gen.cyclo(f16());
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), CycloNum(1));
        }
        if (!b.is_zero()) {
            EXPECT_EQ((a / b) * b, a);
        }
    }
}

TEST(Cyclotomic, ArithmeticCommutesWithComplexEmbedding) {
    Gen gen(13);
    for (int trial = 0; trial < 40; ++trial) {
        const CycloNum a = gen.cyclo(f16());
        const CycloNum b = gen.cyclo(f16());
        EXPECT_TRUE(near(to_complex(a * b), to_complex(a) * to_complex(b)));
        EXPECT_TRUE(near(to_complex(a - b), to_complex(a) - to_complex(b)));
        if (!b.is_zero()) {
            EXPECT_TRUE(near(to_complex(a / b), to_complex(a) / to_complex(b)));
        }
    }
}

TEST(Cyclotomic, CanonicalRepresentation) {
    // zeta^16 = 1 and Phi_16(zeta) = 0 hold; equal values have equal coefficient vectors.
    const CycloNum z = zeta_pow(f16(), 1);
    CycloNum acc(1);
    for (int i = 0; i < 16; ++i) acc = acc * z;
    EXPECT_EQ(acc.coeffs(), CycloNum(f16(), {1}).coeffs());
    EXPECT_TRUE((z * z * z * z * z * z * z * z + CycloNum(1)).is_zero());
    EXPECT_EQ(z.coeffs().size(), 8U);
}

TEST(Cyclotomic, Errors) {
    try {
        (void)(zeta_pow(f16(), 1) + zeta_pow(make_field(8), 1));
        FAIL() << "expected MixedFields";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MixedFields);
    }
    try {
        (void)(zeta_pow(f16(), 1) / CycloNum(0));
        FAIL() << "expected DivisionByZero";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
    }
}

TEST(Cyclotomic, RationalsEmbedIntoEveryField) {
    EXPECT_EQ(CycloNum(Rational(1, 2)) * zeta_pow(f16(), 8), CycloNum(Rational(-1, 2)));
    EXPECT_EQ(zeta_pow(make_field(1), 5), CycloNum(1));
    EXPECT_EQ(zeta_pow(make_field(2), 1), CycloNum(-1));
}
