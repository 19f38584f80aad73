#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "fqm/cyclo.hpp"
#include "fqm/poly.hpp"

using namespace fqm;

namespace {

// Integer coefficients of prod over primitive n-th roots of (x - z), rounded from floating point.
std::vector<long long> numeric_cyclotomic_poly(int n) {
    std::vector<std::complex<double>> p{1.0};
    for (int k = 1; k <= n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        auto z = std::polar(1.0, 2 * M_PI * k / n);
        std::vector<std::complex<double>> q(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= z * p[i];
        }
        p = q;
    }
    std::vector<long long> out;
    for (auto c : p) out.push_back(std::llround(c.real()));
    return out;
}

Cyclotomic random_element(std::mt19937_64& rng, int n, int h = 4) {
    std::uniform_int_distribution<int> d(-h, h);
    std::vector<Rat> c(euler_phi(n));
    for (auto& x : c) x = Rat(d(rng), 1 + std::abs(d(rng)));
    return Cyclotomic::from_coords(n, c);
}

bool near(std::complex<double> a, std::complex<double> b, double tol = 1e-9) { return std::abs(a - b) < tol; }

} // namespace

TEST(Cyclo, EulerPhiSmallValues) {
    const std::vector<long> expect{1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
    for (int n = 1; n <= 12; ++n) EXPECT_EQ(euler_phi(n), expect[n - 1]) << n;
    EXPECT_EQ(euler_phi(24), 8);
}

TEST(Cyclo, CyclotomicPolynomialMatchesNumericProduct) {
    for (int n = 1; n <= 40; ++n) EXPECT_EQ(cyclotomic_polynomial(n).coeffs, numeric_cyclotomic_poly(n)) << n;
}

TEST(Cyclo, Phi24IsOneMinusR4PlusR8) {
    EXPECT_EQ(cyclotomic_polynomial(24).coeffs, (std::vector<long long>{1, 0, 0, 0, -1, 0, 0, 0, 1}));
}

TEST(Cyclo, RootPowersReduce) {
    Cyclotomic w = Cyclotomic::root(3);
    EXPECT_EQ(w * w * w, Cyclotomic(1));
    EXPECT_EQ(Cyclotomic(1) + w + w * w, Cyclotomic(0));
    EXPECT_TRUE(near(w.to_complex(), std::polar(1.0, 2 * M_PI / 3)));
}

TEST(Cyclo, ArithmeticAgreesWithComplexEmbedding) {
    std::mt19937_64 rng(11);
    for (int n : {1, 3, 4, 5, 8, 12, 15}) {
        for (int t = 0; t < 20; ++t) {
            auto a = random_element(rng, n), b = random_element(rng, n);
            EXPECT_TRUE(near((a + b).to_complex(), a.to_complex() + b.to_complex()));
            EXPECT_TRUE(near((a * b).to_complex(), a.to_complex() * b.to_complex(), 1e-8));
            if (!b.is_zero()) EXPECT_TRUE(near((a / b).to_complex(), a.to_complex() / b.to_complex(), 1e-6));
        }
    }
}

TEST(Cyclo, MixedConductorsLiftToLcm) {
    auto s = Cyclotomic::root(3) + Cyclotomic::root(4);
    EXPECT_EQ(s.conductor(), 12);
    EXPECT_TRUE(near(s.to_complex(), std::polar(1.0, 2 * M_PI / 3) + std::complex<double>(0, 1)));
    EXPECT_EQ(Cyclotomic::root(3).lift(12), Cyclotomic::root(12, 4));
}

TEST(Cyclo, SquareRootsInQ24) {
    auto s3 = Cyclotomic::root(24, 2).scaled(2) - Cyclotomic::root(24, 6);
    auto s2 = Cyclotomic::root(24, 1) + Cyclotomic::root(24, 3) - Cyclotomic::root(24, 5);
    EXPECT_EQ(s3 * s3, Cyclotomic(3));
    EXPECT_EQ(s2 * s2, Cyclotomic(2));
    EXPECT_EQ(s3.conjugate(), s3);
}

TEST(Cyclo, GoldenRatioFromFifthRoots) {
    auto f = Cyclotomic(1) + Cyclotomic::root(5, 1) + Cyclotomic::root(5, 4);
    EXPECT_EQ(f * f, f + Cyclotomic(1));
}

TEST(Cyclo, DivisionByZeroThrows) {
    EXPECT_THROW(Cyclotomic::root(5).scaled(0).inverse(), DivisionByZero);
    EXPECT_THROW(Cyclotomic(1) / Cyclotomic(0), DivisionByZero);
}

TEST(Cyclo, GaloisRequiresCoprimeExponent) {
    EXPECT_THROW(Cyclotomic::root(6).galois(2), NotCoprime);
    EXPECT_EQ(Cyclotomic::root(6).galois(5), Cyclotomic::root(6, 5));
}

TEST(Cyclo, RecognizeRoundTrip) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int n : {3, 4, 5, 8, 12}) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Rat> c(euler_phi(n));
            for (auto& x : c) x = d(rng);
            auto z = Cyclotomic::from_coords(n, c);
            auto r = recognize(z.to_complex(), n, 1, 3);
            EXPECT_EQ(r, z) << z.to_string() << " vs " << r.to_string();
        }
    }
}

TEST(Cyclo, RecognizeFailsOutsideHeight) {
    EXPECT_FALSE(try_recognize({0.123456, 0.0}, 3, 1, 2).has_value());
    EXPECT_THROW(recognize({0.123456, 0.0}, 3, 1, 2), NotFound);
}

TEST(Cyclo, RationalParsing) {
    EXPECT_EQ(parse_rational("-3/6"), Rat(-1, 2));
    EXPECT_EQ(to_string(Rat(4, 2)), "2/1");
    EXPECT_THROW(parse_rational("1/0"), DivisionByZero);
}

TEST(Poly, BareissDeterminantOfCirculant) {
    // det of the 3x3 circulant in a, b, c equals a^3 + b^3 + c^3 - 3abc
    using P = Poly<Int>;
    auto a = P::variable(3, 0), b = P::variable(3, 1), c = P::variable(3, 2);
    std::vector<std::vector<P>> m{{a, b, c}, {c, a, b}, {b, c, a}};
    auto det = bareiss_det(m, 3);
    auto expect = a.pow(3) + b.pow(3) + c.pow(3) - (a * b * c).scaled(Int(3));
    EXPECT_EQ(det, expect);
}

TEST(Poly, ExactDivisionAndHomogenize) {
    using P = Poly<Rat>;
    auto x = P::variable(2, 0), y = P::variable(2, 1);
    auto f = (x + y) * (x - y);
    EXPECT_EQ(divide_exact(f, x + y), x - y);
    auto g = x + P::constant(2, Rat(1));
    EXPECT_TRUE(g.homogenized(1, 1).is_homogeneous());
    EXPECT_EQ(g.homogenized(1, 1), x + y);
}
