#include <gtest/gtest.h>

#include <random>

#include "fqm/born.hpp"
#include "fqm/fixtures.hpp"

using namespace fqm;

namespace {

struct Decomposed {
    std::vector<IntMatrix> basis;
    std::vector<InvariantForm> forms;
};

Decomposed decompose(const std::string& group, int conductor) {
    Decomposed d;
    d.basis = matrices(basis_forms(fixtures::group(group)));
    auto fr = factor_det(d.basis, det_poly(d.basis, true), conductor);
    d.forms = invariant_scalar_products(d.basis, fr);
    return d;
}

std::vector<ComponentForm> components(const Decomposed& d) {
    std::vector<ComponentForm> out;
    for (const auto& f : d.forms) out.push_back(make_component(std::to_string(f.label + 1), d.basis, f));
    return out;
}

const ComponentForm& by_dimension(const std::vector<ComponentForm>& c, const Decomposed& d, int dim, int nth = 0) {
    for (std::size_t k = 0; k < c.size(); ++k)
        if (d.forms[k].dimension == dim && nth-- == 0) return c[k];
    throw NotFound("no component of that dimension");
}

Int dot(const StateVector& m, const StateVector& n) {
    Int s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += Int(m[i]) * Int(n[i]);
    return s;
}

Rat ratio(const Int& a, const Int& b) {
    Rat r(a, b);
    r.canonicalize();
    return r;
}

Int total(const StateVector& m) {
    Int s = 0;
    for (long v : m) s += v;
    return s;
}

StateVector random_natural(std::mt19937_64& rng, int n, int hi) {
    std::uniform_int_distribution<long> d(0, hi);
    StateVector v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

} // namespace

TEST(Born, S3TwoDimensionalDestructiveInterference) {
    auto d = decompose("S3", 3);
    auto c = components(d);
    const auto& two = by_dimension(c, d, 2);
    EXPECT_EQ(born_probability(two, {1, 3, 2}, {1, 1, 2}), Rat(0));
}

// Q(m,n) - L(m) L(n) / 3 on the 2-dim component.
TEST(Born, S3TwoDimensionalFormMatchesClosedExpression) {
    auto d = decompose("S3", 3);
    auto c = components(d);
    const auto& two = by_dimension(c, d, 2);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        auto m = random_natural(rng, 3, 9), n = random_natural(rng, 3, 9);
        Rat expect = Rat(dot(m, n)) - ratio(total(m) * total(n), 3);
        auto v = scalar_product(two, m, n);
        ASSERT_TRUE(v.rational);
        EXPECT_EQ(v.value.rational_value(), expect);
        EXPECT_EQ(scalar_product(two, m, m).value.rational_value(), Rat(dot(m, m)) - ratio(total(m) * total(m), 3));
    }
}

TEST(Born, ZeroNormOnTrivialVector) {
    auto d = decompose("S3", 3);
    auto c = components(d);
    EXPECT_THROW(born_probability(by_dimension(c, d, 2), {1, 1, 1}, {1, 2, 3}), ZeroNorm);
}

TEST(Born, DestructiveSearchFindsPrintedPair) {
    auto d = decompose("S3", 3);
    auto c = components(d);
    bool found = false;
    int hits = 0;
    destructive_search(by_dimension(c, d, 2), 3, true, [&](const StateVector& m, const StateVector& n) {
        ++hits;
        if (m == StateVector{1, 3, 2} && n == StateVector{1, 1, 2}) found = true;
        EXPECT_TRUE(scalar_product(by_dimension(c, d, 2), m, n).value.is_zero());
        return true;
    });
    EXPECT_TRUE(found);
    EXPECT_GT(hits, 1);
}

TEST(Born, A5OrbitalIdentity) {
    auto a = fixtures::group("A5ico");
    auto orbs = orbitals(a);
    ASSERT_EQ(orbs.size(), 4u);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 1000; ++t) {
        auto m = random_natural(rng, 12, 5), n = random_natural(rng, 12, 5);
        Int s = 0;
        for (const auto& o : orbs) s += orbital_pairing(o, m, n);
        EXPECT_EQ(s, total(m) * total(n));
    }
}

TEST(Born, A5ThreeDimensionalComponentsNeedCombining) {
    auto d = decompose("A5ico", 5);
    auto c = components(d);
    const auto& three = by_dimension(c, d, 3, 0);
    const auto& three2 = by_dimension(c, d, 3, 1);
    StateVector m{1, 0, 2, 0, 0, 3, 0, 1, 0, 0, 0, 0}, n{0, 1, 0, 0, 4, 0, 0, 0, 1, 0, 2, 0};
    EXPECT_THROW(born_probability(three, m, n), IrrationalProbability);
    EXPECT_THROW(born_probability(three2, m, n), IrrationalProbability);

    auto both = combine({three, three2});
    // Orbital order on the icosahedron: identity Q, neighbors B, opposite A, distance two C.
    std::vector<Cyclotomic> half{Cyclotomic(Rat(1, 2)), Cyclotomic(0), Cyclotomic(Rat(-1, 2)), Cyclotomic(0)};
    EXPECT_EQ(both.coeffs, half);
    Rat p = born_probability(both, m, n);
    EXPECT_GE(p, 0);
    EXPECT_LE(p, 1);

    std::size_t k3 = 0;
    while (d.forms[k3].dimension != 3) ++k3;
    EXPECT_EQ(combine_conjugates(c, k3).coeffs, half);
}

TEST(Born, A5FiveDimensionalFormIsPrinted) {
    auto d = decompose("A5ico", 5);
    auto c = components(d);
    const auto& five = by_dimension(c, d, 5);
    std::vector<Cyclotomic> expect{Cyclotomic(Rat(5, 12)), Cyclotomic(Rat(-1, 12)), Cyclotomic(Rat(5, 12)),
                                   Cyclotomic(Rat(-1, 12))};
    EXPECT_EQ(five.coeffs, expect);
}

TEST(Born, A5ThreeDimensionalFormsCarrySqrt5) {
    auto d = decompose("A5ico", 5);
    const Cyclotomic s5 = Cyclotomic(1) + Cyclotomic::root(5, 1).scaled(2) + Cyclotomic::root(5, 4).scaled(2);
    int seen = 0;
    for (const auto& f : d.forms) {
        if (f.dimension != 3) continue;
        auto co = f.coefficients();
        EXPECT_EQ(co[0], Cyclotomic(Rat(1, 4)));
        EXPECT_EQ(co[2], Cyclotomic(Rat(-1, 4)));
        EXPECT_TRUE(co[1] == s5.scaled(Rat(1, 20)) || co[1] == s5.scaled(Rat(-1, 20)));
        EXPECT_EQ(co[3], -co[1]);
        ++seen;
    }
    EXPECT_EQ(seen, 2);
}

TEST(Born, CauchySchwarzOnAllComponents) {
    auto d = decompose("A5ico", 5);
    auto c = components(d);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        auto m = random_natural(rng, 12, 4), n = random_natural(rng, 12, 4);
        for (const auto& f : c) EXPECT_TRUE(cauchy_check(f, m, n));
    }
}

TEST(Born, ProbabilitiesSumOverComponentsOfNormalizedPairs) {
    // sum_k <m|B_k|n> equals the plain dot product.
    auto d = decompose("SL23deg8", 3);
    auto c = components(d);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        auto m = random_natural(rng, 8, 6), n = random_natural(rng, 8, 6);
        Cyclotomic s;
        for (const auto& f : c) s += scalar_product(f, m, n).value;
        EXPECT_EQ(s, Cyclotomic(Rat(dot(m, n))));
    }
}

TEST(Born, DimensionMismatchThrows) {
    auto d = decompose("S3", 3);
    auto c = components(d);
    EXPECT_THROW(scalar_product(c[0], {1, 2}, {1, 2, 3}), DimensionMismatch);
}
