#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blockpart/series.hpp"

#include <random>

using namespace blockpart;

namespace {

TruncatedSeries random_series(std::mt19937_64& rng, long long order, int nterms) {
    TruncatedSeries s(order);
    std::uniform_int_distribution<long long> dq(0, order);
    std::uniform_int_distribution<long long> dt(0, 3);
    std::uniform_int_distribution<long long> dz(-2, 2);
    std::uniform_int_distribution<int> co(-9, 9);
    for (int i = 0; i < nterms; ++i) s.add_term({dq(rng), dt(rng), dz(rng)}, co(rng));
    return s;
}

LaurentQSeries random_laurent(std::mt19937_64& rng, int nterms) {
    LaurentQSeries s;
    std::uniform_int_distribution<long long> e(-6, 10);
    std::uniform_int_distribution<int> co(-9, 9);
    for (int i = 0; i < nterms; ++i) s.add_coeff(e(rng), co(rng));
    s.canonicalize();
    return s;
}

}  // namespace

TEST_CASE("basic polynomial product") {
    // (1 + qt)(1 - qt) = 1 - qt^2 at order 5
    TruncatedSeries a(5), b(5);
    a.add_term({0, 0, 0}, 1);
    a.add_term({1, 0, 0}, 1);
    b.add_term({0, 0, 0}, 1);
    b.add_term({1, 0, 0}, -1);
    TruncatedSeries p = mul(a, b);
    CHECK(p.coeff({0, 0, 0}) == 1);
    CHECK(p.coeff({1, 0, 0}) == 0);
    CHECK(p.coeff({2, 0, 0}) == -1);
    CHECK(p.terms().size() == 2);
}

TEST_CASE("truncation discards high order terms in products") {
    TruncatedSeries a(3);
    a.add_term({2, 0, 0}, 1);
    TruncatedSeries p = mul(a, a);  // qt^4 exceeds order 3
    CHECK(p.is_zero());
}

TEST_CASE("finite three-variable product, z slice") {
    // prod_{i=1..3} (1 + t z qt^i): coefficient of z^1 is t(qt + qt^2 + qt^3)
    TruncatedSeries acc = TruncatedSeries::constant(10, 1);
    for (long long i = 1; i <= 3; ++i) {
        TruncatedSeries f(10);
        f.add_term({0, 0, 0}, 1);
        f.add_term({i, 1, 1}, 1);
        acc = mul(acc, f);
    }
    TruncatedSeries z1 = acc.coeff_z(1);
    CHECK(z1.coeff({1, 1, 0}) == 1);
    CHECK(z1.coeff({2, 1, 0}) == 1);
    CHECK(z1.coeff({3, 1, 0}) == 1);
    CHECK(z1.terms().size() == 3);
    // top slice z^3: t^3 qt^6
    TruncatedSeries z3 = acc.coeff_z(3);
    CHECK(z3.coeff({6, 3, 0}) == 1);
    CHECK(z3.terms().size() == 1);
}

TEST_CASE("ring axioms on random series") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        TruncatedSeries a = random_series(rng, 6, 8);
        TruncatedSeries b = random_series(rng, 6, 8);
        TruncatedSeries c = random_series(rng, 6, 8);
        CHECK(add(a, b) == add(b, a));
        CHECK(mul(a, b) == mul(b, a));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
        CHECK(sub(a, a).is_zero());
        CHECK(mul(a, TruncatedSeries::constant(6, 1)) == a);
    }
}

TEST_CASE("shifted equals multiplication by a monomial") {
    std::mt19937_64 rng(3);
    TruncatedSeries a = random_series(rng, 8, 10);
    TruncatedSeries m(8);
    m.add_term({2, 1, -1}, 5);
    CHECK(a.shifted(2, 1, -1, 5) == mul(a, m));
}

TEST_CASE("infinite product truncation is stable in the cutoff") {
    // prod_{i>=1} (1 + t z qt^i + t^2 z^2 qt^{2i}) style factor family
    FactorSpec fam{"triple", [](long long i) {
                       return std::vector<std::pair<Monomial, Int>>{
                           {{0, 0, 0}, 1}, {{i, 1, 1}, 1}, {{2 * i, 0, 2}, 1}};
                   }};
    TruncatedSeries p1 = product_rhs(fam, 8);
    FactorSpec fam2 = fam;
    // same family evaluated with five extra factors must agree after truncation
    TruncatedSeries p2(8);
    {
        TruncatedSeries acc = TruncatedSeries::constant(13, 1);
        for (long long i = 1; i <= 14; ++i) {
            TruncatedSeries f(13);
            for (auto& [m, c] : fam.factor(i)) f.add_term(m, c);
            acc = mul(acc, f);
        }
        p2 = acc.truncated(8);
    }
    CHECK(p1 == p2);
}

TEST_CASE("product_rhs rejects divergent factor families") {
    FactorSpec bad{"bad", [](long long) {
                       return std::vector<std::pair<Monomial, Int>>{{{0, 0, 0}, 1}, {{1, 0, 0}, 1}};
                   }};
    CHECK_THROWS_AS(product_rhs(bad, 6), std::invalid_argument);
    FactorSpec bad2{"bad2", [](long long i) {
                        return std::vector<std::pair<Monomial, Int>>{{{0, 0, 0}, 2}, {{i, 0, 0}, 1}};
                    }};
    CHECK_THROWS_AS(product_rhs(bad2, 6), std::invalid_argument);
}

TEST_CASE("laurent arithmetic and canonical form") {
    LaurentQSeries a = LaurentQSeries::monomial(-2, 3);
    a.add_coeff(1, -1);
    LaurentQSeries b = LaurentQSeries::monomial(2, 1);
    LaurentQSeries p = mul(a, b, 10);
    CHECK(p.coeff(0) == 3);
    CHECK(p.coeff(3) == -1);
    CHECK(p.lo == 0);
    CHECK(sub(a, a).is_zero());
    LaurentQSeries z = sub(a, a);
    CHECK(z == LaurentQSeries::zero());
}

TEST_CASE("laurent ring axioms") {
    std::mt19937_64 rng(9);
    const long long hi = 40;
    for (int trial = 0; trial < 40; ++trial) {
        LaurentQSeries a = random_laurent(rng, 6);
        LaurentQSeries b = random_laurent(rng, 6);
        LaurentQSeries c = random_laurent(rng, 6);
        CHECK(add(a, b) == add(b, a));
        CHECK(mul(a, b, hi) == mul(b, a, hi));
        CHECK(mul(mul(a, b, hi), c, hi) == mul(a, mul(b, c, hi), hi));
        CHECK(mul(a, add(b, c), hi) == add(mul(a, b, hi), mul(a, c, hi)));
    }
}

TEST_CASE("laurent truncated product is exact below the cutoff") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        LaurentQSeries a = random_laurent(rng, 6);
        LaurentQSeries b = random_laurent(rng, 6);
        LaurentQSeries full = mul(a, b, 1000);
        LaurentQSeries cut = mul(a, b, 5);
        CHECK(cut == truncate(full, 5));
    }
}

TEST_CASE("substitution of qt and t by q powers") {
    // qt t^2 under qt -> q^4, t -> q + q^{-1} becomes q^2 + 2 q^4 + q^6
    TruncatedSeries a(4);
    a.add_term({1, 2, 0}, 1);
    LaurentQSeries t = LaurentQSeries::monomial(-1, 1);
    t.add_coeff(1, 1);
    LaurentQSeries r = substitute(a, 4, t, 2, 8);
    CHECK(r.coeff(2) == 1);
    CHECK(r.coeff(4) == 2);
    CHECK(r.coeff(6) == 1);
    CHECK(r.lo == 2);
    CHECK(r.hi() == 6);
}

TEST_CASE("substitution honours exactness accounting") {
    // With t -> q + q^{-1}, a discarded term qt^{N+1} t^{2(N+1)+1} can dip as
    // low as exponent 4(N+1) - (2(N+1)+1). Requesting beyond that must throw.
    TruncatedSeries a(4);
    a.add_term({0, 0, 0}, 1);
    LaurentQSeries t = LaurentQSeries::monomial(-1, 1);
    t.add_coeff(1, 1);
    // reach = 4*5 - (2*5+1) = 9, so target 8 is fine and 9 is not
    CHECK_NOTHROW(substitute(a, 4, t, 2, 8));
    CHECK_THROWS_AS(substitute(a, 4, t, 2, 9), std::domain_error);
    // monomials violating the declared dt bound are rejected
    TruncatedSeries b(4);
    b.add_term({1, 4, 0}, 1);
    CHECK_THROWS_AS(substitute(b, 4, t, 2, 4), std::domain_error);
}

TEST_CASE("substitute_z slices agree with full expansion") {
    std::mt19937_64 rng(5);
    TruncatedSeries a(6);
    std::uniform_int_distribution<long long> dq(0, 6);
    std::uniform_int_distribution<long long> dz(-2, 2);
    std::uniform_int_distribution<int> co(-5, 5);
    for (int i = 0; i < 12; ++i) {
        long long q = dq(rng);
        std::uniform_int_distribution<long long> dt(0, 2 * q + 1);
        a.add_term({q, dt(rng), dz(rng)}, co(rng));
    }
    LaurentQSeries t = LaurentQSeries::monomial(-1, 1);
    t.add_coeff(1, 1);
    auto slices = substitute_z(a, 4, t, 2, 8);
    for (auto& [k, slice] : slices) {
        LaurentQSeries direct = substitute(a.coeff_z(k), 4, t, 2, 8);
        CHECK(slice == direct);
    }
    // slices not present must be genuinely zero
    for (long long k = -3; k <= 3; ++k) {
        if (!slices.count(k)) CHECK(substitute(a.coeff_z(k), 4, t, 2, 8).is_zero());
    }
}

TEST_CASE("classical two-factor q-product expansion") {
    // prod_{i>=1} (1 - q^i) to order 12: Euler pentagonal signs
    LaurentQSeries e = q_product([](long long i) { return q_binomial_factor(i, -1); }, 12);
    CHECK(e.coeff(0) == 1);
    CHECK(e.coeff(1) == -1);
    CHECK(e.coeff(2) == -1);
    CHECK(e.coeff(3) == 0);
    CHECK(e.coeff(5) == 1);
    CHECK(e.coeff(7) == 1);
    CHECK(e.coeff(12) == -1);
}

TEST_CASE("q_product stability under deeper cutoff") {
    auto fac = [](long long i) {
        LaurentQSeries f = LaurentQSeries::monomial(0, 1);
        f.add_coeff(i, 1);
        f.add_coeff(2 * i, 1);
        return f;
    };
    LaurentQSeries p = q_product(fac, 10);
    LaurentQSeries acc = LaurentQSeries::monomial(0, 1);
    for (long long i = 1; i <= 25; ++i) acc = mul(acc, fac(i), 30);
    CHECK(p == truncate(acc, 10));
}

TEST_CASE("serialization round shapes") {
    TruncatedSeries a(3);
    a.add_term({1, 0, 0}, -2);
    a.add_term({0, 0, 1}, 1);
    CHECK(a.to_json() == "[{\"dq\":0,\"dt\":0,\"dz\":1,\"coeff\":\"1\"},{\"dq\":1,\"dt\":0,\"dz\":0,\"coeff\":\"-2\"}]");
    LaurentQSeries l = LaurentQSeries::monomial(-1, 2);
    l.add_coeff(1, -3);
    CHECK(l.to_csv() == "exponent,coefficient\n-1,2\n0,0\n1,-3\n");
}

TEST_CASE("quadratic extension arithmetic") {
    Rat rad(25, 4);  // sqrt = 5/2
    QuadExt t = QuadExt::root(rad);
    QuadExt one = QuadExt::from_rat(1, rad);
    CHECK(t * t == QuadExt::from_rat(rad, rad));
    QuadExt x(Rat(2), Rat(3), Rat(2));  // 2 + 3 sqrt 2
    CHECK(x * x.inverse() == QuadExt::from_rat(1, Rat(2)));
    CHECK((x / x) == QuadExt::from_rat(1, Rat(2)));
    CHECK((one + t) - t == one);
    // exact sqrt helper
    CHECK(exact_sqrt(Rat(49, 9)) == Rat(7, 3));
    CHECK(!exact_sqrt(Rat(2)).has_value());
    CHECK(pow_rat(Rat(2, 3), -2) == Rat(9, 4));
}
