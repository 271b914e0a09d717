#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blockpart/gfp.hpp"
#include "blockpart/normalizers.hpp"

#include <map>
#include <vector>

using namespace blockpart;

namespace {

std::vector<long long> q_profile(const TruncatedSeries& s) {
    std::vector<long long> out(static_cast<size_t>(s.order()) + 1, 0);
    for (const auto& [mono, c] : s.terms()) out[static_cast<size_t>(mono.dq)] += static_cast<long long>(c);
    return out;
}

}  // namespace

TEST_CASE("class-0 series matches the printed two-variable expansion") {
    NormalizerSeries even = s_even(8);
    CHECK(even.stabilized);
    std::map<std::pair<long long, long long>, long long> expect = {
        {{0, 0}, 1}, {{1, 2}, 1}, {{2, 0}, 1}, {{2, 2}, 2}, {{3, 2}, 5},
        {{4, 0}, 2}, {{4, 2}, 6}, {{4, 4}, 1}, {{5, 2}, 12}, {{5, 4}, 2},
        {{6, 0}, 3}, {{6, 2}, 16}, {{6, 4}, 5}, {{7, 2}, 25}, {{7, 4}, 10},
        {{8, 0}, 5}, {{8, 2}, 30}, {{8, 4}, 20}};
    CHECK(even.series.terms().size() == expect.size());
    for (const auto& [key, c] : expect) CHECK(even.series.coeff({key.first, key.second, 0}) == c);
    long long total = 0;
    for (const auto& [key, c] : expect) total += c;
    CHECK(even.space == total);
}

TEST_CASE("class-1 series matches the printed expansion") {
    NormalizerSeries odd = s_odd(8);
    CHECK(odd.stabilized);
    std::map<std::pair<long long, long long>, long long> expect = {
        {{0, 0}, 1}, {{1, 0}, 2}, {{2, 0}, 2}, {{2, 2}, 1}, {{3, 0}, 4}, {{3, 2}, 2},
        {{4, 0}, 5}, {{4, 2}, 5}, {{5, 0}, 6}, {{5, 2}, 10}, {{6, 0}, 10}, {{6, 2}, 15},
        {{6, 4}, 1}, {{7, 0}, 12}, {{7, 2}, 26}, {{7, 4}, 2}, {{8, 0}, 15}, {{8, 2}, 40},
        {{8, 4}, 5}};
    CHECK(odd.series.terms().size() == expect.size());
    for (const auto& [key, c] : expect) CHECK(odd.series.coeff({key.first, key.second, 0}) == c);
}

TEST_CASE("state search agrees with the independent array enumeration") {
    // the bijection sends weight to weight and the t-exponent to the
    // distinct-part count, up to the overall class factor of t
    CHECK(s_even(8).series == gf_enumerated(0, 2, 8));
    CHECK(s_odd(8).series.shifted(0, 1, 0) == gf_enumerated(-1, 2, 8));
    for (int k : {3, 4})
        for (int m = 0; m < k; ++m) {
            NormalizerSeries ns = s_k(k, m, 6);
            CHECK(ns.stabilized);
            std::vector<long long> profile = q_profile(ns.series);
            for (long long n = 0; n <= 6; ++n)
                CHECK(profile[static_cast<size_t>(n)] ==
                      static_cast<long long>(enumerate(n, -m, k).size()));
        }
}

TEST_CASE("exclusion-family series match the printed coefficient lists") {
    CHECK(q_profile(s_k(2, 0, 8).series) ==
          std::vector<long long>{1, 1, 3, 5, 9, 14, 24, 35, 55});
    CHECK(q_profile(s_k(2, 1, 8).series) ==
          std::vector<long long>{1, 2, 3, 6, 10, 16, 26, 40, 60});
    CHECK(q_profile(s_k(3, 0, 8).series) ==
          std::vector<long long>{1, 1, 3, 6, 11, 18, 31, 49, 78});
    // the k = 2 exclusion series are the t -> 1 specialisations
    CHECK(q_profile(s_even(8).series) == q_profile(s_k(2, 0, 8).series));
    CHECK(q_profile(s_odd(8).series) == q_profile(s_k(2, 1, 8).series));
}

TEST_CASE("t-exponents are even and nonnegative") {
    for (const NormalizerSeries& ns : {s_even(7), s_odd(7)})
        for (const auto& [mono, c] : ns.series.terms()) {
            CHECK(mono.dt >= 0);
            CHECK(mono.dt % 2 == 0);
            CHECK(mono.dz == 0);
            CHECK(c > 0);
        }
}

TEST_CASE("lower orders are prefixes of higher orders") {
    NormalizerSeries big = s_even(9);
    for (long long order : {0LL, 3LL, 6LL}) {
        NormalizerSeries small = s_even(order);
        CHECK(small.series == big.series.truncated(order));
    }
    NormalizerSeries big3 = s_k(3, 1, 7);
    CHECK(s_k(3, 1, 4).series == big3.series.truncated(4));
}

TEST_CASE("search depth covers the cheap deep deviations") {
    // weight grows by one unit per k levels of depth along zero/compensator
    // chains, so a shallow search would silently undercount
    NormalizerSeries ns = s_k(3, 1, 8);
    CHECK(ns.depth_used >= 3 * 8);
    CHECK(ns.stabilized);
}
