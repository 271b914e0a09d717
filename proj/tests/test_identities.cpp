#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blockpart/identities.hpp"
#include "blockpart/normalizers.hpp"

using namespace blockpart;

namespace {

void check_clean(const IdentityReport& r) {
    INFO(r.id, ": ", r.discrepancy);
    CHECK(r.equal);
    CHECK(r.discrepancy.empty());
}

}  // namespace

TEST_CASE("two-variable family identity") {
    IdentityReport r = check_main(10, 6);
    check_clean(r);
    CHECK(r.order == 10);
    CHECK(r.z_window == 6);
    // wider z-window at lower order still balances
    check_clean(check_main(6, 12));
}

TEST_CASE("classical triple product in both gradings") {
    check_clean(check_jacobi(12, 8));
    check_clean(check_jacobi(5, 3));
}

TEST_CASE("two-species exclusion specialisation") { check_clean(check_asep(20, 6)); }

TEST_CASE("particle-antiparticle specialisation") { check_clean(check_three_state(8, 6)); }

TEST_CASE("t = 1 specialisation") { check_clean(check_two_exclusion(8, 6)); }

TEST_CASE("exclusion family identity") {
    check_clean(check_k_exclusion(1, 10, 6));
    check_clean(check_k_exclusion(2, 8, 6));
    check_clean(check_k_exclusion(3, 8, 5));
}

TEST_CASE("offset laws across repetition bounds") {
    for (int k : {1, 2, 3})
        for (long long kp = -4; kp <= 4; ++kp) check_clean(check_offset_law(k, kp, 10));
}

TEST_CASE("printed product forms") { check_clean(check_phi_products(10)); }

TEST_CASE("report serialization carries all fields") {
    IdentityReport r = check_jacobi(4, 2);
    std::string j = r.to_json();
    CHECK(j.find("\"id\":\"jacobi\"") != std::string::npos);
    CHECK(j.find("\"order\":4") != std::string::npos);
    CHECK(j.find("\"equal\":true") != std::string::npos);
}

TEST_CASE("k = 1 state sum counts plain partitions") {
    NormalizerSeries s = s_k(1, 0, 10);
    std::vector<long long> partitions = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (long long n = 0; n <= 10; ++n) CHECK(s.series.coeff({n, 0, 0}) == partitions[static_cast<size_t>(n)]);
    CHECK(s.stabilized);
}
