#pragma once

#include "blockpart/series.hpp"

#include <string>

namespace blockpart {

// Outcome of one formal-series identity check. All arithmetic is exact; a
// report with equal = false carries the first mismatching term.
struct IdentityReport {
    std::string id;
    long long order = 0;     // q-degree up to which both sides were compared
    long long z_window = 0;  // |z-exponent| range compared, 0 for z-free checks
    bool equal = false;
    std::string discrepancy;  // empty when equal
    std::string notes;        // effective sub-orders, collapsed forms checked

    std::string to_json() const;
};

// Two-variable theta identity of the general 0-1-2 family: the class-0 and
// class-1 state sums against the paired triple-style products.
IdentityReport check_main(long long order, long long z_window);

// Classical triple product, both gradings (square and triangular exponents).
IdentityReport check_jacobi(long long order, long long z_window);

// Two-species asymmetric exclusion specialisation qt -> q^4, t -> q + 1/q:
// substituted main identity, the collapsed product forms, the odd/even parts
// of the triple product, and the closed product forms of the state sums.
IdentityReport check_asep(long long order, long long z_window);

// Particle-antiparticle specialisation qt -> q, t -> 2: substituted main
// identity, squared-triple-product forms, printed coefficient lists and the
// 2-coloured row interpretation.
IdentityReport check_three_state(long long order, long long z_window);

// t -> 1 specialisation: plain coefficient lists and the main identity graded
// by weight only.
IdentityReport check_two_exclusion(long long order, long long z_window);

// Exclusion family identity for all classes m: the class-projected form of
// the root-of-unity sum, checked per z-exponent.
IdentityReport check_k_exclusion(int k, long long order, long long z_window);

// Offset law for one column: the z^kprime coefficient of the two-row array
// product equals the shifted class state sum, and both match direct array
// enumeration.
IdentityReport check_offset_law(int k, long long kprime, long long order);

// Printed product expansions of the specialised state sums.
IdentityReport check_phi_products(long long order);

}  // namespace blockpart
