#pragma once

#include "blockpart/blocking.hpp"

#include <string>
#include <vector>

namespace blockpart {

// Finite-deviation configuration on Z with occupancies 0..k. Sites left of
// the window are empty, sites right of it are full; this is exactly the
// left-most-particle / right-most-hole structure of the state space.
struct EtaState {
    int k = 2;
    long long lo = 1;           // first explicit site; window may be empty (hi = lo-1)
    std::vector<int> occ;       // occupancies of sites lo .. lo+occ.size()-1

    long long hi() const { return lo + static_cast<long long>(occ.size()) - 1; }
    int value_at(long long i) const {
        if (i < lo) return 0;
        if (i > hi()) return k;
        return occ[static_cast<size_t>(i - lo)];
    }
    // Trim implicit margins so the window is minimal.
    void canonicalize();

    bool operator==(const EtaState& o) const { return k == o.k && lo == o.lo && occ == o.occ; }
    bool operator<(const EtaState& o) const {
        return std::tie(k, lo, occ) < std::tie(o.k, o.lo, o.occ);
    }
    std::string to_json(long long n) const;
};

// Ground state of charge class n: full from some site on, empty before.
EtaState eta_ground(int k, long long n);

// Half-line state of the stood-up process: vals holds omega_{-1}..omega_{-D},
// deeper entries equal the class-m ground value [i == m mod k].
struct OmegaState {
    int k = 2;
    int m = 0;
    std::vector<long long> vals;

    long long depth() const { return static_cast<long long>(vals.size()); }
    int ground_at(long long i) const { return (i % k + k) % k == m % k ? 1 : 0; }
    long long value_at(long long i) const {
        if (i <= 0) return 1;  // boundary reservoir counts as occupied
        if (i > depth()) return ground_at(i);
        return vals[static_cast<size_t>(i - 1)];
    }
    void canonicalize();
    bool no_zero_run() const;  // the no-k-consecutive-zeros state space condition

    bool operator==(const OmegaState& o) const { return k == o.k && m == o.m && vals == o.vals; }
    bool operator<(const OmegaState& o) const {
        return std::tie(k, m, vals) < std::tie(o.k, o.m, o.vals);
    }
    std::string to_json() const;
};

OmegaState omega_ground(int k, int m);

long long conserved_n(const EtaState& eta);

// Gap encoding of the particle reading order (left to right, bottom to top).
OmegaState stand_up(const EtaState& eta);

// Inverse map: the unique charge-n configuration standing up to omega.
// Requires n == -omega.m mod k.
EtaState lay_down(const OmegaState& omega, long long n);

enum class JumpKind { Right, Left, BoundaryIn, BoundaryOut };

struct JumpEvent {
    JumpKind kind;
    long long site;  // pair position (i, i+1) for lattice jumps; gap index r for stood-up jumps
    Rat rate;
};

std::vector<std::pair<JumpEvent, EtaState>> eta_jumps(const EtaState& eta, const RateTable& rates);

// Transitions of the stood-up process, including the reservoir events at the
// boundary. Dispatches between the exclusion-pattern tables (any k) and the
// general k = 2 tables.
std::vector<std::pair<JumpEvent, OmegaState>> omega_jumps(const OmegaState& omega, const RateTable& rates);

// True iff the transitions of eta and of stand_up(eta) are in rate-preserving
// bijection under the standing-up map.
bool intertwine_check(const EtaState& eta, const RateTable& rates);

}  // namespace blockpart
