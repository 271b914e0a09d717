#include "blockpart/standup.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace blockpart {

void EtaState::canonicalize() {
    size_t lead = 0;
    while (lead < occ.size() && occ[lead] == 0) ++lead;
    size_t tail = occ.size();
    while (tail > lead && occ[tail - 1] == k) --tail;
    lo += static_cast<long long>(lead);
    occ = std::vector<int>(occ.begin() + static_cast<long>(lead), occ.begin() + static_cast<long>(tail));
}

std::string EtaState::to_json(long long n) const {
    nlohmann::json j;
    j["k"] = k;
    j["n"] = n;
    j["lo"] = lo;
    j["values"] = occ;
    return j.dump();
}

EtaState eta_ground(int k, long long n) {
    // Sites < a empty, site a at partial occupancy j, sites > a full; the
    // charge is then k*a - j, which pins a and j uniquely with 0 <= j < k.
    long long a = n >= 0 ? (n + k - 1) / k : n / k;  // ceil(n/k)
    long long j = k * a - n;
    EtaState eta;
    eta.k = k;
    if (j == 0) {
        eta.lo = a + 1;
    } else {
        eta.lo = a;
        eta.occ = {static_cast<int>(j)};
    }
    return eta;
}

void OmegaState::canonicalize() {
    while (!vals.empty() && vals.back() == ground_at(depth())) vals.pop_back();
}

bool OmegaState::no_zero_run() const {
    int run = 0;
    for (long long i = 1; i <= depth() + k; ++i) {
        if (value_at(i) == 0) {
            if (++run >= k) return false;
        } else {
            run = 0;
        }
    }
    return true;
}

std::string OmegaState::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["m"] = m;
    j["values"] = vals;
    return j.dump();
}

OmegaState omega_ground(int k, int m) {
    OmegaState w;
    w.k = k;
    w.m = m;
    return w;
}

long long conserved_n(const EtaState& eta) {
    long long n = 0;
    for (long long i = eta.lo; i <= eta.hi(); ++i) {
        if (i >= 1) n += eta.k - eta.occ[static_cast<size_t>(i - eta.lo)];
        else n -= eta.occ[static_cast<size_t>(i - eta.lo)];
    }
    if (eta.lo > 1) n += eta.k * (eta.lo - 1);    // implicit empty sites in 1..lo-1
    if (eta.hi() < 0) n -= eta.k * (-eta.hi());   // implicit full sites in hi+1..0
    return n;
}

OmegaState stand_up(const EtaState& eta) {
    long long n = conserved_n(eta);
    int m = static_cast<int>(((-n) % eta.k + eta.k) % eta.k);
    // Particle sites in reading order: window occupancies then three padding
    // sites of the full right tail, enough to exhibit the ground gap pattern.
    std::vector<long long> sites;
    for (long long i = eta.lo; i <= eta.hi() + 3; ++i) {
        int c = eta.value_at(i);
        for (int r = 0; r < c; ++r) sites.push_back(i);
    }
    OmegaState w;
    w.k = eta.k;
    w.m = m;
    for (size_t r = 0; r + 1 < sites.size(); ++r) w.vals.push_back(sites[r + 1] - sites[r]);
    // gaps within the padding tail must already follow the ground pattern
    for (long long i = w.depth() - eta.k; i <= w.depth(); ++i)
        if (i >= 1 && w.value_at(i) != w.ground_at(i))
            throw std::logic_error("stand_up: padding did not reach the ground tail");
    w.canonicalize();
    return w;
}

EtaState lay_down(const OmegaState& omega, long long n) {
    int k = omega.k;
    if (((n + omega.m) % k + k) % k != 0)
        throw std::invalid_argument("lay_down: charge class does not match the state class");
    // Left-most particle site. Pick a particle index R = m mod k past every
    // deviation; particles 1..R then fill sites <= S_R exactly, so the charge
    // identity n = k*S_R - R pins S_R, and S_1 = S_R minus the gap prefix.
    long long big_r = omega.depth() + k;
    while ((big_r % k + k) % k != omega.m % k) ++big_r;
    long long sum = 0;
    for (long long i = 1; i <= big_r - 1; ++i) sum += omega.value_at(i);
    long long s1 = (n + big_r) / k - sum;  // exact: n + R is a multiple of k
    // Rebuild occupancies from the particle positions.
    long long r_count = omega.depth() + 3LL * k + 2;
    std::map<long long, int> occ;
    long long site = s1;
    occ[site] = 1;
    long long smax = site;
    for (long long r = 2; r <= r_count; ++r) {
        site += omega.value_at(r - 1);
        ++occ[site];
        smax = std::max(smax, site);
    }
    EtaState eta;
    eta.k = k;
    eta.lo = occ.begin()->first;
    // the deepest generated site may still be filling up; exclude it
    eta.occ.assign(static_cast<size_t>(smax - eta.lo), 0);
    for (const auto& [s, c] : occ)
        if (s < smax) eta.occ[static_cast<size_t>(s - eta.lo)] = c;
    eta.canonicalize();
    if (conserved_n(eta) != n) throw std::logic_error("lay_down: charge mismatch after reconstruction");
    if (!(stand_up(eta) == omega)) throw std::logic_error("lay_down: not a section of stand_up");
    return eta;
}

std::vector<std::pair<JumpEvent, EtaState>> eta_jumps(const EtaState& eta, const RateTable& rates) {
    if (rates.k != eta.k) throw std::invalid_argument("eta_jumps: occupancy bound mismatch");
    std::vector<std::pair<JumpEvent, EtaState>> out;
    auto apply = [&](long long i, int di, int dj, JumpKind kind, const Rat& rate) {
        long long jlo = std::min(eta.lo, i);
        long long jhi = std::max(eta.hi(), i + 1);
        EtaState next;
        next.k = eta.k;
        next.lo = jlo;
        for (long long s = jlo; s <= jhi; ++s) next.occ.push_back(eta.value_at(s));
        next.occ[static_cast<size_t>(i - jlo)] += di;
        next.occ[static_cast<size_t>(i + 1 - jlo)] += dj;
        next.canonicalize();
        out.push_back({JumpEvent{kind, i, rate}, std::move(next)});
    };
    for (long long i = eta.lo - 2; i <= eta.hi() + 1; ++i) {
        int y = eta.value_at(i), z = eta.value_at(i + 1);
        if (rates.pr(y, z) > 0) apply(i, -1, +1, JumpKind::Right, rates.pr(y, z));
        if (rates.ql(y, z) > 0) apply(i, +1, -1, JumpKind::Left, rates.ql(y, z));
    }
    return out;
}

namespace {

// Right/left rates of the stood-up process at gap index r >= 2, plus the
// boundary reservoir rates at r = 1. Two families: the general k = 2 tables
// and the exclusion-pattern tables for arbitrary k.
struct StoodUpRates {
    const RateTable& r;
    bool exclusion;
    Rat rho;  // exclusion left rate

    // factor 0/1 encoding "a jump here would not create k consecutive zeros"
    static long long unblock(const OmegaState& w, long long from, int step) {
        for (int j = 1; j <= w.k - 1; ++j)
            if (w.value_at(from + static_cast<long long>(j) * step) != 0) return 1;
        return 0;
    }

    Rat right(const OmegaState& w, long long rr) const {  // moves a unit -r -> -r+1
        long long y = w.value_at(rr), z = w.value_at(rr - 1);
        if (y == 0) return 0;
        if (exclusion) {
            if (y == 1) return Rat(unblock(w, rr, +1));
            return 1;
        }
        if (y == 1) return r.pr(z >= 1 ? 1 : 2, 1) * (w.value_at(rr + 1) != 0 ? 1 : 0);
        return r.pr(z >= 1 ? 1 : 2, 0);
    }

    Rat left(const OmegaState& w, long long rr) const {  // moves a unit -r+1 -> -r
        long long y = w.value_at(rr), z = w.value_at(rr - 1);
        if (z == 0) return 0;
        if (exclusion) {
            if (z == 1) return rho * unblock(w, rr - 1, -1);
            return rho;
        }
        if (z == 1) return r.ql(1, y >= 1 ? 1 : 2) * (w.value_at(rr - 2) != 0 ? 1 : 0);
        return r.ql(0, y >= 1 ? 1 : 2);
    }

    Rat boundary_in(const OmegaState& w) const {  // unit leaves -1 into the reservoir
        long long v = w.value_at(1);
        if (v == 0) return 0;
        if (exclusion) return v == 1 ? Rat(unblock(w, 1, +1)) : Rat(1);
        if (v == 1) return r.pr(1, 1) * (w.value_at(2) != 0 ? 1 : 0);
        return r.pr(1, 0);
    }

    Rat boundary_out(const OmegaState& w) const {  // unit enters at -1
        if (exclusion) return rho;
        return w.value_at(1) == 0 ? r.ql(0, 2) : r.ql(0, 1);
    }
};

}  // namespace

std::vector<std::pair<JumpEvent, OmegaState>> omega_jumps(const OmegaState& omega, const RateTable& rates) {
    bool exclusion = validate_k_exclusion(rates).accepted;
    if (!exclusion && !(rates.k == 2 && validate(rates).accepted))
        throw std::invalid_argument("omega_jumps: table is neither a valid k=2 family nor exclusion pattern");
    if (rates.k != omega.k) throw std::invalid_argument("omega_jumps: occupancy bound mismatch");
    StoodUpRates su{rates, exclusion, exclusion ? rates.ql(0, 1) : Rat(0)};

    std::vector<std::pair<JumpEvent, OmegaState>> out;
    auto apply = [&](long long r, long long d_deep, long long d_shallow, JumpKind kind, const Rat& rate) {
        OmegaState next = omega;
        long long need = kind == JumpKind::Right || kind == JumpKind::Left ? r : 1;
        while (next.depth() < need) next.vals.push_back(next.ground_at(next.depth() + 1));
        next.vals[static_cast<size_t>(r - 1)] += d_deep;
        if (d_shallow != 0) next.vals[static_cast<size_t>(r - 2)] += d_shallow;
        next.canonicalize();
        out.push_back({JumpEvent{kind, r, rate}, std::move(next)});
    };

    Rat bin = su.boundary_in(omega);
    if (bin > 0) apply(1, -1, 0, JumpKind::BoundaryIn, bin);
    Rat bout = su.boundary_out(omega);
    if (bout > 0) apply(1, +1, 0, JumpKind::BoundaryOut, bout);

    long long horizon = omega.depth() + 2LL * omega.k + 2;
    for (long long r = 2; r <= horizon; ++r) {
        Rat pr = su.right(omega, r);
        if (pr > 0) apply(r, -1, +1, JumpKind::Right, pr);
        Rat ql = su.left(omega, r);
        if (ql > 0) apply(r, +1, -1, JumpKind::Left, ql);
    }
    return out;
}

bool intertwine_check(const EtaState& eta, const RateTable& rates) {
    OmegaState w = stand_up(eta);
    std::map<std::pair<OmegaState, Rat>, long long> lhs, rhs;
    for (const auto& [ev, next] : eta_jumps(eta, rates)) ++lhs[{stand_up(next), ev.rate}];
    for (const auto& [ev, next] : omega_jumps(w, rates)) ++rhs[{next, ev.rate}];
    return lhs == rhs;
}

}  // namespace blockpart
