#pragma once

#include "blockpart/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace blockpart {

// Nearest-neighbour jump rates for a 0..k occupancy system. p(y,z) is the
// rate of a right jump out of a site at occupancy y into a right neighbour at
// occupancy z; q(y,z) the rate of a left jump into occupancy y out of z.
struct RateTable {
    int k = 2;
    std::vector<std::vector<Rat>> p;  // (k+1) x (k+1)
    std::vector<std::vector<Rat>> q;

    RateTable() = default;
    explicit RateTable(int k_) : k(k_) {
        p.assign(static_cast<size_t>(k + 1), std::vector<Rat>(static_cast<size_t>(k + 1), Rat(0)));
        q = p;
    }
    const Rat& pr(int y, int z) const { return p[static_cast<size_t>(y)][static_cast<size_t>(z)]; }
    const Rat& ql(int y, int z) const { return q[static_cast<size_t>(y)][static_cast<size_t>(z)]; }

    std::string to_json() const;
};

RateTable rate_table_from_json(const std::string& text);

struct Violation {
    std::string axiom;    // "B1", "B2", "positivity", "a", "b", "c", "pattern"
    std::string witness;  // human-readable witness rates
};

struct ValidationReport {
    bool accepted = false;
    std::vector<Violation> violations;
};

// Full axiom check for k = 2 tables: boundary zeros, strict positivity of the
// remaining rates, attractivity monotonicity, right-drift dominance, ratio
// constancy and the product condition.
ValidationReport validate(const RateTable& r);

// General-k check restricted to the total-asymmetry exclusion pattern
// p = [y!=0][z!=k], q = rho*[z!=0][y!=k] for some 0 < rho < 1.
ValidationReport validate_k_exclusion(const RateTable& r);

// Derived measure parameters. t is carried as t^2 (always rational) and the
// f, s tables live in Q(sqrt(t^2)) so they stay exact when t is irrational.
struct BlockingParams {
    int k = 2;
    Rat p_asym;
    Rat q_asym;
    Rat qtilde;     // q_asym / p_asym, in (0,1)
    Rat t_squared;  // >= 1 for k = 2 families
    std::vector<QuadExt> f;                    // occupancy -> f value, f[0] = 0
    std::map<std::pair<int, int>, QuadExt> s;  // pair -> s value
    double c = 0.0;                            // family parameter, numeric use only
};

BlockingParams derive_params(const RateTable& r);

// Exclusion-pattern parameters for general k: f = indicator, s constant 1+rho.
BlockingParams derive_k_exclusion_params(const RateTable& r);

// Unnormalized single-site weight of occupancy z at site i under ground-state
// parameter c, exact. Throws if the value is irrational (t not a perfect
// square and z hits the t-weighted occupancy).
Rat marginal_weight(const BlockingParams& params, long long i, int z, long long c);

// Normalized site marginal, numeric, real-valued c allowed.
double marginal(const BlockingParams& params, long long i, int z, double c);

// Probability that the conserved charge is congruent to -m mod k under the
// site-c blocking measure, by truncated infinite products over sites. k = 2
// uses the real product over (1 - 2 mu_i(1)); larger k averages complex
// characters. Throws if the product has not settled within the site budget.
double class_probability(const BlockingParams& params, double c, int m, int k, double tol);

// Model builders.
RateTable asep_q1_table(const Rat& q);
RateTable three_state_table(const Rat& q, const Rat& gamma);
RateTable three_state_table(const Rat& q, const Rat& gamma, const Rat& gamma_prime);
RateTable k_exclusion_table(const Rat& q, int k);

}  // namespace blockpart
