#pragma once

#include "blockpart/blocking.hpp"
#include "blockpart/standup.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace blockpart {

// Reversibility audit: every transition edge is checked exactly against its
// reverse under the product stationary weights.
struct BalanceReport {
    long long edges = 0;
    bool reversible = false;
    std::string failure;  // witness of the first violated edge, empty if none
};

// Lattice process: right/left jump pairs over sites in [-site_range,
// site_range], all occupancy pairs, ground-state parameter c.
BalanceReport lattice_detailed_balance(const RateTable& rates, long long c, long long site_range);

// Same check against caller-supplied measure parameters; lets a perturbed
// table be audited with the weights of the family it came from.
BalanceReport lattice_detailed_balance(const RateTable& rates, const BlockingParams& params,
                                       long long c, long long site_range);

// Stood-up process on the supplied gap states, including the reservoir
// boundary edges. Weights are the calibrated stationary marginals of the
// state's class.
BalanceReport stood_up_detailed_balance(const RateTable& rates, const std::vector<OmegaState>& states);

// Finite frozen-boundary window of the lattice process: occupancies on
// `width` sites starting at `lo`, jumps only strictly inside, so the particle
// count `total` is conserved. The stationary law of the chain is solved
// exactly by Gaussian elimination and compared with the normalized product
// weights.
struct SectorStationary {
    std::vector<std::vector<int>> states;  // occupancy vectors of the sector
    std::vector<Rat> probability;          // exact stationary distribution
    bool matches_product_measure = false;
    std::string failure;
};

SectorStationary exact_stationary(const RateTable& rates, long long lo, int width, int total,
                                  long long c);

// Continuous-time simulation of the same frozen window, time-weighted site
// occupation averages with batch-means standard errors.
struct SimulationResult {
    std::vector<double> site_mean;   // average occupancy per window site
    std::vector<double> site_sigma;  // batch-means standard error
    long long jumps = 0;
    double total_time = 0.0;
};

SimulationResult simulate_window(const RateTable& rates, long long lo, int width, int total,
                                 std::uint64_t seed, long long max_jumps, int batches);

// Exact occupation expectations of the window sector, for comparison.
std::vector<double> expected_occupation(const SectorStationary& st);

// Sector-conditioned occupation expectations straight from the product
// weights (no linear solve), exact until the final division.
std::vector<double> product_occupation(const RateTable& rates, long long lo, int width, int total,
                                       long long c);

}  // namespace blockpart
