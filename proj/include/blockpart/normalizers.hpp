#pragma once

#include "blockpart/series.hpp"
#include "blockpart/standup.hpp"

#include <vector>

namespace blockpart {

// Generating series of a class of gap states, graded by relative stationary
// weight. series carries q-degree dq = weight and, for the k = 2 families,
// dt = t-exponent of the state weight.
struct NormalizerSeries {
    TruncatedSeries series{0};
    long long space = 0;       // number of states of weight <= order
    long long depth_used = 0;  // explicit positions scanned by the search
    bool stabilized = false;   // a deeper re-run produced the same series
};

// k = 2, class 0: sum over gap states of q^weight t^texp, weight <= order.
NormalizerSeries s_even(long long order);

// k = 2, class 1, without the overall factor of t carried by the class.
NormalizerSeries s_odd(long long order);

// Exclusion family: class-m gap states of the k-exclusion process, graded by
// weight only.
NormalizerSeries s_k(int k, int m, long long order);

// The class-m gap states of weight <= max_weight, canonical form, sorted.
std::vector<OmegaState> enumerate_gap_states(int k, int m, long long max_weight);

}  // namespace blockpart
