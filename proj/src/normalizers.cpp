#include "blockpart/normalizers.hpp"

#include <algorithm>
#include <stdexcept>

namespace blockpart {

namespace {

// Depth-first scan over positions 1..max_pos. A state deviates from the
// ground pattern (value 1 at positions = m mod k, else 0) at finitely many
// positions; its weight is sum of i*(value - ground) over positions i.
//
// Pruning invariant: once the prefix is complete the remaining choices can
// only add weight. Every ground zero at position j must be followed by a
// nonzero value strictly inside (j, j+k), else a k-run of zeros forms; those
// compensation windows are disjoint and each pair nets at least +1. While a
// zero is uncompensated ("pending") the eventual compensator sits at the
// current position or later and contributes at least that much.
struct Scan {
    int k;
    int m;
    long long order;
    long long max_pos;
    bool track_t;  // k = 2 stationary weights carry a t-exponent

    TruncatedSeries series;
    long long space = 0;
    std::vector<OmegaState>* collect = nullptr;
    std::vector<long long> vals;

    Scan(int k_, int m_, long long order_, long long max_pos_, bool track_t_)
        : k(k_), m(m_), order(order_), max_pos(max_pos_), track_t(track_t_), series(order_) {}

    void run() { rec(1, 0, 0, false, 0); }

    void rec(long long pos, long long w, long long texp, bool pending, int zrun) {
        if (w + (pending ? pos : 0) > order) return;
        if (pos > max_pos) {
            if (pending || zrun >= k) return;
            series.add_term({w, texp, 0}, 1);
            ++space;
            if (collect) {
                OmegaState s;
                s.k = k;
                s.m = m;
                s.vals = vals;
                s.canonicalize();
                collect->push_back(std::move(s));
            }
            return;
        }
        bool ground1 = ((pos % k) + k) % k == m;
        long long vmax = order / pos + 1;
        for (long long v = 0; v <= vmax; ++v) {
            long long nw = w + pos * (v - (ground1 ? 1 : 0));
            int nz = v == 0 ? zrun + 1 : 0;
            if (nz >= k) continue;
            long long nt = texp;
            if (track_t) {
                if (!ground1 && v >= 1) nt += 2;
                if (ground1 && v == 0) nt -= 2;
            }
            vals.push_back(v);
            rec(pos + 1, nw, nt, v == 0 ? (ground1 || pending) : false, nz);
            vals.pop_back();
        }
    }
};

NormalizerSeries build(int k, int m, long long order, bool track_t) {
    if (order < 0) throw std::invalid_argument("normalizer: negative order");
    // cheapest deep deviation: a chain of ground zeros each followed by a
    // unit compensator, one unit of weight per k levels of depth
    long long d0 = static_cast<long long>(k) * (order + 2) + 2;
    Scan first(k, m, order, d0, track_t);
    first.run();
    Scan deeper(k, m, order, d0 + k + 1, track_t);
    deeper.run();
    NormalizerSeries out;
    out.series = first.series;
    out.space = first.space;
    out.depth_used = d0;
    out.stabilized = first.series == deeper.series && first.space == deeper.space;
    return out;
}

}  // namespace

NormalizerSeries s_even(long long order) { return build(2, 0, order, true); }

NormalizerSeries s_odd(long long order) { return build(2, 1, order, true); }

NormalizerSeries s_k(int k, int m, long long order) {
    if (k < 1 || m < 0 || m >= k) throw std::invalid_argument("s_k: bad class");
    return build(k, m, order, false);
}

std::vector<OmegaState> enumerate_gap_states(int k, int m, long long max_weight) {
    if (k < 1 || m < 0 || m >= k) throw std::invalid_argument("enumerate_gap_states: bad class");
    Scan scan(k, m, max_weight, static_cast<long long>(k) * (max_weight + 2) + 2, false);
    std::vector<OmegaState> out;
    scan.collect = &out;
    scan.run();
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace blockpart
