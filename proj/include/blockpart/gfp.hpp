#pragma once

#include "blockpart/series.hpp"
#include "blockpart/standup.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace blockpart {

// Two-row array with weakly decreasing nonnegative rows, each value repeated
// at most k_rep times per row. offset = top length - bottom length; the
// weight is top length + sum of both rows.
struct Gfp {
    int k_rep = 2;
    long long offset = 0;
    std::vector<long long> top;
    std::vector<long long> bottom;

    long long weight() const;
    bool valid() const;

    bool operator==(const Gfp& o) const {
        return k_rep == o.k_rep && offset == o.offset && top == o.top && bottom == o.bottom;
    }
    bool operator<(const Gfp& o) const {
        return std::tie(offset, top, bottom) < std::tie(o.offset, o.top, o.bottom);
    }
    std::string to_json() const;
};

// Number of values appearing exactly once in the top row plus the same for
// the bottom row; the value 0 counts as a part.
long long distinct_parts(const Gfp& g);

// All weight-n arrays with the given offset and repetition bound, in
// lexicographic (offset, top, bottom) order.
std::vector<Gfp> enumerate(long long n, long long offset, int k_rep);

// Generating series: coefficient of qt^n t^m counts weight-n arrays with m
// distinct parts, n <= order.
TruncatedSeries gf_enumerated(long long offset, int k_rep, long long order);

// Checkerboard-lattice diagram of an array: points (x, y) with x + y in a
// fixed residue class mod k_rep.
struct DiagramPoints {
    int k = 2;
    long long offset = 0;
    std::set<std::pair<long long, long long>> points;

    int lattice_class() const { return static_cast<int>(((-offset) % k + k) % k); }
    bool operator==(const DiagramPoints& o) const {
        return k == o.k && offset == o.offset && points == o.points;
    }
};

DiagramPoints to_diagram(const Gfp& g);
Gfp from_diagram(const DiagramPoints& d);  // rejects sets violating the reading rules

// Gap state -> array bijection of matching class: stack one wave per surplus
// unit, then apply the zero-column removals.
Gfp psi(const OmegaState& omega);

// Offset-shifting triangle bijection: offset gains k_rep * l, weight gains
// k_rep*l(l+1)/2 - m*l where m = class of the input offset. Requires
// -k_rep < offset <= 0.
Gfp phi(const Gfp& g, long long l);
Gfp phi_inverse(const Gfp& g, long long l);  // inverse of phi(., l)

// Classical one-row correspondence (k_rep = 1, offset 0) and its inverse.
Gfp frobenius(const std::vector<long long>& partition);
std::vector<long long> frobenius_inverse(const Gfp& g);

// Offset shift for classical arrays: phi specialised to k_rep = 1.
Gfp wright(const Gfp& g, long long kprime);

}  // namespace blockpart
