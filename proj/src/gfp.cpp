#include "blockpart/gfp.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace blockpart {

long long Gfp::weight() const {
    long long n = static_cast<long long>(top.size());
    for (long long v : top) n += v;
    for (long long v : bottom) n += v;
    return n;
}

namespace {

bool row_valid(const std::vector<long long>& row, int k_rep) {
    long long run = 0;
    for (size_t i = 0; i < row.size(); ++i) {
        if (row[i] < 0) return false;
        if (i > 0 && row[i] > row[i - 1]) return false;
        run = (i > 0 && row[i] == row[i - 1]) ? run + 1 : 1;
        if (run > k_rep) return false;
    }
    return true;
}

}  // namespace

bool Gfp::valid() const {
    if (static_cast<long long>(top.size()) - static_cast<long long>(bottom.size()) != offset) return false;
    return row_valid(top, k_rep) && row_valid(bottom, k_rep);
}

std::string Gfp::to_json() const {
    nlohmann::json j;
    j["offset"] = offset;
    j["top"] = top;
    j["bottom"] = bottom;
    return j.dump();
}

long long distinct_parts(const Gfp& g) {
    long long m = 0;
    for (const auto* row : {&g.top, &g.bottom}) {
        std::map<long long, int> mult;
        for (long long v : *row) ++mult[v];
        for (const auto& [v, c] : mult)
            if (c == 1) ++m;
    }
    return m;
}

namespace {

// All weakly decreasing rows of given length with first value <= cap, each
// value at most k_rep times, and given sum.
void gen_rows(long long len, long long cap, long long sum, int k_rep, std::vector<long long>& cur,
              std::vector<std::vector<long long>>& out) {
    if (len == 0) {
        if (sum == 0) out.push_back(cur);
        return;
    }
    // remaining sum is at most len * cap; prune impossible branches
    for (long long v = std::min(cap, sum); v >= 0; --v) {
        long long reps = std::min<long long>(k_rep, len);
        // take r copies of v then recurse with cap v-1
        long long taken = 0;
        for (long long r = 1; r <= reps; ++r) {
            taken += v;
            if (taken > sum) break;
            for (long long i = 0; i < r; ++i) cur.push_back(v);
            if (v == 0) {
                if (len == r && taken == sum) out.push_back(cur);
            } else {
                gen_rows(len - r, v - 1, sum - taken, k_rep, cur, out);
            }
            for (long long i = 0; i < r; ++i) cur.pop_back();
        }
    }
}

std::vector<std::vector<long long>> rows_of(long long len, long long sum, int k_rep) {
    std::vector<std::vector<long long>> out;
    if (len == 0) {
        if (sum == 0) out.push_back({});
        return out;
    }
    std::vector<long long> cur;
    gen_rows(len, sum, sum, k_rep, cur, out);
    return out;
}

}  // namespace

std::vector<Gfp> enumerate(long long n, long long offset, int k_rep) {
    std::vector<Gfp> out;
    if (n < 0) return out;
    for (long long s1 = 0; s1 <= n + std::max<long long>(0, -offset); ++s1) {
        long long s2 = s1 - offset;
        if (s2 < 0) continue;
        long long budget = n - s1;
        if (budget < 0) break;
        // minimal achievable row sums grow quadratically; stop once both
        // rows cannot fit in the budget
        auto min_sum = [&](long long len) {
            long long s = 0, v = 0, left = len;
            while (left > 0) {
                long long take = std::min<long long>(k_rep, left);
                s += v * take;
                left -= take;
                ++v;
            }
            return s;
        };
        if (min_sum(s1) + min_sum(s2) > budget) {
            if (offset >= 0 || s2 > 0) {
                if (s1 > n) break;
                continue;
            }
            continue;
        }
        for (long long top_sum = 0; top_sum <= budget; ++top_sum) {
            auto tops = rows_of(s1, top_sum, k_rep);
            if (tops.empty()) continue;
            auto bottoms = rows_of(s2, budget - top_sum, k_rep);
            if (bottoms.empty()) continue;
            for (const auto& t : tops)
                for (const auto& b : bottoms) {
                    Gfp g;
                    g.k_rep = k_rep;
                    g.offset = offset;
                    g.top = t;
                    g.bottom = b;
                    out.push_back(std::move(g));
                }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

TruncatedSeries gf_enumerated(long long offset, int k_rep, long long order) {
    TruncatedSeries s(order);
    for (long long n = 0; n <= order; ++n)
        for (const Gfp& g : enumerate(n, offset, k_rep)) s.add_term({n, distinct_parts(g), 0}, 1);
    return s;
}

DiagramPoints to_diagram(const Gfp& g) {
    if (!g.valid()) throw std::invalid_argument("to_diagram: malformed array");
    DiagramPoints d;
    d.k = g.k_rep;
    d.offset = g.offset;
    long long mp = -g.offset;  // bottom surplus; phantom anchors for 1 <= i <= mp
    long long s1 = static_cast<long long>(g.top.size());
    long long s2 = static_cast<long long>(g.bottom.size());
    for (long long j = 1; j <= s1; ++j) d.points.insert({mp + j, -j});
    for (long long i = 1; i <= s1; ++i)
        for (long long h = 1; h <= g.top[static_cast<size_t>(i - 1)]; ++h)
            d.points.insert({mp + i + h * g.k_rep, -i});
    for (long long i = 1; i <= s2; ++i)
        for (long long h = 1; h <= g.bottom[static_cast<size_t>(i - 1)]; ++h)
            d.points.insert({i, mp - i - h * g.k_rep});
    if (static_cast<long long>(d.points.size()) != g.weight())
        throw std::logic_error("to_diagram: weight does not match the point count");
    return d;
}

Gfp from_diagram(const DiagramPoints& d) {
    long long mp = -d.offset;
    auto has = [&](long long x, long long y) { return d.points.count({x, y}) != 0; };
    Gfp g;
    g.k_rep = d.k;
    g.offset = d.offset;
    long long s1 = 0;
    while (has(mp + s1 + 1, -(s1 + 1))) ++s1;
    long long s2 = s1 + mp;
    if (s2 < 0) throw std::invalid_argument("from_diagram: inconsistent diagonal");
    for (long long i = 1; i <= s1; ++i) {
        long long a = 0;
        while (has(mp + i + (a + 1) * d.k, -i)) ++a;
        g.top.push_back(a);
    }
    for (long long i = 1; i <= s2; ++i) {
        long long b = 0;
        while (has(i, mp - i - (b + 1) * d.k)) ++b;
        g.bottom.push_back(b);
    }
    if (!g.valid()) throw std::invalid_argument("from_diagram: reading rules violated");
    if (!(to_diagram(g) == d)) throw std::invalid_argument("from_diagram: stray or missing points");
    return g;
}

Gfp psi(const OmegaState& omega) {
    int k = omega.k, m = omega.m;
    // wave of length r: column x has depth 1 + ((x - m - 1) mod k)
    auto wave_depth = [&](long long x) { return 1 + ((x - m - 1) % k + k) % k; };
    std::vector<long long> lengths;  // one entry per stacked wave copy
    for (long long i = 1; i <= omega.depth(); ++i) {
        long long copies = omega.value_at(i) - omega.ground_at(i);
        for (long long c = 0; c < copies; ++c) lengths.push_back(i);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    std::map<long long, std::vector<long long>> columns;  // x -> y values, for removals
    for (size_t c = 0; c < lengths.size(); ++c)
        for (long long x = 1; x <= lengths[c]; ++x)
            columns[x].push_back(-(static_cast<long long>(c) * k + wave_depth(x)));
    for (long long i = 1; i <= omega.depth(); ++i)
        if (omega.ground_at(i) == 1 && omega.value_at(i) == 0)
            for (long long x = 1; x <= i; ++x) {
                auto& col = columns[x];
                if (col.empty()) throw std::logic_error("psi: removal from an empty column");
                col.pop_back();  // columns are filled top to bottom, so the back is the lowest point
            }
    DiagramPoints d;
    d.k = k;
    d.offset = -m;
    for (const auto& [x, ys] : columns)
        for (long long y : ys) d.points.insert({x, y});
    return from_diagram(d);
}

Gfp phi(const Gfp& g, long long l) {
    int k = g.k_rep;
    if (!(g.offset <= 0 && g.offset > -k)) throw std::invalid_argument("phi: offset must be in (-k, 0]");
    long long m = -g.offset;
    DiagramPoints d = to_diagram(g);
    long long mp_new = m - k * l;
    DiagramPoints nd;
    nd.k = k;
    nd.offset = -mp_new;  // = k*l - m
    nd.points = d.points;
    int cls = d.lattice_class();
    if (l >= 0) {
        // left wedge between the old and new diagonals
        for (long long j = 1; j <= -mp_new; ++j)
            for (long long x = mp_new + j; x <= 0; ++x)
                if (((x - j) % k + k) % k == cls) nd.points.insert({x, -j});
    } else {
        // top triangle above the first row
        for (long long x = 1; x <= mp_new - k; ++x)
            for (long long y = 0; x + y <= mp_new - k; ++y)
                if (((x + y) % k + k) % k == cls) nd.points.insert({x, y});
    }
    return from_diagram(nd);
}

Gfp phi_inverse(const Gfp& g, long long l) {
    int k = g.k_rep;
    long long mp_new = -g.offset;
    long long m = mp_new + k * l;  // original bottom surplus
    if (!(m >= 0 && m < k)) throw std::invalid_argument("phi_inverse: class bookkeeping failed");
    DiagramPoints d = to_diagram(g);
    DiagramPoints nd;
    nd.k = k;
    nd.offset = -m;
    nd.points = d.points;
    int cls = nd.lattice_class();
    if (l >= 0) {
        for (long long j = 1; j <= -mp_new; ++j)
            for (long long x = mp_new + j; x <= 0; ++x)
                if (((x - j) % k + k) % k == cls) nd.points.erase({x, -j});
    } else {
        for (long long x = 1; x <= mp_new - k; ++x)
            for (long long y = 0; x + y <= mp_new - k; ++y)
                if (((x + y) % k + k) % k == cls) nd.points.erase({x, y});
    }
    return from_diagram(nd);
}

Gfp frobenius(const std::vector<long long>& partition) {
    if (!std::is_sorted(partition.rbegin(), partition.rend()))
        throw std::invalid_argument("frobenius: parts must be weakly decreasing");
    Gfp g;
    g.k_rep = 1;
    g.offset = 0;
    auto conj = [&](long long col) {
        long long c = 0;
        for (long long p : partition)
            if (p >= col) ++c;
        return c;
    };
    for (long long i = 1; i <= static_cast<long long>(partition.size()); ++i) {
        if (partition[static_cast<size_t>(i - 1)] < i) break;  // past the Durfee square
        g.top.push_back(partition[static_cast<size_t>(i - 1)] - i);
        g.bottom.push_back(conj(i) - i);
    }
    return g;
}

std::vector<long long> frobenius_inverse(const Gfp& g) {
    if (g.k_rep != 1 || g.offset != 0) throw std::invalid_argument("frobenius_inverse: needs a classical array");
    long long d = static_cast<long long>(g.top.size());
    std::vector<long long> out;
    for (long long i = 1; i <= d; ++i) out.push_back(g.top[static_cast<size_t>(i - 1)] + i);
    // rows below the Durfee square from the column data
    for (long long row = d + 1;; ++row) {
        long long len = 0;
        for (long long j = 1; j <= d; ++j)
            if (g.bottom[static_cast<size_t>(j - 1)] + j >= row) ++len;
        if (len == 0) break;
        out.push_back(len);
    }
    return out;
}

Gfp wright(const Gfp& g, long long kprime) {
    if (g.k_rep != 1) throw std::invalid_argument("wright: needs repetition bound 1");
    return phi(g, kprime);
}

}  // namespace blockpart
