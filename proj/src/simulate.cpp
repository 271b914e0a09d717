#include "blockpart/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace blockpart {

namespace {

BlockingParams params_for(const RateTable& rates) {
    if (rates.k == 2 && validate(rates).accepted) return derive_params(rates);
    if (validate_k_exclusion(rates).accepted) return derive_k_exclusion_params(rates);
    throw std::invalid_argument("simulate: rate table fits no calibrated family");
}

// w_i(z) = (p/q)^{(i-c)z} / f(z)!, exact in Q(sqrt(t^2)).
QuadExt site_weight(const BlockingParams& pa, long long i, int z, long long c) {
    QuadExt w = QuadExt::from_rat(pow_rat(pa.qtilde, -(i - c) * z), pa.t_squared);
    for (int j = 1; j <= z; ++j) w = w / pa.f[static_cast<size_t>(j)];
    return w;
}

// Stationary weight of a stood-up state relative to its class ground state.
// Ground positions (value 1 in the ground pattern) pay qtilde^{i(v-1)} and,
// for k = 2, t^{-2} when emptied; the others pay qtilde^{iv} and t^{+2} when
// occupied. Positions past the deviation window contribute 1.
Rat omega_weight(const BlockingParams& pa, const OmegaState& w) {
    Rat out = 1;
    for (long long i = 1; i <= w.depth(); ++i) {
        long long v = w.value_at(i);
        if (w.ground_at(i)) {
            out *= pow_rat(pa.qtilde, i * (v - 1));
            if (pa.k == 2 && v == 0) out /= pa.t_squared;
        } else {
            out *= pow_rat(pa.qtilde, i * v);
            if (pa.k == 2 && v >= 1) out *= pa.t_squared;
        }
    }
    return out;
}

std::string occ_str(const std::vector<int>& s) {
    std::ostringstream os;
    os << "(";
    for (size_t j = 0; j < s.size(); ++j) os << (j ? "," : "") << s[j];
    os << ")";
    return os.str();
}

void enumerate_sector(int k, int width, int total, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
    int pos = static_cast<int>(cur.size());
    if (pos == width) {
        if (total == 0) out.push_back(cur);
        return;
    }
    int rest = width - pos - 1;
    for (int v = std::max(0, total - rest * k); v <= std::min(k, total); ++v) {
        cur.push_back(v);
        enumerate_sector(k, width, total - v, cur, out);
        cur.pop_back();
    }
}

}  // namespace

BalanceReport lattice_detailed_balance(const RateTable& rates, long long c, long long site_range) {
    return lattice_detailed_balance(rates, params_for(rates), c, site_range);
}

BalanceReport lattice_detailed_balance(const RateTable& rates, const BlockingParams& pa,
                                       long long c, long long site_range) {
    BalanceReport rep;
    for (long long i = -site_range; i < site_range; ++i) {
        for (int y = 1; y <= rates.k; ++y) {
            for (int z = 0; z < rates.k; ++z) {
                QuadExt lhs = QuadExt::from_rat(rates.pr(y, z), pa.t_squared) *
                              site_weight(pa, i, y, c) * site_weight(pa, i + 1, z, c);
                QuadExt rhs = QuadExt::from_rat(rates.ql(y - 1, z + 1), pa.t_squared) *
                              site_weight(pa, i, y - 1, c) * site_weight(pa, i + 1, z + 1, c);
                ++rep.edges;
                if (!(lhs == rhs)) {
                    std::ostringstream os;
                    os << "edge i=" << i << " (" << y << "," << z << ")->(" << y - 1 << ","
                       << z + 1 << "): " << lhs.str() << " != " << rhs.str();
                    rep.failure = os.str();
                    return rep;
                }
            }
        }
    }
    rep.reversible = true;
    return rep;
}

BalanceReport stood_up_detailed_balance(const RateTable& rates,
                                        const std::vector<OmegaState>& states) {
    BlockingParams pa = params_for(rates);
    BalanceReport rep;
    for (const OmegaState& w : states) {
        Rat ww = omega_weight(pa, w);
        // aggregate parallel events onto their target state
        std::map<OmegaState, Rat> out;
        for (const auto& [ev, w2] : omega_jumps(w, rates)) out[w2] += ev.rate;
        for (const auto& [w2, rate] : out) {
            Rat back = 0;
            for (const auto& [ev2, w3] : omega_jumps(w2, rates))
                if (w3 == w) back += ev2.rate;
            ++rep.edges;
            if (ww * rate != omega_weight(pa, w2) * back) {
                rep.failure = "edge " + w.to_json() + " -> " + w2.to_json() + ": " +
                              rational_to_string(ww * rate) + " != " +
                              rational_to_string(omega_weight(pa, w2) * back);
                return rep;
            }
        }
    }
    rep.reversible = true;
    return rep;
}

SectorStationary exact_stationary(const RateTable& rates, long long lo, int width, int total,
                                  long long c) {
    if (width < 2 || total < 0 || total > width * rates.k)
        throw std::invalid_argument("exact_stationary: bad window");
    BlockingParams pa = params_for(rates);
    SectorStationary st;
    std::vector<int> cur;
    enumerate_sector(rates.k, width, total, cur, st.states);
    size_t n = st.states.size();
    std::map<std::vector<int>, size_t> index;
    for (size_t s = 0; s < n; ++s) index[st.states[s]] = s;

    // global balance rows, last row replaced by normalization
    std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(n + 1, Rat(0)));
    for (size_t s = 0; s < n; ++s) {
        const std::vector<int>& v = st.states[s];
        for (int j = 0; j + 1 < width; ++j) {
            int y = v[static_cast<size_t>(j)], z = v[static_cast<size_t>(j + 1)];
            if (y >= 1 && z <= rates.k - 1 && rates.pr(y, z) > 0) {
                std::vector<int> w = v;
                --w[static_cast<size_t>(j)];
                ++w[static_cast<size_t>(j + 1)];
                aug[index.at(w)][s] += rates.pr(y, z);
                aug[s][s] -= rates.pr(y, z);
            }
            if (z >= 1 && y <= rates.k - 1 && rates.ql(y, z) > 0) {
                std::vector<int> w = v;
                ++w[static_cast<size_t>(j)];
                --w[static_cast<size_t>(j + 1)];
                aug[index.at(w)][s] += rates.ql(y, z);
                aug[s][s] -= rates.ql(y, z);
            }
        }
    }
    for (size_t s = 0; s < n; ++s) aug[n - 1][s] = 1;
    aug[n - 1][n] = 1;

    // exact Gaussian elimination with partial (first nonzero) pivoting
    for (size_t col = 0, row = 0; col < n && row < n; ++col) {
        size_t piv = row;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(aug[piv], aug[row]);
        for (size_t r = 0; r < n; ++r) {
            if (r == row || aug[r][col] == 0) continue;
            Rat m = aug[r][col] / aug[row][col];
            for (size_t cc = col; cc <= n; ++cc) aug[r][cc] -= m * aug[row][cc];
        }
        ++row;
    }
    st.probability.assign(n, Rat(0));
    for (size_t r = 0; r < n; ++r) {
        size_t lead = 0;
        while (lead < n && aug[r][lead] == 0) ++lead;
        if (lead < n) st.probability[lead] = aug[r][n] / aug[r][lead];
    }

    // compare with the product weights through exact ratios to a base state
    std::vector<QuadExt> wts(n);
    for (size_t s = 0; s < n; ++s) {
        QuadExt w = QuadExt::from_rat(Rat(1), pa.t_squared);
        for (int j = 0; j < width; ++j)
            w = w * site_weight(pa, lo + j, st.states[s][static_cast<size_t>(j)], c);
        wts[s] = w;
    }
    st.matches_product_measure = true;
    for (size_t s = 0; s < n; ++s) {
        QuadExt ratio = wts[s] / wts[0];
        if (!(ratio.b == 0)) {
            st.matches_product_measure = false;
            st.failure = "irrational weight ratio at " + occ_str(st.states[s]);
            break;
        }
        if (st.probability[s] != ratio.a * st.probability[0]) {
            st.matches_product_measure = false;
            st.failure = "state " + occ_str(st.states[s]) + ": solved " +
                         rational_to_string(st.probability[s]) + ", product ratio " +
                         rational_to_string(ratio.a);
            break;
        }
    }
    return st;
}

std::vector<double> expected_occupation(const SectorStationary& st) {
    if (st.states.empty()) return {};
    size_t width = st.states[0].size();
    std::vector<Rat> acc(width, Rat(0));
    for (size_t s = 0; s < st.states.size(); ++s)
        for (size_t j = 0; j < width; ++j) acc[j] += st.probability[s] * st.states[s][j];
    std::vector<double> out(width);
    for (size_t j = 0; j < width; ++j) out[j] = static_cast<double>(acc[j]);
    return out;
}

std::vector<double> product_occupation(const RateTable& rates, long long lo, int width, int total,
                                       long long c) {
    BlockingParams pa = params_for(rates);
    std::vector<std::vector<int>> states;
    std::vector<int> cur;
    enumerate_sector(rates.k, width, total, cur, states);
    QuadExt den = QuadExt::from_rat(Rat(0), pa.t_squared);
    std::vector<QuadExt> num(static_cast<size_t>(width), den);
    for (const std::vector<int>& v : states) {
        QuadExt w = QuadExt::from_rat(Rat(1), pa.t_squared);
        for (int j = 0; j < width; ++j)
            w = w * site_weight(pa, lo + j, v[static_cast<size_t>(j)], c);
        den = den + w;
        for (int j = 0; j < width; ++j)
            num[static_cast<size_t>(j)] =
                num[static_cast<size_t>(j)] + w * QuadExt::from_rat(Rat(v[static_cast<size_t>(j)]), pa.t_squared);
    }
    std::vector<double> out(static_cast<size_t>(width));
    for (int j = 0; j < width; ++j)
        out[static_cast<size_t>(j)] = (num[static_cast<size_t>(j)] / den).to_double();
    return out;
}

SimulationResult simulate_window(const RateTable& rates, long long /*lo*/, int width, int total,
                                 std::uint64_t seed, long long max_jumps, int batches) {
    if (width < 2 || batches < 2) throw std::invalid_argument("simulate_window: bad arguments");
    std::vector<std::vector<double>> pd(static_cast<size_t>(rates.k + 1),
                                        std::vector<double>(static_cast<size_t>(rates.k + 1)));
    auto qd = pd;
    for (int y = 0; y <= rates.k; ++y)
        for (int z = 0; z <= rates.k; ++z) {
            pd[static_cast<size_t>(y)][static_cast<size_t>(z)] = static_cast<double>(rates.pr(y, z));
            qd[static_cast<size_t>(y)][static_cast<size_t>(z)] = static_cast<double>(rates.ql(y, z));
        }

    // start from the left-packed sector state
    std::vector<int> s(static_cast<size_t>(width), 0);
    int rem = total;
    for (int j = 0; j < width && rem > 0; ++j) {
        s[static_cast<size_t>(j)] = std::min(rem, rates.k);
        rem -= s[static_cast<size_t>(j)];
    }
    if (rem > 0) throw std::invalid_argument("simulate_window: sector overfull");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    SimulationResult res;
    res.site_mean.assign(static_cast<size_t>(width), 0.0);
    res.site_sigma.assign(static_cast<size_t>(width), 0.0);
    std::vector<std::vector<double>> batch_mean(static_cast<size_t>(batches),
                                                std::vector<double>(static_cast<size_t>(width), 0.0));
    long long per_batch = max_jumps / batches;
    if (per_batch < 1) throw std::invalid_argument("simulate_window: too few jumps per batch");

    struct Move {
        int j;
        int dir;  // +1 right jump, -1 left jump
        double rate;
    };
    std::vector<Move> moves;
    for (int b = 0; b < batches; ++b) {
        std::vector<double> acc(static_cast<size_t>(width), 0.0);
        double bt = 0.0;
        for (long long step = 0; step < per_batch; ++step) {
            moves.clear();
            double tot = 0.0;
            for (int j = 0; j + 1 < width; ++j) {
                int y = s[static_cast<size_t>(j)], z = s[static_cast<size_t>(j + 1)];
                double r = pd[static_cast<size_t>(y)][static_cast<size_t>(z)];
                if (y >= 1 && z <= rates.k - 1 && r > 0) {
                    moves.push_back({j, +1, r});
                    tot += r;
                }
                r = qd[static_cast<size_t>(y)][static_cast<size_t>(z)];
                if (z >= 1 && y <= rates.k - 1 && r > 0) {
                    moves.push_back({j, -1, r});
                    tot += r;
                }
            }
            if (moves.empty()) {
                // frozen configuration: the sector is a single state
                for (int j = 0; j < width; ++j)
                    res.site_mean[static_cast<size_t>(j)] = s[static_cast<size_t>(j)];
                res.jumps = b * per_batch + step;
                return res;
            }
            double dt = -std::log(1.0 - unif(rng)) / tot;
            for (int j = 0; j < width; ++j) acc[static_cast<size_t>(j)] += s[static_cast<size_t>(j)] * dt;
            bt += dt;
            double pick = unif(rng) * tot;
            size_t e = 0;
            for (; e + 1 < moves.size(); ++e) {
                pick -= moves[e].rate;
                if (pick <= 0) break;
            }
            s[static_cast<size_t>(moves[e].j)] -= moves[e].dir;
            s[static_cast<size_t>(moves[e].j + 1)] += moves[e].dir;
        }
        for (int j = 0; j < width; ++j) batch_mean[static_cast<size_t>(b)][static_cast<size_t>(j)] = acc[static_cast<size_t>(j)] / bt;
        res.total_time += bt;
        res.jumps += per_batch;
    }
    for (int j = 0; j < width; ++j) {
        double m = 0.0;
        for (int b = 0; b < batches; ++b) m += batch_mean[static_cast<size_t>(b)][static_cast<size_t>(j)];
        m /= batches;
        double var = 0.0;
        for (int b = 0; b < batches; ++b) {
            double d = batch_mean[static_cast<size_t>(b)][static_cast<size_t>(j)] - m;
            var += d * d;
        }
        res.site_mean[static_cast<size_t>(j)] = m;
        res.site_sigma[static_cast<size_t>(j)] = std::sqrt(var / (batches * (batches - 1.0)));
    }
    return res;
}

}  // namespace blockpart
