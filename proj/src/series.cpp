#include "blockpart/series.hpp"

#include <algorithm>
#include <sstream>

namespace blockpart {

void TruncatedSeries::add_term(const Monomial& m, const Int& c) {
    if (m.dq < 0 || m.dt < 0) throw std::invalid_argument("Monomial: negative dq or dt");
    if (m.dq > order_ || c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Int TruncatedSeries::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
}

TruncatedSeries TruncatedSeries::coeff_z(long long k) const {
    TruncatedSeries out(order_);
    for (const auto& [m, c] : terms_)
        if (m.dz == k) out.add_term({m.dq, m.dt, 0}, c);
    return out;
}

TruncatedSeries TruncatedSeries::shifted(long long ddq, long long ddt, long long ddz, const Int& c) const {
    TruncatedSeries out(order_);
    for (const auto& [m, co] : terms_) {
        long long dq = m.dq + ddq, dt = m.dt + ddt;
        if (dq < 0 || dt < 0) throw std::domain_error("shifted: exponent went negative");
        out.add_term({dq, dt, m.dz + ddz}, co * c);
    }
    return out;
}

TruncatedSeries TruncatedSeries::truncated(long long new_order) const {
    TruncatedSeries out(new_order);
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    return out;
}

std::string TruncatedSeries::to_json() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << ",";
        first = false;
        os << "{\"dq\":" << m.dq << ",\"dt\":" << m.dt << ",\"dz\":" << m.dz
           << ",\"coeff\":\"" << c.str() << "\"}";
    }
    os << "]";
    return os.str();
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.order(), b.order()));
    for (const auto& [m, c] : a.terms()) out.add_term(m, c);
    for (const auto& [m, c] : b.terms()) out.add_term(m, c);
    return out;
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.order(), b.order()));
    for (const auto& [m, c] : a.terms()) out.add_term(m, c);
    for (const auto& [m, c] : b.terms()) out.add_term(m, -c);
    return out;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.order(), b.order()));
    for (const auto& [ma, ca] : a.terms()) {
        if (ma.dq > out.order()) continue;
        for (const auto& [mb, cb] : b.terms()) {
            long long dq = ma.dq + mb.dq;
            if (dq > out.order()) continue;
            out.add_term({dq, ma.dt + mb.dt, ma.dz + mb.dz}, ca * cb);
        }
    }
    return out;
}

TruncatedSeries product_rhs(const FactorSpec& family, long long order) {
    // Factors beyond index order+1 may only contribute above the truncation
    // order. Spot-check the degree-growth contract on a band of later indices
    // so divergent factor families are rejected up front.
    for (long long i = order + 2; i <= order + 7; ++i) {
        for (const auto& [m, c] : family.factor(i)) {
            if (c == 0) continue;
            bool constant = m.dq == 0 && m.dt == 0 && m.dz == 0;
            if (constant) {
                if (c != 1)
                    throw std::invalid_argument("product_rhs: factor " + std::to_string(i) +
                                                " of family '" + family.name + "' has constant term != 1");
            } else if (m.dq < i - 1) {
                throw std::invalid_argument("product_rhs: factor " + std::to_string(i) + " of family '" +
                                            family.name + "' violates the degree-growth bound");
            }
        }
    }
    TruncatedSeries acc = TruncatedSeries::constant(order, 1);
    for (long long i = 1; i <= order + 1; ++i) {
        TruncatedSeries f(order);
        for (const auto& [m, c] : family.factor(i)) f.add_term(m, c);
        acc = mul(acc, f);
    }
    return acc;
}

LaurentQSeries LaurentQSeries::monomial(long long e, Int c) {
    LaurentQSeries s;
    if (c == 0) return s;
    s.lo = e;
    s.coeffs.push_back(std::move(c));
    return s;
}

Int LaurentQSeries::coeff(long long e) const {
    if (e < lo || e > hi()) return 0;
    return coeffs[static_cast<size_t>(e - lo)];
}

void LaurentQSeries::add_coeff(long long e, const Int& c) {
    if (c == 0) return;
    if (coeffs.empty()) {
        lo = e;
        coeffs.push_back(c);
        return;
    }
    if (e < lo) {
        coeffs.insert(coeffs.begin(), static_cast<size_t>(lo - e), Int(0));
        lo = e;
    } else if (e > hi()) {
        coeffs.resize(static_cast<size_t>(e - lo + 1), Int(0));
    }
    coeffs[static_cast<size_t>(e - lo)] += c;
}

void LaurentQSeries::canonicalize() {
    size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
    if (lead == coeffs.size()) {
        lo = 0;
        coeffs.clear();
        return;
    }
    size_t tail = coeffs.size();
    while (tail > lead && coeffs[tail - 1] == 0) --tail;
    coeffs = std::vector<Int>(coeffs.begin() + static_cast<long>(lead), coeffs.begin() + static_cast<long>(tail));
    lo += static_cast<long long>(lead);
}

std::string LaurentQSeries::to_csv() const {
    std::ostringstream os;
    os << "exponent,coefficient\n";
    for (size_t j = 0; j < coeffs.size(); ++j)
        os << (lo + static_cast<long long>(j)) << "," << coeffs[j].str() << "\n";
    return os.str();
}

LaurentQSeries add(const LaurentQSeries& a, const LaurentQSeries& b) {
    LaurentQSeries out = a;
    for (size_t j = 0; j < b.coeffs.size(); ++j)
        out.add_coeff(b.lo + static_cast<long long>(j), b.coeffs[j]);
    out.canonicalize();
    return out;
}

LaurentQSeries sub(const LaurentQSeries& a, const LaurentQSeries& b) {
    LaurentQSeries out = a;
    for (size_t j = 0; j < b.coeffs.size(); ++j)
        out.add_coeff(b.lo + static_cast<long long>(j), -b.coeffs[j]);
    out.canonicalize();
    return out;
}

LaurentQSeries mul(const LaurentQSeries& a, const LaurentQSeries& b, long long trunc_hi) {
    LaurentQSeries out;
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        long long ea = a.lo + static_cast<long long>(i);
        for (size_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            long long e = ea + b.lo + static_cast<long long>(j);
            if (e > trunc_hi) continue;
            out.add_coeff(e, a.coeffs[i] * b.coeffs[j]);
        }
    }
    out.canonicalize();
    return out;
}

LaurentQSeries truncate(const LaurentQSeries& a, long long trunc_hi) {
    LaurentQSeries out;
    for (size_t j = 0; j < a.coeffs.size(); ++j) {
        long long e = a.lo + static_cast<long long>(j);
        if (e <= trunc_hi) out.add_coeff(e, a.coeffs[j]);
    }
    out.canonicalize();
    return out;
}

LaurentQSeries pow(const LaurentQSeries& a, long long e, long long trunc_hi) {
    if (e < 0) throw std::invalid_argument("pow: negative exponent");
    LaurentQSeries acc = LaurentQSeries::monomial(0, 1);
    for (long long j = 0; j < e; ++j) acc = mul(acc, a, trunc_hi);
    return acc;
}

namespace {

// Smallest q-exponent a monomial (dq, dt) can reach under the substitution.
long long min_exponent(long long alpha, long long t_lo, long long dq, long long dt) {
    return alpha * dq + (t_lo < 0 ? t_lo * dt : 0);
}

void check_substitution(const TruncatedSeries& a, long long alpha, const LaurentQSeries& t_poly,
                        long long t_bound_b, long long target_order) {
    if (alpha <= 0) throw std::invalid_argument("substitute: alpha must be positive");
    if (t_poly.is_zero()) throw std::invalid_argument("substitute: zero t image");
    long long t_lo = t_poly.lo;
    // Discarded terms have dq >= order+1 and dt <= B*dq + 1; they must not be
    // able to reach target_order.
    long long dq0 = a.order() + 1;
    long long reach = alpha * dq0 + (t_lo < 0 ? t_lo * (t_bound_b * dq0 + 1) : 0);
    if (reach <= target_order)
        throw std::domain_error("substitute: series order too small for requested target order");
    for (const auto& [m, c] : a.terms()) {
        if (m.dt > t_bound_b * m.dq + 1)
            throw std::domain_error("substitute: monomial violates the declared dt bound");
    }
}

}  // namespace

std::map<long long, LaurentQSeries> substitute_z(const TruncatedSeries& a, long long alpha,
                                                 const LaurentQSeries& t_poly, long long t_bound_b,
                                                 long long target_order) {
    check_substitution(a, alpha, t_poly, t_bound_b, target_order);
    std::map<long long, LaurentQSeries> tpows;  // dt -> t_poly^dt truncated
    tpows[0] = LaurentQSeries::monomial(0, 1);
    std::map<long long, LaurentQSeries> out;
    for (const auto& [m, c] : a.terms()) {
        long long need = m.dt;
        for (long long d = 1; d <= need; ++d)
            if (!tpows.count(d)) tpows[d] = mul(tpows[d - 1], t_poly, target_order);
        const LaurentQSeries& tp = tpows[need];
        auto& slot = out[m.dz];
        for (size_t j = 0; j < tp.coeffs.size(); ++j) {
            long long e = alpha * m.dq + tp.lo + static_cast<long long>(j);
            if (e <= target_order) slot.add_coeff(e, c * tp.coeffs[j]);
        }
    }
    for (auto& [dz, s] : out) s.canonicalize();
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

LaurentQSeries substitute(const TruncatedSeries& a, long long alpha, const LaurentQSeries& t_poly,
                          long long t_bound_b, long long target_order) {
    for (const auto& [m, c] : a.terms())
        if (m.dz != 0) throw std::invalid_argument("substitute: series must be z-free");
    auto slices = substitute_z(a, alpha, t_poly, t_bound_b, target_order);
    if (slices.empty()) return LaurentQSeries::zero();
    return slices.begin()->second;
}

LaurentQSeries q_product(const std::function<LaurentQSeries(long long)>& factors, long long target_order) {
    LaurentQSeries acc = LaurentQSeries::monomial(0, 1);
    for (long long i = 1; i <= target_order + 1; ++i) acc = mul(acc, factors(i), target_order);
    for (long long i = target_order + 2; i <= target_order + 5; ++i) {
        LaurentQSeries f = factors(i);
        for (size_t j = 0; j < f.coeffs.size(); ++j) {
            long long e = f.lo + static_cast<long long>(j);
            if (f.coeffs[j] == 0) continue;
            if (e == 0) {
                if (f.coeffs[j] != 1) throw std::invalid_argument("q_product: constant term != 1 in tail factor");
            } else if (e < i - 1) {
                throw std::invalid_argument("q_product: tail factor below degree-growth bound");
            }
        }
    }
    return acc;
}

LaurentQSeries q_binomial_factor(long long e, const Int& c) {
    LaurentQSeries s = LaurentQSeries::monomial(0, 1);
    s.add_coeff(e, c);
    return s;
}

}  // namespace blockpart
