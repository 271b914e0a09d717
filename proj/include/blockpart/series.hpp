#pragma once

#include "blockpart/rational.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace blockpart {

// Exponent triple of a term c * qt^dq * t^dt * z^dz, where qt is the bulk
// series variable (truncation variable) and z is Laurent.
struct Monomial {
    long long dq = 0;
    long long dt = 0;
    long long dz = 0;

    auto operator<=>(const Monomial&) const = default;
};

// Formal series with integer coefficients, exact up to and including qt-degree
// `order`. Terms with dq > order are discarded by every operation, so the
// stored map is always a faithful truncation.
class TruncatedSeries {
  public:
    explicit TruncatedSeries(long long order) : order_(order) {
        if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
    }
    static TruncatedSeries constant(long long order, Int c) {
        TruncatedSeries s(order);
        s.add_term({0, 0, 0}, std::move(c));
        return s;
    }

    long long order() const { return order_; }
    const std::map<Monomial, Int>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Int& c);
    Int coeff(const Monomial& m) const;

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const TruncatedSeries& o) const {
        return order_ == o.order_ && terms_ == o.terms_;
    }

    // Sub-series of terms with dz == k, re-expressed at dz = 0.
    TruncatedSeries coeff_z(long long k) const;

    // Multiplication by the single term c * qt^ddq * t^ddt * z^ddz.
    TruncatedSeries shifted(long long ddq, long long ddt, long long ddz, const Int& c = 1) const;

    TruncatedSeries truncated(long long new_order) const;

    std::string to_json() const;

  private:
    long long order_;
    std::map<Monomial, Int> terms_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// One factor family of a formal infinite product: factor(i) lists the terms of
// the i-th factor, i >= 1. Convergence contract: for all i beyond the
// truncation order, non-constant terms must have dq >= i-1 and the constant
// term must be 1.
struct FactorSpec {
    std::string name;
    std::function<std::vector<std::pair<Monomial, Int>>(long long)> factor;
};

TruncatedSeries product_rhs(const FactorSpec& family, long long order);

// Laurent polynomial/series in a single variable q with exact coefficients on
// the stated exponent range. Canonical form strips zero margins.
struct LaurentQSeries {
    long long lo = 0;
    std::vector<Int> coeffs;  // exponents lo .. lo+coeffs.size()-1

    static LaurentQSeries zero() { return LaurentQSeries{}; }
    static LaurentQSeries monomial(long long e, Int c);

    bool is_zero() const { return coeffs.empty(); }
    long long hi() const { return lo + static_cast<long long>(coeffs.size()) - 1; }
    Int coeff(long long e) const;
    void add_coeff(long long e, const Int& c);
    void canonicalize();

    bool operator==(const LaurentQSeries& o) const { return lo == o.lo && coeffs == o.coeffs; }

    std::string to_csv() const;
};

LaurentQSeries add(const LaurentQSeries& a, const LaurentQSeries& b);
LaurentQSeries sub(const LaurentQSeries& a, const LaurentQSeries& b);
// Product with terms of exponent > trunc_hi discarded (no lower truncation).
LaurentQSeries mul(const LaurentQSeries& a, const LaurentQSeries& b, long long trunc_hi);
LaurentQSeries truncate(const LaurentQSeries& a, long long trunc_hi);
LaurentQSeries pow(const LaurentQSeries& a, long long e, long long trunc_hi);

// Substitute qt -> q^alpha and t -> t_poly(q) into a z-free series, returning
// an exact Laurent series in q up to order target_order. The caller declares
// the growth bound dt <= t_bound_b * dq + 1, which is checked per monomial;
// together with a.order() it must guarantee that discarded terms cannot reach
// target_order.
LaurentQSeries substitute(const TruncatedSeries& a, long long alpha, const LaurentQSeries& t_poly,
                          long long t_bound_b, long long target_order);

// Same substitution applied slice-wise in z: result maps dz to a q-series.
std::map<long long, LaurentQSeries> substitute_z(const TruncatedSeries& a, long long alpha,
                                                 const LaurentQSeries& t_poly, long long t_bound_b,
                                                 long long target_order);

// Univariate product helper: multiplies factors(i) for i = 1..enough, where
// each factor is a Laurent polynomial whose non-constant terms have exponent
// >= i-1 for large i, truncating at target_order.
LaurentQSeries q_product(const std::function<LaurentQSeries(long long)>& factors, long long target_order);

// 1 +- q^{a} + q^{2a} ... convenience builders.
LaurentQSeries q_binomial_factor(long long e, const Int& c);  // 1 + c*q^e

}  // namespace blockpart
