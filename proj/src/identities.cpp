#include "blockpart/identities.hpp"

#include "blockpart/gfp.hpp"
#include "blockpart/normalizers.hpp"

#include <json.hpp>

#include <cstdlib>
#include <sstream>

namespace blockpart {

std::string IdentityReport::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["order"] = order;
    j["z_window"] = z_window;
    j["equal"] = equal;
    j["discrepancy"] = discrepancy;
    j["notes"] = notes;
    return j.dump();
}

namespace {

using Slices = std::map<long long, LaurentQSeries>;

LaurentQSeries one_q() { return LaurentQSeries::monomial(0, 1); }

LaurentQSeries shift_q(const LaurentQSeries& a, long long d) {
    LaurentQSeries out = a;
    out.lo += d;
    return out;
}

LaurentQSeries scale_q(const LaurentQSeries& a, const Int& c) {
    LaurentQSeries out = a;
    for (auto& v : out.coeffs) v *= c;
    out.canonicalize();
    return out;
}

// Collapses the t-grading (t -> 1) of a z-free series into a plain q-series.
LaurentQSeries q_profile(const TruncatedSeries& s) {
    LaurentQSeries out;
    for (const auto& [m, c] : s.terms()) out.add_coeff(m.dq, c);
    out.canonicalize();
    return out;
}

// Accumulates sub-checks; the first failure freezes the discrepancy.
struct Probe {
    IdentityReport rep;

    Probe(std::string id, long long order, long long z_window) {
        rep.id = std::move(id);
        rep.order = order;
        rep.z_window = z_window;
        rep.equal = true;
    }

    void fail(const std::string& what) {
        if (!rep.equal) return;
        rep.equal = false;
        rep.discrepancy = what;
    }

    void note(const std::string& n) {
        if (!rep.notes.empty()) rep.notes += "; ";
        rep.notes += n;
    }

    void eq_laurent(const std::string& tag, const LaurentQSeries& a, const LaurentQSeries& b,
                    long long order) {
        LaurentQSeries d = sub(truncate(a, order), truncate(b, order));
        if (d.is_zero()) return;
        std::ostringstream os;
        os << tag << ": first mismatch at q^" << d.lo << " (difference " << d.coeffs.front().str() << ")";
        fail(os.str());
    }

    void eq_slices(const std::string& tag, const Slices& a, const Slices& b, long long z_window,
                   long long order) {
        for (long long dz = -z_window; dz <= z_window; ++dz) {
            auto ia = a.find(dz);
            auto ib = b.find(dz);
            LaurentQSeries la = ia == a.end() ? LaurentQSeries::zero() : ia->second;
            LaurentQSeries lb = ib == b.end() ? LaurentQSeries::zero() : ib->second;
            std::ostringstream os;
            os << tag << " [z^" << dz << "]";
            eq_laurent(os.str(), la, lb, order);
            if (!rep.equal) return;
        }
    }

    void eq_terms(const std::string& tag, const TruncatedSeries& a, const TruncatedSeries& b,
                  long long z_window) {
        std::map<Monomial, Int> diff;
        for (const auto& [m, c] : a.terms())
            if (std::llabs(m.dz) <= z_window) diff[m] += c;
        for (const auto& [m, c] : b.terms())
            if (std::llabs(m.dz) <= z_window) diff[m] -= c;
        for (const auto& [m, c] : diff) {
            if (c == 0) continue;
            std::ostringstream os;
            os << tag << ": first mismatch at q^" << m.dq << " t^" << m.dt << " z^" << m.dz
               << " (difference " << c.str() << ")";
            fail(os.str());
            return;
        }
    }
};

// The paired product of the two-variable family:
//   prod_i (1 + s*t*z*q^i + z^2 q^{2i})(1 + s*t*z^{-1} q^{i-1} + z^{-2} q^{2(i-1)})
TruncatedSeries family_product(long long order, int sign) {
    FactorSpec fs;
    fs.name = sign > 0 ? "paired-plus" : "paired-minus";
    fs.factor = [sign](long long i) {
        std::vector<std::pair<Monomial, Int>> left = {
            {{0, 0, 0}, 1}, {{i, 1, 1}, sign}, {{2 * i, 0, 2}, 1}};
        std::vector<std::pair<Monomial, Int>> right = {
            {{0, 0, 0}, 1}, {{i - 1, 1, -1}, sign}, {{2 * (i - 1), 0, -2}, 1}};
        std::vector<std::pair<Monomial, Int>> out;
        for (const auto& [ma, ca] : left)
            for (const auto& [mb, cb] : right)
                out.push_back({{ma.dq + mb.dq, ma.dt + mb.dt, ma.dz + mb.dz}, ca * cb});
        return out;
    };
    return product_rhs(fs, order);
}

// Theta-style left side: 2 * sum_l S q^{l(l+1)} z^{2l} (class 0) or
// 2 * t * sum_l S q^{(l+1)^2} z^{2l+1} (class 1).
TruncatedSeries theta_even(const TruncatedSeries& s, long long order) {
    TruncatedSeries out(order);
    for (long long l = -(order + 2); l <= order + 2; ++l) {
        long long e = l * (l + 1);
        if (e > order) continue;
        out = add(out, s.shifted(e, 0, 2 * l, 2));
    }
    return out;
}

TruncatedSeries theta_odd(const TruncatedSeries& s, long long order) {
    TruncatedSeries out(order);
    for (long long l = -(order + 2); l <= order + 2; ++l) {
        long long e = (l + 1) * (l + 1);
        if (e > order) continue;
        out = add(out, s.shifted(e, 1, 2 * l + 1, 2));
    }
    return out;
}

Slices add_slices(const Slices& a, const Slices& b, int sign_b) {
    Slices out = a;
    for (const auto& [dz, s] : b) {
        auto& slot = out[dz];
        slot = sign_b > 0 ? add(slot, s) : sub(slot, s);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// Multiplies every slice by q*z (exponent bookkeeping of the collapsed forms).
Slices times_qz(const Slices& a) {
    Slices out;
    for (const auto& [dz, s] : a) out[dz + 1] = shift_q(s, 1);
    return out;
}

// Odd/even parts of the triple product: prod_i (1 + s q^{2i-1} z)(1 + s q^{2i-1} z^{-1})
TruncatedSeries jtp_half(long long order, int sign) {
    FactorSpec fs;
    fs.name = "triple-odd-exponent";
    fs.factor = [sign](long long i) {
        std::vector<std::pair<Monomial, Int>> out = {{{0, 0, 0}, 1},
                                                     {{2 * i - 1, 0, 1}, sign},
                                                     {{2 * i - 1, 0, -1}, sign},
                                                     {{4 * i - 2, 0, 0}, 1}};
        return out;
    };
    return product_rhs(fs, order);
}

// Squared triple-product factors: ((1 + s q^i z)(1 + s q^{i-1} z^{-1}))^2
TruncatedSeries jtp_squared(long long order, int sign) {
    FactorSpec fs;
    fs.name = "triple-squared";
    fs.factor = [sign](long long i) {
        std::vector<std::pair<Monomial, Int>> lin = {{{0, 0, 0}, 1},
                                                     {{i, 0, 1}, sign},
                                                     {{i - 1, 0, -1}, sign},
                                                     {{2 * i - 1, 0, 0}, 1}};
        std::vector<std::pair<Monomial, Int>> out;
        for (const auto& [ma, ca] : lin)
            for (const auto& [mb, cb] : lin)
                out.push_back({{ma.dq + mb.dq, 0, ma.dz + mb.dz}, ca * cb});
        return out;
    };
    return product_rhs(fs, order);
}

// k-repetition paired product:
//   prod_i (sum_a q^{ai} z^a)(sum_a q^{a(i-1)} z^{-a}), a = 0..k.
TruncatedSeries repetition_product(int k, long long order) {
    FactorSpec fs;
    fs.name = "repetition-paired";
    fs.factor = [k](long long i) {
        std::vector<std::pair<Monomial, Int>> out;
        for (int a = 0; a <= k; ++a)
            for (int b = 0; b <= k; ++b) out.push_back({{a * i + b * (i - 1), 0, a - b}, 1});
        return out;
    };
    return product_rhs(fs, order);
}

Slices slices_of(const TruncatedSeries& s, long long order) {
    return substitute_z(s, 1, one_q(), 1, order);
}

LaurentQSeries binomial_chain(const std::vector<std::pair<long long, long long>>& steps, long long i,
                              long long order, const Int& c = -1) {
    // product over (stride, shift) of (1 + c*q^{stride*i - shift})
    LaurentQSeries f = one_q();
    for (const auto& [stride, shift] : steps) f = mul(f, q_binomial_factor(stride * i - shift, c), order);
    return f;
}

}  // namespace

IdentityReport check_main(long long order, long long z_window) {
    Probe p("main", order, z_window);
    TruncatedSeries se = s_even(order).series;
    TruncatedSeries so = s_odd(order).series;
    TruncatedSeries plus = family_product(order, +1);
    TruncatedSeries minus = family_product(order, -1);
    p.eq_terms("even", theta_even(se, order), add(plus, minus), z_window);
    p.eq_terms("odd", theta_odd(so, order), sub(plus, minus), z_window);
    p.note("state sums from direct search, products truncated exactly");
    return p.rep;
}

IdentityReport check_jacobi(long long order, long long z_window) {
    Probe p("jacobi", order, z_window);

    FactorSpec square;
    square.name = "triple-square-grading";
    square.factor = [](long long i) {
        // (1 - q^{2i})(1 + q^{2i-1}z)(1 + q^{2i-1}z^{-1})
        std::vector<std::pair<Monomial, Int>> out = {
            {{0, 0, 0}, 1},          {{2 * i - 1, 0, 1}, 1},  {{2 * i - 1, 0, -1}, 1},
            {{4 * i - 2, 0, 0}, 1},  {{2 * i, 0, 0}, -1},     {{4 * i - 1, 0, 1}, -1},
            {{4 * i - 1, 0, -1}, -1}, {{6 * i - 2, 0, 0}, -1}};
        return out;
    };
    TruncatedSeries lhs_sq(order);
    for (long long k = -(order + 1); k <= order + 1; ++k)
        if (k * k <= order) lhs_sq.add_term({k * k, 0, k}, 1);
    p.eq_terms("square-grading", lhs_sq, product_rhs(square, order), z_window);

    FactorSpec tri;
    tri.name = "triple-triangular-grading";
    tri.factor = [](long long i) {
        // (1 - q^i)(1 + q^i z)(1 + q^{i-1}z^{-1})
        std::vector<std::pair<Monomial, Int>> base = {
            {{0, 0, 0}, 1}, {{i, 0, 1}, 1}, {{i - 1, 0, -1}, 1}, {{2 * i - 1, 0, 0}, 1}};
        std::vector<std::pair<Monomial, Int>> out;
        for (const auto& [m, c] : base) {
            out.push_back({m, c});
            out.push_back({{m.dq + i, m.dt, m.dz}, -c});
        }
        return out;
    };
    TruncatedSeries lhs_tri(order);
    for (long long k = -(2 * order + 2); k <= 2 * order + 2; ++k) {
        long long e = k * (k + 1) / 2;
        if (e <= order) lhs_tri.add_term({e, 0, k}, 1);
    }
    p.eq_terms("triangular-grading", lhs_tri, product_rhs(tri, order), z_window);
    return p.rep;
}

IdentityReport check_asep(long long order, long long z_window) {
    Probe p("asep", order, z_window);
    // substitution qt -> q^4, t -> q + q^{-1}: under the growth bound
    // dt <= 2 dq + 1 a discarded term of a q-order-N series sits at exponent
    // >= 4(N+1) - (2(N+1)+1) = 2N + 1, so N > (order-1)/2 suffices
    long long n = order / 2 + 1;
    LaurentQSeries tq;  // q^{-1} + q
    tq.lo = -1;
    tq.coeffs = {1, 0, 1};
    TruncatedSeries se = s_even(n).series;
    TruncatedSeries so = s_odd(n).series;

    Slices lhs_even = substitute_z(theta_even(se, n), 4, tq, 2, order);
    Slices lhs_odd = substitute_z(theta_odd(so, n), 4, tq, 2, order);
    Slices plus = substitute_z(family_product(n, +1), 4, tq, 2, order);
    Slices minus = substitute_z(family_product(n, -1), 4, tq, 2, order);
    p.eq_slices("substituted-even", lhs_even, add_slices(plus, minus, +1), z_window, order);
    p.eq_slices("substituted-odd", lhs_odd, add_slices(plus, minus, -1), z_window, order);

    Slices jp = slices_of(jtp_half(order, +1), order);
    Slices jm = slices_of(jtp_half(order, -1), order);
    p.eq_slices("collapse-sum", times_qz(add_slices(plus, minus, +1)), add_slices(jp, jm, -1),
                z_window, order);
    p.eq_slices("collapse-difference", times_qz(add_slices(plus, minus, -1)), add_slices(jp, jm, +1),
                z_window, order);

    // explicit odd/even split of the triple product against the specialised
    // state sums
    LaurentQSeries sev = substitute(se, 4, tq, 1, order);
    LaurentQSeries sod = substitute(so, 4, tq, 1, order);
    Slices lhs1, lhs2;
    for (long long l = -(order + 2); l <= order + 2; ++l) {
        long long eo = (2 * l + 1) * (2 * l + 1);
        if (eo <= order) lhs1[2 * l + 1] = scale_q(shift_q(sev, eo), 2);
        long long ee = (2 * l) * (2 * l);
        if (ee <= order) {
            LaurentQSeries v = mul(sod, q_binomial_factor(2, 1), order);  // (1 + q^2) S_odd
            lhs2[2 * l] = scale_q(shift_q(v, ee), 2);
        }
    }
    p.eq_slices("triple-odd-part", lhs1, add_slices(jp, jm, -1), z_window, order);
    p.eq_slices("triple-even-part", lhs2, add_slices(jp, jm, +1), z_window, order);

    // closed product forms of the specialised state sums
    auto even_pochhammer = [](long long i) { return q_binomial_factor(2 * i, -1); };
    LaurentQSeries poch = q_product(even_pochhammer, order);
    p.eq_laurent("even-closed-form", mul(sev, poch, order), one_q(), order);
    p.eq_laurent("odd-closed-form", mul(mul(sod, q_binomial_factor(2, 1), order), poch, order),
                 one_q(), order);
    p.note("state sums computed to q-order " + std::to_string(n) + " before substitution");
    return p.rep;
}

IdentityReport check_three_state(long long order, long long z_window) {
    Probe p("three-state", order, z_window);
    LaurentQSeries two = LaurentQSeries::monomial(0, 2);
    TruncatedSeries se = s_even(order).series;
    TruncatedSeries so = s_odd(order).series;
    LaurentQSeries se2 = substitute(se, 1, two, 1, order);
    LaurentQSeries so2 = substitute(so, 1, two, 1, order);

    Slices plus = substitute_z(family_product(order, +1), 1, two, 1, order);
    Slices minus = substitute_z(family_product(order, -1), 1, two, 1, order);
    Slices lhs_even, lhs_odd;
    for (long long l = -(order + 2); l <= order + 2; ++l) {
        long long ee = l * (l + 1);
        if (ee <= order) lhs_even[2 * l] = scale_q(shift_q(se2, ee), 2);
        long long eo = (l + 1) * (l + 1);
        if (eo <= order) lhs_odd[2 * l + 1] = scale_q(shift_q(so2, eo), 4);
    }
    p.eq_slices("substituted-even", lhs_even, add_slices(plus, minus, +1), z_window, order);
    p.eq_slices("substituted-odd", lhs_odd, add_slices(plus, minus, -1), z_window, order);

    Slices sq_plus = slices_of(jtp_squared(order, +1), order);
    Slices sq_minus = slices_of(jtp_squared(order, -1), order);
    p.eq_slices("squared-even", lhs_even, add_slices(sq_plus, sq_minus, +1), z_window, order);
    p.eq_slices("squared-odd", lhs_odd, add_slices(sq_plus, sq_minus, -1), z_window, order);

    // printed coefficient lists
    std::vector<long long> even_list = {1, 4, 9, 20, 42, 80, 147, 260, 445};
    std::vector<long long> odd_list = {2, 4, 12, 24, 50, 92, 172, 296, 510};
    for (long long e = 0; e <= std::min<long long>(order, 8); ++e) {
        if (se2.coeff(e) != even_list[static_cast<size_t>(e)]) p.fail("even coefficient list");
        if (2 * so2.coeff(e) != odd_list[static_cast<size_t>(e)]) p.fail("odd coefficient list");
    }

    // 2-coloured row interpretation: each array with m distinct parts admits
    // 2^m colourings
    for (long long nn = 0; nn <= std::min<long long>(order, 8); ++nn) {
        Int coloured0 = 0, coloured1 = 0;
        for (const Gfp& g : enumerate(nn, 0, 2)) coloured0 += Int(1) << distinct_parts(g);
        for (const Gfp& g : enumerate(nn, -1, 2)) coloured1 += Int(1) << distinct_parts(g);
        if (coloured0 != se2.coeff(nn)) p.fail("coloured count, offset 0, n=" + std::to_string(nn));
        if (coloured1 != 2 * so2.coeff(nn)) p.fail("coloured count, offset -1, n=" + std::to_string(nn));
    }

    // product forms implied by the squared triple product
    auto lhs_prod = [&](long long i) { return q_binomial_factor(i, -1); };
    LaurentQSeries poch = q_product(lhs_prod, order);
    auto even_rhs = [&](long long i) {
        return mul(mul(q_binomial_factor(2 * i - 1, 1), q_binomial_factor(2 * i - 1, 1), order),
                   q_binomial_factor(i, 1), order);
    };
    auto odd_rhs = [&](long long i) {
        return mul(mul(q_binomial_factor(2 * i, 1), q_binomial_factor(2 * i, 1), order),
                   q_binomial_factor(i, 1), order);
    };
    p.eq_laurent("even-product-form", mul(se2, poch, order), q_product(even_rhs, order), order);
    p.eq_laurent("odd-product-form", mul(so2, poch, order), q_product(odd_rhs, order), order);
    return p.rep;
}

IdentityReport check_two_exclusion(long long order, long long z_window) {
    Probe p("two-exclusion", order, z_window);
    LaurentQSeries se1 = q_profile(s_k(2, 0, order).series);
    LaurentQSeries so1 = q_profile(s_k(2, 1, order).series);
    // the dedicated exclusion search must agree with t -> 1 in the general one
    p.eq_laurent("even-vs-general", se1, substitute(s_even(order).series, 1, one_q(), 1, order), order);
    p.eq_laurent("odd-vs-general", so1, substitute(s_odd(order).series, 1, one_q(), 1, order), order);

    Slices plus = substitute_z(family_product(order, +1), 1, one_q(), 1, order);
    Slices minus = substitute_z(family_product(order, -1), 1, one_q(), 1, order);
    Slices lhs_even, lhs_odd;
    for (long long l = -(order + 2); l <= order + 2; ++l) {
        long long ee = l * (l + 1);
        if (ee <= order) lhs_even[2 * l] = scale_q(shift_q(se1, ee), 2);
        long long eo = (l + 1) * (l + 1);
        if (eo <= order) lhs_odd[2 * l + 1] = scale_q(shift_q(so1, eo), 2);
    }
    p.eq_slices("even", lhs_even, add_slices(plus, minus, +1), z_window, order);
    p.eq_slices("odd", lhs_odd, add_slices(plus, minus, -1), z_window, order);

    std::vector<long long> even_list = {1, 1, 3, 5, 9, 14, 24, 35, 55};
    std::vector<long long> odd_list = {1, 2, 3, 6, 10, 16, 26, 40, 60};
    for (long long e = 0; e <= std::min<long long>(order, 8); ++e) {
        if (se1.coeff(e) != even_list[static_cast<size_t>(e)]) p.fail("even coefficient list");
        if (so1.coeff(e) != odd_list[static_cast<size_t>(e)]) p.fail("odd coefficient list");
    }
    return p.rep;
}

IdentityReport check_k_exclusion(int k, long long order, long long z_window) {
    Probe p("k-exclusion:" + std::to_string(k), order, z_window);
    if (k < 1) {
        p.fail("k must be at least 1");
        return p.rep;
    }
    Slices f = slices_of(repetition_product(k, order), order);
    // The root-of-unity average over r of the product with z -> zeta^{-r} z
    // equals k times the projection onto z-exponents in class -m; the check
    // compares that projection slice by slice.
    for (int m = 0; m < k; ++m) {
        LaurentQSeries s = q_profile(s_k(k, m, order).series);
        for (long long kp = -z_window; kp <= z_window; ++kp) {
            if (((kp + m) % k + k) % k != 0) continue;
            long long l = (kp + m) / k;
            long long delta = k * l * (l + 1) / 2 - m * l;
            auto it = f.find(kp);
            LaurentQSeries slice = it == f.end() ? LaurentQSeries::zero() : it->second;
            std::ostringstream tag;
            tag << "class " << m << " offset " << kp;
            if (delta > order) {
                if (!truncate(slice, order).is_zero()) p.fail(tag.str() + ": expected empty slice");
                continue;
            }
            p.eq_laurent(tag.str(), shift_q(s, delta), slice, order);
        }
    }
    p.note("root-of-unity sum evaluated as the exact class projection of the z-grading");
    return p.rep;
}

IdentityReport check_offset_law(int k, long long kprime, long long order) {
    Probe p("offset-law:" + std::to_string(k) + ":" + std::to_string(kprime), order, 0);
    int m = static_cast<int>(((-kprime) % k + k) % k);
    long long l = (kprime + m) / k;
    long long delta = k * l * (l + 1) / 2 - static_cast<long long>(m) * l;
    Slices f = slices_of(repetition_product(k, order), order);
    auto it = f.find(kprime);
    LaurentQSeries slice = it == f.end() ? LaurentQSeries::zero() : it->second;

    LaurentQSeries enumerated;
    for (long long nn = 0; nn <= order; ++nn)
        enumerated.add_coeff(nn, static_cast<long long>(enumerate(nn, kprime, k).size()));
    p.eq_laurent("product-vs-enumeration", slice, enumerated, order);

    LaurentQSeries s = q_profile(s_k(k, m, order).series);
    if (delta <= order)
        p.eq_laurent("state-sum-shift", shift_q(s, delta), slice, order);
    else if (!truncate(slice, order).is_zero())
        p.fail("state-sum-shift: expected empty slice below the weight offset");
    p.note("class " + std::to_string(m) + ", shift exponent " + std::to_string(delta));
    return p.rep;
}

IdentityReport check_phi_products(long long order) {
    Probe p("products", order, 0);
    LaurentQSeries phi2 = q_profile(s_k(2, 0, order).series);
    LaurentQSeries sodd1 = q_profile(s_k(2, 1, order).series);
    LaurentQSeries phi3 = q_profile(s_k(3, 0, order).series);

    auto phi2_denominator = [order](long long i) {
        return binomial_chain({{1, 0}, {12, 10}, {12, 9}, {12, 3}, {12, 2}}, i, order);
    };
    p.eq_laurent("two-rep-offset-0", mul(phi2, q_product(phi2_denominator, order), order), one_q(),
                 order);

    auto sodd_denominator = [order](long long i) {
        return binomial_chain({{2, 1}, {2, 1}, {12, 8}, {12, 6}, {12, 4}, {12, 0}}, i, order);
    };
    p.eq_laurent("two-rep-offset-1", mul(sodd1, q_product(sodd_denominator, order), order), one_q(),
                 order);

    auto phi3_denominator = [order](long long i) {
        return binomial_chain(
            {{6, 5}, {6, 4}, {6, 4}, {6, 3}, {6, 3}, {6, 3}, {6, 2}, {6, 2}, {6, 1}, {12, 0}}, i,
            order);
    };
    auto phi3_numerator = [order](long long i) { return binomial_chain({{12, 6}}, i, order); };
    p.eq_laurent("three-rep-offset-0", mul(phi3, q_product(phi3_denominator, order), order),
                 q_product(phi3_numerator, order), order);
    return p.rep;
}

}  // namespace blockpart
