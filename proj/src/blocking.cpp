#include "blockpart/blocking.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace blockpart {

namespace {

std::string rate_witness(const char* table, int y, int z, const Rat& v) {
    std::ostringstream os;
    os << table << "(" << y << "," << z << ") = " << rational_to_string(v);
    return os.str();
}

}  // namespace

std::string RateTable::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    for (int y = 0; y <= k; ++y) {
        nlohmann::json rowp = nlohmann::json::array(), rowq = nlohmann::json::array();
        for (int z = 0; z <= k; ++z) {
            rowp.push_back(rational_to_string(pr(y, z)));
            rowq.push_back(rational_to_string(ql(y, z)));
        }
        j["p"].push_back(rowp);
        j["q"].push_back(rowq);
    }
    return j.dump();
}

RateTable rate_table_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RateTable r(j.at("k").get<int>());
    for (int y = 0; y <= r.k; ++y)
        for (int z = 0; z <= r.k; ++z) {
            r.p[y][z] = parse_rational(j.at("p").at(y).at(z).get<std::string>());
            r.q[y][z] = parse_rational(j.at("q").at(y).at(z).get<std::string>());
        }
    return r;
}

namespace {

// Boundary zeros and strict positivity shared by both validators.
void check_b1_positivity(const RateTable& r, std::vector<Violation>& out) {
    int k = r.k;
    for (int y = 0; y <= k; ++y)
        for (int z = 0; z <= k; ++z) {
            bool p_forced = (y == 0 || z == k);
            bool q_forced = (y == k || z == 0);
            if (p_forced && r.pr(y, z) != 0)
                out.push_back({"B1", rate_witness("p", y, z, r.pr(y, z)) + " should be 0"});
            if (q_forced && r.ql(y, z) != 0)
                out.push_back({"B1", rate_witness("q", y, z, r.ql(y, z)) + " should be 0"});
            if (!p_forced && r.pr(y, z) <= 0)
                out.push_back({"positivity", rate_witness("p", y, z, r.pr(y, z))});
            if (!q_forced && r.ql(y, z) <= 0)
                out.push_back({"positivity", rate_witness("q", y, z, r.ql(y, z))});
        }
}

void check_b2(const RateTable& r, std::vector<Violation>& out) {
    int k = r.k;
    // p non-decreasing in the source occupancy, non-increasing in the target;
    // q the other way round.
    for (int y = 1; y + 1 <= k; ++y)
        for (int z = 0; z < k; ++z)
            if (r.pr(y + 1, z) < r.pr(y, z))
                out.push_back({"B2", rate_witness("p", y + 1, z, r.pr(y + 1, z)) + " < " +
                                         rate_witness("p", y, z, r.pr(y, z))});
    for (int y = 1; y <= k; ++y)
        for (int z = 0; z + 1 < k; ++z)
            if (r.pr(y, z) < r.pr(y, z + 1))
                out.push_back({"B2", rate_witness("p", y, z, r.pr(y, z)) + " < " +
                                         rate_witness("p", y, z + 1, r.pr(y, z + 1))});
    for (int y = 0; y + 1 < k; ++y)
        for (int z = 1; z <= k; ++z)
            if (r.ql(y, z) < r.ql(y + 1, z))
                out.push_back({"B2", rate_witness("q", y, z, r.ql(y, z)) + " < " +
                                         rate_witness("q", y + 1, z, r.ql(y + 1, z))});
    for (int y = 0; y < k; ++y)
        for (int z = 1; z + 1 <= k; ++z)
            if (r.ql(y, z + 1) < r.ql(y, z))
                out.push_back({"B2", rate_witness("q", y, z + 1, r.ql(y, z + 1)) + " < " +
                                         rate_witness("q", y, z, r.ql(y, z))});
}

}  // namespace

ValidationReport validate(const RateTable& r) {
    ValidationReport rep;
    if (r.k != 2) {
        rep.violations.push_back({"pattern", "full validation is only defined for k = 2"});
        return rep;
    }
    check_b1_positivity(r, rep.violations);
    check_b2(r, rep.violations);
    if (!rep.violations.empty()) return rep;  // conditions below assume positivity
    // (a) strict right drift on every transition pair
    for (int y = 1; y <= 2; ++y)
        for (int z = 0; z <= 1; ++z)
            if (!(r.pr(y, z) > r.ql(z, y)))
                rep.violations.push_back({"a", rate_witness("p", y, z, r.pr(y, z)) + " <= " +
                                                   rate_witness("q", z, y, r.ql(z, y))});
    // (b) p(1,0)/q(0,1) = p(2,1)/q(1,2)
    if (r.pr(1, 0) * r.ql(1, 2) != r.pr(2, 1) * r.ql(0, 1))
        rep.violations.push_back({"b", "p(1,0)/q(0,1) != p(2,1)/q(1,2)"});
    // (c) p(1,0)p(2,1)q(1,1)q(0,2) = q(0,1)q(1,2)p(2,0)p(1,1)
    Rat lhs = r.pr(1, 0) * r.pr(2, 1) * r.ql(1, 1) * r.ql(0, 2);
    Rat rhs = r.ql(0, 1) * r.ql(1, 2) * r.pr(2, 0) * r.pr(1, 1);
    if (lhs != rhs)
        rep.violations.push_back({"c", "product condition value " + rational_to_string(lhs / rhs)});
    rep.accepted = rep.violations.empty();
    return rep;
}

ValidationReport validate_k_exclusion(const RateTable& r) {
    ValidationReport rep;
    check_b1_positivity(r, rep.violations);
    check_b2(r, rep.violations);
    if (!rep.violations.empty()) return rep;
    Rat rho = r.ql(0, 1);
    if (!(rho > 0 && rho < 1))
        rep.violations.push_back({"a", "left rate " + rational_to_string(rho) + " not in (0,1)"});
    for (int y = 0; y <= r.k; ++y)
        for (int z = 0; z <= r.k; ++z) {
            Rat ep = (y != 0 && z != r.k) ? Rat(1) : Rat(0);
            Rat eq = (z != 0 && y != r.k) ? rho : Rat(0);
            if (r.pr(y, z) != ep)
                rep.violations.push_back({"pattern", rate_witness("p", y, z, r.pr(y, z))});
            if (r.ql(y, z) != eq)
                rep.violations.push_back({"pattern", rate_witness("q", y, z, r.ql(y, z))});
        }
    rep.accepted = rep.violations.empty();
    return rep;
}

BlockingParams derive_params(const RateTable& r) {
    ValidationReport rep = validate(r);
    if (!rep.accepted) throw std::invalid_argument("derive_params: table fails validation");
    BlockingParams bp;
    bp.k = 2;
    const Rat& p10 = r.pr(1, 0);
    const Rat& q01 = r.ql(0, 1);
    Rat sum = q01 + p10;
    bp.p_asym = p10 / sum;
    bp.q_asym = q01 / sum;
    bp.qtilde = q01 / p10;
    bp.t_squared = p10 * r.ql(0, 2) / (q01 * r.pr(1, 1));
    Rat rad = bp.t_squared;
    // fold the root into the rational part when it is exact
    auto root = exact_sqrt(bp.t_squared);
    QuadExt t = root ? QuadExt::from_rat(*root, rad) : QuadExt::root(rad);
    QuadExt tinv = t.inverse();
    bp.f = {QuadExt::from_rat(0, rad), tinv, t};
    QuadExt sumq = QuadExt::from_rat(sum, rad);
    QuadExt p10q = QuadExt::from_rat(p10, rad);
    bp.s[{1, 1}] = t * sumq;
    bp.s[{1, 2}] = t * QuadExt::from_rat(r.pr(1, 1), rad) * sumq / p10q;
    bp.s[{2, 1}] = QuadExt::from_rat(r.pr(2, 0), rad) * sumq / (p10q * t);
    bp.s[{2, 2}] = QuadExt::from_rat(r.pr(2, 1), rad) * sumq / (p10q * t);
    for (int j = 1; j <= 3; ++j) {
        bp.s[{3, j}] = QuadExt::from_rat(0, rad);
        bp.s[{j, 3}] = QuadExt::from_rat(0, rad);
    }
    return bp;
}

BlockingParams derive_k_exclusion_params(const RateTable& r) {
    ValidationReport rep = validate_k_exclusion(r);
    if (!rep.accepted) throw std::invalid_argument("derive_k_exclusion_params: table fails validation");
    BlockingParams bp;
    bp.k = r.k;
    Rat rho = r.ql(0, 1);
    bp.p_asym = Rat(1) / (1 + rho);
    bp.q_asym = rho / (1 + rho);
    bp.qtilde = rho;
    bp.t_squared = 1;
    bp.f.assign(static_cast<size_t>(r.k + 1), QuadExt::from_rat(1, 1));
    bp.f[0] = QuadExt::from_rat(0, 1);
    for (int y = 1; y <= r.k + 1; ++y)
        for (int z = 1; z <= r.k + 1; ++z)
            bp.s[{y, z}] = QuadExt::from_rat(y <= r.k && z <= r.k ? 1 + rho : Rat(0), 1);
    return bp;
}

namespace {

// 1 / (f(1) f(2) ... f(z)) as an element of Q(sqrt(t^2)).
QuadExt inv_f_factorial(const BlockingParams& params, int z) {
    QuadExt acc = QuadExt::from_rat(1, params.t_squared);
    for (int y = 1; y <= z; ++y) acc = acc / params.f[static_cast<size_t>(y)];
    return acc;
}

}  // namespace

Rat marginal_weight(const BlockingParams& params, long long i, int z, long long c) {
    if (z < 0 || z > params.k) throw std::invalid_argument("marginal_weight: occupancy out of range");
    QuadExt invff = inv_f_factorial(params, z);
    if (invff.b != 0) throw std::domain_error("marginal_weight: irrational weight, t is not rational");
    return pow_rat(params.qtilde, -(i - c) * z) * invff.a;
}

double marginal(const BlockingParams& params, long long i, int z, double c) {
    if (z < 0 || z > params.k) throw std::invalid_argument("marginal: occupancy out of range");
    double lq = std::log(static_cast<double>(params.qtilde));
    double x = static_cast<double>(i) - c;
    // log-weights, shifted by their maximum before exponentiating
    std::vector<double> lw(static_cast<size_t>(params.k + 1));
    for (int j = 0; j <= params.k; ++j)
        lw[static_cast<size_t>(j)] = -x * j * lq + std::log(inv_f_factorial(params, j).to_double());
    double mx = *std::max_element(lw.begin(), lw.end());
    double zsum = 0;
    for (double v : lw) zsum += std::exp(v - mx);
    return std::exp(lw[static_cast<size_t>(z)] - mx) / zsum;
}

double class_probability(const BlockingParams& params, double c, int m, int k, double tol) {
    if (tol <= 0) throw std::invalid_argument("class_probability: tol must be positive");
    if (k < 2 || m < 0 || m >= k) throw std::invalid_argument("class_probability: bad residue");
    const long long budget = 200000;
    long long center = static_cast<long long>(std::llround(c));
    if (k == 2) {
        double prod = 1.0;
        long long span = 1;
        for (; span < budget; span *= 2) {
            prod = 1.0;
            bool settled = true;
            for (long long i = center - span; i <= center + span; ++i)
                prod *= 1.0 - 2.0 * marginal(params, i, 1, c);
            for (long long i : {center - span, center + span})
                if (std::abs(2.0 * marginal(params, i, 1, c)) > tol) settled = false;
            if (settled) break;
        }
        if (span >= budget) throw std::runtime_error("class_probability: site budget exhausted");
        double odd = (1.0 - prod) / 2.0;
        double v = (m % 2 == 1) ? odd : 1.0 - odd;
        return std::clamp(v, 0.0, 1.0);
    }
    std::complex<double> total = 1.0;  // r = 0 term of the character average
    for (int r = 1; r < k; ++r) {
        auto zeta = [&](long long e) {
            double a = 2.0 * M_PI * static_cast<double>(e) / k;
            return std::complex<double>(std::cos(a), std::sin(a));
        };
        std::complex<double> prod = 1.0;
        long long span = 1;
        for (; span < budget; span *= 2) {
            prod = 1.0;
            bool settled = true;
            for (long long i = center - span; i <= center + span; ++i) {
                std::complex<double> fac = 1.0;
                for (int j = 1; j < k; ++j)
                    fac += (zeta(static_cast<long long>(r) * j) - 1.0) * marginal(params, i, j, c);
                prod *= fac;
            }
            for (long long i : {center - span, center + span}) {
                std::complex<double> fac = 1.0;
                for (int j = 1; j < k; ++j)
                    fac += (zeta(static_cast<long long>(r) * j) - 1.0) * marginal(params, i, j, c);
                if (std::abs(fac - 1.0) > tol) settled = false;
            }
            if (settled) break;
        }
        if (span >= budget) throw std::runtime_error("class_probability: site budget exhausted");
        total += zeta(-static_cast<long long>(r) * m) * prod;
    }
    return std::clamp(total.real() / k, 0.0, 1.0);
}

namespace {

// [n]_q = q^{1-n} + q^{3-n} + ... + q^{n-1}
Rat q_number(const Rat& q, int n) {
    Rat acc(0);
    for (int e = 1 - n; e <= n - 1; e += 2) acc += pow_rat(q, e);
    return acc;
}

}  // namespace

RateTable asep_q1_table(const Rat& q) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("asep_q1_table: q must be in (0,1)");
    RateTable r(2);
    for (int y = 1; y <= 2; ++y)
        for (int z = 0; z <= 1; ++z)
            r.p[y][z] = pow_rat(q, y - z - 3) * q_number(q, y) * q_number(q, 2 - z);
    for (int y = 0; y <= 1; ++y)
        for (int z = 1; z <= 2; ++z)
            r.q[y][z] = pow_rat(q, y - z + 3) * q_number(q, 2 - y) * q_number(q, z);
    return r;
}

RateTable three_state_table(const Rat& q, const Rat& gamma) { return three_state_table(q, gamma, gamma); }

RateTable three_state_table(const Rat& q, const Rat& gamma, const Rat& gamma_prime) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("three_state_table: q must be in (0,1)");
    if (!(gamma > 0 && gamma <= 1) || !(gamma_prime > 0 && gamma_prime <= 1))
        throw std::invalid_argument("three_state_table: gamma must be in (0,1]");
    RateTable r(2);
    r.p[1][0] = 1;
    r.p[1][1] = gamma;
    r.p[2][0] = 2;
    r.p[2][1] = 1;
    r.q[0][1] = q;
    r.q[0][2] = 2 * q;
    r.q[1][1] = gamma_prime * q;
    r.q[1][2] = q;
    return r;
}

RateTable k_exclusion_table(const Rat& q, int k) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("k_exclusion_table: q must be in (0,1)");
    if (k < 1) throw std::invalid_argument("k_exclusion_table: k must be positive");
    RateTable r(k);
    for (int y = 0; y <= k; ++y)
        for (int z = 0; z <= k; ++z) {
            if (y != 0 && z != k) r.p[y][z] = 1;
            if (z != 0 && y != k) r.q[y][z] = q;
        }
    return r;
}

}  // namespace blockpart
