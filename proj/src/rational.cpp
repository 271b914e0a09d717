#include "blockpart/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace blockpart {

namespace {

std::optional<Int> exact_isqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    if (n == 0) return Int(0);
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

}  // namespace

std::optional<Rat> exact_sqrt(const Rat& x) {
    if (x < 0) return std::nullopt;
    auto n = exact_isqrt(boost::multiprecision::numerator(x));
    auto d = exact_isqrt(boost::multiprecision::denominator(x));
    if (!n || !d) return std::nullopt;
    return Rat(*n, *d);
}

Rat pow_rat(const Rat& base, long long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("pow_rat: zero to negative power");
        return Rat(0);
    }
    Rat b = e < 0 ? Rat(boost::multiprecision::denominator(base), boost::multiprecision::numerator(base)) : base;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Rat acc(1);
    while (n > 0) {
        if (n & 1ull) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rat(num, den);
}

std::string rational_to_string(const Rat& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {
void require_same_rad(const QuadExt& x, const QuadExt& y) {
    // Pure rationals carry no meaningful radicand; mixing them is fine.
    if (x.b != 0 && y.b != 0 && x.rad != y.rad)
        throw std::invalid_argument("QuadExt: mixed radicands");
}
Rat joint_rad(const QuadExt& x, const QuadExt& y) { return x.b != 0 ? x.rad : y.rad; }
}  // namespace

QuadExt QuadExt::operator+(const QuadExt& o) const {
    require_same_rad(*this, o);
    return QuadExt(a + o.a, b + o.b, joint_rad(*this, o));
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
    require_same_rad(*this, o);
    return QuadExt(a - o.a, b - o.b, joint_rad(*this, o));
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
    require_same_rad(*this, o);
    Rat r = joint_rad(*this, o);
    return QuadExt(a * o.a + b * o.b * r, a * o.b + b * o.a, r);
}

QuadExt QuadExt::inverse() const {
    Rat n = a * a - b * b * rad;
    if (n == 0) throw std::domain_error("QuadExt: inverse of zero");
    return QuadExt(a / n, -b / n, rad);
}

bool QuadExt::operator==(const QuadExt& o) const {
    if (a != o.a || b != o.b) return false;
    if (b != 0 && rad != o.rad) return false;
    return true;
}

double QuadExt::to_double() const {
    return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(static_cast<double>(rad));
}

std::string QuadExt::str() const {
    return rational_to_string(a) + " + " + rational_to_string(b) + "*sqrt(" + rational_to_string(rad) + ")";
}

}  // namespace blockpart
