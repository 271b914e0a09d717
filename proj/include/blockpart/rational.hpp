#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace blockpart {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact square root of a rational, when one exists.
std::optional<Rat> exact_sqrt(const Rat& x);

Rat pow_rat(const Rat& base, long long e);

Rat parse_rational(const std::string& s);
std::string rational_to_string(const Rat& r);

// Element of the quadratic extension Q(sqrt(rad)): value a + b*sqrt(rad).
// rad is a fixed positive rational radicand shared by both operands of any
// binary operation. Used for exact arithmetic with the parameter t when t^2
// is rational but t itself is not.
struct QuadExt {
    Rat a;
    Rat b;
    Rat rad;

    QuadExt() : a(0), b(0), rad(1) {}
    QuadExt(Rat a_, Rat b_, Rat rad_) : a(std::move(a_)), b(std::move(b_)), rad(std::move(rad_)) {}

    static QuadExt from_rat(const Rat& x, const Rat& rad) { return QuadExt(x, 0, rad); }
    static QuadExt root(const Rat& rad) { return QuadExt(0, 1, rad); }

    bool is_zero() const { return a == 0 && b == 0; }

    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator*(const QuadExt& o) const;
    QuadExt inverse() const;
    QuadExt operator/(const QuadExt& o) const { return *this * o.inverse(); }
    bool operator==(const QuadExt& o) const;

    double to_double() const;
    std::string str() const;
};

}  // namespace blockpart
