#pragma once

#include "errors.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace pbm {

/// Exact arbitrary-precision rational used for every finite-space value.
using Rational = mpq_class;

/// Parses "a/b", an integer, or a finite decimal literal ("0.25") into a
/// canonical rational.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && (s.front() == ' ')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ')) s.pop_back();
    if (s.empty()) throw FormatError("empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
            throw FormatError("malformed rational literal '" + s + "'");
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::string denom = "1" + std::string(s.size() - dot - 1, '0');
        if (digits.empty() || digits == "-" || digits == "+")
            throw FormatError("malformed rational literal '" + s + "'");
        s = digits + "/" + denom;
    }
    if (!s.empty() && s.front() == '+') s.erase(s.begin());

    Rational value;
    if (value.set_str(s, 10) != 0)
        throw FormatError("malformed rational literal '" + std::string(text) + "'");
    if (value.get_den() == 0)
        throw FormatError("zero denominator in '" + std::string(text) + "'");
    value.canonicalize();
    return value;
}

inline std::string to_string(const Rational& value)
{
    return value.get_str();
}

inline double to_double(const Rational& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

inline Rational abs_value(const Rational& value) { return abs(value); }
inline double abs_value(double value) { return std::abs(value); }

/// x^n for non-negative integer n, exact for rationals.
template <class Scalar>
Scalar ipow(const Scalar& base, unsigned n)
{
    Scalar result = 1;
    Scalar b = base;
    while (n != 0) {
        if (n & 1U) result *= b;
        n >>= 1U;
        if (n != 0) b *= b;
    }
    return result;
}

/// Tolerant comparisons; with tol == 0 they are exact.
template <class Scalar>
bool leq(const Scalar& a, const Scalar& b, const Scalar& tol)
{
    return a <= b + tol;
}

template <class Scalar>
bool approx_equal(const Scalar& a, const Scalar& b, const Scalar& tol)
{
    return abs_value(Scalar(a - b)) <= tol;
}

template <class Scalar>
bool is_positive(const Scalar& a, const Scalar& tol)
{
    return a > tol;
}

} // namespace pbm
