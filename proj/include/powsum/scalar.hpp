#pragma once

// Uniform interface over the two scalar carriers: exact rationals and
// doubles. Algorithms are templated on the scalar; anything that compares
// against zero takes the sequence tolerance and goes through these helpers,
// so exact mode stays exact and float mode uses one consistent policy.

#include "powsum/rational.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>

namespace powsum {

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static const char* mode_name() { return "rational"; }
    static Rational from_long(long v) { return Rational(v); }
    static Rational from_double(double v) { return Rational(v); }
    static double to_double(const Rational& v) { return v.get_d(); }
    static Rational pow2n(const Rational& base, unsigned long n) {
        return pow_int(base, 2 * n);
    }
    static Rational sqrt(const Rational& v) { return sqrt_floor(v); }
    static std::string str(const Rational& v) { return powsum::to_string(v); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static const char* mode_name() { return "float"; }
    static double from_long(long v) { return static_cast<double>(v); }
    static double from_double(double v) { return v; }
    static double to_double(double v) { return v; }
    static double pow2n(double base, unsigned long n) {
        return std::pow(base, 2.0 * static_cast<double>(n));
    }
    static double sqrt(double v) { return std::sqrt(v); }
    static std::string str(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

template <class S>
inline bool is_zero(const S& v, double eps) {
    if constexpr (scalar_traits<S>::is_exact)
        return sgn(v) == 0;
    else
        return std::abs(v) <= eps;
}

template <class S>
inline bool is_negative(const S& v, double eps) {
    if constexpr (scalar_traits<S>::is_exact)
        return sgn(v) < 0;
    else
        return v < -eps;
}

template <class S>
inline bool is_positive(const S& v, double eps) {
    if constexpr (scalar_traits<S>::is_exact)
        return sgn(v) > 0;
    else
        return v > eps;
}

template <class S>
inline S abs_value(const S& v) {
    if constexpr (scalar_traits<S>::is_exact)
        return abs(v);
    else
        return std::abs(v);
}

}  // namespace powsum
