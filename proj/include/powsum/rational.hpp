#pragma once

// Exact rational scalar on top of GMP, plus the handful of operations the
// rest of the library needs: parsing, formatting, integer powers, exact and
// directed square roots.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace powsum {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p/q", plain integers, and decimal literals ("1.25", "-3e-2").
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const bool has_slash = text.find('/') != std::string::npos;
    if (has_slash) {
        Rational r;
        if (r.set_str(text, 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (r.get_den() == 0)
            throw std::invalid_argument("zero denominator: " + text);
        r.canonicalize();
        return r;
    }
    const bool decimal = text.find_first_of(".eE") != std::string::npos;
    if (!decimal) {
        Rational r;
        if (r.set_str(text, 10) != 0)
            throw std::invalid_argument("bad integer literal: " + text);
        r.canonicalize();
        return r;
    }
    // decimal: mantissa [.fraction] [exponent]
    std::string t = text;
    long exp10 = 0;
    if (auto pos = t.find_first_of("eE"); pos != std::string::npos) {
        exp10 = std::stol(t.substr(pos + 1));
        t = t.substr(0, pos);
    }
    std::string digits = t;
    if (auto pos = t.find('.'); pos != std::string::npos) {
        digits = t.substr(0, pos) + t.substr(pos + 1);
        exp10 -= static_cast<long>(t.size() - pos - 1);
    }
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("bad decimal literal: " + text);
    Rational r;
    if (r.set_str(digits, 10) != 0)
        throw std::invalid_argument("bad decimal literal: " + text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        r *= Rational(scale);
    else
        r /= Rational(scale);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Rational pow_int(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return out;   // canonical since base is canonical
}

// Exact square root when numerator and denominator are perfect squares.
inline std::optional<Rational> sqrt_exact(const Rational& r) {
    if (sgn(r) < 0) return std::nullopt;
    if (sgn(r) == 0) return Rational(0);
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) ||
        !mpz_perfect_square_p(r.get_den_mpz_t()))
        return std::nullopt;
    Rational out;
    mpz_sqrt(out.get_num_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(out.get_den_mpz_t(), r.get_den_mpz_t());
    return out;
}

// Largest s = m / 2^bits with s <= sqrt(r). Exact first when possible.
inline Rational sqrt_floor(const Rational& r, unsigned bits = 128) {
    if (sgn(r) < 0) throw std::domain_error("sqrt of negative rational");
    if (auto s = sqrt_exact(r)) return *s;
    // floor(sqrt(num * 4^bits / den)) / 2^bits
    mpz_class scaled = r.get_num() << (2 * bits);
    mpz_class q = scaled / r.get_den();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
    Rational out(root, mpz_class(1) << bits);
    out.canonicalize();
    return out;
}

inline Rational factorial_rational(unsigned long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

}  // namespace powsum
