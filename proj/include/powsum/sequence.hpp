#pragma once

// Core value types: truncated even-moment sequences, weight vectors, and the
// sequence-level admissibility gate (sign pattern and ratio monotonicity).

#include "powsum/error.hpp"
#include "powsum/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace powsum {

inline constexpr double kDefaultEpsilon = 1e-12;

// values[j] = c_{2(j+1)}; the sequence carries its float-mode tolerance.
template <class S>
struct MomentSequence {
    std::vector<S> values;
    double epsilon = kDefaultEpsilon;

    MomentSequence() = default;
    explicit MomentSequence(std::vector<S> v, double eps = kDefaultEpsilon)
        : values(std::move(v)), epsilon(eps) {}

    int size() const { return static_cast<int>(values.size()); }
    int max_degree() const { return 2 * size(); }

    // paper-style access: c2n(n) = c_{2n}, n = 1..N
    const S& c2n(int n) const {
        if (n < 1 || n > size())
            throw Error(errc::degree_overflow,
                        "c_{2n} with n=" + std::to_string(n) +
                            " outside truncation N=" + std::to_string(size()));
        return values[static_cast<size_t>(n - 1)];
    }
};

template <class S>
struct WeightVector {
    std::vector<S> weights;   // sorted nonincreasing, all strictly positive

    WeightVector() = default;
    explicit WeightVector(std::vector<S> w) : weights(std::move(w)) {
        for (const S& x : weights)
            if (!(x > S(0)))
                throw Error(errc::bad_input, "weights must be strictly positive");
        std::sort(weights.begin(), weights.end(), std::greater<S>());
    }

    int size() const { return static_cast<int>(weights.size()); }
    bool empty() const { return weights.empty(); }

    S sum() const {
        S s(0);
        for (const S& x : weights) s += x;
        return s;
    }
};

struct ValidityReport {
    bool nonnegative = true;
    bool zero_pattern = true;
    bool ratio_monotone = true;
    std::optional<int> first_negative;        // values[] index
    std::optional<int> first_zero_pattern;    // values[] index
    std::optional<int> first_non_monotone;    // values[] index closing the bad triple

    bool all_pass() const { return nonnegative && zero_pattern && ratio_monotone; }
};

// Lemma-level gate: entries nonnegative, all-zero or all-positive, and
// c_{2n-2} c_{2n+2} - c_{2n}^2 >= 0 along the sequence. Reports every flag;
// passing does not certify full determinant positivity.
template <class S>
ValidityReport validate_sequence(const MomentSequence<S>& c) {
    ValidityReport rep;
    const double eps = c.epsilon;
    const int n = c.size();

    for (int j = 0; j < n; ++j) {
        if (is_negative(c.values[j], eps)) {
            rep.nonnegative = false;
            rep.first_negative = j;
            break;
        }
    }

    if (n > 0) {
        const bool head_zero = is_zero(c.values[0], eps);
        for (int j = 1; j < n; ++j) {
            if (is_zero(c.values[j], eps) != head_zero) {
                rep.zero_pattern = false;
                rep.first_zero_pattern = j;
                break;
            }
        }
    }

    bool all_positive = rep.nonnegative;
    for (int j = 0; all_positive && j < n; ++j)
        if (!is_positive(c.values[j], eps)) all_positive = false;

    if (all_positive && n >= 3) {
        for (int j = 1; j + 1 < n; ++j) {
            const S h = c.values[j - 1] * c.values[j + 1] - c.values[j] * c.values[j];
            double scale = 1.0;
            if constexpr (!scalar_traits<S>::is_exact) {
                scale = std::max({1.0,
                                  std::abs(scalar_traits<S>::to_double(c.values[j - 1] * c.values[j + 1])),
                                  std::abs(scalar_traits<S>::to_double(c.values[j] * c.values[j]))});
            }
            if (is_negative(h, eps * scale)) {
                rep.ratio_monotone = false;
                rep.first_non_monotone = j + 1;
                break;
            }
        }
    }
    return rep;
}

}  // namespace powsum
