#pragma once

// The even power series E(t): diagonal coefficients via partition sums, the
// full series via a layered convolution recursion, the product form on
// weight vectors, the one-weight factorization test, and growth bounds.

#include "powsum/partition.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace powsum {

// coeffs[n] multiplies t^{2n}; coeffs[0] = 1 for any admissible sequence.
template <class S>
struct SeriesTruncation {
    std::vector<S> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

namespace detail {

template <class S>
S scalar_from_mpz(const mpz_class& z) {
    if constexpr (scalar_traits<S>::is_exact)
        return Rational(z);
    else
        return z.get_d();
}

template <class S>
S inv_even_factorial(int k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(2 * k));
    return S(1) / scalar_from_mpz<S>(f);
}

// truncated product of two even series given as coefficient vectors
template <class S>
std::vector<S> series_mul(const std::vector<S>& a, const std::vector<S>& b, int order) {
    std::vector<S> out(static_cast<size_t>(order) + 1, S(0));
    for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
        if (is_zero(a[i], 0.0) && scalar_traits<S>::is_exact) continue;
        for (int j = 0; j + i <= order && j < static_cast<int>(b.size()); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

inline void partitions_of(int n, int max_part, std::vector<int>& stack,
                          const std::function<void(const std::vector<int>&)>& visit) {
    if (n == 0) {
        visit(stack);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        stack.push_back(p);
        partitions_of(n - p, p, stack, visit);
        stack.pop_back();
    }
}

}  // namespace detail

// W_{2n}: sum over partitions (k_1 >= ... >= k_r) of n of
// (2n)! / (prod (2k_i)! * prod mult_v!) * c_{2k_1,...,2k_r}.
template <class S>
S wightman_diagonal(const PartitionPolyTable<S>& tbl, int n) {
    if (n < 1) throw Error(errc::bad_input, "wightman_diagonal needs n >= 1");
    if (2 * n > tbl.max_degree())
        throw Error(errc::degree_overflow, "diagonal order exceeds the truncation");
    mpz_class fac2n;
    mpz_fac_ui(fac2n.get_mpz_t(), static_cast<unsigned long>(2 * n));
    S total(0);
    std::vector<int> stack;
    detail::partitions_of(n, n, stack, [&](const std::vector<int>& lambda) {
        mpz_class denom(1), tmp;
        int run = 1;
        for (size_t i = 0; i < lambda.size(); ++i) {
            mpz_fac_ui(tmp.get_mpz_t(), static_cast<unsigned long>(2 * lambda[i]));
            denom *= tmp;
            if (i + 1 < lambda.size() && lambda[i + 1] == lambda[i]) {
                ++run;
            } else {
                mpz_fac_ui(tmp.get_mpz_t(), static_cast<unsigned long>(run));
                denom *= tmp;
                run = 1;
            }
        }
        std::vector<int> parts(lambda.size());
        for (size_t i = 0; i < lambda.size(); ++i) parts[i] = 2 * lambda[i];
        S coeff = detail::scalar_from_mpz<S>(fac2n) / detail::scalar_from_mpz<S>(denom);
        total += coeff * tbl.eval(parts);
    });
    return total;
}

// E(t) to t^{2*order} via the layered recursion
//   F_0 = 1,   (r+1) F_{r+1} = sum_s (-1)^s G_s F_{r-s},
// where G_s collects c_{2m} times the (s+1)-fold convolution of 1/(2k)!.
// Coefficient-level equivalent of the diagonal partition sums, polynomial
// cost instead of per-index subset sums.
template <class S>
SeriesTruncation<S> series_E(const PartitionPolyTable<S>& tbl, int order) {
    if (order < 0) throw Error(errc::bad_input, "series order must be >= 0");
    if (order > tbl.source().size())
        throw Error(errc::degree_overflow, "series order exceeds the truncation");
    const int n = order;
    // h[k] = 1/(2k)!, k >= 1 (index 0 unused)
    std::vector<S> h(static_cast<size_t>(n) + 1, S(0));
    for (int k = 1; k <= n; ++k) h[k] = detail::inv_even_factorial<S>(k);

    // u_s = (s+1)-fold convolution of h; G_s[m] = c_{2m} u_s[m]
    std::vector<std::vector<S>> g;
    std::vector<S> u = h;
    for (int s = 0; s <= n; ++s) {
        std::vector<S> gs(static_cast<size_t>(n) + 1, S(0));
        for (int m = s + 1; m <= n; ++m)
            if (m <= tbl.source().size()) gs[m] = tbl.source().c2n(m) * u[m];
        g.push_back(std::move(gs));
        if (s < n) {
            std::vector<S> nu(static_cast<size_t>(n) + 1, S(0));
            for (int i = 1; i <= n; ++i)
                for (int j = 1; i + j <= n; ++j) nu[i + j] += u[i] * h[j];
            u = std::move(nu);
        }
    }

    std::vector<std::vector<S>> layers;
    std::vector<S> f0(static_cast<size_t>(n) + 1, S(0));
    f0[0] = S(1);
    layers.push_back(std::move(f0));
    for (int r = 0; r < n; ++r) {
        std::vector<S> next(static_cast<size_t>(n) + 1, S(0));
        for (int s = 0; s <= r; ++s) {
            std::vector<S> prod = detail::series_mul(g[s], layers[r - s], n);
            const S sign = scalar_traits<S>::from_long(s % 2 == 0 ? 1 : -1);
            for (int m = 0; m <= n; ++m) next[m] += sign * prod[m];
        }
        const S inv = S(1) / scalar_traits<S>::from_long(r + 1);
        for (int m = 0; m <= n; ++m) next[m] *= inv;
        layers.push_back(std::move(next));
    }

    SeriesTruncation<S> out;
    out.coeffs.assign(static_cast<size_t>(n) + 1, S(0));
    for (const auto& layer : layers)
        for (int m = 0; m <= n; ++m) out.coeffs[m] += layer[m];
    return out;
}

// prod_i cosh(alpha_i t) truncated at t^{2*order}; empty product = 1.
template <class S>
SeriesTruncation<S> product_form(const WeightVector<S>& w, int order) {
    if (order < 0) throw Error(errc::bad_input, "series order must be >= 0");
    std::vector<S> acc(static_cast<size_t>(order) + 1, S(0));
    acc[0] = S(1);
    for (const S& alpha : w.weights) {
        std::vector<S> ch(static_cast<size_t>(order) + 1, S(0));
        for (int k = 0; k <= order; ++k)
            ch[k] = scalar_traits<S>::pow2n(alpha, k) * detail::inv_even_factorial<S>(std::max(k, 0));
        ch[0] = S(1);
        acc = detail::series_mul(acc, ch, order);
    }
    SeriesTruncation<S> out;
    out.coeffs = std::move(acc);
    return out;
}

// Does E(c) factor as cosh(alpha t) * E(c - alpha-powers) through t^{2*order},
// with an admissible cofactor? The product identity itself is a polynomial
// identity in alpha (it follows from the reduction inversion alone), so the
// equality half mainly cross-checks the series machinery; what singles out
// the true leading weight is that the reduced series keeps nonnegative
// coefficients.
template <class S>
bool factorization_check(const PartitionPolyTable<S>& tbl, const S& alpha, int order) {
    if (order > tbl.source().size())
        throw Error(errc::degree_overflow, "series order exceeds the truncation");
    const MomentSequence<S>& c = tbl.source();
    MomentSequence<S> reduced = c;
    for (int j = 0; j < c.size(); ++j)
        reduced.values[j] -= scalar_traits<S>::pow2n(alpha, j + 1);
    PartitionPolyTable<S> rt(reduced);

    SeriesTruncation<S> lhs = series_E(tbl, order);
    SeriesTruncation<S> estar = series_E(rt, order);
    WeightVector<S> single(std::vector<S>{alpha});
    SeriesTruncation<S> ch = product_form(single, order);
    std::vector<S> rhs = detail::series_mul(ch.coeffs, estar.coeffs, order);

    for (int m = 0; m <= order; ++m) {
        S diff = lhs.coeffs[m] - rhs[m];
        double scale = 1.0;
        if constexpr (!scalar_traits<S>::is_exact)
            scale = std::max(1.0, std::abs(scalar_traits<S>::to_double(lhs.coeffs[m])));
        if (!is_zero(diff, c.epsilon * scale)) return false;
    }
    for (int m = 0; m <= order; ++m)
        if (is_negative(estar.coeffs[m], c.epsilon)) return false;
    return true;
}

template <class S>
struct LambdaBounds {
    S lower = S(0);                 // sup sqrt(c_{2n+2}/c_{2n}) over the truncation
    std::optional<S> upper;         // sum of weights when a decomposition is given
    double empirical = 0.0;         // max over the grid of log(E_N(t))/t, advisory
};

template <class S>
LambdaBounds<S> lambda_bounds(const PartitionPolyTable<S>& tbl, int order,
                              const std::vector<double>& t_grid,
                              const std::optional<WeightVector<S>>& decomposition = std::nullopt) {
    LambdaBounds<S> out;
    const MomentSequence<S>& c = tbl.source();
    const double eps = c.epsilon;

    S best_ratio(0);
    bool any = false;
    for (int n = 1; n + 1 <= c.size(); ++n) {
        if (!is_positive(c.c2n(n), eps)) { any = false; break; }
        S ratio = c.c2n(n + 1) / c.c2n(n);
        if (!any || ratio > best_ratio) { best_ratio = ratio; any = true; }
    }
    if (any && is_positive(best_ratio, 0.0))
        out.lower = scalar_traits<S>::sqrt(best_ratio);

    if (decomposition) out.upper = decomposition->sum();

    if (!t_grid.empty()) {
        SeriesTruncation<S> e = series_E(tbl, std::min(order, c.size()));
        double best = 0.0;
        for (double t : t_grid) {
            if (t <= 0) continue;
            double sum = 0.0;
            double t2 = t * t, p = 1.0;
            for (const S& coef : e.coeffs) {
                sum += scalar_traits<S>::to_double(coef) * p;
                p *= t2;
            }
            if (sum > 0) best = std::max(best, std::log(sum) / t);
        }
        out.empirical = best;
    }
    return out;
}

}  // namespace powsum
