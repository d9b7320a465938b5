#pragma once

// Dense symmetric-matrix utilities on both scalar carriers. Exact mode
// certifies semidefiniteness by LDL^T with symmetric pivoting (pivot signs
// are the certificate); float mode goes through an eigendecomposition.
// Also: exact Gaussian elimination (rank / solve) for the recovery code.

#include "powsum/error.hpp"
#include "powsum/scalar.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace powsum {

template <class S>
struct SquareMatrix {
    int n = 0;
    std::vector<S> a;   // row-major n*n

    SquareMatrix() = default;
    explicit SquareMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, S(0)) {}

    S& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const S& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

template <class S>
struct PsdResult {
    bool psd = true;
    int failed_step = -1;            // elimination step (pivoted order) on failure
    std::vector<S> witness;          // v with v^T M v < 0 on failure
    S quad_form = S(0);              // value of v^T M v for the witness
};

template <class S>
bool is_symmetric(const SquareMatrix<S>& m, double eps) {
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) {
            S d = m.at(i, j) - m.at(j, i);
            double scale = 1.0;
            if constexpr (!scalar_traits<S>::is_exact)
                scale = std::max(1.0, std::abs(scalar_traits<S>::to_double(m.at(i, j))));
            if (!is_zero(d, eps * scale)) return false;
        }
    return true;
}

namespace detail {

// Builds the witness from reduced-block coordinates: solves L^T w = m with
// the unit lower factor accumulated in `lower` (columns 0..k-1), then
// un-permutes. m is zero below index k.
template <class S>
std::vector<S> lift_witness(const std::vector<std::vector<S>>& lower,
                            const std::vector<int>& perm, int n, int k,
                            const std::vector<S>& reduced) {
    std::vector<S> w(static_cast<size_t>(n), S(0));
    for (int i = k; i < n; ++i) w[i] = reduced[static_cast<size_t>(i - k)];
    for (int i = k - 1; i >= 0; --i) {
        S acc(0);
        for (int j = i + 1; j < n; ++j) acc += lower[j][i] * w[j];
        w[i] = -acc;
    }
    std::vector<S> v(static_cast<size_t>(n), S(0));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(perm[i])] = w[i];
    return v;
}

template <class S>
S quad_form(const SquareMatrix<S>& m, const std::vector<S>& v) {
    S out(0);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out += v[i] * m.at(i, j) * v[j];
    return out;
}

}  // namespace detail

// Exact certificate: LDL^T with largest-diagonal pivoting. PSD iff every
// pivot is positive and any all-zero-diagonal trailing block is entirely
// zero. On failure returns a witness vector with negative quadratic form.
template <class S>
PsdResult<S> psd_check_exact(const SquareMatrix<S>& m) {
    static_assert(scalar_traits<S>::is_exact);
    const int n = m.n;
    PsdResult<S> result;
    SquareMatrix<S> a = m;
    std::vector<std::vector<S>> lower(static_cast<size_t>(n),
                                      std::vector<S>(static_cast<size_t>(n), S(0)));
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;

    auto swap_sym = [&](int i, int j) {
        if (i == j) return;
        for (int t = 0; t < n; ++t) std::swap(a.at(i, t), a.at(j, t));
        for (int t = 0; t < n; ++t) std::swap(a.at(t, i), a.at(t, j));
        std::swap(perm[i], perm[j]);
        std::swap(lower[i], lower[j]);
    };

    for (int k = 0; k < n; ++k) {
        int pmax = k, pmin = k;
        for (int j = k + 1; j < n; ++j) {
            if (a.at(j, j) > a.at(pmax, pmax)) pmax = j;
            if (a.at(j, j) < a.at(pmin, pmin)) pmin = j;
        }
        if (sgn(a.at(pmin, pmin)) < 0) {
            // negative diagonal entry in the reduced block
            std::vector<S> reduced(static_cast<size_t>(n - k), S(0));
            reduced[static_cast<size_t>(pmin - k)] = S(1);
            result.psd = false;
            result.failed_step = k;
            result.witness = detail::lift_witness(lower, perm, n, k, reduced);
            result.quad_form = detail::quad_form(m, result.witness);
            return result;
        }
        if (sgn(a.at(pmax, pmax)) == 0) {
            // every remaining diagonal is zero; block must vanish entirely
            for (int i = k; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (sgn(a.at(i, j)) != 0) {
                        std::vector<S> reduced(static_cast<size_t>(n - k), S(0));
                        reduced[static_cast<size_t>(i - k)] =
                            sgn(a.at(i, j)) > 0 ? S(-1) : S(1);
                        reduced[static_cast<size_t>(j - k)] = S(1);
                        result.psd = false;
                        result.failed_step = k;
                        result.witness = detail::lift_witness(lower, perm, n, k, reduced);
                        result.quad_form = detail::quad_form(m, result.witness);
                        return result;
                    }
            return result;   // PSD, rank k
        }
        swap_sym(k, pmax);
        const S d = a.at(k, k);
        for (int i = k + 1; i < n; ++i) lower[i][k] = a.at(i, k) / d;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) -= lower[i][k] * a.at(k, j);
    }
    return result;
}

// Float certificate per the library's tolerance policy: smallest eigenvalue
// >= -eps * (1 + largest absolute entry). Witness is the bottom eigenvector.
inline PsdResult<double> psd_check_float(const SquareMatrix<double>& m, double eps) {
    const int n = m.n;
    PsdResult<double> result;
    Eigen::MatrixXd em(n, n);
    double amax = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            em(i, j) = m.at(i, j);
            amax = std::max(amax, std::abs(m.at(i, j)));
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(em);
    const double lmin = es.eigenvalues()(0);
    if (lmin >= -eps * (1.0 + amax)) return result;
    result.psd = false;
    result.failed_step = 0;
    result.witness.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) result.witness[i] = es.eigenvectors().col(0)(i);
    result.quad_form = detail::quad_form(m, result.witness);
    return result;
}

template <class S>
PsdResult<S> psd_check(const SquareMatrix<S>& m, double eps) {
    if (!is_symmetric(m, eps))
        throw Error(errc::non_symmetric, "psd_check requires a symmetric matrix");
    if constexpr (scalar_traits<S>::is_exact)
        return psd_check_exact(m);
    else
        return psd_check_float(m, eps);
}

namespace detail {

// Exact Gaussian elimination; returns rank, optionally completes a solve.
inline int exact_rank(std::vector<std::vector<Rational>> a) {
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (sgn(a[r][col]) != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            if (sgn(a[r][col]) == 0) continue;
            Rational f = a[r][col] / a[rank][col];
            for (int cc = col; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
        }
        ++rank;
    }
    return rank;
}

inline std::optional<std::vector<Rational>> exact_solve(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (sgn(a[r][col]) != 0) { pivot = r; break; }
        if (pivot < 0) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < n; ++r) {
            if (sgn(a[r][col]) == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (int cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(static_cast<size_t>(n), Rational(0));
    for (int r = n - 1; r >= 0; --r) {
        Rational acc = b[r];
        for (int cc = r + 1; cc < n; ++cc) acc -= a[r][cc] * x[cc];
        x[r] = acc / a[r][r];
    }
    return x;
}

}  // namespace detail

}  // namespace powsum
