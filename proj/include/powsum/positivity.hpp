#pragma once

// Gram-matrix positivity: the Hankel three-term step, Gram matrices built
// from partition polynomials over integer slot matrices, and the budgeted
// scan over all such matrices.

#include "powsum/linalg.hpp"
#include "powsum/partition.hpp"

#include <algorithm>
#include <vector>

namespace powsum {

// r x N matrix of positive integers, stored by column; column alpha holds
// the slot entries (k_1^alpha, ..., k_r^alpha).
struct GramSpec {
    std::vector<std::vector<int>> columns;

    int rows() const { return columns.empty() ? 0 : static_cast<int>(columns[0].size()); }
    int cols() const { return static_cast<int>(columns.size()); }

    void validate() const {
        if (columns.empty())
            throw Error(errc::bad_input, "gram spec needs at least one column");
        const size_t r = columns[0].size();
        if (r == 0) throw Error(errc::bad_input, "gram spec needs at least one row");
        for (const auto& col : columns) {
            if (col.size() != r)
                throw Error(errc::bad_input, "gram spec columns must share a length");
            for (int k : col)
                if (k < 1) throw Error(errc::bad_input, "gram spec entries must be >= 1");
        }
    }
};

template <class S>
struct PositivityViolation {
    GramSpec spec;
    int minor_index = 0;       // failing elimination step in pivoted order
    S value = S(0);            // witness quadratic form, negative
    std::vector<S> witness;
};

template <class S>
struct PositivityReport {
    long checked = 0;
    std::vector<PositivityViolation<S>> violations;

    bool clean() const { return violations.empty(); }
};

// c_{2k-2} c_{2k+2} - c_{2k}^2, the two-column determinant constraint.
template <class S>
S hankel_step(const MomentSequence<S>& c, int k) {
    if (k < 2) throw Error(errc::bad_input, "hankel_step needs k >= 2");
    if (2 * k + 2 > c.max_degree())
        throw Error(errc::degree_overflow, "hankel_step needs c_{2k+2} within truncation");
    return c.c2n(k - 1) * c.c2n(k + 1) - c.c2n(k) * c.c2n(k);
}

// M_{ab} = c_{k_1^a + k_1^b, ..., k_r^a + k_r^b}; entries with any odd part
// sum vanish (odd-length blocks carry no correlation).
template <class S>
SquareMatrix<S> gram_matrix(const PartitionPolyTable<S>& tbl, const GramSpec& spec) {
    spec.validate();
    const int ncols = spec.cols();
    const int r = spec.rows();
    SquareMatrix<S> m(ncols);
    for (int a = 0; a < ncols; ++a) {
        for (int b = a; b < ncols; ++b) {
            std::vector<int> parts(static_cast<size_t>(r));
            bool odd = false;
            int degree = 0;
            for (int i = 0; i < r; ++i) {
                parts[i] = spec.columns[a][i] + spec.columns[b][i];
                if (parts[i] % 2 != 0) odd = true;
                degree += parts[i];
            }
            S value(0);
            if (!odd) {
                if (degree > tbl.max_degree())
                    throw Error(errc::degree_overflow,
                                "gram entry degree exceeds the truncation");
                std::sort(parts.begin(), parts.end(), std::greater<>());
                value = tbl.eval(parts);
            }
            m.at(a, b) = value;
            m.at(b, a) = value;
        }
    }
    return m;
}

struct ScanBudget {
    int max_r = 3;
    int max_cols = 3;   // N in the determinant condition
    int max_k = 4;
};

namespace detail {

inline void enumerate_columns(int r, int max_k, int max_sum,
                              std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<size_t>(r), 1);
    while (true) {
        int sum = 0;
        for (int v : cur) sum += v;
        if (sum <= max_sum) out.push_back(cur);
        int pos = r - 1;
        while (pos >= 0 && cur[pos] == max_k) { cur[pos] = 1; --pos; }
        if (pos < 0) break;
        ++cur[pos];
    }
}

}  // namespace detail

// Every spec with r <= max_r, up to max_cols pairwise-distinct columns in
// lexicographic order, entries in [1, max_k]; columns whose slot sum exceeds
// N are skipped (their diagonal entry would overrun the truncation).
template <class S>
PositivityReport<S> positivity_scan(const PartitionPolyTable<S>& tbl,
                                    const ScanBudget& budget) {
    if (budget.max_r < 1 || budget.max_cols < 1 || budget.max_k < 1)
        throw Error(errc::bad_input, "scan budget must be >= 1 in every direction");
    PositivityReport<S> report;
    const double eps = tbl.source().epsilon;
    const int nseq = tbl.source().size();

    for (int r = 1; r <= budget.max_r; ++r) {
        std::vector<std::vector<int>> pool;
        detail::enumerate_columns(r, budget.max_k, nseq, pool);
        std::sort(pool.begin(), pool.end());
        const int p = static_cast<int>(pool.size());
        // choose 1..max_cols distinct columns, lexicographic combinations
        for (int ncols = 1; ncols <= budget.max_cols && ncols <= p; ++ncols) {
            std::vector<int> pick(static_cast<size_t>(ncols));
            for (int i = 0; i < ncols; ++i) pick[i] = i;
            while (true) {
                GramSpec spec;
                spec.columns.reserve(static_cast<size_t>(ncols));
                for (int i : pick) spec.columns.push_back(pool[static_cast<size_t>(i)]);
                SquareMatrix<S> m = gram_matrix(tbl, spec);
                PsdResult<S> res = psd_check(m, eps);
                ++report.checked;
                if (!res.psd)
                    report.violations.push_back(
                        {spec, res.failed_step, res.quad_form, res.witness});
                int pos = ncols - 1;
                while (pos >= 0 && pick[pos] == p - ncols + pos) --pos;
                if (pos < 0) break;
                ++pick[pos];
                for (int i = pos + 1; i < ncols; ++i) pick[i] = pick[i - 1] + 1;
            }
        }
    }
    return report;
}

}  // namespace powsum
