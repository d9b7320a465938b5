#pragma once

// Partition polynomials c_{2k_1,...,2k_r} in the sequence entries: the
// defining recursion, the closed form on weight vectors (the test oracle),
// the one-weight reduction, and its inversion.

#include "powsum/multi_index.hpp"
#include "powsum/sequence.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace powsum {

inline constexpr int kMaxSubsetParts = 16;   // 2^16 subset terms per evaluation

// Memoized evaluator over one source sequence. The cache is transparent:
// entries always equal a fresh recomputation. Thread-safe for shared use.
template <class S>
class PartitionPolyTable {
public:
    explicit PartitionPolyTable(MomentSequence<S> source)
        : source_(std::move(source)) {}

    const MomentSequence<S>& source() const { return source_; }
    int max_degree() const { return source_.max_degree(); }

    S eval(const std::vector<int>& parts_sorted_desc) const {
        if (parts_sorted_desc.empty()) return S(1);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(parts_sorted_desc);
            if (it != cache_.end()) return it->second;
        }
        S value = compute(parts_sorted_desc);
        std::lock_guard<std::mutex> lock(mutex_);
        cache_.emplace(parts_sorted_desc, value);
        return value;
    }

private:
    S compute(const std::vector<int>& parts) const {
        const int r = static_cast<int>(parts.size());
        if (r == 1) return source_.c2n(parts[0] / 2);
        if (r - 1 > kMaxSubsetParts)
            throw Error(errc::too_many_parts,
                        "index with " + std::to_string(r) + " parts exceeds the subset cap");
        // distinguished part = largest (symmetry makes the choice free)
        const int head = parts[0];
        std::vector<int> rest(parts.begin() + 1, parts.end());
        const int t = r - 1;
        S total(0);
        for (unsigned mask = 0; mask < (1u << t); ++mask) {
            int subset_degree = 0;
            int subset_size = 0;
            std::vector<int> remaining;
            remaining.reserve(t);
            for (int i = 0; i < t; ++i) {
                if (mask & (1u << i)) {
                    subset_degree += rest[i];
                    ++subset_size;
                } else {
                    remaining.push_back(rest[i]);
                }
            }
            S term = source_.c2n((head + subset_degree) / 2) * eval(remaining);
            long fac = 1;
            for (int i = 2; i <= subset_size; ++i) fac *= i;
            term *= scalar_traits<S>::from_long(subset_size % 2 == 0 ? fac : -fac);
            total += term;
        }
        return total;
    }

    MomentSequence<S> source_;
    mutable std::map<std::vector<int>, S> cache_;
    mutable std::mutex mutex_;
};

template <class S>
S partition_poly(const PartitionPolyTable<S>& tbl, const MultiIndex& idx) {
    if (idx.order() > tbl.max_degree())
        throw Error(errc::degree_overflow,
                    "index degree " + std::to_string(idx.order()) +
                        " exceeds truncation " + std::to_string(tbl.max_degree()));
    return tbl.eval(idx.parts());
}

// Closed form on a weight vector: sum over tuples of pairwise-distinct
// weight indices of prod_s alpha_{i_s}^{2 k_s}. Zero when the index has more
// parts than there are weights.
template <class S>
S sproduct_partition_poly(const WeightVector<S>& w, const MultiIndex& idx) {
    const int r = idx.size();
    const int m = w.size();
    if (r > m) return S(0);
    // powers[i][s] = alpha_i ^ parts[s]
    const auto& parts = idx.parts();
    std::vector<std::vector<S>> powers(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        powers[i].reserve(parts.size());
        for (int p : parts)
            powers[i].push_back(scalar_traits<S>::pow2n(w.weights[i], p / 2));
    }
    S total(0);
    std::vector<char> used(static_cast<size_t>(m), 0);
    std::function<void(int, const S&)> walk = [&](int slot, const S& acc) {
        if (slot == r) {
            total += acc;
            return;
        }
        for (int i = 0; i < m; ++i) {
            if (used[i]) continue;
            used[i] = 1;
            walk(slot + 1, acc * powers[i][slot]);
            used[i] = 0;
        }
    };
    walk(0, S(1));
    return total;
}

// c*_{2k_1,...,2k_r} = sum over subsets of the parts of
// (-1)^|S| |S|! alpha^{||S||} c_{parts \ S}; singleton gives c_{2n} - alpha^{2n}.
template <class S>
S reduce_partition_poly(const PartitionPolyTable<S>& tbl, const S& alpha,
                        const MultiIndex& idx) {
    if (idx.order() > tbl.max_degree())
        throw Error(errc::degree_overflow, "index degree exceeds truncation");
    const auto& parts = idx.parts();
    const int r = idx.size();
    if (r > kMaxSubsetParts)
        throw Error(errc::too_many_parts, "index exceeds the subset cap");
    S total(0);
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        int subset_degree = 0;
        int subset_size = 0;
        std::vector<int> remaining;
        remaining.reserve(r);
        for (int i = 0; i < r; ++i) {
            if (mask & (1u << i)) {
                subset_degree += parts[i];
                ++subset_size;
            } else {
                remaining.push_back(parts[i]);
            }
        }
        S term = scalar_traits<S>::pow2n(alpha, subset_degree / 2) * tbl.eval(remaining);
        long fac = 1;
        for (int i = 2; i <= subset_size; ++i) fac *= i;
        term *= scalar_traits<S>::from_long(subset_size % 2 == 0 ? fac : -fac);
        total += term;
    }
    return total;
}

// Inverse map: rebuilds c_{idx} from the reduced table,
// c = c* + sum_i alpha^{2k_i} c*_{idx minus part i}. Round-trips exactly
// with reduce_partition_poly in rational mode.
template <class S>
S invert_reduction(const PartitionPolyTable<S>& reduced_tbl, const S& alpha,
                   const MultiIndex& idx) {
    if (idx.order() > reduced_tbl.max_degree())
        throw Error(errc::degree_overflow, "index degree exceeds truncation");
    S total = reduced_tbl.eval(idx.parts());
    for (int i = 0; i < idx.size(); ++i) {
        total += scalar_traits<S>::pow2n(alpha, idx.parts()[i] / 2) *
                 reduced_tbl.eval(idx.without(i));
    }
    return total;
}

}  // namespace powsum
