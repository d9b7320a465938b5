#pragma once

// Constructive decomposition c_{2n} = sum_i alpha_i^{2n}: leading-weight
// extraction from the ratio tail, one-weight reduction, the full greedy
// cascade with refinement and stop logic, an independent Prony-style
// recovery, and the generator used as its oracle.
//
// Float-mode notes. Sequential deflation is numerically delicate: after a
// weight is subtracted, its estimation error survives in the residual as a
// ghost geometric mode and grows relative to the remaining signal. The
// cascade therefore (a) estimates each new mode from the residual filtered
// by the characteristic polynomial of the already-extracted modes (which
// annihilates ghosts instead of amplifying them), (b) selects the model
// order by the largest residual drop and confirms the root across orders,
// (c) re-fits the extracted set on data suffixes it fully explains, and
// (d) finishes with a least-squares refinement on all rows once the model
// is complete, falling back to a pencil-seeded global fit when sequential
// extraction stalls. Exact mode needs none of this: deflation is exact and
// the recurrence order is decided by exact consistency.

#include "powsum/genfun.hpp"
#include "powsum/linalg.hpp"
#include "powsum/sequence.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace powsum {

struct DecomposeOptions {
    double tol = 1e-8;      // per-entry stop tolerance, relative to max(1, |c_2n|)
    int max_weights = 16;
    int min_tail = 3;       // shortest usable residual prefix
};

enum class StopReason {
    residual_below_tol,
    max_weights_reached,
    tail_too_short,
    nonpositive_residual
};

inline const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::residual_below_tol: return "residual-below-tol";
        case StopReason::max_weights_reached: return "max-weights-reached";
        case StopReason::tail_too_short: return "tail-too-short";
        case StopReason::nonpositive_residual: return "nonpositive-residual";
    }
    return "?";
}

template <class S>
struct IterationDiag {
    S alpha = S(0);                  // candidate extracted at this iteration
    std::vector<S> ratio_tail;       // last ratios of the residual (up to 3)
    S aitken = S(0);                 // raw Aitken estimate of the ratio limit
    S extrapolation_residual = S(0); // |r_M - r_{M-1}|
    int fit_order = 0;
    double fit_residual = 0.0;
};

template <class S>
struct DecompositionReport {
    WeightVector<S> weights;
    int iterations = 0;
    MomentSequence<S> residual;
    std::vector<IterationDiag<S>> per_iteration;
    StopReason stop_reason = StopReason::residual_below_tol;
    S lambda_lower = S(0);
    std::optional<S> lambda_upper;
    bool conditioning_warning = false;
    bool refined = false;            // a global refinement pass replaced raw estimates
};

template <class S>
struct LeadingWeightResult {
    S alpha = S(0);
    bool certified = false;          // exact-mode extraction was exact
    int fit_order = 0;
    double fit_residual = 0.0;
    S aitken = S(0);
    S extrapolation_residual = S(0);
    std::vector<S> ratio_tail;
};

// c_{2n} = sum_i alpha_i^{2n}, n = 1..count.
template <class S>
MomentSequence<S> reconstruct(const WeightVector<S>& w, int count,
                              double eps = kDefaultEpsilon) {
    MomentSequence<S> c;
    c.epsilon = eps;
    c.values.reserve(static_cast<size_t>(count));
    for (int n = 1; n <= count; ++n) {
        S s(0);
        for (const S& a : w.weights) s += scalar_traits<S>::pow2n(a, n);
        c.values.push_back(s);
    }
    return c;
}

// c*_{2n} = c_{2n} - alpha^{2n}. Float entries within epsilon of zero are
// clamped to zero (flagged); entries below -epsilon raise.
template <class S>
MomentSequence<S> reduce(const MomentSequence<S>& c, const S& alpha,
                         bool* clamped = nullptr) {
    MomentSequence<S> out = c;
    if (clamped) *clamped = false;
    for (int j = 0; j < c.size(); ++j) {
        out.values[j] -= scalar_traits<S>::pow2n(alpha, j + 1);
        if constexpr (scalar_traits<S>::is_exact) {
            if (sgn(out.values[j]) < 0)
                throw Error(errc::nonpositive_residual,
                            "reduction drove c_{2n} negative at n=" + std::to_string(j + 1));
        } else {
            double v = out.values[j];
            double scale = std::max(1.0, std::abs(c.values[j]));
            if (v < -c.epsilon * scale)
                throw Error(errc::nonpositive_residual,
                            "reduction drove c_{2n} negative at n=" + std::to_string(j + 1));
            if (std::abs(v) <= c.epsilon * scale && v != 0.0) {
                out.values[j] = 0.0;
                if (clamped) *clamped = true;
            }
        }
    }
    return out;
}

namespace detail {

// ---------------------------------------------------------------- float --

struct FitPick {
    double alpha = 0.0;
    double resid = 1e300;
    int order = 0;
    bool ok() const { return alpha > 0.0; }
};

// Adaptive-order least-squares recurrence fit on g[0..W). Roots above the
// bound are ghosts of extracted weights and are ignored. The model order is
// anchored at the largest residual drop and confirmed across orders.
inline FitPick fit_dominant(const std::vector<double>& g, int W, double xbound) {
    std::vector<double> resids, doms;
    for (int k = 1; 2 * k + 1 <= W + 1 && k <= 10; ++k) {
        const int rows = W - k;
        const bool square = rows <= k;   // zero residual by construction
        Eigen::MatrixXd A(rows, k);
        Eigen::VectorXd b(rows);
        for (int i = 0; i < rows; ++i) {
            double scale = std::max(std::abs(g[i + k]), 1e-300);
            for (int j = 0; j < k; ++j) A(i, j) = g[i + j] / scale;
            b(i) = g[i + k] / scale;
        }
        Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
        double resid = (A * coef - b).cwiseAbs().maxCoeff();
        double dom = 0;
        if (k == 1) {
            if (coef(0) <= xbound * (1 + 1e-9)) dom = coef(0);
        } else {
            Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k, k);
            for (int i = 1; i < k; ++i) C(i, i - 1) = 1.0;
            for (int i = 0; i < k; ++i) C(i, k - 1) = coef(i);
            Eigen::EigenSolver<Eigen::MatrixXd> es(C);
            for (int i = 0; i < k; ++i) {
                auto ev = es.eigenvalues()(i);
                if (std::abs(ev.imag()) < 1e-7 * std::max(1.0, std::abs(ev.real())) &&
                    ev.real() <= xbound * (1 + 1e-9))
                    dom = std::max(dom, ev.real());
            }
        }
        resids.push_back(square ? 1.0 : resid);
        doms.push_back(dom);
    }
    const int m = static_cast<int>(doms.size());
    FitPick best;
    int kstar = -1;
    double bigdrop = 0, prev = 1.0;
    for (int k = 0; k < m; ++k) {
        double r = std::max(resids[k], 1e-18);
        if (doms[k] > 0 && prev / r > bigdrop) { bigdrop = prev / r; kstar = k; }
        prev = r;
    }
    if (kstar >= 0) {
        const double anchor = doms[kstar];
        for (int k = kstar; k < m; ++k)
            if (doms[k] > 0 && std::abs(doms[k] - anchor) <= 2e-3 * anchor &&
                resids[k] < best.resid)
                best = {std::sqrt(doms[k]), resids[k], k + 1};
    }
    if (!best.ok()) {
        for (int k = 0; k < m; ++k)
            if (doms[k] > 0 && resids[k] < best.resid)
                best = {std::sqrt(doms[k]), resids[k], k + 1};
    }
    return best;
}

// Levenberg-Marquardt on the relative moment equations over rows [lo..N].
inline double lm_rows(std::vector<double>& work, const std::vector<double>& c, int lo) {
    const int I = static_cast<int>(work.size());
    const int N = static_cast<int>(c.size());
    const int R = N - lo + 1;
    if (R < 1 || I < 1) return 1e300;
    auto eval = [&](const std::vector<double>& a, Eigen::VectorXd& f) {
        for (int n = lo; n <= N; ++n) {
            double s = 0;
            for (double w : a) s += std::pow(w, 2.0 * n);
            f(n - lo) = (s - c[n - 1]) / std::max(std::abs(c[n - 1]), 1e-300);
        }
    };
    Eigen::VectorXd f(R), ft(R);
    eval(work, f);
    double lambda = 1e-6;
    for (int iter = 0; iter < 120; ++iter) {
        Eigen::MatrixXd J(R, I);
        for (int n = lo; n <= N; ++n)
            for (int i = 0; i < I; ++i)
                J(n - lo, i) = 2.0 * n * std::pow(work[i], 2.0 * n - 1) /
                               std::max(std::abs(c[n - 1]), 1e-300);
        Eigen::MatrixXd H = J.transpose() * J;
        Eigen::VectorXd gvec = J.transpose() * f;
        for (int i = 0; i < I; ++i) H(i, i) += lambda * (H(i, i) + 1e-30);
        Eigen::VectorXd d = H.ldlt().solve(gvec);
        if (!d.allFinite()) break;
        std::vector<double> trial = work;
        double lim = 1.0;
        for (int i = 0; i < I; ++i)
            while (lim > 1e-8 && trial[i] - lim * d(i) <= 0) lim *= 0.5;
        for (int i = 0; i < I; ++i) trial[i] -= lim * d(i);
        eval(trial, ft);
        if (ft.squaredNorm() <= f.squaredNorm()) {
            const bool done = d.cwiseAbs().maxCoeff() < 1e-16 * std::max(1.0, work[0]);
            work = trial;
            f = ft;
            lambda = std::max(lambda * 0.3, 1e-12);
            if (done) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e8) break;
        }
    }
    double mf = 0;
    for (int n = lo; n <= N; ++n) {
        double s = 0;
        for (double w : work) s += std::pow(w, 2.0 * n);
        mf = std::max(mf, std::abs(s - c[n - 1]) / std::max(std::abs(c[n - 1]), 1e-300));
    }
    return mf;
}

// refine with two deterministic jittered restarts when the basin is shallow
inline double refine_rows(std::vector<double>& a, const std::vector<double>& c, int lo) {
    std::vector<double> best = a;
    double bestmf = lm_rows(best, c, lo);
    for (int j = 0; j < 2 && bestmf > 1e-11; ++j) {
        std::vector<double> trial = a;
        const double eps = (j == 0) ? 1e-3 : -1e-3;
        for (size_t i = 0; i < trial.size(); ++i)
            trial[i] *= 1.0 + eps * (i % 2 ? 1.0 : -1.0);
        double mf = lm_rows(trial, c, lo);
        if (mf < bestmf) { bestmf = mf; best = trial; }
    }
    a = best;
    return bestmf;
}

struct FloatEngineResult {
    std::vector<double> weights;
    StopReason stop = StopReason::residual_below_tol;
    std::vector<double> residual;
    bool refined = false;
    bool warning = false;
    struct Diag {
        double alpha;
        std::vector<double> ratio_tail;
        double aitken;
        double extrap_resid;
        int fit_order;
        double fit_residual;
    };
    std::vector<Diag> diags;
};

inline void aitken_diag(const std::vector<double>& res, FloatEngineResult::Diag& d) {
    std::vector<double> ratios;
    for (size_t j = 0; j + 1 < res.size(); ++j)
        if (res[j] > 0 && res[j + 1] > 0) ratios.push_back(res[j + 1] / res[j]);
        else break;
    const size_t M = ratios.size();
    for (size_t j = M >= 3 ? M - 3 : 0; j < M; ++j) d.ratio_tail.push_back(ratios[j]);
    if (M >= 2) d.extrap_resid = std::abs(ratios[M - 1] - ratios[M - 2]);
    if (M >= 3) {
        const double r0 = ratios[M - 3], r1 = ratios[M - 2], r2 = ratios[M - 1];
        const double d2 = r2 - 2 * r1 + r0;
        double est = (d2 != 0.0) ? r2 - (r2 - r1) * (r2 - r1) / d2 : r2;
        d.aitken = est > 0 ? std::sqrt(est) : 0.0;
    } else if (M >= 1) {
        d.aitken = ratios[M - 1] > 0 ? std::sqrt(ratios[M - 1]) : 0.0;
    }
}

inline FloatEngineResult decompose_float_engine(const std::vector<double>& c0,
                                                const DecomposeOptions& opts) {
    const int N = static_cast<int>(c0.size());
    const double tol = opts.tol;
    FloatEngineResult out;
    std::vector<double> res = c0;

    auto recompute = [&]() {
        for (int n = 1; n <= N; ++n) {
            double s = 0;
            for (double w : out.weights) s += std::pow(w, 2.0 * n);
            res[n - 1] = c0[n - 1] - s;
        }
    };
    auto below_tol = [&]() {
        for (int n = 0; n < N; ++n)
            if (std::abs(res[n]) > tol * std::max(1.0, std::abs(c0[n]))) return false;
        return true;
    };

    // full refit; on success prune to the smallest model that still explains
    // the data (an overfit can split one true weight into a spurious pair)
    auto salvage = [&]() -> bool {
        if (out.weights.empty()) return false;
        std::vector<double> trial = out.weights;
        if (refine_rows(trial, c0, 1) > tol) return false;
        bool pruned = true;
        while (pruned && trial.size() > 1) {
            pruned = false;
            for (size_t drop = 0; drop < trial.size(); ++drop) {
                std::vector<double> smaller;
                for (size_t j = 0; j < trial.size(); ++j)
                    if (j != drop) smaller.push_back(trial[j]);
                if (refine_rows(smaller, c0, 1) <= tol) {
                    trial = smaller;
                    pruned = true;
                    break;
                }
            }
        }
        out.weights = trial;
        std::sort(out.weights.begin(), out.weights.end(), std::greater<>());
        out.refined = true;
        recompute();
        return true;
    };

    // candidate weight multiset from a root pool: keep roots carrying a
    // near-integer positive amplitude; near-degenerate fused roots are
    // seeded split apart at several scales before refinement
    auto try_pool = [&](std::vector<double> roots) -> bool {
        if (roots.empty()) return false;
        std::sort(roots.begin(), roots.end(), std::greater<>());
        const int R = static_cast<int>(roots.size());
        Eigen::MatrixXd V(N, R);
        Eigen::VectorXd y(N);
        for (int n = 1; n <= N; ++n) {
            const double denom = std::max(std::abs(c0[n - 1]), 1e-300);
            for (int j = 0; j < R; ++j) V(n - 1, j) = std::pow(roots[j], n) / denom;
            y(n - 1) = c0[n - 1] / denom;
        }
        Eigen::VectorXd amp = V.colPivHouseholderQr().solve(y);
        for (double f : {1.0, 1.03, 1.08, 1.15, 1.22}) {
            std::vector<double> seed;
            for (int j = 0; j < R; ++j) {
                const int rep = static_cast<int>(std::lround(amp(j)));
                if (rep < 1 || rep > 4) continue;
                if (std::abs(amp(j) - rep) > 0.45) continue;
                for (int q = 0; q < rep; ++q) {
                    const double spread =
                        (rep == 1) ? 1.0 : std::pow(f, q - (rep - 1) * 0.5);
                    seed.push_back(std::sqrt(roots[j]) * spread);
                }
            }
            if (seed.empty()) continue;
            std::vector<double> trial = seed;
            if (refine_rows(trial, c0, 1) <= tol) {
                out.weights = trial;
                std::sort(out.weights.begin(), out.weights.end(), std::greater<>());
                out.refined = true;
                out.warning = true;
                recompute();
                salvage();   // prunes if overparameterized
                return true;
            }
        }
        return false;
    };

    auto pencil_pool = [&]() -> std::vector<double> {
        std::vector<double> roots;
        const int m = N / 2;
        if (m < 1) return roots;
        double bal = 1.0;
        if (N >= 2 && c0[N - 2] > 0 && c0[N - 1] > 0) bal = c0[N - 1] / c0[N - 2];
        if (!(bal > 0) || !std::isfinite(bal)) bal = 1.0;
        Eigen::MatrixXd H0(m, m), H1(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const double scale = std::pow(bal, i + j + 1);
                H0(i, j) = c0[i + j] / scale;
                H1(i, j) = c0[i + j + 1] / scale;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(H0);
        const double emax = eh.eigenvalues().cwiseAbs().maxCoeff();
        std::vector<int> keep;
        for (int i = 0; i < m; ++i)
            if (eh.eigenvalues()(i) > 1e-13 * emax) keep.push_back(i);
        const int R0 = static_cast<int>(keep.size());
        if (R0 < 1) return roots;
        Eigen::MatrixXd Q(m, R0);
        Eigen::VectorXd lam(R0);
        for (int j = 0; j < R0; ++j) {
            Q.col(j) = eh.eigenvectors().col(keep[j]);
            lam(j) = eh.eigenvalues()(keep[j]);
        }
        Eigen::MatrixXd Sred = lam.cwiseSqrt().cwiseInverse().asDiagonal() *
                               (Q.transpose() * H1 * Q) *
                               lam.cwiseSqrt().cwiseInverse().asDiagonal();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(0.5 * (Sred + Sred.transpose()));
        for (int j = 0; j < R0; ++j)
            if (ep.eigenvalues()(j) > 0) roots.push_back(ep.eigenvalues()(j));
        return roots;
    };

    auto companion_pool = [&]() -> std::vector<double> {
        std::vector<double> roots;
        const int m = (N - 1) / 2;
        const int rows = N - m;
        if (rows < 2 || m < 1) return roots;
        Eigen::MatrixXd A(rows, m);
        Eigen::VectorXd b(rows);
        for (int r = 0; r < rows; ++r) {
            const double scale = std::max(std::abs(c0[r + m]), 1e-300);
            for (int j = 0; j < m; ++j) A(r, j) = c0[r + j] / scale;
            b(r) = c0[r + m] / scale;
        }
        Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
        for (int r = 1; r < m; ++r) C(r, r - 1) = 1.0;
        for (int r = 0; r < m; ++r) C(r, m - 1) = coef(r);
        Eigen::EigenSolver<Eigen::MatrixXd> es(C);
        for (int r = 0; r < m; ++r) {
            auto ev = es.eigenvalues()(r);
            if (std::abs(ev.imag()) < 1e-6 * std::max(1.0, std::abs(ev.real())) &&
                ev.real() > 0)
                roots.push_back(ev.real());
        }
        return roots;
    };

    auto complete_salvage = [&]() -> bool {
        return try_pool(companion_pool()) || try_pool(pencil_pool());
    };
    auto backtrack_salvage = [&]() -> bool {
        if (salvage()) return true;
        for (int tries = 0; tries < 2 && !out.weights.empty(); ++tries) {
            out.weights.pop_back();
            recompute();
            if (salvage()) return true;
        }
        return complete_salvage();
    };
    auto negative_beyond_tol = [&]() {
        for (int n = 0; n < N; ++n)
            if (res[n] < -tol * std::max(1.0, std::abs(c0[n]))) return true;
        return false;
    };

    while (true) {
        if (below_tol()) {
            if (!out.weights.empty()) salvage();
            out.stop = StopReason::residual_below_tol;
            break;
        }
        // terminal completion: never extract a mode out of pure noise
        if (salvage()) { out.stop = StopReason::residual_below_tol; break; }
        if (static_cast<int>(out.weights.size()) >= opts.max_weights) {
            out.stop = StopReason::max_weights_reached;
            break;
        }

        const int iw = static_cast<int>(out.weights.size());
        double xbound = 1e300;
        if (iw > 0) xbound = out.weights.back() * out.weights.back();

        // annihilating filter of the extracted modes
        std::vector<double> e(1, 1.0);
        for (double w : out.weights) {
            const double x = w * w;
            std::vector<double> ne(e.size() + 1, 0.0);
            for (size_t mm = 0; mm < e.size(); ++mm) {
                ne[mm + 1] += e[mm];
                ne[mm] -= x * e[mm];
            }
            e = ne;
        }
        const int G = N - iw;
        if (G < 2) {
            out.stop = backtrack_salvage()
                           ? StopReason::residual_below_tol
                           : (negative_beyond_tol() ? StopReason::nonpositive_residual
                                                    : StopReason::tail_too_short);
            break;
        }
        std::vector<double> g(static_cast<size_t>(G));
        std::vector<double> gnoise(static_cast<size_t>(G));
        double enorm = 0;
        for (double v : e) enorm += std::abs(v);
        for (int n = 0; n < G; ++n) {
            double s = 0;
            for (size_t mm = 0; mm < e.size(); ++mm) s += e[mm] * res[n + mm];
            g[n] = s;
            gnoise[n] = 1e-15 * enorm * std::max(1.0, std::abs(c0[n + iw]));
        }
        // sign-consistent super-noise prefix with admissible ratios
        const double sgn_exp = (iw % 2 == 0) ? 1.0 : -1.0;
        int W = 0;
        double prevq = 0;
        for (int n = 0; n < G; ++n) {
            if (!(sgn_exp * g[n] > 10.0 * gnoise[n])) break;
            if (n > 0) {
                const double q = g[n] / g[n - 1];
                if (q < prevq * (1 - 1e-3)) break;
                if (q > xbound * (1 + 1e-3)) break;
                prevq = std::max(prevq, q);
            }
            W = n + 1;
        }
        const int wmin = out.weights.empty() ? std::min(opts.min_tail, N) : 2;
        if (W < wmin) {
            out.stop = backtrack_salvage()
                           ? StopReason::residual_below_tol
                           : (negative_beyond_tol() ? StopReason::nonpositive_residual
                                                    : StopReason::tail_too_short);
            break;
        }
        FitPick pick = fit_dominant(g, W, xbound);
        if (!pick.ok()) {
            out.stop = backtrack_salvage()
                           ? StopReason::residual_below_tol
                           : (negative_beyond_tol() ? StopReason::nonpositive_residual
                                                    : StopReason::tail_too_short);
            break;
        }
        // a candidate below tolerance everywhere explains nothing
        bool sub = true;
        for (int n = 1; n <= N && sub; ++n)
            if (std::pow(pick.alpha, 2.0 * n) > tol * std::max(1.0, std::abs(c0[n - 1])))
                sub = false;
        if (sub) {
            out.stop = backtrack_salvage() ? StopReason::residual_below_tol
                                           : StopReason::tail_too_short;
            break;
        }

        FloatEngineResult::Diag diag{};
        diag.alpha = pick.alpha;
        diag.fit_order = pick.order;
        diag.fit_residual = pick.resid;
        aitken_diag(res, diag);
        out.diags.push_back(std::move(diag));
        if (pick.resid > 1e-7) out.warning = true;

        out.weights.push_back(pick.alpha);

        // consolidation: a max-order full-data fit re-estimates every
        // extracted mode once it explains the data to near machine level
        {
            const int m = (N - 1) / 2;
            const int rows = N - m;
            if (m >= 1 && rows >= m) {
                Eigen::MatrixXd A(rows, m);
                Eigen::VectorXd b(rows);
                for (int r = 0; r < rows; ++r) {
                    const double scale = std::max(std::abs(c0[r + m]), 1e-300);
                    for (int j = 0; j < m; ++j) A(r, j) = c0[r + j] / scale;
                    b(r) = c0[r + m] / scale;
                }
                Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
                const double fitres = (A * coef - b).cwiseAbs().maxCoeff();
                if (fitres <= 3e-12) {
                    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
                    for (int r = 1; r < m; ++r) C(r, r - 1) = 1.0;
                    for (int r = 0; r < m; ++r) C(r, m - 1) = coef(r);
                    Eigen::EigenSolver<Eigen::MatrixXd> es(C);
                    std::vector<double> roots;
                    for (int r = 0; r < m; ++r) {
                        auto ev = es.eigenvalues()(r);
                        if (std::abs(ev.imag()) <
                                1e-7 * std::max(1.0, std::abs(ev.real())) &&
                            ev.real() > 0)
                            roots.push_back(ev.real());
                    }
                    for (double& w : out.weights) {
                        double x = w * w, bestd = 0.005 * x;
                        for (double rt : roots)
                            if (std::abs(rt - x) < bestd) {
                                bestd = std::abs(rt - x);
                                x = rt;
                            }
                        if (x > 0) w = std::sqrt(x);
                    }
                    std::sort(out.weights.begin(), out.weights.end(), std::greater<>());
                }
            }
        }
        // refine the partial model on the longest suffix it explains fully
        for (int lo = 1; lo + static_cast<int>(out.weights.size()) + 1 <= N; ++lo) {
            std::vector<double> trial = out.weights;
            if (refine_rows(trial, c0, lo) <= 1e-12) {
                out.weights = trial;
                std::sort(out.weights.begin(), out.weights.end(), std::greater<>());
                break;
            }
        }
        recompute();
        if (negative_beyond_tol()) {
            out.stop = backtrack_salvage() ? StopReason::residual_below_tol
                                           : StopReason::nonpositive_residual;
            if (out.stop == StopReason::nonpositive_residual) break;
        }
    }
    out.residual = res;
    return out;
}

// ---------------------------------------------------------------- exact --

// Rational roots of a monic rational-coefficient polynomial, certified by
// exact evaluation and deflation. coeffs are ascending, coeffs.back() = 1.
// Returns nullopt unless the polynomial splits completely over Q.
inline std::optional<std::vector<Rational>> rational_roots(std::vector<Rational> coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 1) return std::vector<Rational>{};
    // double-precision root estimates guide the search
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) C(i, deg - 1) = -coeffs[static_cast<size_t>(i)].get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(C);

    auto eval = [](const std::vector<Rational>& p, const Rational& x) {
        Rational acc(0);
        for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
            acc = acc * x + p[static_cast<size_t>(i)];
        return acc;
    };
    auto deflate = [](std::vector<Rational>& p, const Rational& r) {
        // synthetic division by (X - r); remainder known to vanish
        std::vector<Rational> q(p.size() - 1);
        Rational carry(0);
        for (int i = static_cast<int>(p.size()) - 1; i >= 1; --i) {
            carry = p[static_cast<size_t>(i)] + carry * r;
            q[static_cast<size_t>(i - 1)] = carry;
        }
        p = std::move(q);
    };
    auto certify = [&](double estimate, const std::vector<Rational>& p)
        -> std::optional<Rational> {
        if (!(estimate > 0) || !std::isfinite(estimate)) return std::nullopt;
        // continued-fraction convergents of the estimate, verified exactly
        double x = estimate;
        long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        for (int step = 0; step < 48; ++step) {
            const double fl = std::floor(x);
            if (fl > 9e17 || fl < -9e17) break;
            const long long a = static_cast<long long>(fl);
            const long long p2 = a * p1 + p0, q2 = a * q1 + q0;
            if (q2 == 0 || q2 > (1ll << 40)) break;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
            Rational cand(static_cast<long>(p1), static_cast<long>(q1));
            cand.canonicalize();
            if (sgn(eval(p, cand)) == 0 && sgn(cand) > 0) return cand;
            const double frac = x - fl;
            if (frac < 1e-15) break;
            x = 1.0 / frac;
        }
        return std::nullopt;
    };

    std::vector<Rational> work = coeffs;
    std::vector<Rational> roots;
    std::vector<double> estimates;
    for (int i = 0; i < deg; ++i) {
        auto ev = es.eigenvalues()(i);
        if (std::abs(ev.imag()) <= 1e-6 * std::max(1.0, std::abs(ev.real())))
            estimates.push_back(ev.real());
    }
    std::sort(estimates.begin(), estimates.end(), std::greater<>());
    for (double est : estimates) {
        while (static_cast<int>(roots.size()) < deg) {
            auto r = certify(est, work);
            if (!r) break;
            roots.push_back(*r);
            deflate(work, *r);
        }
    }
    if (static_cast<int>(roots.size()) != deg) return std::nullopt;
    std::sort(roots.begin(), roots.end(), std::greater<Rational>());
    return roots;
}

struct ExactFit {
    std::vector<Rational> roots;   // descending
    int order = 0;
};

// Smallest recurrence order that reproduces the positive prefix exactly,
// with fully certified rational roots.
inline std::optional<ExactFit> exact_recurrence(const std::vector<Rational>& seq) {
    const int M = static_cast<int>(seq.size());
    for (int k = 1; 2 * k <= M; ++k) {
        std::vector<std::vector<Rational>> A(static_cast<size_t>(k),
                                             std::vector<Rational>(static_cast<size_t>(k)));
        std::vector<Rational> rhs(static_cast<size_t>(k));
        for (int n = 0; n < k; ++n) {
            for (int j = 0; j < k; ++j) A[n][j] = seq[static_cast<size_t>(n + j)];
            rhs[static_cast<size_t>(n)] = seq[static_cast<size_t>(n + k)];
        }
        auto sol = detail::exact_solve(A, rhs);
        if (!sol) continue;
        bool consistent = true;
        for (int n = 0; n + k < M && consistent; ++n) {
            Rational acc(0);
            for (int j = 0; j < k; ++j) acc += (*sol)[static_cast<size_t>(j)] * seq[static_cast<size_t>(n + j)];
            if (acc != seq[static_cast<size_t>(n + k)]) consistent = false;
        }
        if (!consistent) continue;
        // monic char poly X^k - sum b_j X^j
        std::vector<Rational> coeffs(static_cast<size_t>(k) + 1, Rational(0));
        coeffs[static_cast<size_t>(k)] = 1;
        for (int j = 0; j < k; ++j) coeffs[static_cast<size_t>(j)] = -(*sol)[static_cast<size_t>(j)];
        auto roots = rational_roots(coeffs);
        if (!roots) return std::nullopt;
        return ExactFit{*roots, k};
    }
    return std::nullopt;
}

}  // namespace detail

// Leading-weight estimate on a strictly positive sequence: the square root
// of the dominant ratio limit, from the tail's recurrence structure.
// Classic Aitken acceleration of the last ratio triple is reported in the
// diagnostics (and is the fallback estimate when no model fits).
template <class S>
LeadingWeightResult<S> leading_weight(const MomentSequence<S>& c,
                                      const DecomposeOptions& opts = {}) {
    const int N = c.size();
    if (N < opts.min_tail)
        throw Error(errc::tail_too_short,
                    "leading_weight needs at least " + std::to_string(opts.min_tail) +
                        " entries");
    const double eps = c.epsilon;
    for (int j = 0; j < N; ++j)
        if (!is_positive(c.values[j], eps))
            throw Error(errc::tail_too_short, "leading_weight needs strictly positive entries");
    ValidityReport v = validate_sequence(c);
    if (!v.ratio_monotone)
        throw Error(errc::non_monotone_ratios, "ratio sequence decreases: input inadmissible");

    LeadingWeightResult<S> out;
    // ratio tail and Aitken diagnostics
    std::vector<S> ratios;
    for (int j = 0; j + 1 < N; ++j) ratios.push_back(c.values[j + 1] / c.values[j]);
    const int M = static_cast<int>(ratios.size());
    for (int j = std::max(0, M - 3); j < M; ++j) out.ratio_tail.push_back(ratios[j]);
    if (M >= 2) out.extrapolation_residual = abs_value<S>(ratios[M - 1] - ratios[M - 2]);
    S aitken_sq = ratios[M - 1];
    if (M >= 3) {
        const S r0 = ratios[M - 3], r1 = ratios[M - 2], r2 = ratios[M - 1];
        const S d2 = r2 - r1 - (r1 - r0);
        if (!is_zero(d2, eps))
            aitken_sq = r2 - (r2 - r1) * (r2 - r1) / d2;
    }
    out.aitken = is_negative(aitken_sq, 0.0) ? S(0) : scalar_traits<S>::sqrt(aitken_sq);

    if constexpr (scalar_traits<S>::is_exact) {
        auto fit = detail::exact_recurrence(c.values);
        if (fit && !fit->roots.empty() && sgn(fit->roots.front()) > 0) {
            Rational dominant = fit->roots.front();
            out.alpha = sqrt_floor(dominant);
            out.certified = sqrt_exact(dominant).has_value();
            out.fit_order = fit->order;
            out.fit_residual = 0.0;
            return out;
        }
        // fall back to the float estimator, floor-rationalized
        std::vector<double> dv(c.values.size());
        for (size_t j = 0; j < dv.size(); ++j) dv[j] = c.values[j].get_d();
        detail::FitPick pick = detail::fit_dominant(dv, N, 1e300);
        if (pick.ok()) {
            out.alpha = sqrt_floor(Rational(pick.alpha * pick.alpha));
            out.fit_order = pick.order;
            out.fit_residual = pick.resid;
            return out;
        }
        out.alpha = out.aitken;
        out.fit_order = 0;
        out.fit_residual = 1.0;
        return out;
    } else {
        detail::FitPick pick = detail::fit_dominant(c.values, N, 1e300);
        if (pick.ok()) {
            out.alpha = pick.alpha;
            out.fit_order = pick.order;
            out.fit_residual = pick.resid;
        } else {
            out.alpha = out.aitken;
            out.fit_order = 0;
            out.fit_residual = 1.0;
        }
        return out;
    }
}

template <class S>
DecompositionReport<S> decompose(const MomentSequence<S>& c,
                                 const DecomposeOptions& opts = {});

// Prony-style recovery: Hankel rank decides the number of geometric terms,
// an exact (or pencil) solve recovers them, Vandermonde amplitudes give the
// multiplicities. Exact in rational mode for genuine finite power sums.
template <class S>
WeightVector<S> prony_decompose(const MomentSequence<S>& c, int max_terms);

namespace detail {

inline WeightVector<Rational> prony_exact(const MomentSequence<Rational>& c,
                                          int max_terms) {
    const int N = c.size();
    bool all_zero = true;
    for (const auto& v : c.values)
        if (sgn(v) != 0) { all_zero = false; break; }
    if (all_zero) return WeightVector<Rational>{};

    const int m = (N + 1) / 2;
    std::vector<std::vector<Rational>> h(static_cast<size_t>(m),
                                         std::vector<Rational>(static_cast<size_t>(m)));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) h[i - 1][j - 1] = c.c2n(i + j - 1);
    const int rank = exact_rank(h);
    if (rank == 0) return WeightVector<Rational>{};
    if (rank > max_terms)
        throw Error(errc::rank_ambiguous,
                    "detected rank " + std::to_string(rank) + " exceeds max_terms");
    if (2 * rank > N)
        throw Error(errc::rank_ambiguous, "truncation too short for the detected rank");

    const int J = rank;
    std::vector<std::vector<Rational>> A(static_cast<size_t>(J),
                                         std::vector<Rational>(static_cast<size_t>(J)));
    std::vector<Rational> rhs(static_cast<size_t>(J));
    for (int n = 1; n <= J; ++n) {
        for (int j = 0; j < J; ++j) A[n - 1][static_cast<size_t>(j)] = c.c2n(n + j);
        rhs[static_cast<size_t>(n - 1)] = c.c2n(n + J);
    }
    auto sol = exact_solve(A, rhs);
    if (!sol) throw Error(errc::rank_ambiguous, "recurrence system is singular");
    std::vector<Rational> coeffs(static_cast<size_t>(J) + 1, Rational(0));
    coeffs[static_cast<size_t>(J)] = 1;
    for (int j = 0; j < J; ++j) coeffs[static_cast<size_t>(j)] = -(*sol)[static_cast<size_t>(j)];
    auto roots = rational_roots(coeffs);
    if (!roots)
        throw Error(errc::irrational_weight,
                    "characteristic roots are not rational: not an exact power sum");
    for (const Rational& x : *roots)
        if (sgn(x) <= 0)
            throw Error(errc::negative_root, "nonpositive characteristic root");

    // multiplicities from the exact Vandermonde system
    std::vector<std::vector<Rational>> V(static_cast<size_t>(J),
                                         std::vector<Rational>(static_cast<size_t>(J)));
    std::vector<Rational> y(static_cast<size_t>(J));
    for (int n = 1; n <= J; ++n) {
        for (int j = 0; j < J; ++j)
            V[n - 1][static_cast<size_t>(j)] = pow_int((*roots)[static_cast<size_t>(j)],
                                                       static_cast<unsigned long>(n));
        y[static_cast<size_t>(n - 1)] = c.c2n(n);
    }
    auto mult = exact_solve(V, y);
    if (!mult) throw Error(errc::rank_ambiguous, "vandermonde system is singular");
    std::vector<Rational> weights;
    for (int j = 0; j < J; ++j) {
        const Rational& mj = (*mult)[static_cast<size_t>(j)];
        if (sgn(mj) <= 0 || mj.get_den() != 1)
            throw Error(errc::inadmissible_input,
                        "term multiplicities are not positive integers");
        auto alpha = sqrt_exact((*roots)[static_cast<size_t>(j)]);
        if (!alpha)
            throw Error(errc::irrational_weight,
                        "weight is irrational: alpha^2 = " + to_string((*roots)[static_cast<size_t>(j)]));
        const long reps = mj.get_num().get_si();
        for (long q = 0; q < reps; ++q) weights.push_back(*alpha);
    }
    return WeightVector<Rational>(std::move(weights));
}

inline WeightVector<double> prony_float(const MomentSequence<double>& c, int max_terms) {
    const int N = c.size();
    const double eps = c.epsilon;
    bool all_zero = true;
    for (double v : c.values)
        if (std::abs(v) > eps) { all_zero = false; break; }
    if (all_zero) return WeightVector<double>{};

    const int m = N / 2;
    if (m < 1) throw Error(errc::tail_too_short, "prony needs at least two entries");
    // balance by the dominant ratio: a diagonal congruence that compresses
    // the dynamic range without moving the pencil eigenvalues
    double s = 1.0;
    if (N >= 2 && c.c2n(N - 1) > 0 && c.c2n(N) > 0) s = c.c2n(N) / c.c2n(N - 1);
    if (!(s > 0) || !std::isfinite(s)) s = 1.0;
    Eigen::MatrixXd H0(m, m), H1(m, m);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            const double scale = std::pow(s, i + j - 1);
            H0(i - 1, j - 1) = c.c2n(i + j - 1) / scale;
            H1(i - 1, j - 1) = c.c2n(i + j) / scale;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(H0);
    const double emax = eh.eigenvalues().cwiseAbs().maxCoeff();
    // numerical rank from the largest spectral gap above the noise floor
    std::vector<double> rels;
    for (int i = m - 1; i >= 0; --i)
        rels.push_back(std::max(eh.eigenvalues()(i), 0.0) / emax);   // descending
    const double floor_rel = 1e-16;
    int rank = 0;
    double best_gap = 0;
    for (int k = 1; k <= m; ++k) {
        if (rels[k - 1] <= 1e-14) break;
        const double next = (k < m) ? std::max(rels[k], floor_rel) : floor_rel;
        const double gap = rels[k - 1] / next;
        if (gap > best_gap) { best_gap = gap; rank = k; }
    }
    if (rank == 0 || best_gap < 1e4)
        throw Error(errc::rank_ambiguous, "no clear spectral gap in the moment matrix");
    std::vector<int> keep;
    for (int k = 0; k < rank; ++k) keep.push_back(m - 1 - k);
    const int J = rank;
    if (J > max_terms)
        throw Error(errc::rank_ambiguous,
                    "detected rank " + std::to_string(J) + " exceeds max_terms");

    Eigen::MatrixXd Q(m, J);
    Eigen::VectorXd lam(J);
    for (int j = 0; j < J; ++j) {
        Q.col(j) = eh.eigenvectors().col(keep[j]);
        lam(j) = eh.eigenvalues()(keep[j]);
    }
    Eigen::MatrixXd A = lam.cwiseSqrt().cwiseInverse().asDiagonal() *
                        (Q.transpose() * H1 * Q) *
                        lam.cwiseSqrt().cwiseInverse().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(0.5 * (A + A.transpose()));
    std::vector<double> roots;
    for (int j = 0; j < J; ++j) {
        const double x = ep.eigenvalues()(j);
        if (x <= 0)
            throw Error(errc::negative_root, "nonpositive recovered ratio");
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());

    Eigen::MatrixXd V(N, J);
    Eigen::VectorXd y(N);
    for (int n = 1; n <= N; ++n) {
        const double denom = std::max(1.0, std::abs(c.c2n(n)));
        for (int j = 0; j < J; ++j) V(n - 1, j) = std::pow(roots[j], n) / denom;
        y(n - 1) = c.c2n(n) / denom;
    }
    Eigen::VectorXd amp = V.colPivHouseholderQr().solve(y);
    std::vector<double> weights;
    for (int j = 0; j < J; ++j) {
        const long rep = std::lround(amp(j));
        if (rep < 1 || std::abs(amp(j) - rep) > 0.2)
            throw Error(errc::inadmissible_input,
                        "term multiplicities are not positive integers");
        for (long q = 0; q < rep; ++q) weights.push_back(std::sqrt(roots[j]));
    }
    if (static_cast<int>(weights.size()) > max_terms)
        throw Error(errc::rank_ambiguous, "recovered terms exceed max_terms");
    // refine jointly against the data
    detail::refine_rows(weights, c.values, 1);
    std::sort(weights.begin(), weights.end(), std::greater<>());
    return WeightVector<double>(std::move(weights));
}

}  // namespace detail

template <class S>
WeightVector<S> prony_decompose(const MomentSequence<S>& c, int max_terms) {
    if (max_terms < 0) throw Error(errc::bad_input, "max_terms must be >= 0");
    if (c.size() < 2 * max_terms)
        throw Error(errc::tail_too_short, "prony needs N >= 2 * max_terms");
    if constexpr (scalar_traits<S>::is_exact)
        return detail::prony_exact(c, max_terms);
    else
        return detail::prony_float(c, max_terms);
}

namespace detail {

// exact-mode greedy cascade; falls back to the float engine (rationalized)
// when the residual stops being an exact power sum
inline DecompositionReport<Rational> decompose_exact(const MomentSequence<Rational>& c0,
                                                     const DecomposeOptions& opts) {
    const int N = c0.size();
    DecompositionReport<Rational> rep;
    rep.residual = c0;
    const Rational tol = Rational(opts.tol);

    std::vector<Rational> weights;
    auto recompute = [&]() {
        for (int j = 0; j < N; ++j) {
            Rational s(0);
            for (const Rational& w : weights)
                s += pow_int(w, 2 * static_cast<unsigned long>(j + 1));
            rep.residual.values[j] = c0.values[j] - s;
        }
    };
    auto below_tol = [&]() {
        for (int j = 0; j < N; ++j) {
            Rational bound = tol;
            if (c0.values[j] > Rational(1)) bound = tol * c0.values[j];
            if (abs(rep.residual.values[j]) > bound) return false;
        }
        return true;
    };
    auto record_diag = [&](const Rational& alpha, int order) {
        IterationDiag<Rational> d;
        d.alpha = alpha;
        d.fit_order = order;
        d.fit_residual = 0.0;
        std::vector<Rational> ratios;
        for (int j = 0; j + 1 < N; ++j) {
            if (sgn(rep.residual.values[j]) <= 0 || sgn(rep.residual.values[j + 1]) <= 0)
                break;
            ratios.push_back(rep.residual.values[j + 1] / rep.residual.values[j]);
        }
        const int M = static_cast<int>(ratios.size());
        for (int j = std::max(0, M - 3); j < M; ++j) d.ratio_tail.push_back(ratios[j]);
        if (M >= 2) d.extrapolation_residual = abs(ratios[M - 1] - ratios[M - 2]);
        if (M >= 3) {
            const Rational r0 = ratios[M - 3], r1 = ratios[M - 2], r2 = ratios[M - 1];
            const Rational dd = r2 - 2 * r1 + r0;
            Rational est = (sgn(dd) != 0) ? r2 - (r2 - r1) * (r2 - r1) / dd : r2;
            if (sgn(est) >= 0) d.aitken = sqrt_floor(est);
        } else if (M >= 1 && sgn(ratios[M - 1]) > 0) {
            d.aitken = sqrt_floor(ratios[M - 1]);
        }
        rep.per_iteration.push_back(std::move(d));
    };

    while (true) {
        if (below_tol()) { rep.stop_reason = StopReason::residual_below_tol; break; }
        if (static_cast<int>(weights.size()) >= opts.max_weights) {
            rep.stop_reason = StopReason::max_weights_reached;
            break;
        }
        // strictly positive prefix of the residual
        int W = 0;
        bool negative = false;
        for (int j = 0; j < N; ++j) {
            if (sgn(rep.residual.values[j]) > 0) { W = j + 1; continue; }
            if (sgn(rep.residual.values[j]) < 0 &&
                abs(rep.residual.values[j]) > tol * std::max(Rational(1), c0.values[j]))
                negative = true;
            break;
        }
        const int wmin = weights.empty() ? std::min(opts.min_tail, N) : 2;
        if (W < wmin) {
            rep.stop_reason = negative ? StopReason::nonpositive_residual
                                       : StopReason::tail_too_short;
            break;
        }
        std::vector<Rational> prefix(rep.residual.values.begin(),
                                     rep.residual.values.begin() + W);
        auto fit = exact_recurrence(prefix);
        if (fit && !fit->roots.empty() && sgn(fit->roots.front()) > 0) {
            const Rational dominant = fit->roots.front();
            if (!weights.empty()) {
                const Rational prev = weights.back() * weights.back();
                if (dominant > prev)
                    throw Error(errc::monotonicity_violation,
                                "extracted ratio increased: " + to_string(dominant) +
                                    " after " + to_string(prev));
            }
            auto alpha_exact = sqrt_exact(dominant);
            Rational alpha = alpha_exact ? *alpha_exact : sqrt_floor(dominant);
            if (!alpha_exact) rep.conditioning_warning = true;
            record_diag(alpha, fit->order);
            weights.push_back(alpha);
            rep.iterations += 1;
            recompute();
            continue;
        }
        // not an exact power sum: run the float engine on the original data
        // and keep exact bookkeeping for its (dyadic-rational) weights
        {
            std::vector<double> dv(c0.values.size());
            for (size_t j = 0; j < dv.size(); ++j) dv[j] = c0.values[j].get_d();
            MomentSequence<double> fd(dv, c0.epsilon);
            FloatEngineResult fe = decompose_float_engine(dv, opts);
            weights.clear();
            for (double w : fe.weights) weights.push_back(Rational(w));
            std::sort(weights.begin(), weights.end(), std::greater<Rational>());
            rep.per_iteration.clear();
            for (const auto& dg : fe.diags) {
                IterationDiag<Rational> d;
                d.alpha = Rational(dg.alpha);
                for (double r : dg.ratio_tail) d.ratio_tail.push_back(Rational(r));
                d.aitken = Rational(dg.aitken);
                d.extrapolation_residual = Rational(dg.extrap_resid);
                d.fit_order = dg.fit_order;
                d.fit_residual = dg.fit_residual;
                rep.per_iteration.push_back(std::move(d));
            }
            rep.iterations = static_cast<int>(rep.per_iteration.size());
            rep.stop_reason = fe.stop;
            rep.refined = fe.refined;
            rep.conditioning_warning = true;
            recompute();
            break;
        }
    }
    rep.weights = WeightVector<Rational>(std::move(weights));
    return rep;
}

}  // namespace detail

template <class S>
DecompositionReport<S> decompose(const MomentSequence<S>& c, const DecomposeOptions& opts) {
    ValidityReport v = validate_sequence(c);
    if (!v.all_pass())
        throw Error(errc::inadmissible_input,
                    "sequence fails the admissibility gate (nonnegativity, zero pattern, "
                    "or ratio monotonicity)");
    DecompositionReport<S> rep;
    if constexpr (scalar_traits<S>::is_exact) {
        rep = detail::decompose_exact(c, opts);
    } else {
        detail::FloatEngineResult fe = detail::decompose_float_engine(c.values, opts);
        rep.residual = MomentSequence<S>(fe.residual, c.epsilon);
        rep.weights = WeightVector<S>(std::move(fe.weights));
        rep.stop_reason = fe.stop;
        rep.refined = fe.refined;
        rep.conditioning_warning = fe.warning;
        for (const auto& dg : fe.diags) {
            IterationDiag<S> d;
            d.alpha = dg.alpha;
            d.ratio_tail = dg.ratio_tail;
            d.aitken = dg.aitken;
            d.extrapolation_residual = dg.extrap_resid;
            d.fit_order = dg.fit_order;
            d.fit_residual = dg.fit_residual;
            rep.per_iteration.push_back(std::move(d));
        }
        rep.iterations = static_cast<int>(rep.per_iteration.size());
    }
    // weights must be nonincreasing (they are sorted on construction; the
    // per-step bound enforces the law during extraction)
    PartitionPolyTable<S> tbl(c);
    LambdaBounds<S> lb = lambda_bounds(tbl, std::min(c.size(), 8), {},
                                       std::optional<WeightVector<S>>(rep.weights));
    rep.lambda_lower = lb.lower;
    rep.lambda_upper = lb.upper;
    return rep;
}

}  // namespace powsum
