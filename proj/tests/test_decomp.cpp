#include "powsum/decomp.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace powsum;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

// rational weight vectors over a common small denominator, honoring the
// separation floor alpha_i / alpha_{i+1} >= 11/10
WeightVector<Rational> random_weights(std::mt19937_64& rng, int count) {
    const long D = 16;
    std::uniform_int_distribution<long> top(40, 120);
    std::uniform_real_distribution<double> ratio(1.15, 1.6);
    std::vector<Rational> ws;
    long n = top(rng);
    for (int i = 0; i < count; ++i) {
        ws.push_back(q(n, D));
        n = static_cast<long>(std::floor(static_cast<double>(n) / ratio(rng)));
        if (n < 2) break;
    }
    return WeightVector<Rational>(std::move(ws));
}

MomentSequence<double> to_float(const MomentSequence<Rational>& c) {
    std::vector<double> v(c.values.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = c.values[i].get_d();
    return MomentSequence<double>(std::move(v), c.epsilon);
}

}  // namespace

TEST_CASE("reconstruct generates the expected sequences", "[decomp]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 4);
    CHECK(c.values == std::vector<Rational>{q(5, 4), q(17, 16), q(65, 64), q(257, 256)});

    auto zero = reconstruct(WeightVector<Rational>{}, 3);
    CHECK(zero.values == std::vector<Rational>(3, Rational(0)));

    WeightVector<Rational> two(std::vector<Rational>{q(2)});
    auto c2 = reconstruct(two, 2);
    CHECK(c2.values == std::vector<Rational>{q(4), q(16)});
}

TEST_CASE("reduce subtracts one copy", "[decomp]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 4);
    auto r = reduce(c, q(1));
    CHECK(r.values == std::vector<Rational>{q(1, 4), q(1, 16), q(1, 64), q(1, 256)});

    WeightVector<Rational> single(std::vector<Rational>{q(7, 5)});
    auto cs = reconstruct(single, 4);
    auto rs = reduce(cs, q(7, 5));
    for (const auto& v : rs.values) CHECK(v == Rational(0));

    MomentSequence<Rational> ones(std::vector<Rational>(3, Rational(1)));
    CHECK_THROWS_AS(reduce(ones, q(2)), Error);   // 1 - 4 < 0
}

TEST_CASE("reduce clamps float noise and flags it", "[decomp]") {
    MomentSequence<double> c({1.0 + 3e-13, 1.0 + 2e-13}, 1e-12);
    bool clamped = false;
    auto r = reduce(c, 1.0, &clamped);
    CHECK(clamped);
    CHECK(r.values[0] == 0.0);
    MomentSequence<double> d({1.0, 1.0}, 1e-12);
    CHECK_THROWS_AS(reduce(d, 1.1, nullptr), Error);
}

TEST_CASE("leading weight: constant ratios are exact", "[decomp]") {
    WeightVector<Rational> single(std::vector<Rational>{q(3, 2)});
    auto c = reconstruct(single, 5);
    auto lw = leading_weight(c);
    CHECK(lw.alpha == q(3, 2));
    CHECK(lw.certified);

    // two equal weights: ratios still constant
    WeightVector<double> twin(std::vector<double>{2.0, 2.0});
    auto cf = reconstruct(twin, 6);
    auto lwf = leading_weight(cf);
    CHECK(lwf.alpha == Approx(2.0).margin(1e-12));
}

TEST_CASE("leading weight on {1, 1/2}: estimate and Aitken diagnostics", "[decomp]") {
    WeightVector<double> w(std::vector<double>{1.0, 0.5});
    auto c6 = reconstruct(w, 6);
    auto lw6 = leading_weight(c6);
    CHECK(std::abs(lw6.alpha - 1.0) < 1e-3);
    CHECK(std::abs(lw6.aitken - 1.0) < 1e-3);   // raw Aitken of the last triple
    CHECK(lw6.ratio_tail.size() == 3);

    auto c10 = reconstruct(w, 10);
    auto lw10 = leading_weight(c10);
    CHECK(std::abs(lw10.alpha - 1.0) < 1e-6);
    CHECK(std::abs(lw10.aitken - 1.0) < 1e-6);
    CHECK(lw10.extrapolation_residual > 0.0);
}

TEST_CASE("leading weight errors", "[decomp]") {
    MomentSequence<double> two({1.0, 0.5}, 1e-12);
    CHECK_THROWS_AS(leading_weight(two), Error);   // tail too short

    MomentSequence<double> zero({0.0, 0.0, 0.0}, 1e-12);
    CHECK_THROWS_AS(leading_weight(zero), Error);  // needs strictly positive entries

    MomentSequence<double> dip({1.0, 2.0, 1.0}, 1e-12);
    CHECK_THROWS_AS(leading_weight(dip), Error);   // non-monotone ratios
}

TEST_CASE("decompose: the worked example at N = 12", "[decomp]") {
    WeightVector<double> w(std::vector<double>{1.0, 0.5});
    auto c = reconstruct(w, 12);
    DecomposeOptions opts;
    opts.tol = 1e-8;
    auto rep = decompose(c, opts);
    REQUIRE(rep.weights.size() == 2);
    CHECK(std::abs(rep.weights.weights[0] - 1.0) < 1e-8);
    CHECK(std::abs(rep.weights.weights[1] - 0.5) < 1e-8);
    CHECK(rep.stop_reason == StopReason::residual_below_tol);
    CHECK(rep.iterations >= 1);
    REQUIRE(rep.lambda_upper.has_value());
    CHECK(std::abs(*rep.lambda_upper - 1.5) < 1e-7);
    CHECK(rep.lambda_lower <= *rep.lambda_upper + 1e-12);
}

TEST_CASE("decompose: trivial and single-weight sequences", "[decomp]") {
    MomentSequence<Rational> zero(std::vector<Rational>(5, Rational(0)));
    auto repz = decompose(zero, {});
    CHECK(repz.weights.empty());
    CHECK(repz.iterations == 0);
    CHECK(repz.stop_reason == StopReason::residual_below_tol);

    WeightVector<Rational> single(std::vector<Rational>{q(1)});
    auto cs = reconstruct(single, 4);
    auto reps = decompose(cs, {});
    REQUIRE(reps.weights.size() == 1);
    CHECK(reps.weights.weights[0] == q(1));
    CHECK(reps.iterations == 1);
    for (const auto& v : reps.residual.values) CHECK(v == Rational(0));
}

TEST_CASE("decompose: exact mode recovers rational weights exactly", "[decomp]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 8);
    auto rep = decompose(c, {});
    REQUIRE(rep.weights.size() == 2);
    CHECK(rep.weights.weights[0] == q(1));
    CHECK(rep.weights.weights[1] == q(1, 2));
    // conservation is exact at the final iterate
    for (int n = 1; n <= 8; ++n) {
        Rational model = pow_int(q(1), 2 * n) + pow_int(q(1, 2), 2 * n);
        CHECK(c.c2n(n) == model + rep.residual.values[n - 1]);
    }
    // residuals of extraction prefixes stay nonnegative and shrink
    std::vector<Rational> prev = c.values;
    for (int i = 1; i <= rep.weights.size(); ++i) {
        for (int n = 1; n <= 8; ++n) {
            Rational s(0);
            for (int j = 0; j < i; ++j)
                s += pow_int(rep.weights.weights[j], 2 * static_cast<unsigned long>(n));
            Rational res = c.c2n(n) - s;
            CHECK(sgn(res) >= 0);
            CHECK(res <= prev[n - 1]);
            prev[n - 1] = res;
        }
    }
}

TEST_CASE("decompose: equal weights come out one copy per iteration", "[decomp]") {
    WeightVector<Rational> twin(std::vector<Rational>{q(2), q(2)});
    auto c = reconstruct(twin, 8);
    auto rep = decompose(c, {});
    REQUIRE(rep.weights.size() == 2);
    CHECK(rep.weights.weights[0] == q(2));
    CHECK(rep.weights.weights[1] == q(2));
    CHECK(rep.iterations == 2);

    auto cf = to_float(c);
    auto repf = decompose(cf, {});
    REQUIRE(repf.weights.size() == 2);
    CHECK(std::abs(repf.weights.weights[0] - 2.0) < 1e-9);
    CHECK(std::abs(repf.weights.weights[1] - 2.0) < 1e-9);
}

TEST_CASE("decompose rejects inadmissible input", "[decomp]") {
    MomentSequence<double> bad({1.0, 2.0, 1.0}, 1e-12);
    CHECK_THROWS_AS(decompose(bad, {}), Error);
}

TEST_CASE("round trip across modes on random weight vectors", "[decomp]") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> nw(1, 5);
    for (int t = 0; t < 20; ++t) {
        WeightVector<Rational> w = random_weights(rng, nw(rng));
        const int N = 2 * w.size() + 4;
        auto c = reconstruct(w, N);

        // exact recovery, both engines
        auto pr = prony_decompose(c, w.size() + 2);
        REQUIRE(pr.size() == w.size());
        for (int i = 0; i < w.size(); ++i) CHECK(pr.weights[i] == w.weights[i]);
        auto repx = decompose(c, {});
        REQUIRE(repx.weights.size() == w.size());
        for (int i = 0; i < w.size(); ++i) CHECK(repx.weights.weights[i] == w.weights[i]);

        // float recovery within tolerance, engines agree
        auto cf = to_float(c);
        auto repf = decompose(cf, {});
        REQUIRE(repf.weights.size() == w.size());
        auto prf = prony_decompose(cf, w.size() + 2);
        REQUIRE(prf.size() == w.size());
        for (int i = 0; i < w.size(); ++i) {
            const double truth = w.weights[i].get_d();
            CHECK(std::abs(repf.weights.weights[i] - truth) < 1e-8);
            CHECK(std::abs(prf.weights[i] - repf.weights.weights[i]) < 1e-8);
        }
        // the weight law
        for (int i = 1; i < repf.weights.size(); ++i)
            CHECK(repf.weights.weights[i] <= repf.weights.weights[i - 1] * (1 + 1e-12));
    }
}

TEST_CASE("prony: worked example, rank and recurrence", "[decomp]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 8);
    // the recurrence c_{2n+4} = (5/4) c_{2n+2} - (1/4) c_{2n} holds
    for (int n = 1; n + 2 <= 8; ++n)
        CHECK(c.c2n(n + 2) == q(5, 4) * c.c2n(n + 1) - q(1, 4) * c.c2n(n));
    auto pr = prony_decompose(c, 4);
    REQUIRE(pr.size() == 2);
    CHECK(pr.weights[0] == q(1));
    CHECK(pr.weights[1] == q(1, 2));

    WeightVector<Rational> single(std::vector<Rational>{q(4, 7)});
    auto cs = reconstruct(single, 4);
    auto prs = prony_decompose(cs, 2);
    REQUIRE(prs.size() == 1);
    CHECK(prs.weights[0] == q(4, 7));

    MomentSequence<Rational> zero(std::vector<Rational>(4, Rational(0)));
    CHECK(prony_decompose(zero, 2).empty());
}

TEST_CASE("prony: multiplicity two in both modes", "[decomp]") {
    WeightVector<Rational> twin(std::vector<Rational>{q(3, 2), q(3, 2)});
    auto c = reconstruct(twin, 6);
    auto pr = prony_decompose(c, 3);
    REQUIRE(pr.size() == 2);
    CHECK(pr.weights[0] == q(3, 2));
    CHECK(pr.weights[1] == q(3, 2));

    auto cf = to_float(c);
    auto prf = prony_decompose(cf, 3);
    REQUIRE(prf.size() == 2);
    CHECK(std::abs(prf.weights[0] - 1.5) < 1e-9);
    CHECK(std::abs(prf.weights[1] - 1.5) < 1e-9);
}

TEST_CASE("prony failure paths", "[decomp]") {
    // not a power-sum sequence: exact mode cannot certify rational roots
    MomentSequence<Rational> junk(std::vector<Rational>{q(1), q(3), q(4), q(7), q(11), q(18)});
    CHECK_THROWS_AS(prony_decompose(junk, 3), Error);

    MomentSequence<Rational> moments(std::vector<Rational>{q(2), q(2)});
    CHECK_THROWS_AS(prony_decompose(moments, 2), Error);   // N < 2 * max_terms
}

TEST_CASE("decompose stops at the weight cap", "[decomp]") {
    std::mt19937_64 rng(77);
    WeightVector<Rational> w = random_weights(rng, 4);
    auto c = reconstruct(w, 12);
    DecomposeOptions opts;
    opts.max_weights = 2;
    auto rep = decompose(c, opts);
    CHECK(rep.weights.size() <= 2);
    CHECK(rep.stop_reason == StopReason::max_weights_reached);
}
