#include "powsum/decomp.hpp"
#include "powsum/genfun.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace powsum;

namespace {
Rational q(long n, long d = 1) { return make_rational(n, d); }
}

TEST_CASE("diagonal coefficients on weights {1, 1/2}", "[genfun]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 6);
    PartitionPolyTable<Rational> tbl(c);
    CHECK(wightman_diagonal(tbl, 1) == c.c2n(1));
    CHECK(wightman_diagonal(tbl, 2) == q(41, 16));
    CHECK(wightman_diagonal(tbl, 3) == q(365, 64));
    // E(t) = cosh t cosh(t/2) = (cosh(3t/2) + cosh(t/2)) / 2, so
    // W_{2n} = ((3/2)^{2n} + (1/2)^{2n}) / 2
    for (int n = 1; n <= 6; ++n) {
        Rational expect = (pow_int(q(3, 2), 2 * n) + pow_int(q(1, 2), 2 * n)) / 2;
        CHECK(wightman_diagonal(tbl, n) == expect);
    }
}

TEST_CASE("series coefficients", "[genfun]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 6);
    PartitionPolyTable<Rational> tbl(c);
    auto e = series_E(tbl, 4);
    CHECK(e.coeffs[0] == Rational(1));
    CHECK(e.coeffs[2] == q(41, 384));   // W4 / 4!

    // single weight: the cosh series
    WeightVector<Rational> single(std::vector<Rational>{q(2, 3)});
    auto cs = reconstruct(single, 6);
    PartitionPolyTable<Rational> ts(cs);
    auto es = series_E(ts, 6);
    for (int n = 0; n <= 6; ++n)
        CHECK(es.coeffs[n] == pow_int(q(2, 3), 2 * n) / factorial_rational(2 * n));

    // trivial sequence: E = 1
    MomentSequence<Rational> zero(std::vector<Rational>(5, Rational(0)));
    PartitionPolyTable<Rational> zt(zero);
    auto ez = series_E(zt, 5);
    CHECK(ez.coeffs[0] == Rational(1));
    for (int n = 1; n <= 5; ++n) CHECK(ez.coeffs[n] == Rational(0));
}

TEST_CASE("series equals the layered route equals the diagonal route", "[genfun]") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> num(1, 30), den(1, 10);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rational> vals;
        for (int i = 0; i < 7; ++i) vals.push_back(q(num(rng), den(rng)));
        MomentSequence<Rational> c(std::move(vals));
        PartitionPolyTable<Rational> tbl(c);
        auto e = series_E(tbl, 7);
        for (int n = 1; n <= 7; ++n)
            CHECK(e.coeffs[n] ==
                  wightman_diagonal(tbl, n) / factorial_rational(2 * n));
    }
}

TEST_CASE("series equals the product form on weight vectors", "[genfun]") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> nw(0, 4), num(1, 20), den(1, 6);
    for (int t = 0; t < 10; ++t) {
        std::vector<Rational> ws;
        for (int i = 0; i < nw(rng); ++i) ws.push_back(q(num(rng), den(rng)));
        WeightVector<Rational> w(std::move(ws));
        auto c = reconstruct(w, 6);
        PartitionPolyTable<Rational> tbl(c);
        auto e = series_E(tbl, 6);
        auto p = product_form(w, 6);
        for (int n = 0; n <= 6; ++n) CHECK(e.coeffs[n] == p.coeffs[n]);
        for (int n = 0; n <= 6; ++n) CHECK(sgn(e.coeffs[n]) >= 0);
    }
    // empty product
    auto p0 = product_form(WeightVector<Rational>{}, 3);
    CHECK(p0.coeffs[0] == Rational(1));
    CHECK(p0.coeffs[1] == Rational(0));
}

TEST_CASE("factorization by the leading weight", "[genfun]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 6);
    PartitionPolyTable<Rational> tbl(c);
    CHECK(factorization_check(tbl, q(1), 6));
    CHECK(!factorization_check(tbl, q(2), 3));   // wrong weight fails early

    WeightVector<Rational> single(std::vector<Rational>{q(3, 4)});
    auto cs = reconstruct(single, 5);
    PartitionPolyTable<Rational> ts(cs);
    CHECK(factorization_check(ts, q(3, 4), 5));
    // full reduction leaves the constant series
    auto reduced = reduce(cs, q(3, 4));
    PartitionPolyTable<Rational> rt(reduced);
    auto er = series_E(rt, 5);
    for (int n = 1; n <= 5; ++n) CHECK(er.coeffs[n] == Rational(0));
}

TEST_CASE("lambda bounds", "[genfun]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 10);
    PartitionPolyTable<Rational> tbl(c);
    auto lb = lambda_bounds(tbl, 6, {0.5, 1.0, 2.0}, std::optional<WeightVector<Rational>>(w));
    REQUIRE(lb.upper.has_value());
    CHECK(*lb.upper == q(3, 2));
    CHECK(lb.lower <= *lb.upper);
    CHECK(lb.lower.get_d() > 0.99);   // ratios approach 1
    CHECK(lb.empirical > 0.0);

    // single weight: both bounds collapse to the weight
    WeightVector<Rational> single(std::vector<Rational>{q(5, 4)});
    auto cs = reconstruct(single, 5);
    PartitionPolyTable<Rational> ts(cs);
    auto lbs = lambda_bounds(ts, 5, {}, std::optional<WeightVector<Rational>>(single));
    CHECK(lbs.lower == q(5, 4));
    CHECK(*lbs.upper == q(5, 4));

    // trivial sequence
    MomentSequence<Rational> zero(std::vector<Rational>(4, Rational(0)));
    PartitionPolyTable<Rational> zt(zero);
    auto lbz = lambda_bounds(zt, 4, {}, std::optional<WeightVector<Rational>>(WeightVector<Rational>{}));
    CHECK(lbz.lower == Rational(0));
    CHECK(*lbz.upper == Rational(0));
}

TEST_CASE("series order is bounded by the truncation", "[genfun]") {
    MomentSequence<Rational> c(std::vector<Rational>(3, Rational(1)));
    PartitionPolyTable<Rational> tbl(c);
    CHECK_THROWS_AS(series_E(tbl, 4), Error);
    CHECK_THROWS_AS(wightman_diagonal(tbl, 4), Error);
}
