#include "powsum/decomp.hpp"
#include "powsum/sequence.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace powsum;

namespace {

MomentSequence<Rational> seq(std::initializer_list<Rational> vals) {
    return MomentSequence<Rational>(std::vector<Rational>(vals));
}

}  // namespace

TEST_CASE("validate: generated sequences pass every flag", "[sequence]") {
    // c = (5/4, 17/16, 65/64, 257/256) from weights {1, 1/2}
    auto c = seq({make_rational(5, 4), make_rational(17, 16), make_rational(65, 64),
                  make_rational(257, 256)});
    ValidityReport r = validate_sequence(c);
    CHECK(r.all_pass());
}

TEST_CASE("validate: the trivial sequence passes", "[sequence]") {
    auto c = seq({Rational(0), Rational(0), Rational(0)});
    CHECK(validate_sequence(c).all_pass());
}

TEST_CASE("validate: mixed zero pattern fails", "[sequence]") {
    auto c = seq({Rational(1), Rational(0), Rational(1)});
    ValidityReport r = validate_sequence(c);
    CHECK(!r.zero_pattern);
    REQUIRE(r.first_zero_pattern.has_value());
    CHECK(*r.first_zero_pattern == 1);
}

TEST_CASE("validate: decreasing ratio fails", "[sequence]") {
    auto c = seq({Rational(1), Rational(2), Rational(1)});
    ValidityReport r = validate_sequence(c);
    CHECK(!r.ratio_monotone);
    REQUIRE(r.first_non_monotone.has_value());
    CHECK(*r.first_non_monotone == 2);
}

TEST_CASE("validate: negative entry fails", "[sequence]") {
    auto c = seq({Rational(1), Rational(-1)});
    ValidityReport r = validate_sequence(c);
    CHECK(!r.nonnegative);
    CHECK(*r.first_negative == 1);
}

TEST_CASE("validate: float mode honors the tolerance", "[sequence]") {
    MomentSequence<double> c({1.0, 1e-14, 1.0}, 1e-12);
    ValidityReport r = validate_sequence(c);
    CHECK(!r.zero_pattern);   // 1e-14 counts as zero at eps 1e-12
    MomentSequence<double> d({1.0, -1e-14, 1.0}, 1e-12);
    CHECK(validate_sequence(d).nonnegative);   // within tolerance of zero
}

TEST_CASE("validate: reconstructed sequences always pass", "[sequence]") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> nw(1, 5), num(1, 60), den(1, 12);
    for (int t = 0; t < 25; ++t) {
        std::vector<Rational> ws;
        for (int i = 0; i < nw(rng); ++i) {
            Rational w = make_rational(num(rng), den(rng));
            if (sgn(w) > 0) ws.push_back(w);
        }
        if (ws.empty()) ws.push_back(Rational(1));
        WeightVector<Rational> w(std::move(ws));
        auto c = reconstruct(w, 8);
        CHECK(validate_sequence(c).all_pass());
    }
}

TEST_CASE("weight vectors sort and reject nonpositive entries", "[sequence]") {
    WeightVector<Rational> w(std::vector<Rational>{Rational(1), Rational(3), Rational(2)});
    CHECK(w.weights.front() == Rational(3));
    CHECK(w.weights.back() == Rational(1));
    CHECK(w.sum() == Rational(6));
    CHECK_THROWS_AS(WeightVector<Rational>(std::vector<Rational>{Rational(0)}), Error);
}

TEST_CASE("c2n accessor bounds", "[sequence]") {
    auto c = seq({Rational(1), Rational(2)});
    CHECK(c.c2n(1) == Rational(1));
    CHECK(c.c2n(2) == Rational(2));
    CHECK_THROWS_AS(c.c2n(3), Error);
    CHECK_THROWS_AS(c.c2n(0), Error);
}
