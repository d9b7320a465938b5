#include "powsum/io.hpp"

#include <catch2/catch.hpp>

using namespace powsum;

namespace {
Rational q(long n, long d = 1) { return make_rational(n, d); }
}

TEST_CASE("sequence json round trip, rational", "[io]") {
    MomentSequence<Rational> c(std::vector<Rational>{q(5, 4), q(17, 16), q(3)});
    Json j = to_json(c);
    CHECK(j["mode"] == "rational");
    CHECK(!j.contains("epsilon"));
    CHECK(j["values"][0] == "5/4");
    CHECK(j["values"][2] == "3");
    auto back = sequence_from_json<Rational>(j);
    CHECK(back.values == c.values);
}

TEST_CASE("sequence json round trip, float", "[io]") {
    MomentSequence<double> c({1.25, 1.0625}, 1e-10);
    Json j = to_json(c);
    CHECK(j["mode"] == "float");
    CHECK(j["epsilon"] == 1e-10);
    auto back = sequence_from_json<double>(j);
    CHECK(back.values == c.values);
    CHECK(back.epsilon == 1e-10);
}

TEST_CASE("weight json round trip", "[io]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    Json j = to_json(w);
    auto back = weights_from_json<Rational>(j);
    CHECK(back.weights == w.weights);
    CHECK_THROWS_AS(weights_from_json<Rational>(Json::object()), Error);
}

TEST_CASE("gram spec json is row-major", "[io]") {
    GramSpec spec;
    spec.columns = {{1, 2}, {3, 4}};   // two columns of two slots
    Json j = to_json(spec);
    // row i holds slot i across columns
    CHECK(j["k"][0][0] == 1);
    CHECK(j["k"][0][1] == 3);
    CHECK(j["k"][1][0] == 2);
    CHECK(j["k"][1][1] == 4);
    GramSpec back = gram_spec_from_json(j);
    CHECK(back.columns == spec.columns);
}

TEST_CASE("malformed inputs are rejected", "[io]") {
    CHECK_THROWS_AS(sequence_from_json<Rational>(Json::object()), Error);
    Json j;
    j["values"] = Json::array();
    CHECK_THROWS_AS(sequence_from_json<Rational>(j), Error);
    Json g;
    g["k"] = Json::array();
    CHECK_THROWS_AS(gram_spec_from_json(g), Error);
}

TEST_CASE("decomposition reports serialize deterministically", "[io]") {
    WeightVector<Rational> w(std::vector<Rational>{q(1), q(1, 2)});
    auto c = reconstruct(w, 8);
    auto rep = decompose(c, {});
    Json j1 = to_json(rep, c.size());
    Json j2 = to_json(decompose(c, {}), c.size());
    CHECK(j1.dump() == j2.dump());
    CHECK(j1["mode"] == "rational");
    CHECK(j1["n"] == 8);
    CHECK(j1["weights"].size() == 2);
    CHECK(j1["stop_reason"] == "residual-below-tol");
    CHECK(j1.contains("lambda_lower"));
    CHECK(j1.contains("per_iteration"));
}

TEST_CASE("positivity report serialization", "[io]") {
    MomentSequence<Rational> bad(std::vector<Rational>{q(1), q(2), q(1), q(2), q(1)});
    PartitionPolyTable<Rational> tbl(bad);
    auto scan = positivity_scan(tbl, ScanBudget{1, 2, 3});
    Json j = to_json(scan);
    CHECK(j["checked"].get<long>() == scan.checked);
    CHECK(j["violations"].size() == scan.violations.size());
    if (!scan.violations.empty()) {
        CHECK(j["violations"][0].contains("spec"));
        CHECK(j["violations"][0].contains("witness"));
    }
}
