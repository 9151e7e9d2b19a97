#include "support.hpp"

#include "qst/report.hpp"

#include <doctest.h>

#include <cmath>

using namespace qst;

TEST_CASE("round15") {
    CHECK(round15(0.1 + 0.2) == 0.3);
    CHECK(round15(1.0 / 3.0) == 0.333333333333333);
    CHECK(!std::signbit(round15(-0.0)));
    CHECK(round15(-1e-300) == -1e-300);
}

TEST_CASE("quadratic number JSON") {
    const auto j = to_json(QuadraticNumber::make(1, 1, 5));
    CHECK(j["a"] == 1);
    CHECK(j["b"] == 1);
    CHECK(j["D"] == 5);
    CHECK(j["text"] == "(1+sqrt(5))/2");
    CHECK(j["approx"].get<double>() == doctest::Approx((1 + std::sqrt(5.0)) / 2));
}

TEST_CASE("PST certificate JSON") {
    const auto pst = to_json(pst_check(decompose(make_family("hypercube", {3})), 0, 7));
    CHECK(pst["kind"] == "pst_certificate");
    CHECK(pst["verdict"] == "pst");
    CHECK(pst["g"] == 2);
    CHECK(pst["tau0"].get<double>() == doctest::Approx(M_PI / 2));
    CHECK(pst["conditions"]["parity"] == true);
    CHECK_FALSE(pst.contains("violated_condition"));

    const auto no = to_json(pst_check(decompose(make_family("cycle", {4})), 0, 1));
    CHECK(no["verdict"] == "no_pst");
    CHECK(no["violated_condition"]["tag"] == "not_strongly_cospectral");
    CHECK_FALSE(no.contains("tau0"));
}

TEST_CASE("no-PST certificate JSON") {
    const auto j = to_json(qgraph_no_pst_certificate(make_family("hypercube", {3})));
    CHECK(j["verdict"] == "no_pst");
    CHECK(j["preamble"]["n"] == 8);
    CHECK(j["vertices"].size() == 20);
    CHECK(j["vertices"][8]["kind"] == "edge");
    CHECK(j["vertices"][0]["periodicity"]["periodic"] == false);

    const auto na = to_json(qgraph_no_pst_certificate(make_family("cycle", {5})));
    CHECK(na["verdict"] == "not_applicable");
    CHECK(na.contains("reason"));
}

TEST_CASE("documents are deterministic") {
    const auto g = make_family("hypercube", {4});
    const auto a = to_json(pgst_witness_search(g, 0, 15, {0.05, 100000, 1})).dump(2);
    const auto b = to_json(pgst_witness_search(g, 0, 15, {0.05, 100000, 3})).dump(2);
    CHECK(a == b);
    const auto s1 = spectrum_json(g, decompose(g)).dump(2);
    const auto s2 = spectrum_json(g, decompose(g)).dump(2);
    CHECK(s1 == s2);
}
