#include "support.hpp"

#include "qst/errors.hpp"
#include "qst/transfer.hpp"

#include <doctest.h>

#include <numbers>
#include <numeric>
#include <random>

using namespace qst;
using testing::corpus;

namespace {

std::vector<QuadraticNumber> integers(std::initializer_list<std::int64_t> xs) {
    std::vector<QuadraticNumber> out;
    for (auto x : xs) {
        out.push_back(QuadraticNumber::integer(x));
    }
    return out;
}

// Largest |H(t)_vu| over t = pi j / q, q <= 12, 0 < j < 2q. For an integral
// graph every PST time pi / g with g <= 12 lies on this grid.
double grid_best(const SpectralDecomposition& dec, Vertex u, Vertex v) {
    double best = 0.0;
    for (int q = 1; q <= 12; ++q) {
        for (int j = 1; j < 2 * q; ++j) {
            best = std::max(best, amplitude(dec, std::numbers::pi * j / q, u, v).fidelity());
        }
    }
    return best;
}

}  // namespace

TEST_CASE("compute_g examples") {
    const auto cocktail = integers({4, 0, -2});
    CHECK(compute_g(cocktail, cocktail[0], 1) == 2);
    const auto q4 = integers({4, 2, 0, -2, -4});
    CHECK(compute_g(q4, q4[0], 1) == 2);
    const auto meixner = integers({176, 44, 8, -4, -16});
    CHECK(compute_g(meixner, meixner[0], 1) == 12);
    const std::vector<QuadraticNumber> p3{QuadraticNumber::make(0, 2, 2), QuadraticNumber::integer(0),
                                          QuadraticNumber::make(0, -2, 2)};
    CHECK(compute_g(p3, p3[0], 2) == 1);
}

TEST_CASE("compute_g errors") {
    const auto bad = integers({3, 1});
    CHECK_THROWS_AS(compute_g(bad, bad[1], 1), InputError);  // negative gap
    const auto single = integers({3});
    CHECK_THROWS_AS(compute_g(single, single[0], 1), InputError);
    const std::vector<QuadraticNumber> mixed{QuadraticNumber::make(0, 2, 2), QuadraticNumber::make(0, 2, 3)};
    CHECK_THROWS_AS(compute_g(mixed, mixed[0], 2), InputError);
}

TEST_CASE("compute_g divides every gap and is the largest such divisor") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::int64_t> xs;
        const int size = 2 + int(rng() % 5);
        const std::int64_t scale = 1 + std::int64_t(rng() % 6);
        for (int k = 0; k < size; ++k) {
            xs.push_back(scale * (std::int64_t(rng() % 41) - 20));
        }
        std::sort(xs.rbegin(), xs.rend());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        if (xs.size() < 2) {
            continue;
        }
        std::vector<QuadraticNumber> support;
        for (auto x : xs) {
            support.push_back(QuadraticNumber::integer(x));
        }
        const auto g = compute_g(support, support[0], 1);
        std::int64_t brute = 0;
        for (std::int64_t d = 1; d <= xs.front() - xs.back(); ++d) {
            bool all = true;
            for (auto x : xs) {
                all = all && (xs.front() - x) % d == 0;
            }
            if (all) {
                brute = d;
            }
        }
        CHECK(g == brute);
    }
}

TEST_CASE("identify_quadratic_support") {
    const double s2 = std::sqrt(2.0);
    const std::vector<double> p3{s2, 0.0, -s2};
    const auto form = identify_quadratic_support(p3, 1e-9);
    REQUIRE(form.has_value());
    CHECK(form->delta == 2);
    CHECK(form->a == 0);
    CHECK(form->members[2] == QuadraticNumber::make(0, -2, 2));

    const double s5 = std::sqrt(5.0);
    const std::vector<double> golden{(1 + s5) / 2, (1 - s5) / 2};
    const auto g5 = identify_quadratic_support(golden, 1e-9);
    REQUIRE(g5.has_value());
    CHECK(g5->delta == 5);
    CHECK(g5->a == 1);

    std::size_t witness = 99;
    const std::vector<double> mixed{1 + s5, s2};
    CHECK_FALSE(identify_quadratic_support(mixed, 1e-9, &witness).has_value());
    CHECK(witness == 1);
    const std::vector<double> cubic{1.8793852415718, 0.3472963553339, -1.5320888862379};
    CHECK_FALSE(identify_quadratic_support(cubic, 1e-9).has_value());
}

TEST_CASE("PST positives") {
    struct Case {
        Graph g;
        Vertex u;
        Vertex v;
        double tau0;
        std::int64_t delta;
    };
    const std::vector<Case> cases{
        {make_family("hypercube", {3}), 0, 7, std::numbers::pi / 2, 1},
        {make_family("hypercube", {4}), 0, 15, std::numbers::pi / 2, 1},
        {make_family("cocktail", {2}), 0, 1, std::numbers::pi / 2, 1},
        {make_family("cocktail", {4}), 0, 1, std::numbers::pi / 2, 1},
        {make_family("path", {3}), 0, 2, std::numbers::pi / std::sqrt(2.0), 2},
        {make_family("path", {2}), 0, 1, std::numbers::pi / 2, 1},
        {make_family("cycle", {4}), 0, 2, std::numbers::pi / 2, 1},
    };
    for (const auto& c : cases) {
        const auto cert = pst_check(decompose(c.g), c.u, c.v);
        CAPTURE(c.g.order());
        CHECK(cert.verdict == Verdict::pst);
        CHECK(cert.tau0 == doctest::Approx(c.tau0).epsilon(1e-14));
        CHECK(cert.delta == c.delta);
        CHECK(std::abs(cert.confirmed_amplitude) > 1.0 - 1e-9);
        CHECK(std::abs(cert.confirmed_amplitude - cert.phase) < 1e-9);
        // PST repeats at odd multiples and is absent at even ones
        const auto dec = decompose(c.g);
        CHECK(amplitude(dec, 3 * cert.tau0, c.u, c.v).fidelity() > 1.0 - 1e-9);
        CHECK(amplitude(dec, 2 * cert.tau0, c.u, c.v).fidelity() < 1e-9);
    }
}

TEST_CASE("PST negatives carry the violated condition") {
    const auto c4 = pst_check(decompose(make_family("cycle", {4})), 0, 1);
    CHECK(c4.verdict == Verdict::no_pst);
    CHECK(c4.violated == Violation::not_strongly_cospectral);

    const auto k222 = pst_check(decompose(make_family("cocktail", {3})), 0, 1);
    CHECK(k222.verdict == Verdict::no_pst);
    CHECK(k222.violated == Violation::parity_mismatch);
    CHECK(k222.g == 2);

    const auto p4 = pst_check(decompose(make_family("path", {4})), 0, 3);
    CHECK(p4.verdict == Verdict::no_pst);
    CHECK(p4.violated == Violation::support_not_quadratic);

    CHECK_THROWS_AS(pst_check(decompose(make_family("path", {4})), 1, 1), InputError);
}

TEST_CASE("PST verdicts agree with a time-grid oracle on integral graphs") {
    for (const auto& [name, g] : corpus()) {
        const auto dec = decompose(g);
        if (!dec.exact()) {
            continue;
        }
        CAPTURE(name);
        for (Vertex u = 0; u < g.order(); ++u) {
            for (Vertex v = u + 1; v < g.order(); ++v) {
                const auto cert = pst_check(dec, u, v);
                const double best = grid_best(dec, u, v);
                CAPTURE(u);
                CAPTURE(v);
                CHECK((cert.verdict == Verdict::pst) == (best > 1.0 - 1e-9));
            }
        }
    }
}

TEST_CASE("periodicity_check") {
    const auto ints = integers({3, 1, -1, -3});
    const auto a = periodicity_check(ints, 0);
    CHECK(a.periodic);
    CHECK(a.mode == PeriodicMode::all_integer);

    const std::vector<QuadraticNumber> pair{QuadraticNumber::make(2, 2, 5), QuadraticNumber::make(2, -2, 5)};
    const auto b = periodicity_check(pair, 0);
    CHECK(b.periodic);
    CHECK(b.mode == PeriodicMode::single_surd);
    CHECK(b.delta == 5);
    CHECK(b.a == 2);

    const std::vector<QuadraticNumber> two{QuadraticNumber::make(2, 2, 5), QuadraticNumber::make(0, 2, 2)};
    const auto c = periodicity_check(two, 0);
    CHECK_FALSE(c.periodic);
    CHECK(c.reason == "distinct_radicands");
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->first.radicand() == 5);
    CHECK(c.witness->second.radicand() == 2);

    const std::vector<QuadraticNumber> shifted{QuadraticNumber::make(2, 2, 5), QuadraticNumber::make(0, 2, 5)};
    const auto d = periodicity_check(shifted, 0);
    CHECK_FALSE(d.periodic);
    CHECK(d.reason == "distinct_rational_parts");

    const std::vector<QuadraticNumber> none;
    CHECK_THROWS_AS(periodicity_check(none, 0), InputError);
}

TEST_CASE("no-PST certificates cover every Q-graph vertex") {
    for (const auto& [family, param, vertices] :
         std::vector<std::tuple<std::string, int, int>>{{"hypercube", 3, 20}, {"cocktail", 3, 18}, {"complete", 4, 10}}) {
        CAPTURE(family);
        const auto cert = qgraph_no_pst_certificate(make_family(family, {param}));
        REQUIRE(cert.applicable);
        CHECK(cert.verdict == Verdict::no_pst);
        CHECK(int(cert.vertices.size()) == vertices);
        for (const auto& vc : cert.vertices) {
            CHECK_FALSE(vc.periodicity.periodic);
            CHECK(vc.periodicity.witness.has_value());
            CHECK(square_free_part(vc.irrational_delta_sq).theta > 1);
        }
    }
}

TEST_CASE("K_4 surds") {
    const auto cert = qgraph_no_pst_certificate(make_family("complete", {4}));
    REQUIRE(cert.applicable);
    std::set<std::int64_t> radicands;
    for (const auto& vc : cert.vertices) {
        for (const auto& x : vc.support) {
            if (x.source) {
                const std::int64_t s = *x.source + cert.r;
                radicands.insert(square_free_part(s * s + 4).theta);
            }
        }
    }
    // lambda = 3: 6^2 + 4 = 40 = 2^2 * 10; lambda = -1: 2^2 + 4 = 8 = 2^2 * 2
    CHECK(radicands == std::set<std::int64_t>{2, 10});
}

TEST_CASE("certificate supports match the numeric supports in Q(G)") {
    for (const auto& [name, g] : corpus()) {
        const auto cert = qgraph_no_pst_certificate(g);
        if (!cert.applicable) {
            continue;
        }
        CAPTURE(name);
        const auto dec_q = decompose(q_graph(g));
        for (const auto& vc : cert.vertices) {
            std::vector<double> got;
            for (const auto& x : vc.support) {
                got.push_back(x.value.to_double());
            }
            std::vector<double> want;
            for (std::size_t i : eigenvalue_support(dec_q, vc.z).members) {
                want.push_back(dec_q.eigenvalues[i]);
            }
            std::sort(got.rbegin(), got.rend());
            CAPTURE(vc.z);
            CHECK(multiset_deviation(got, want) < 1e-9);
        }
    }
}

TEST_CASE("no-PST certificate applicability") {
    CHECK_FALSE(qgraph_no_pst_certificate(make_family("cycle", {5})).applicable);
    CHECK(qgraph_no_pst_certificate(make_family("cycle", {5})).reason.find("integral") != std::string::npos);
    CHECK_FALSE(qgraph_no_pst_certificate(make_family("path", {2})).applicable);
    CHECK_FALSE(qgraph_no_pst_certificate(make_family("path", {4})).applicable);
    CHECK_FALSE(qgraph_no_pst_certificate(Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}))
                    .applicable);
}

TEST_CASE("certificate agrees with pst_check on Q(G)") {
    for (const auto& family : {"complete", "cocktail"}) {
        const auto g = make_family(family, {family == std::string("complete") ? 4 : 3});
        REQUIRE(qgraph_no_pst_certificate(g).applicable);
        const auto q = q_graph(g);
        const auto dec = decompose(q);
        for (Vertex a = 0; a < q.order(); ++a) {
            for (Vertex b = a + 1; b < q.order(); ++b) {
                CHECK(pst_check(dec, a, b).verdict == Verdict::no_pst);
            }
        }
    }
}

TEST_CASE("PGST witness for Q(Q_4)") {
    const auto g = make_family("hypercube", {4});
    const auto w = pgst_witness_search(g, 0, 15, {0.05, 1'000'000, 2});
    CHECK(w.target_reached);
    CHECK(w.fidelity > 0.95);
    CHECK(w.t0 == doctest::Approx((4.0 * w.alpha + 2.0 / w.g) * std::numbers::pi).epsilon(1e-12));
    CHECK(std::abs(w.fidelity - w.reduced_fidelity) < 1e-8);
    for (const auto& row : w.table) {
        CHECK(row.sigma * row.sigma * row.theta == row.delta_sq);
        CHECK(square_free_part(row.theta).sigma == 1);
        CHECK(row.delta_sq == (row.lambda + 4) * (row.lambda + 4) + 4);
    }
    // the job count does not change the answer
    const auto serial = pgst_witness_search(g, 0, 15, {0.05, 1'000'000, 1});
    CHECK(serial.alpha == w.alpha);
    // direct check with the walk on Q(G)
    const auto dec_q = decompose(q_graph(g));
    CHECK(amplitude(dec_q, w.t0, 0, 15).fidelity() == doctest::Approx(w.fidelity).epsilon(1e-6));
}

TEST_CASE("PGST epsilon schedule is monotone") {
    const auto g = make_family("hypercube", {4});
    double previous = 0.0;
    for (double eps : {0.1, 0.05, 0.01}) {
        const auto w = pgst_witness_search(g, 0, 15, {eps, 1'000'000, 2});
        CHECK(w.target_reached);
        CHECK(w.fidelity >= previous);
        previous = w.fidelity;
    }
}

TEST_CASE("PGST search exhaustion and hypotheses") {
    const auto q4 = make_family("hypercube", {4});
    const auto w = pgst_witness_search(q4, 0, 15, {0.001, 10, 1});
    CHECK_FALSE(w.target_reached);
    CHECK(w.alpha >= 1);
    CHECK(w.alpha <= 10);

    const auto q3 = make_family("hypercube", {3});
    try {
        pgst_witness_search(q3, 0, 7, {});
        FAIL("expected HypothesisError");
    } catch (const HypothesisError& e) {
        CHECK(std::string(e.what()).rfind("hypotheses unmet", 0) == 0);
    }
    CHECK_THROWS_AS(pgst_witness_search(make_family("cycle", {4}), 0, 1, {}), HypothesisError);
    CHECK_THROWS_AS(pgst_witness_search(make_family("cocktail", {3}), 0, 1, {}), HypothesisError);
    CHECK_THROWS_AS(pgst_witness_search(make_family("path", {3}), 0, 2, {}), HypothesisError);
    CHECK_THROWS_AS(pgst_witness_search(q4, 0, 15, {1.5, 10, 1}), InputError);
}

TEST_CASE("PGST witness for Q(cocktail(4))") {
    const auto w = pgst_witness_search(make_family("cocktail", {4}), 0, 1, {0.01, 1'000'000, 2});
    CHECK(w.target_reached);
    CHECK(w.fidelity > 0.99);
    CHECK_FALSE(w.bipartite);
}

TEST_CASE("cocktail(3): no antipodal PST in G, yet Q(G) gets close on the same time family") {
    const auto g = make_family("cocktail", {3});
    const auto dec = decompose(g);
    // H(pi/2)_{01} = 1/6 - 1/2 - 1/3
    CHECK(amplitude(dec, std::numbers::pi / 2, 0, 1).fidelity() == doctest::Approx(2.0 / 3.0));
    CHECK(pst_check(dec, 0, 1).verdict == Verdict::no_pst);
    // t = (4 alpha + 2/g) pi with g = 2, alpha = 77, evaluated on Q(G) directly
    const auto dec_q = decompose(q_graph(g));
    CHECK(amplitude(dec_q, 309.0 * std::numbers::pi, 0, 1).fidelity() > 0.99);
}
