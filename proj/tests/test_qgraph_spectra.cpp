#include "support.hpp"

#include "qst/errors.hpp"
#include "qst/qgraph_spectra.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace qst;
using testing::corpus;
using testing::max_abs;

namespace {

std::vector<double> closed_values(const Graph& g) {
    const auto base = prepare_base(g);
    return expanded_values(closed_form_spectrum(base, decompose(g)));
}

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.rbegin(), v.rend());
    return v;
}

}  // namespace

TEST_CASE("closed-form spectrum equals the dense spectrum of A(Q(G))") {
    for (const auto& [name, g] : corpus()) {
        CAPTURE(name);
        const auto want = testing::dense_spectrum(testing::as_double(q_graph(g)));
        CHECK(multiset_deviation(closed_values(g), want) < 1e-8);
    }
}

TEST_CASE("closed-form examples") {
    const double s5 = std::sqrt(5.0);
    const double s2 = std::sqrt(2.0);
    const auto c3 = closed_values(make_family("cycle", {3}));
    const auto c3_want = sorted_desc({1 + s5, 1 - s5, (-1 + s5) / 2, (-1 + s5) / 2, (-1 - s5) / 2,
                                      (-1 - s5) / 2});
    CHECK(multiset_deviation(c3, c3_want) < 1e-12);

    const auto c4 = closed_values(make_family("cycle", {4}));
    const auto c4_want = sorted_desc({1 + s5, 1 - s5, s2, s2, -s2, -s2, 0.0, -2.0});
    CHECK(multiset_deviation(c4, c4_want) < 1e-12);

    const auto p2 = closed_values(make_family("path", {2}));
    CHECK(multiset_deviation(p2, {s2, 0.0, -s2}) < 1e-12);
}

TEST_CASE("branch structure") {
    const auto c3 = prepare_base(make_family("cycle", {3}));
    for (const auto& p : closed_form_spectrum(c3, decompose(c3.graph))) {
        CHECK(p.branch != Branch::minus_two);
        CHECK(p.branch != Branch::zero);
    }
    // non-bipartite bases never produce -2 outside the incidence kernel
    for (const auto& [name, g] : corpus()) {
        const auto base = prepare_base(g);
        for (const auto& p : closed_form_spectrum(base, decompose(g))) {
            if (p.branch == Branch::plus || p.branch == Branch::minus) {
                CAPTURE(name);
                CHECK(std::abs(p.value + 2.0) > 1e-6);
            }
        }
    }
    const auto q3 = prepare_base(make_family("hypercube", {3}));
    int zero = 0;
    int minus_two = 0;
    for (const auto& p : closed_form_spectrum(q3, decompose(q3.graph))) {
        zero += p.branch == Branch::zero ? p.multiplicity : 0;
        minus_two += p.branch == Branch::minus_two ? p.multiplicity : 0;
    }
    CHECK(zero == 1);
    CHECK(minus_two == 12 - 8 + 1);
}

TEST_CASE("exact branch values for integral bases") {
    const auto k4 = prepare_base(make_family("complete", {4}));
    const auto pairs = closed_form_spectrum(k4, decompose(k4.graph));
    std::map<std::string, int> seen;
    for (const auto& p : pairs) {
        REQUIRE(p.exact.has_value());
        CHECK(p.exact->to_double() == doctest::Approx(p.value).epsilon(1e-14));
        seen[p.exact->to_string()] += p.multiplicity;
    }
    CHECK(seen["2+sqrt(10)"] == 1);
    CHECK(seen["2-sqrt(10)"] == 1);
    CHECK(seen["sqrt(2)"] == 3);
    CHECK(seen["-sqrt(2)"] == 3);
    CHECK(seen["-2"] == 2);
}

TEST_CASE("coefficient identities hold exactly") {
    for (const auto& [name, g] : corpus()) {
        const auto dec = decompose(g);
        if (!dec.exact()) {
            continue;
        }
        CAPTURE(name);
        const int r = g.degree(0);
        for (std::int64_t lambda : dec.integer_eigenvalues) {
            const auto c = branch_coefficients(lambda, r);
            const auto s = QuadraticNumber::integer(lambda + r);
            const auto two = QuadraticNumber::integer(2);
            const auto delta_sq = QuadraticNumber::integer(c.delta_sq);
            CHECK(c.c_plus * c.c_minus == -s);
            CHECK(c.c_plus * c.c_plus + c.c_minus * c.c_minus == delta_sq - two * s);
            CHECK(c.c_minus * c.c_minus - c.c_plus * c.c_plus == (s - two) * c.delta);
            CHECK(c.delta * c.delta == delta_sq);
            // both branch values are roots of x^2 - (s - 2) x - s
            for (const auto& x : {c.lambda_plus, c.lambda_minus}) {
                CHECK(x * x - (s - two) * x - s == QuadraticNumber::integer(0));
            }
        }
    }
}

TEST_CASE("delta squared is a perfect square only when lambda + r = 0") {
    for (std::int64_t s = -40; s <= 40; ++s) {
        const std::int64_t d2 = s * s + 4;
        const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(double(d2))));
        CAPTURE(s);
        CHECK((root * root == d2) == (s == 0));
    }
}

TEST_CASE("closed-form eigenvectors are an orthonormal eigenbasis") {
    for (const auto& [name, g] : corpus()) {
        CAPTURE(name);
        const auto base = prepare_base(g);
        const auto vecs = closed_form_eigenvectors(base, decompose(g));
        const int dim = g.order() + g.size();
        REQUIRE(int(vecs.size()) == dim);
        Eigen::MatrixXd x(dim, dim);
        for (int k = 0; k < dim; ++k) {
            x.col(k) = vecs[k].vector;
        }
        CHECK(max_abs(x.transpose() * x - Eigen::MatrixXd::Identity(dim, dim)) < 1e-10);
        const auto a = testing::as_double(q_graph(g));
        for (const auto& v : vecs) {
            CHECK((a * v.vector - v.value * v.vector).norm() < 1e-9);
        }
    }
}

TEST_CASE("C_4 special eigenvectors") {
    const auto base = prepare_base(make_family("cycle", {4}));
    const auto vecs = closed_form_eigenvectors(base, decompose(base.graph));
    const auto order = bipartition_order(base);
    CHECK(order == std::vector<Vertex>{0, 2, 1, 3});
    for (const auto& v : vecs) {
        if (v.branch == Branch::zero) {
            Eigen::VectorXd want(8);
            want << 0.5, -0.5, 0.5, -0.5, 0, 0, 0, 0;
            CHECK((v.vector - want).norm() < 1e-12);
            // in bipartition order: n^{-1/2} (j, -j, 0)
            for (int k = 0; k < 4; ++k) {
                CHECK(v.vector(order[k]) == doctest::Approx(k < 2 ? 0.5 : -0.5));
            }
        }
        if (v.branch == Branch::minus_two) {
            CHECK(v.vector.head(4).isZero());
            for (int k = 4; k < 8; ++k) {
                CHECK(std::abs(v.vector(k)) == doctest::Approx(0.5));
            }
        }
    }
}

TEST_CASE("projectors match the dense eigenspaces of A(Q(G))") {
    for (const auto& [name, g] : corpus()) {
        CAPTURE(name);
        const auto base = prepare_base(g);
        const auto set = qgraph_projectors(base, decompose(g));
        const auto a = testing::as_double(q_graph(g));
        const int dim = int(a.rows());
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
        Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(dim, dim);
        for (std::size_t i = 0; i < set.pairs.size(); ++i) {
            const auto& f = set.projectors[i];
            CHECK(max_abs(f - testing::dense_projector(a, set.pairs[i].value)) < 1e-8);
            CHECK(max_abs(f * f - f) < 1e-10);
            CHECK(f.trace() == doctest::Approx(set.pairs[i].multiplicity));
            sum += f;
            rebuilt += set.pairs[i].value * f;
        }
        CHECK(max_abs(sum - Eigen::MatrixXd::Identity(dim, dim)) < 1e-10);
        CHECK(max_abs(rebuilt - a) < 1e-10);
    }
}

TEST_CASE("Petersen plus and minus projectors annihilate each other") {
    const auto base = prepare_base(make_family("petersen", {}));
    const auto set = qgraph_projectors(base, decompose(base.graph));
    for (std::size_t i = 0; i < set.pairs.size(); ++i) {
        for (std::size_t k = 0; k < set.pairs.size(); ++k) {
            if (i != k && set.pairs[i].source_index && set.pairs[i].source_index == set.pairs[k].source_index) {
                CHECK(max_abs(set.projectors[i] * set.projectors[k]) < 1e-10);
            }
        }
    }
}

TEST_CASE("zero-branch projector is diag(E_{-r}, 0)") {
    const auto base = prepare_base(make_family("cycle", {4}));
    const auto dec = decompose(base.graph);
    const auto set = qgraph_projectors(base, dec);
    for (std::size_t i = 0; i < set.pairs.size(); ++i) {
        if (set.pairs[i].branch == Branch::zero) {
            const auto& f = set.projectors[i];
            CHECK(max_abs(f.topLeftCorner(4, 4) - dec.projectors[dec.index_of(-2.0)]) < 1e-14);
            CHECK(f.bottomRows(4).isZero());
            CHECK(f.rightCols(4).isZero());
        }
    }
}

TEST_CASE("hypotheses of the closed form") {
    CHECK_THROWS_AS(prepare_base(make_family("path", {3})), HypothesisError);
    CHECK_THROWS_AS(prepare_base(Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})),
                    HypothesisError);
    CHECK_THROWS_AS(prepare_base(make_family("complete", {1})), HypothesisError);
    CHECK(prepare_base(make_family("path", {2})).warnings.size() == 1);
    CHECK(prepare_base(make_family("cycle", {5})).warnings.empty());
}

TEST_CASE("multiset_deviation") {
    CHECK(std::isinf(multiset_deviation({1.0}, {1.0, 2.0})));
    CHECK(multiset_deviation({3.0, 1.0}, {3.5, 1.0}) == doctest::Approx(0.5));
}
