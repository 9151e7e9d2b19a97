#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include "qst/graph.hpp"
#include "qst/spectral.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

namespace qst::testing {

struct NamedGraph {
    std::string name;
    Graph graph;
};

inline NamedGraph named(const std::string& family, std::vector<int> params, std::string label) {
    return {std::move(label), make_family(family, params)};
}

/// C_3, C_4, C_5, P_2, K_4, Petersen, Q_3, Q_4, cocktail(2..4), halved Q_4.
inline std::vector<NamedGraph> corpus() {
    return {
        named("cycle", {3}, "C3"),
        named("cycle", {4}, "C4"),
        named("cycle", {5}, "C5"),
        named("path", {2}, "P2"),
        named("complete", {4}, "K4"),
        named("petersen", {}, "Petersen"),
        named("hypercube", {3}, "Q3"),
        named("hypercube", {4}, "Q4"),
        named("cocktail", {2}, "CP2"),
        named("cocktail", {3}, "CP3"),
        named("cocktail", {4}, "CP4"),
        named("halved_hypercube", {2}, "halfQ4"),
    };
}

inline Eigen::MatrixXd as_double(const Graph& g) {
    return g.adjacency().cast<double>();
}

/// Sorted (decreasing) eigenvalues straight from the dense solver.
inline std::vector<double> dense_spectrum(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    std::vector<double> values(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(values.rbegin(), values.rend());
    return values;
}

/// exp(-i t A) through Eigen's matrix exponential (scaling and squaring).
inline Eigen::MatrixXcd expm_oracle(const Eigen::MatrixXd& a, double t) {
    const Eigen::MatrixXcd m = std::complex<double>(0.0, -t) * a.cast<std::complex<double>>();
    return m.exp();
}

/// Projector onto the eigenspace of `value` computed from scratch.
inline Eigen::MatrixXd dense_projector(const Eigen::MatrixXd& a, double value, double tol = 1e-7) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(a.rows(), a.cols());
    for (int k = 0; k < a.rows(); ++k) {
        if (std::abs(solver.eigenvalues()(k) - value) < tol) {
            p += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).transpose();
        }
    }
    return p;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& expr) {
    const auto m = expr.eval();
    return m.size() == 0 ? 0.0 : double(m.cwiseAbs().maxCoeff());
}

}  // namespace qst::testing
