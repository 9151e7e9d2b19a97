#pragma once

#include "qst/graph.hpp"
#include "qst/quadratic.hpp"
#include "qst/spectral.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace qst {

// Eigenvalues of A(Q(G)) for connected r-regular G come in four kinds:
//   plus / minus   lambda_{i+-} = (r + lambda_i - 2 +- sqrt((lambda_i + r)^2 + 4)) / 2
//   minus_two      -2 on the null space of the incidence matrix
//   zero           0, only for bipartite G (replaces the pair of lambda_i = -r)
enum class Branch { plus, minus, minus_two, zero };

std::string to_string(Branch b);

/// Validated base graph for the closed forms.
struct QGraphBase {
    Graph graph;
    int r = 0;
    bool bipartite = false;
    std::vector<int> coloring;  // bipartition colors when bipartite
    Eigen::MatrixXd incidence;  // n x m
    Eigen::MatrixXd kernel;     // m x eta, orthonormal columns
    std::vector<std::string> warnings;
};

/// Throws HypothesisError unless g is connected and r-regular with r >= 1.
/// r == 1 (only P_2) is accepted with a warning.
QGraphBase prepare_base(const Graph& g);

/// Exact scalar data of one source eigenvalue lambda of an r-regular graph:
/// the coefficients c_{+-} = lambda_{+-} + 2 - r - lambda that weight the
/// top block of the eigenvectors, and Delta = sqrt((lambda + r)^2 + 4).
struct BranchCoefficients {
    std::int64_t lambda = 0;
    std::int64_t r = 0;
    QuadraticNumber lambda_plus;
    QuadraticNumber lambda_minus;
    QuadraticNumber c_plus;
    QuadraticNumber c_minus;
    QuadraticNumber delta;     // sqrt((lambda + r)^2 + 4)
    std::int64_t delta_sq = 0;  // (lambda + r)^2 + 4
};

BranchCoefficients branch_coefficients(std::int64_t lambda, std::int64_t r);

struct QGraphEigenpair {
    Branch branch = Branch::plus;
    /// Index into the base decomposition; absent for minus_two / zero.
    std::optional<std::size_t> source_index;
    std::optional<double> source_eigenvalue;
    double value = 0.0;
    /// Exact value whenever the base spectrum is integral (always for the
    /// minus_two and zero branches).
    std::optional<QuadraticNumber> exact;
    int multiplicity = 0;
};

std::vector<QGraphEigenpair> closed_form_spectrum(const QGraphBase& base,
                                                  const SpectralDecomposition& dec);

/// Eigenvalues repeated by multiplicity, sorted decreasingly.
std::vector<double> expanded_values(const std::vector<QGraphEigenpair>& pairs);
std::vector<double> expanded_values(const SpectralDecomposition& dec);

/// Largest pairwise gap between two sorted multisets; +infinity when the
/// sizes differ.
double multiset_deviation(const std::vector<double>& x, const std::vector<double>& y);

struct QGraphEigenvector {
    Branch branch = Branch::plus;
    std::optional<std::size_t> source_index;  // i
    int column = 0;                           // j within the eigenspace, or k for minus_two
    double value = 0.0;
    Eigen::VectorXd vector;                   // length n + m
};

/// Orthonormal eigenbasis of A(Q(G)) from the eigenbasis of G and the
/// incidence null space. The zero-branch vector is n^{-1/2} times the +-1
/// bipartition sign vector in the original labels; see bipartition_order.
std::vector<QGraphEigenvector> closed_form_eigenvectors(const QGraphBase& base,
                                                        const SpectralDecomposition& dec);

struct QGraphProjectorSet {
    std::vector<QGraphEigenpair> pairs;
    std::vector<Eigen::MatrixXd> projectors;  // aligned with pairs
};

/// Eigenprojectors of A(Q(G)) assembled from the blocks of E_{lambda_i}
/// and R. For bipartite G the zero-branch projector is diag(E_{-r}, 0).
QGraphProjectorSet qgraph_projectors(const QGraphBase& base, const SpectralDecomposition& dec);

/// Permutation listing color-0 vertices first, then color-1 vertices, each
/// in increasing label order. Requires a bipartite base.
std::vector<Vertex> bipartition_order(const QGraphBase& base);

}  // namespace qst
