#pragma once

#include "qst/graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace qst {

using Rational = boost::multiprecision::cpp_rational;

struct Tolerances {
    /// Relative gap (times max(1, spectral radius)) under which two numeric
    /// eigenvalues are merged into one eigenspace.
    double eigen = 1e-8;
    /// ||E e_u|| above this declares membership in the eigenvalue support;
    /// also the cospectrality threshold ||E e_u -+ E e_v||.
    double support = 1e-8;
    /// Dynamic confirmation threshold for PST (|amplitude| > 1 - validation).
    double validation = 1e-9;
    /// Distance to the nearest integer under which a numeric eigenvalue is a
    /// candidate for exact integer treatment.
    double integrality = 1e-6;
};

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

    [[nodiscard]] int rows() const { return rows_; }
    [[nodiscard]] int cols() const { return cols_; }
    Rational& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    [[nodiscard]] bool column_is_zero(int j) const;
    [[nodiscard]] Rational trace() const;
    [[nodiscard]] Eigen::MatrixXd to_double() const;

    friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y);
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

enum class Exactness { floating, exact_rational };

/// Spectral decomposition A = sum_i lambda_i E_i of a real symmetric matrix.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // strictly decreasing
    std::vector<int> multiplicities;
    std::vector<Eigen::MatrixXd> projectors;
    /// Orthonormal eigenvector columns per eigenvalue (empty when the
    /// decomposition came from exact_integer_projectors alone).
    std::vector<Eigen::MatrixXd> bases;

    Exactness exactness = Exactness::floating;
    /// Populated in exact mode only, aligned with eigenvalues.
    std::vector<std::int64_t> integer_eigenvalues;
    std::vector<RationalMatrix> exact_projectors;

    Tolerances tol;

    [[nodiscard]] int dimension() const {
        return projectors.empty() ? 0 : static_cast<int>(projectors.front().rows());
    }
    [[nodiscard]] std::size_t count() const { return eigenvalues.size(); }
    [[nodiscard]] bool exact() const { return exactness == Exactness::exact_rational; }
    /// Index of the eigenvalue within tolerance of value, or -1.
    [[nodiscard]] int index_of(double value) const;
};

/// Numeric decomposition via a self-adjoint eigensolver. Throws InputError
/// for non-symmetric input and InvariantViolation when the projector
/// identities fail at 10x the grouping tolerance.
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& a, const Tolerances& tol = {});

/// Exact projectors of an integer matrix with the given distinct integer
/// spectrum (any order), via E_l = prod_{mu != l} (A - mu I) / (l - mu).
/// Throws InputError unless prod_l (A - l I) == 0 and every listed value is
/// an eigenvalue.
SpectralDecomposition exact_integer_projectors(const IntMatrix& a,
                                               std::span<const std::int64_t> spectrum,
                                               const Tolerances& tol = {});

/// Numeric decomposition of A(g), upgraded to exact mode whenever the
/// rounded spectrum passes exact validation.
SpectralDecomposition decompose(const Graph& g, const Tolerances& tol = {});

/// Largest entrywise residual over the four projector identities
/// (completeness, idempotence, orthogonality, reconstruction) and the
/// trace/multiplicity match.
double projector_residual(const SpectralDecomposition& dec, const Eigen::MatrixXd& a);

struct EigenvalueSupport {
    Vertex vertex = 0;
    /// Indices into the decomposition's eigenvalue list, increasing.
    std::vector<std::size_t> members;
};

EigenvalueSupport eigenvalue_support(const SpectralDecomposition& dec, Vertex u);

struct CospectralityReport {
    Vertex u = 0;
    Vertex v = 0;
    bool strongly_cospectral = false;
    std::vector<std::size_t> s_plus;   // E e_u == E e_v, within supp(u)
    std::vector<std::size_t> s_minus;  // E e_u == -E e_v, within supp(u)
    std::vector<std::size_t> neither;  // eigenvalues of supp(u) or supp(v) in neither class
};

CospectralityReport strong_cospectrality(const SpectralDecomposition& dec, Vertex u, Vertex v);

/// Orthonormal basis of the right null space of the incidence matrix, one
/// vector per column.
Eigen::MatrixXd kernel_basis(const IncidenceMatrix& r);

}  // namespace qst
