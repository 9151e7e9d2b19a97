#include "qst/spectral.hpp"

#include "qst/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qst {

using boost::multiprecision::cpp_int;

bool RationalMatrix::column_is_zero(int j) const {
    for (int i = 0; i < rows_; ++i) {
        if ((*this)(i, j) != 0) {
            return false;
        }
    }
    return true;
}

Rational RationalMatrix::trace() const {
    Rational t = 0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            out(i, j) = static_cast<double>((*this)(i, j));
        }
    }
    return out;
}

RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.cols_ != y.rows_) {
        throw std::invalid_argument("RationalMatrix product: dimension mismatch");
    }
    RationalMatrix out(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i) {
        for (int k = 0; k < x.cols_; ++k) {
            const Rational& xik = x(i, k);
            if (xik == 0) {
                continue;
            }
            for (int j = 0; j < y.cols_; ++j) {
                out(i, j) += xik * y(k, j);
            }
        }
    }
    return out;
}

int SpectralDecomposition::index_of(double value) const {
    const double radius = eigenvalues.empty()
                              ? 1.0
                              : std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
    const double gap = tol.eigen * std::max(1.0, radius);
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        if (std::abs(eigenvalues[i] - value) <= gap) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

double projector_residual(const SpectralDecomposition& dec, const Eigen::MatrixXd& a) {
    const auto n = a.rows();
    double worst = 0.0;
    const auto bump = [&worst](double x) { worst = std::max(worst, x); };

    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < dec.count(); ++i) {
        const auto& e = dec.projectors[i];
        sum += e;
        rebuilt += dec.eigenvalues[i] * e;
        bump((e * e - e).cwiseAbs().maxCoeff());
        bump((e - e.transpose()).cwiseAbs().maxCoeff());
        bump(std::abs(e.trace() - dec.multiplicities[i]));
        for (std::size_t k = i + 1; k < dec.count(); ++k) {
            bump((e * dec.projectors[k]).cwiseAbs().maxCoeff());
        }
    }
    if (n > 0) {
        bump((sum - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
        bump((rebuilt - a).cwiseAbs().maxCoeff());
    }
    return worst;
}

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& a, const Tolerances& tol) {
    if (a.rows() != a.cols()) {
        throw InputError("eigendecompose: matrix is not square");
    }
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 0.0) {
        throw InputError("eigendecompose: matrix is not symmetric");
    }
    SpectralDecomposition dec;
    dec.tol = tol;
    const auto n = a.rows();
    if (n == 0) {
        return dec;
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw InvariantViolation("eigendecompose: eigensolver did not converge");
    }
    const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
    const Eigen::MatrixXd& vectors = solver.eigenvectors();
    const double radius = std::max(std::abs(values(0)), std::abs(values(n - 1)));
    const double gap = tol.eigen * std::max(1.0, radius);

    // Walk from the top so groups come out in decreasing order.
    Eigen::Index hi = n - 1;
    while (hi >= 0) {
        Eigen::Index lo = hi;
        while (lo > 0 && values(hi) - values(lo - 1) <= gap) {
            --lo;
        }
        const auto count = hi - lo + 1;
        Eigen::MatrixXd basis = vectors.middleCols(lo, count);
        dec.eigenvalues.push_back(values.segment(lo, count).mean());
        dec.multiplicities.push_back(static_cast<int>(count));
        dec.projectors.push_back(basis * basis.transpose());
        dec.bases.push_back(std::move(basis));
        hi = lo - 1;
    }

    const double residual = projector_residual(dec, a);
    if (residual > 10.0 * tol.eigen * std::max(1.0, radius)) {
        throw InvariantViolation("eigendecompose: projector identities fail, residual " +
                                 std::to_string(residual));
    }
    return dec;
}

namespace {

RationalMatrix to_rational(const IntMatrix& a) {
    RationalMatrix out(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j);
        }
    }
    return out;
}

RationalMatrix shifted(const RationalMatrix& a, std::int64_t mu) {
    RationalMatrix out = a;
    for (int i = 0; i < a.rows(); ++i) {
        out(i, i) -= mu;
    }
    return out;
}

bool is_zero(const RationalMatrix& m) {
    for (int j = 0; j < m.cols(); ++j) {
        if (!m.column_is_zero(j)) {
            return false;
        }
    }
    return true;
}

}  // namespace

SpectralDecomposition exact_integer_projectors(const IntMatrix& a,
                                               std::span<const std::int64_t> spectrum,
                                               const Tolerances& tol) {
    if (a.rows() != a.cols() || a != a.transpose()) {
        throw InputError("exact_integer_projectors: matrix is not symmetric");
    }
    std::vector<std::int64_t> values(spectrum.begin(), spectrum.end());
    std::sort(values.begin(), values.end(), std::greater<>());
    if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
        throw InputError("exact_integer_projectors: spectrum has repeated values");
    }
    if (values.empty()) {
        throw InputError("exact_integer_projectors: empty spectrum");
    }
    const RationalMatrix base = to_rational(a);
    const int n = base.rows();

    SpectralDecomposition dec;
    dec.tol = tol;
    dec.exactness = Exactness::exact_rational;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::int64_t lambda = values[i];
        RationalMatrix num(n, n);
        for (int k = 0; k < n; ++k) {
            num(k, k) = 1;
        }
        Rational den = 1;
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (k == i) {
                continue;
            }
            num = num * shifted(base, values[k]);
            den *= Rational(lambda - values[k]);
        }
        if (i == 0 && !is_zero(shifted(base, lambda) * num)) {
            throw InputError("exact_integer_projectors: spectrum validation failed, "
                             "prod (A - lambda I) != 0");
        }
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                num(r, c) /= den;
            }
        }
        const Rational trace = num.trace();
        if (trace == 0) {
            throw InputError("exact_integer_projectors: " + std::to_string(lambda) +
                             " is not an eigenvalue");
        }
        dec.eigenvalues.push_back(static_cast<double>(lambda));
        dec.integer_eigenvalues.push_back(lambda);
        dec.multiplicities.push_back(static_cast<int>(trace));
        dec.projectors.push_back(num.to_double());
        dec.exact_projectors.push_back(std::move(num));
    }
    return dec;
}

SpectralDecomposition decompose(const Graph& g, const Tolerances& tol) {
    const IntMatrix& a = g.adjacency();
    SpectralDecomposition numeric = eigendecompose(a.cast<double>(), tol);

    std::vector<std::int64_t> rounded;
    for (double lambda : numeric.eigenvalues) {
        const double nearest = std::round(lambda);
        if (std::abs(lambda - nearest) > tol.integrality) {
            return numeric;
        }
        rounded.push_back(static_cast<std::int64_t>(nearest));
    }
    SpectralDecomposition exact;
    try {
        exact = exact_integer_projectors(a, rounded, tol);
    } catch (const InputError&) {
        return numeric;
    }
    if (exact.multiplicities != numeric.multiplicities) {
        return numeric;
    }
    exact.bases = std::move(numeric.bases);
    return exact;
}

EigenvalueSupport eigenvalue_support(const SpectralDecomposition& dec, Vertex u) {
    if (u < 0 || u >= dec.dimension()) {
        throw InputError("vertex " + std::to_string(u) + " out of range");
    }
    EigenvalueSupport s{u, {}};
    for (std::size_t i = 0; i < dec.count(); ++i) {
        const bool member = dec.exact() ? !dec.exact_projectors[i].column_is_zero(u)
                                        : dec.projectors[i].col(u).norm() > dec.tol.support;
        if (member) {
            s.members.push_back(i);
        }
    }
    return s;
}

CospectralityReport strong_cospectrality(const SpectralDecomposition& dec, Vertex u, Vertex v) {
    if (u == v) {
        throw InputError("strong_cospectrality requires distinct vertices");
    }
    const auto su = eigenvalue_support(dec, u);
    const auto sv = eigenvalue_support(dec, v);
    std::vector<std::size_t> relevant;
    std::set_union(su.members.begin(), su.members.end(), sv.members.begin(), sv.members.end(),
                   std::back_inserter(relevant));

    CospectralityReport rep{u, v, false, {}, {}, {}};
    for (std::size_t i : relevant) {
        bool plus = true;
        bool minus = true;
        if (dec.exact()) {
            const auto& e = dec.exact_projectors[i];
            for (int k = 0; k < e.rows() && (plus || minus); ++k) {
                plus = plus && e(k, u) == e(k, v);
                minus = minus && e(k, u) == -e(k, v);
            }
        } else {
            const auto& e = dec.projectors[i];
            plus = (e.col(u) - e.col(v)).norm() <= dec.tol.support;
            minus = (e.col(u) + e.col(v)).norm() <= dec.tol.support;
        }
        if (plus) {
            rep.s_plus.push_back(i);
        } else if (minus) {
            rep.s_minus.push_back(i);
        } else {
            rep.neither.push_back(i);
        }
    }
    rep.strongly_cospectral = rep.neither.empty() && su.members == sv.members;
    return rep;
}

Eigen::MatrixXd kernel_basis(const IncidenceMatrix& inc) {
    const Eigen::MatrixXd r = inc.r.cast<double>();
    const auto m = r.cols();
    if (m == 0) {
        return Eigen::MatrixXd(0, 0);
    }
    // Null space of R equals the zero eigenspace of R^T R; nonzero eigenvalues
    // of R^T R are signless-Laplacian eigenvalues, bounded away from zero for
    // integer R at desk scale.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(r.transpose() * r);
    const Eigen::VectorXd& values = solver.eigenvalues();
    const double cutoff = 1e-9 * std::max(1.0, values(m - 1));
    Eigen::Index count = 0;
    while (count < m && values(count) <= cutoff) {
        ++count;
    }
    return solver.eigenvectors().leftCols(count);
}

}  // namespace qst
