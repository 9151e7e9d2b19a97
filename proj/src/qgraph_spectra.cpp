#include "qst/qgraph_spectra.hpp"

#include "qst/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qst {

std::string to_string(Branch b) {
    switch (b) {
        case Branch::plus: return "plus";
        case Branch::minus: return "minus";
        case Branch::minus_two: return "minus_two";
        case Branch::zero: return "zero";
    }
    return "?";
}

QGraphBase prepare_base(const Graph& g) {
    const auto cls = classify(g);
    if (g.order() < 2 || !cls.is_connected || !cls.regularity || *cls.regularity < 1) {
        throw HypothesisError("closed form requires connected regular base graph of degree >= 1");
    }
    QGraphBase base;
    base.graph = g;
    base.r = *cls.regularity;
    base.bipartite = cls.is_bipartite;
    if (cls.bipartition) {
        base.coloring = *cls.bipartition;
    }
    const auto inc = incidence(g);
    base.incidence = inc.r.cast<double>();
    base.kernel = kernel_basis(inc);
    if (base.r == 1) {
        base.warnings.emplace_back("degree r = 1: the base is P_2 and Q(P_2) = P_3; "
                                   "the no-PST theorem needs r >= 2");
    }
    return base;
}

BranchCoefficients branch_coefficients(std::int64_t lambda, std::int64_t r) {
    BranchCoefficients c;
    c.lambda = lambda;
    c.r = r;
    const std::int64_t s = lambda + r;
    c.delta_sq = s * s + 4;
    c.lambda_plus = QuadraticNumber::make(s - 2, 1, c.delta_sq);
    c.lambda_minus = QuadraticNumber::make(s - 2, -1, c.delta_sq);
    const auto shift = QuadraticNumber::integer(2 - s);
    c.c_plus = c.lambda_plus + shift;
    c.c_minus = c.lambda_minus + shift;
    c.delta = QuadraticNumber::make(0, 2, c.delta_sq);
    return c;
}

namespace {

// True for the eigenvalue -r of a bipartite base, whose +- pair degenerates
// into the zero branch and one extra minus_two vector.
bool is_bottom(const QGraphBase& base, const SpectralDecomposition& dec, std::size_t i) {
    if (!base.bipartite) {
        return false;
    }
    if (dec.exact()) {
        return dec.integer_eigenvalues[i] == -base.r;
    }
    return std::abs(dec.eigenvalues[i] + base.r) <= dec.tol.eigen * std::max(1.0, double(base.r));
}

double branch_value(double lambda, int r, int sign) {
    const double s = lambda + r;
    return (s - 2.0 + sign * std::sqrt(s * s + 4.0)) / 2.0;
}

void check_dimensions(const QGraphBase& base, const SpectralDecomposition& dec) {
    if (dec.dimension() != base.graph.order()) {
        throw InputError("decomposition does not match the base graph order");
    }
}

}  // namespace

std::vector<QGraphEigenpair> closed_form_spectrum(const QGraphBase& base,
                                                  const SpectralDecomposition& dec) {
    check_dimensions(base, dec);
    std::vector<QGraphEigenpair> out;
    bool have_zero = false;
    for (std::size_t i = 0; i < dec.count(); ++i) {
        if (is_bottom(base, dec, i)) {
            have_zero = true;
            continue;
        }
        for (int sign : {+1, -1}) {
            QGraphEigenpair p;
            p.branch = sign > 0 ? Branch::plus : Branch::minus;
            p.source_index = i;
            p.source_eigenvalue = dec.eigenvalues[i];
            p.multiplicity = dec.multiplicities[i];
            if (dec.exact()) {
                const auto c = branch_coefficients(dec.integer_eigenvalues[i], base.r);
                p.exact = sign > 0 ? c.lambda_plus : c.lambda_minus;
                p.value = p.exact->to_double();
            } else {
                p.value = branch_value(dec.eigenvalues[i], base.r, sign);
            }
            out.push_back(p);
        }
    }
    if (have_zero) {
        out.push_back({Branch::zero, std::nullopt, std::nullopt, 0.0, QuadraticNumber::integer(0), 1});
    }
    if (const auto eta = static_cast<int>(base.kernel.cols()); eta > 0) {
        out.push_back(
            {Branch::minus_two, std::nullopt, std::nullopt, -2.0, QuadraticNumber::integer(-2), eta});
    }
    return out;
}

std::vector<double> expanded_values(const std::vector<QGraphEigenpair>& pairs) {
    std::vector<double> out;
    for (const auto& p : pairs) {
        out.insert(out.end(), std::size_t(p.multiplicity), p.value);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::vector<double> expanded_values(const SpectralDecomposition& dec) {
    std::vector<double> out;
    for (std::size_t i = 0; i < dec.count(); ++i) {
        out.insert(out.end(), std::size_t(dec.multiplicities[i]), dec.eigenvalues[i]);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double multiset_deviation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(x[i] - y[i]));
    }
    return worst;
}

std::vector<QGraphEigenvector> closed_form_eigenvectors(const QGraphBase& base,
                                                        const SpectralDecomposition& dec) {
    check_dimensions(base, dec);
    if (dec.bases.size() != dec.count()) {
        throw InputError("closed_form_eigenvectors needs the eigenvector bases of the base graph");
    }
    const int n = base.graph.order();
    const int m = base.graph.size();
    std::vector<QGraphEigenvector> out;

    for (std::size_t i = 0; i < dec.count(); ++i) {
        const auto& basis = dec.bases[i];
        if (is_bottom(base, dec, i)) {
            Eigen::VectorXd z = Eigen::VectorXd::Zero(n + m);
            for (int v = 0; v < n; ++v) {
                z(v) = base.coloring[v] == base.coloring[0] ? 1.0 : -1.0;
            }
            z /= std::sqrt(double(n));
            out.push_back({Branch::zero, std::nullopt, 0, 0.0, std::move(z)});
            continue;
        }
        const double lambda = dec.eigenvalues[i];
        const double s = lambda + base.r;
        for (int sign : {+1, -1}) {
            const double value = branch_value(lambda, base.r, sign);
            const double c = value + 2.0 - base.r - lambda;
            const double scale = 1.0 / std::sqrt(c * c + s);
            for (int j = 0; j < basis.cols(); ++j) {
                Eigen::VectorXd x(n + m);
                x.head(n) = c * basis.col(j);
                x.tail(m) = base.incidence.transpose() * basis.col(j);
                x *= scale;
                if (std::abs(x.norm() - 1.0) > 1e-10) {
                    throw InvariantViolation("closed-form eigenvector normalization is off by " +
                                             std::to_string(x.norm() - 1.0));
                }
                out.push_back({sign > 0 ? Branch::plus : Branch::minus, i, j, value, std::move(x)});
            }
        }
    }
    for (int k = 0; k < base.kernel.cols(); ++k) {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(n + m);
        y.tail(m) = base.kernel.col(k).normalized();
        out.push_back({Branch::minus_two, std::nullopt, k, -2.0, std::move(y)});
    }
    return out;
}

QGraphProjectorSet qgraph_projectors(const QGraphBase& base, const SpectralDecomposition& dec) {
    QGraphProjectorSet set;
    set.pairs = closed_form_spectrum(base, dec);
    const int n = base.graph.order();
    const int m = base.graph.size();
    const Eigen::MatrixXd& r = base.incidence;

    std::optional<std::size_t> bottom;
    for (std::size_t i = 0; i < dec.count(); ++i) {
        if (is_bottom(base, dec, i)) {
            bottom = i;
        }
    }

    for (const auto& p : set.pairs) {
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n + m, n + m);
        switch (p.branch) {
            case Branch::plus:
            case Branch::minus: {
                const std::size_t i = *p.source_index;
                const Eigen::MatrixXd& e = dec.projectors[i];
                const double lambda = dec.eigenvalues[i];
                const double c = p.value + 2.0 - base.r - lambda;
                const double norm = c * c + lambda + base.r;
                const Eigen::MatrixXd er = e * r;
                f.topLeftCorner(n, n) = c * c * e;
                f.topRightCorner(n, m) = c * er;
                f.bottomLeftCorner(m, n) = c * er.transpose();
                f.bottomRightCorner(m, m) = r.transpose() * er;
                f /= norm;
                break;
            }
            case Branch::minus_two:
                for (int k = 0; k < base.kernel.cols(); ++k) {
                    const Eigen::VectorXd z = base.kernel.col(k);
                    f.bottomRightCorner(m, m) += z * z.transpose() / z.squaredNorm();
                }
                break;
            case Branch::zero:
                f.topLeftCorner(n, n) = dec.projectors[*bottom];
                break;
        }
        set.projectors.push_back(std::move(f));
    }
    return set;
}

std::vector<Vertex> bipartition_order(const QGraphBase& base) {
    if (!base.bipartite) {
        throw InputError("bipartition_order requires a bipartite base");
    }
    std::vector<Vertex> order;
    for (int side : {base.coloring[0], 1 - base.coloring[0]}) {
        for (Vertex v = 0; v < base.graph.order(); ++v) {
            if (base.coloring[v] == side) {
                order.push_back(v);
            }
        }
    }
    return order;
}

}  // namespace qst
