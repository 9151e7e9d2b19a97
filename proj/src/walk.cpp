#include "qst/walk.hpp"

#include "qst/errors.hpp"

#include <cmath>
#include <cstdio>

namespace qst {

namespace {

Complex phase(double angle) {
    return {std::cos(angle), -std::sin(angle)};  // exp(-i angle)
}

void check_vertex(const SpectralDecomposition& dec, Vertex x) {
    if (x < 0 || x >= dec.dimension()) {
        throw InputError("vertex " + std::to_string(x) + " out of range");
    }
}

}  // namespace

Eigen::MatrixXcd transition_matrix(const SpectralDecomposition& dec, double t) {
    const int n = dec.dimension();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < dec.count(); ++i) {
        h += phase(t * dec.eigenvalues[i]) * dec.projectors[i].cast<Complex>();
    }
    return h;
}

Amplitude amplitude(const SpectralDecomposition& dec, double t, Vertex u, Vertex v) {
    check_vertex(dec, u);
    check_vertex(dec, v);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < dec.count(); ++i) {
        sum += phase(t * dec.eigenvalues[i]) * dec.projectors[i](v, u);
    }
    return {sum};
}

Complex qgraph_phase_prefactor(int r, double t) {
    return phase(t * (r - 2) / 2.0);
}

Amplitude qgraph_amplitude(const SpectralDecomposition& dec_g, int r, bool bipartite, double t,
                           Vertex u, Vertex v) {
    const int n = dec_g.dimension();
    if (u < 0 || v < 0 || u >= n || v >= n) {
        throw InputError("qgraph_amplitude covers original vertices only (index < " +
                         std::to_string(n) + "); use the generic amplitude for edge-vertices");
    }
    Complex sum = 0.0;
    Complex constant = 0.0;
    for (std::size_t i = 0; i < dec_g.count(); ++i) {
        const double lambda = dec_g.exact() ? double(dec_g.integer_eigenvalues[i]) : dec_g.eigenvalues[i];
        const double weight = dec_g.projectors[i](v, u);
        const bool bottom = bipartite && std::abs(lambda + r) <= dec_g.tol.eigen * std::max(1.0, double(r));
        if (bottom) {
            constant += weight;  // exp(-i t 0) E_{-r}(v, u)
            continue;
        }
        const double s = lambda + r;
        // (lambda + r)^2 + 4 is formed before the single square root.
        const double delta = std::sqrt(s * s + 4.0);
        const double half = delta * t / 2.0;
        const Complex osc(std::cos(half), (s - 2.0) / delta * std::sin(half));
        sum += phase(t * lambda / 2.0) * weight * osc;
    }
    return {qgraph_phase_prefactor(r, t) * sum + constant};
}

FidelitySeries fidelity_scan(const AmplitudeFn& source, Vertex u, Vertex v, double t_start,
                             double t_end, int steps) {
    if (!(t_start < t_end) || steps < 2) {
        throw InputError("fidelity_scan needs t_start < t_end and steps >= 2");
    }
    FidelitySeries series{u, v, {}, {}, 0};
    series.times.reserve(steps);
    series.fidelities.reserve(steps);
    const double step = (t_end - t_start) / (steps - 1);
    for (int k = 0; k < steps; ++k) {
        const double t = k + 1 == steps ? t_end : t_start + k * step;
        const double f = source(t, u, v).fidelity();
        series.times.push_back(t);
        series.fidelities.push_back(f);
        if (f > series.fidelities[series.argmax]) {
            series.argmax = static_cast<std::size_t>(k);
        }
    }
    return series;
}

std::string to_csv(const FidelitySeries& series) {
    std::string out = "t,fidelity\n";
    char line[96];
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        std::snprintf(line, sizeof line, "%.15g,%.15g\n", series.times[k], series.fidelities[k]);
        out += line;
    }
    return out;
}

}  // namespace qst
