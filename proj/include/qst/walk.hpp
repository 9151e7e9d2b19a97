#pragma once

#include "qst/spectral.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace qst {

using Complex = std::complex<double>;

/// Entry e_v^T exp(-itA) e_u of a transition matrix.
struct Amplitude {
    Complex value;

    [[nodiscard]] double fidelity() const { return std::abs(value); }
};

/// H(t) = sum_i exp(-i t lambda_i) E_i.
Eigen::MatrixXcd transition_matrix(const SpectralDecomposition& dec, double t);

/// e_v^T H(t) e_u without forming H(t).
Amplitude amplitude(const SpectralDecomposition& dec, double t, Vertex u, Vertex v);

/// exp(-i t (r - 2) / 2), the common phase of every Q-graph amplitude
/// between original vertices.
Complex qgraph_phase_prefactor(int r, double t);

/// e_v^T exp(-i t A(Q(G))) e_u for original vertices u, v < n, evaluated from
/// the decomposition of G alone. For bipartite G the eigenvalue -r
/// contributes the constant E_{-r}(v, u). Throws InputError when u or v is an
/// edge-vertex (index >= n).
Amplitude qgraph_amplitude(const SpectralDecomposition& dec_g, int r, bool bipartite, double t,
                           Vertex u, Vertex v);

using AmplitudeFn = std::function<Amplitude(double t, Vertex u, Vertex v)>;

struct FidelitySeries {
    Vertex u = 0;
    Vertex v = 0;
    std::vector<double> times;
    std::vector<double> fidelities;
    std::size_t argmax = 0;

    [[nodiscard]] double max_fidelity() const { return fidelities.at(argmax); }
    [[nodiscard]] double argmax_time() const { return times.at(argmax); }
};

/// |amplitude| on a uniform grid of `steps` points over [t_start, t_end].
FidelitySeries fidelity_scan(const AmplitudeFn& source, Vertex u, Vertex v, double t_start,
                             double t_end, int steps);

/// "t,fidelity" header, one row per grid point, 15 significant digits.
std::string to_csv(const FidelitySeries& series);

}  // namespace qst
