#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qst {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using IntMatrix = Eigen::MatrixXi;

/// Simple undirected graph on vertices 0..n-1.
///
/// Edges are stored as pairs (i, j) with i < j, sorted lexicographically.
/// That order is load-bearing: it fixes the column order of the incidence
/// matrix and the labels of the edge-vertices of the Q-graph.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an arbitrary edge list. Pairs may be given in
    /// either orientation and in any order. Throws InputError on self-loops,
    /// duplicate edges and out-of-range endpoints.
    static Graph from_edges(int n, std::vector<Edge> edges);

    /// Builds a graph from a symmetric 0/1 matrix with zero diagonal.
    static Graph from_adjacency(const IntMatrix& adjacency);

    [[nodiscard]] int order() const { return n_; }
    [[nodiscard]] int size() const { return static_cast<int>(edges_.size()); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const IntMatrix& adjacency() const { return adjacency_; }
    [[nodiscard]] int degree(Vertex v) const { return adjacency_.row(v).sum(); }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    IntMatrix adjacency_;
};

struct GraphClassification {
    bool is_connected = false;
    bool is_bipartite = false;
    /// 2-coloring (0/1 per vertex) when bipartite.
    std::optional<std::vector<int>> bipartition;
    /// Common degree when regular.
    std::optional<int> regularity;
};

GraphClassification classify(const Graph& g);

/// n x m vertex-edge incidence matrix; column j is edge j of g.edges().
struct IncidenceMatrix {
    IntMatrix r;
};

IncidenceMatrix incidence(const Graph& g);

/// Vertex j of the result is edge j of g.
Graph line_graph(const Graph& g);

/// Q-graph of g on n + m vertices: labels 0..n-1 are the original vertices,
/// label n + j is the vertex inserted on edge j.
Graph q_graph(const Graph& g);

/// Named families. Recognized names and parameters:
///   hypercube d          Q_d, d >= 1, binary-counting labels
///   cocktail m           complement of mK_2, m >= 2, antipodes (2k, 2k+1)
///   halved_hypercube d   halved 2d-cube, d >= 1, even-weight strings
///   cycle n              C_n, n >= 3
///   complete n           K_n, n >= 1
///   path n               P_n on n >= 1 vertices
///   petersen             no parameters
Graph make_family(const std::string& name, const std::vector<int>& params);

}  // namespace qst
