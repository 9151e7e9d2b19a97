#include "qst/graph.hpp"

#include "qst/errors.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace qst {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
    if (n < 0) {
        throw InputError("negative vertex count");
    }
    for (auto& [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw InputError("vertex index out of range in edge (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
        }
        if (i == j) {
            throw InputError("self-loop at vertex " + std::to_string(i));
        }
        if (i > j) {
            std::swap(i, j);
        }
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
        throw InputError("duplicate edge (" + std::to_string(dup->first) + ", " +
                         std::to_string(dup->second) + ")");
    }

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adjacency_ = IntMatrix::Zero(n, n);
    for (const auto& [i, j] : g.edges_) {
        g.adjacency_(i, j) = 1;
        g.adjacency_(j, i) = 1;
    }
    return g;
}

Graph Graph::from_adjacency(const IntMatrix& adjacency) {
    if (adjacency.rows() != adjacency.cols()) {
        throw InputError("adjacency matrix is not square");
    }
    const int n = static_cast<int>(adjacency.rows());
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        if (adjacency(i, i) != 0) {
            throw InputError("adjacency matrix has a nonzero diagonal entry");
        }
        for (int j = i + 1; j < n; ++j) {
            if (adjacency(i, j) != adjacency(j, i)) {
                throw InputError("adjacency matrix is not symmetric");
            }
            if (adjacency(i, j) == 1) {
                edges.emplace_back(i, j);
            } else if (adjacency(i, j) != 0) {
                throw InputError("adjacency matrix entries must be 0 or 1");
            }
        }
    }
    return from_edges(n, std::move(edges));
}

GraphClassification classify(const Graph& g) {
    const int n = g.order();
    GraphClassification c;

    std::vector<int> color(n, -1);
    bool bipartite = true;
    int components = 0;
    for (int s = 0; s < n; ++s) {
        if (color[s] != -1) {
            continue;
        }
        ++components;
        color[s] = 0;
        std::queue<int> frontier;
        frontier.push(s);
        while (!frontier.empty()) {
            const int x = frontier.front();
            frontier.pop();
            for (int y = 0; y < n; ++y) {
                if (g.adjacency()(x, y) == 0) {
                    continue;
                }
                if (color[y] == -1) {
                    color[y] = 1 - color[x];
                    frontier.push(y);
                } else if (color[y] == color[x]) {
                    bipartite = false;
                }
            }
        }
    }
    c.is_connected = components <= 1;
    c.is_bipartite = bipartite;
    if (bipartite) {
        c.bipartition = std::move(color);
    }

    if (n > 0) {
        const int r = g.degree(0);
        bool regular = true;
        for (int v = 1; v < n && regular; ++v) {
            regular = g.degree(v) == r;
        }
        if (regular) {
            c.regularity = r;
        }
    }
    return c;
}

IncidenceMatrix incidence(const Graph& g) {
    IncidenceMatrix inc{IntMatrix::Zero(g.order(), g.size())};
    for (int j = 0; j < g.size(); ++j) {
        const auto& [a, b] = g.edges()[j];
        inc.r(a, j) = 1;
        inc.r(b, j) = 1;
    }
    return inc;
}

Graph line_graph(const Graph& g) {
    const IntMatrix& r = incidence(g).r;
    const int m = g.size();
    IntMatrix a = r.transpose() * r - 2 * IntMatrix::Identity(m, m);
    return Graph::from_adjacency(a);
}

Graph q_graph(const Graph& g) {
    const int n = g.order();
    const int m = g.size();
    const IntMatrix& r = incidence(g).r;
    IntMatrix a = IntMatrix::Zero(n + m, n + m);
    a.topRightCorner(n, m) = r;
    a.bottomLeftCorner(m, n) = r.transpose();
    a.bottomRightCorner(m, m) = line_graph(g).adjacency();
    return Graph::from_adjacency(a);
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw InputError(what);
    }
}

int single_param(const std::string& name, const std::vector<int>& params) {
    require(params.size() == 1, "family '" + name + "' takes exactly one parameter");
    return params[0];
}

Graph hypercube(int d) {
    require(d >= 1 && d <= 16, "hypercube dimension must be in [1, 16]");
    const int n = 1 << d;
    std::vector<Edge> edges;
    for (int x = 0; x < n; ++x) {
        for (int bit = 0; bit < d; ++bit) {
            const int y = x ^ (1 << bit);
            if (x < y) {
                edges.emplace_back(x, y);
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph cocktail(int m) {
    require(m >= 2, "cocktail party parameter must be >= 2");
    const int n = 2 * m;
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (i / 2 != j / 2) {
                edges.emplace_back(i, j);
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph halved_hypercube(int d) {
    require(d >= 1 && d <= 8, "halved hypercube parameter must be in [1, 8]");
    std::vector<unsigned> words;
    for (unsigned x = 0; x < (1u << (2 * d)); ++x) {
        if (std::popcount(x) % 2 == 0) {
            words.push_back(x);
        }
    }
    const int n = static_cast<int>(words.size());
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::popcount(words[i] ^ words[j]) == 2) {
                edges.emplace_back(i, j);
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph cycle(int n) {
    require(n >= 3, "cycle length must be >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(i, (i + 1) % n);
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph complete(int n) {
    require(n >= 1, "complete graph order must be >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph path(int n) {
    require(n >= 1, "path order must be >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph petersen() {
    // Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram 5..9.
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph::from_edges(10, std::move(edges));
}

}  // namespace

Graph make_family(const std::string& name, const std::vector<int>& params) {
    if (name == "hypercube") {
        return hypercube(single_param(name, params));
    }
    if (name == "cocktail") {
        return cocktail(single_param(name, params));
    }
    if (name == "halved_hypercube") {
        return halved_hypercube(single_param(name, params));
    }
    if (name == "cycle") {
        return cycle(single_param(name, params));
    }
    if (name == "complete") {
        return complete(single_param(name, params));
    }
    if (name == "path") {
        return path(single_param(name, params));
    }
    if (name == "petersen") {
        require(params.empty(), "family 'petersen' takes no parameters");
        return petersen();
    }
    throw InputError("unknown family '" + name + "'");
}

}  // namespace qst
