#include "qst/edge_list.hpp"

#include "qst/errors.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace qst {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Splits on blanks and parses every token as a non-negative decimal int.
std::vector<long long> parse_ints(std::string_view line, int line_no) {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
            ++pos;
        }
        if (pos == line.size()) {
            break;
        }
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') {
            ++end;
        }
        long long value = 0;
        const char* first = line.data() + pos;
        const char* last = line.data() + end;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            throw ParseError(line_no, "expected an integer, got '" + std::string(first, last) + "'");
        }
        out.push_back(value);
        pos = end;
    }
    return out;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::string raw;
    int line_no = 0;
    long long n = -1;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto ints = parse_ints(line, line_no);
        if (n < 0) {
            if (ints.size() != 1) {
                throw ParseError(line_no, "expected the vertex count on its own line");
            }
            if (ints[0] < 0 || ints[0] > 1'000'000) {
                throw ParseError(line_no, "vertex count out of range");
            }
            n = ints[0];
            continue;
        }
        if (ints.size() != 2) {
            throw ParseError(line_no, "expected two vertex indices");
        }
        const auto [i, j] = std::pair{ints[0], ints[1]};
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw ParseError(line_no, "vertex index out of range");
        }
        if (i == j) {
            throw ParseError(line_no, "self-loop at vertex " + std::to_string(i));
        }
        const Edge e{static_cast<Vertex>(std::min(i, j)), static_cast<Vertex>(std::max(i, j))};
        if (!seen.insert(e).second) {
            throw ParseError(line_no, "duplicate edge");
        }
        edges.push_back(e);
    }
    if (n < 0) {
        throw ParseError(line_no, "missing vertex count");
    }
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

Graph read_edge_list(const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    return read_edge_list(in);
}

std::string write_edge_list(const Graph& g) {
    std::string out = std::to_string(g.order()) + "\n";
    for (const auto& [i, j] : g.edges()) {
        out += std::to_string(i) + " " + std::to_string(j) + "\n";
    }
    return out;
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << write_edge_list(g);
}

}  // namespace qst
