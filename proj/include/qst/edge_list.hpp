#pragma once

#include "qst/graph.hpp"

#include <istream>
#include <string>

namespace qst {

// Edge-list text format:
//   first non-comment line: vertex count n
//   each further non-empty line: "i j" with 0 <= i, j < n
//   lines starting with '#' are comments
// The writer emits "n" followed by the edges in lexicographic order.

Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::string& text);
Graph read_edge_list_file(const std::string& path);

std::string write_edge_list(const Graph& g);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace qst
