#include "support.hpp"

#include "qst/edge_list.hpp"
#include "qst/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>

using namespace qst;

namespace {

int parse_error_line(const std::string& text) {
    try {
        read_edge_list(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("reads comments, blank lines and reversed pairs") {
    const auto g = read_edge_list("# triangle\n3\n\n1 0\n  2 1\n# trailing\n0 2\n");
    CHECK(g == make_family("cycle", {3}));
}

TEST_CASE("writer output is canonical") {
    const auto g = Graph::from_edges(4, {{3, 1}, {0, 2}});
    CHECK(write_edge_list(g) == "4\n0 2\n1 3\n");
}

TEST_CASE("round trip over the corpus") {
    for (const auto& [name, g] : testing::corpus()) {
        CAPTURE(name);
        const auto back = read_edge_list(write_edge_list(g));
        CHECK(back == g);
        CHECK(back.edges() == g.edges());
    }
}

TEST_CASE("file round trip") {
    const auto path = (std::filesystem::temp_directory_path() / "qst_edge_list_rt.txt").string();
    const auto g = make_family("petersen", {});
    write_edge_list_file(g, path);
    CHECK(read_edge_list_file(path) == g);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_edge_list_file(path), InputError);
}

TEST_CASE("parse errors carry the line number") {
    CHECK(parse_error_line("3\n0 1\n0 x\n") == 3);
    CHECK(parse_error_line("3\n0 1\n1 0\n") == 3);
    CHECK(parse_error_line("3\n0 0\n") == 2);
    CHECK(parse_error_line("3\n0 5\n") == 2);
    CHECK(parse_error_line("3\n0 1 2\n") == 2);
    CHECK(parse_error_line("3 4\n") == 1);
    CHECK(parse_error_line("# nothing\n") >= 1);
    CHECK(parse_error_line("-2\n") == 1);
    CHECK(parse_error_line("4\n0 1\n") == -1);
}
