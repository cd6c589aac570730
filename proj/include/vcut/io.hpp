#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vcut/error.hpp"
#include "vcut/graph.hpp"

namespace vcut {

namespace detail {

inline bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        return true;
    }
    return false;
}

inline std::vector<std::uint64_t> parse_uints(const std::string& line, std::size_t lineno) {
    std::istringstream ss(line);
    std::vector<std::uint64_t> out;
    std::string tok;
    while (ss >> tok) {
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad token '" + tok + "'");
        out.push_back(std::stoull(tok));
    }
    return out;
}

}  // namespace detail

/// Reads "n m" followed by m lines "u v". Lines starting with '#' are comments.
inline Graph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!detail::next_data_line(in, line, lineno)) fail(ErrorKind::ParseError, "missing header line");
    auto head = detail::parse_uints(line, lineno);
    if (head.size() != 2) fail(ErrorKind::ParseError, "header must be 'n m'");
    const auto n = head[0], m = head[1];
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        if (!detail::next_data_line(in, line, lineno))
            fail(ErrorKind::ParseError, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        auto e = detail::parse_uints(line, lineno);
        if (e.size() != 2) fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 'u v'");
        edges.emplace_back(static_cast<Vertex>(e[0]), static_cast<Vertex>(e[1]));
    }
    if (detail::next_data_line(in, line, lineno))
        fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": trailing data after edges");
    return Graph(n, std::move(edges));
}

inline Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::FormatError, "cannot write " + path);
    write_edge_list(out, g);
}

/// Parses "3,7,12" (whitespace tolerated, empty string is the empty set).
inline VertexSet parse_vertex_list(const std::string& text) {
    std::vector<Vertex> ids;
    std::string tok;
    std::istringstream ss(text);
    while (std::getline(ss, tok, ',')) {
        auto b = tok.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = tok.find_last_not_of(" \t\r");
        tok = tok.substr(b, e - b + 1);
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorKind::ParseError, "bad vertex id '" + tok + "'");
        ids.push_back(static_cast<Vertex>(std::stoull(tok)));
    }
    return VertexSet(std::move(ids));
}

/// One query per line, comma- or space-separated IDs; '#' comments and blank lines skipped.
/// A line containing only "-" is the empty query.
inline std::vector<VertexSet> read_query_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
    std::vector<VertexSet> out;
    std::string line;
    std::size_t lineno = 0;
    while (detail::next_data_line(in, line, lineno)) {
        for (auto& c : line)
            if (c == ' ' || c == '\t') c = ',';
        if (line.find_first_not_of(",-\r") == std::string::npos) {
            out.emplace_back();
            continue;
        }
        out.push_back(parse_vertex_list(line));
    }
    return out;
}

}  // namespace vcut
