#pragma once
/// \file
/// Text formats for trees, graphs, and colorings, plus deterministic DOT
/// rendering.  Parsers cite line numbers in every rejection; serializers
/// emit canonical byte-stable text that parses back to an equal value.
///
/// Tree files: one node per line as a bit string, "-" for the root, a
/// trailing "*" marking a coding node; lines sorted by (length, lex).
/// Graph files: "vertices N" then "edge i j" lines with i < j.
/// Coloring files: "colors S" then either one "seed:<u64>" line or
/// "key color" table lines.  "#" starts a comment anywhere.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "treelab/bits.hpp"
#include "treelab/errors.hpp"
#include "treelab/graph.hpp"
#include "treelab/ramsey.hpp"
#include "treelab/tree.hpp"

namespace treelab {

namespace detail {

/// Significant lines of a text: comments stripped, blanks dropped, original
/// 1-based line numbers kept for error messages.
inline std::vector<std::pair<std::size_t, std::string>> significant_lines(const std::string& text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::size_t number = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        out.emplace_back(number, line.substr(begin, end - begin + 1));
    }
    return out;
}

[[noreturn]] inline void parse_fail(const std::string& source, std::size_t line,
                                    const std::string& what) {
    throw input_error(source + ":" + std::to_string(line) + ": " + what);
}

inline std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw input_error("cannot open \"" + path + "\"");
    std::ostringstream content;
    content << file.rdbuf();
    return content.str();
}

/// Parse a digit-only token; anything else (signs, blanks, overflow) fails
/// with a line-cited message.
inline std::uint64_t parse_number(const std::string& token, const std::string& source,
                                  std::size_t line, const std::string& what) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        parse_fail(source, line, "\"" + token + "\" is not a " + what);
    try {
        return std::stoull(token);
    } catch (const std::exception&) {
        parse_fail(source, line, what + " \"" + token + "\" is out of range");
    }
}

/// Whitespace-separated fields of one line.
inline std::vector<std::string> split_fields(const std::string& line) {
    std::istringstream stream(line);
    std::vector<std::string> out;
    std::string field;
    while (stream >> field) out.push_back(field);
    return out;
}

} // namespace detail

/// Canonical tree text: already-sorted node lines with "*" coding marks.
inline std::string serialize_tree(const FinTree& t) {
    std::string out;
    for (const Bits& n : t.nodes()) {
        out += n.str();
        if (t.is_coding(n)) out += '*';
        out += '\n';
    }
    return out;
}

inline FinTree parse_tree(const std::string& text, const std::string& source = "<tree>") {
    std::vector<Bits> nodes, marks;
    for (const auto& [number, line] : detail::significant_lines(text)) {
        std::string token = line;
        bool coding = false;
        if (!token.empty() && token.back() == '*') {
            coding = true;
            token.pop_back();
        }
        if (token.empty()) detail::parse_fail(source, number, "empty node token");
        if (token != "-")
            for (const char ch : token)
                if (ch != '0' && ch != '1')
                    detail::parse_fail(source, number,
                                       "node token \"" + line + "\" is not a bit string");
        const Bits node = token == "-" ? Bits{} : Bits::from_string(token);
        if (!nodes.empty() && !(nodes.back() < node))
            detail::parse_fail(source, number,
                               nodes.back() == node
                                   ? "duplicate node \"" + token + "\""
                                   : "nodes out of canonical (length, lexicographic) order");
        nodes.push_back(node);
        if (coding) marks.push_back(node);
    }
    return FinTree::from_nodes(std::move(nodes), std::move(marks));
}

inline FinTree load_tree(const std::string& path) {
    return parse_tree(detail::read_file(path), path);
}

/// Canonical graph text: "vertices N" then sorted "edge i j" lines.
inline std::string serialize_graph(const Graph& g) {
    std::string out = "vertices " + std::to_string(g.vertex_count()) + "\n";
    for (const auto& [i, j] : g.edges())
        out += "edge " + std::to_string(i) + " " + std::to_string(j) + "\n";
    return out;
}

inline Graph parse_graph(const std::string& text, const std::string& source = "<graph>") {
    const auto lines = detail::significant_lines(text);
    if (lines.empty()) throw input_error(source + ": missing \"vertices N\" header");

    const auto header = detail::split_fields(lines[0].second);
    if (header.size() != 2 || header[0] != "vertices")
        detail::parse_fail(source, lines[0].first, "expected \"vertices N\"");
    const std::size_t vertices =
        detail::parse_number(header[1], source, lines[0].first, "vertex count");

    std::vector<Graph::Edge> edges;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto parts = detail::split_fields(lines[l].second);
        if (parts.size() != 3 || parts[0] != "edge")
            detail::parse_fail(source, lines[l].first, "expected \"edge i j\"");
        const std::size_t i = detail::parse_number(parts[1], source, lines[l].first, "vertex");
        const std::size_t j = detail::parse_number(parts[2], source, lines[l].first, "vertex");
        if (i == j) detail::parse_fail(source, lines[l].first, "self-loops are not allowed");
        if (i > j) detail::parse_fail(source, lines[l].first, "edge endpoints must satisfy i < j");
        if (j >= vertices)
            detail::parse_fail(source, lines[l].first,
                               "vertex " + std::to_string(j) + " out of range for " +
                                   std::to_string(vertices) + " vertices");
        edges.emplace_back(i, j);
    }
    return Graph(vertices, edges);
}

inline Graph load_graph(const std::string& path) {
    return parse_graph(detail::read_file(path), path);
}

/// Canonical coloring text: "colors S" then either the seed line or the
/// sorted key table.
inline std::string serialize_coloring(const Coloring& c) {
    std::string out = "colors " + std::to_string(c.palette()) + "\n";
    if (c.is_seeded()) {
        out += "seed:" + std::to_string(c.seed()) + "\n";
    } else {
        for (const auto& [key, color] : c.table())
            out += key + " " + std::to_string(color) + "\n";
    }
    return out;
}

inline Coloring parse_coloring(const std::string& text, const std::string& source = "<coloring>") {
    const auto lines = detail::significant_lines(text);
    if (lines.empty()) throw input_error(source + ": missing \"colors S\" header");

    const auto header = detail::split_fields(lines[0].second);
    if (header.size() != 2 || header[0] != "colors")
        detail::parse_fail(source, lines[0].first, "expected \"colors S\"");
    const std::size_t palette =
        detail::parse_number(header[1], source, lines[0].first, "color count");
    if (palette < 1)
        detail::parse_fail(source, lines[0].first, "at least one color is required");

    if (lines.size() >= 2 && lines[1].second.rfind("seed:", 0) == 0) {
        if (lines.size() > 2)
            detail::parse_fail(source, lines[2].first, "unexpected line after the seed");
        const std::uint64_t seed = detail::parse_number(lines[1].second.substr(5), source,
                                                        lines[1].first, "seed");
        return Coloring::seeded(palette, seed);
    }

    std::map<std::string, std::size_t> table;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        std::istringstream entry(lines[l].second);
        std::string key, color_token;
        if (!(entry >> key >> color_token) || !(entry >> std::ws).eof())
            detail::parse_fail(source, lines[l].first, "expected \"key color\"");
        const std::size_t color =
            detail::parse_number(color_token, source, lines[l].first, "color");
        if (color >= palette)
            detail::parse_fail(source, lines[l].first,
                               "color " + color_token + " outside 0.." +
                                   std::to_string(palette - 1));
        if (!table.emplace(key, color).second)
            detail::parse_fail(source, lines[l].first, "duplicate key \"" + key + "\"");
    }
    return Coloring::from_table(palette, std::move(table));
}

inline Coloring load_coloring(const std::string& path) {
    return parse_coloring(detail::read_file(path), path);
}

/// Rendering options: nodes to darken (a selected subtree, say).  Coding
/// nodes are always filled solid.
struct DotOptions {
    std::vector<Bits> selected;
};

/// Deterministic DOT text for a tree, drawn upward from the root.  Each
/// node's parent is its longest proper initial segment present in the tree.
inline std::string emit_dot(const FinTree& t, const DotOptions& options = {}) {
    std::string out = "digraph tree {\n";
    if (!t.empty()) {
        out += "  rankdir=BT;\n";
        out += "  node [shape=circle fontsize=10];\n";
        auto selected = [&](const Bits& n) {
            for (const Bits& s : options.selected)
                if (s == n) return true;
            return false;
        };
        for (const Bits& n : t.nodes()) {
            out += "  \"" + n.str() + "\"";
            if (t.is_coding(n))
                out += " [style=filled fillcolor=black fontcolor=white]";
            else if (selected(n))
                out += " [style=filled fillcolor=gray70]";
            out += ";\n";
        }
        for (const Bits& n : t.nodes()) {
            const Bits* parent = nullptr;
            for (const Bits& p : t.nodes())
                if (p.size() < n.size() && p.is_prefix_of(n) && (!parent || parent->size() < p.size()))
                    parent = &p;
            if (parent) out += "  \"" + parent->str() + "\" -> \"" + n.str() + "\";\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace treelab
