// Tests for graph codings by passing numbers: decoding node sequences to
// graphs, triangle detection, the per-graph type census, and the
// free-extension property of ambient trees.
//
// Independent anchors:
//  * triangle witnesses found by direct bit scans are cross-checked against
//    triangle scans over the decoded adjacency structure, across every
//    labelled graph on four vertices;
//  * the per-graph census for an edge is cross-checked by classifying *all*
//    strongly diagonal two-terminal trees inside the full tree of depth 6;
//  * census values for at most three vertices are frozen from a hand
//    derivation over event-sequence shapes.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treelab/bits.hpp"
#include "treelab/graph.hpp"
#include "treelab/similarity.hpp"
#include "treelab/tree.hpp"

using namespace treelab;

namespace {

Bits B(const std::string& s) { return Bits::from_string(s); }

std::vector<Bits> NS(const std::vector<std::string>& strs) {
    std::vector<Bits> out;
    for (const auto& s : strs) out.push_back(B(s));
    return out;
}

Graph G(std::size_t n, std::vector<Graph::Edge> edges) { return Graph(n, std::move(edges)); }

// Every labelled graph on n vertices, one per edge subset.
std::vector<Graph> all_graphs(std::size_t n) {
    std::vector<Graph::Edge> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<Graph> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
        std::vector<Graph::Edge> edges;
        for (std::size_t b = 0; b < slots.size(); ++b)
            if (mask >> b & 1) edges.push_back(slots[b]);
        out.emplace_back(n, std::move(edges));
    }
    return out;
}

// Oracle: the lexicographically least triangle of the *decoded* graph,
// found through the adjacency structure rather than the passing bits.
std::optional<std::array<std::size_t, 3>> oracle_triangle(const std::vector<Bits>& ts) {
    const Graph g = graph_from_nodes(ts);
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        for (std::size_t j = i + 1; j < g.vertex_count(); ++j)
            for (std::size_t k = j + 1; k < g.vertex_count(); ++k)
                if (g.adjacent(i, j) && g.adjacent(i, k) && g.adjacent(j, k))
                    return std::array<std::size_t, 3>{i, j, k};
    return std::nullopt;
}

// Every strongly diagonal tree with exactly two terminals inside the full
// binary tree of the given depth: meet-closures of incomparable node pairs
// with distinct lengths.
std::vector<FinTree> diagonal_pairs(std::size_t depth) {
    const auto nodes = FinTree::full(depth).nodes();
    std::vector<FinTree> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const FinTree z = FinTree::from_nodes(meet_closure({nodes[i], nodes[j]}));
            if (is_strongly_diagonal(z) && terminal_nodes(z).size() == 2) out.push_back(z);
        }
    return out;
}

} // namespace

TEST_CASE("graph values validate and normalize their edges") {
    CHECK_THROWS_AS(G(3, {{1, 1}}), input_error);
    CHECK_THROWS_AS(G(3, {{0, 3}}), input_error);
    CHECK_THROWS_AS(Graph::cycle(2), input_error);

    const Graph g(3, {{1, 0}, {0, 1}, {2, 1}});
    CHECK(g.edges() == std::vector<Graph::Edge>{{0, 1}, {1, 2}});
    CHECK(g == Graph::path(3));
    CHECK(g.adjacent(1, 0));
    CHECK(g.adjacent(0, 1));
    CHECK_FALSE(g.adjacent(0, 2));

    CHECK(Graph::cycle(3) == Graph::complete(3));
    CHECK(Graph::complete(4).edges().size() == 6);
    CHECK(Graph::empty_graph(5).edges().empty());

    // Relabelling moves the centre of the short path.
    CHECK(Graph::path(3).relabel({1, 0, 2}) == G(3, {{0, 1}, {0, 2}}));
    CHECK(Graph::path(3).relabel({2, 1, 0}) == Graph::path(3));
}

TEST_CASE("node sequences decode through their passing bits") {
    // Drawn four-vertex example: the decoded graph is the 4-cycle.
    const auto square = NS({"1", "01", "001", "0101"});
    CHECK(graph_from_nodes(square) == Graph::cycle(4));
    CHECK(codes_graph(square, Graph::cycle(4)));
    CHECK_FALSE(codes_graph(square, Graph::path(4)));
    CHECK_FALSE(codes_graph(square, Graph::complete(4)));

    CHECK(graph_from_nodes(NS({"1", "11", "111"})) == Graph::complete(3));
    CHECK(graph_from_nodes(NS({"0", "00", "000"})) == Graph::empty_graph(3));
    CHECK(graph_from_nodes({}).vertex_count() == 0);
    CHECK(graph_from_nodes(NS({"0110"})) == Graph::empty_graph(1));

    // Lengths must strictly increase: a length tie or inversion is rejected.
    CHECK_THROWS_AS(graph_from_nodes(NS({"1", "0"})), input_error);
    CHECK_THROWS_AS(graph_from_nodes(NS({"10", "01"})), input_error);
}

TEST_CASE("parallel passing ones across a level set") {
    CHECK(has_parallel_ones(B("11"), B("111"), {0, 1}));
    CHECK(has_parallel_ones(B("01"), B("111"), {1}));
    CHECK_FALSE(has_parallel_ones(B("10"), B("01"), {0, 1}));
    CHECK_FALSE(has_parallel_ones(B("11"), B("11"), {}));
    // Levels beyond either node's length are ignored rather than an error.
    CHECK_FALSE(has_parallel_ones(B("1"), B("111"), {1, 2, 5}));
    CHECK(has_parallel_ones(B("1"), B("111"), {0, 5}));
}

TEST_CASE("triangle scans over adjacency structure") {
    CHECK(is_triangle_free(Graph::empty_graph(4)));
    CHECK(is_triangle_free(Graph::cycle(4)));
    CHECK(is_triangle_free(Graph::cycle(5)));
    CHECK(is_triangle_free(Graph::path(10)));
    CHECK_FALSE(is_triangle_free(Graph::complete(3)));
    CHECK_FALSE(is_triangle_free(Graph::complete(10)));

    // Adding edges never creates triangle-freeness.
    for (const Graph& g : all_graphs(4)) {
        if (is_triangle_free(g)) continue;
        auto edges = g.edges();
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                auto more = edges;
                more.emplace_back(i, j);
                CHECK_FALSE(is_triangle_free(Graph(4, std::move(more))));
            }
    }
}

TEST_CASE("triangle witnesses in coded node sequences") {
    CHECK_FALSE(triangle_witness(NS({"1", "01", "001", "0101"})).has_value());
    CHECK(triangle_witness(NS({"1", "11", "111"})) == std::array<std::size_t, 3>{0, 1, 2});
    CHECK_FALSE(triangle_witness(NS({"0", "01"})).has_value());
    CHECK_FALSE(triangle_witness({}).has_value());
    CHECK_THROWS_AS(triangle_witness(NS({"11", "0"})), input_error);

    // The earliest triangle wins: both (0,1,3) and (1,2,3) are triangles
    // here, and (0,1,3) is lexicographically least.
    const auto ts = NS({"1", "11", "101", "0111"});
    REQUIRE(triangle_witness(ts).has_value());
    CHECK(*triangle_witness(ts) == std::array<std::size_t, 3>{0, 1, 3});
    CHECK(*oracle_triangle(ts) == std::array<std::size_t, 3>{0, 1, 3});
}

TEST_CASE("per-graph type census on at most two vertices") {
    CHECK(sauer_type_count(Graph::empty_graph(0)) == 1);
    CHECK(sauer_type_count(Graph::empty_graph(1)) == 1);
    CHECK(sauer_type_count(Graph::empty_graph(2)) == 2);
    CHECK(sauer_type_count(Graph::complete(2)) == 2);
    CHECK_THROWS_AS(sauer_type_count(Graph::empty_graph(5)), budget_refusal);

    // Oracle for the edge: classify every strongly diagonal two-terminal
    // tree inside the full tree of depth 6 by canonical type, and keep the
    // types whose terminal pair codes an edge.
    std::set<std::string> edge_types;
    std::set<std::string> all_types;
    for (const FinTree& z : diagonal_pairs(6)) {
        const std::string ty = canonical_type(z, SimilarityMode::with_passing).serialize();
        all_types.insert(ty);
        if (codes_graph(terminal_nodes(z), Graph::complete(2))) edge_types.insert(ty);
    }
    CHECK(edge_types.size() == 2);
    CHECK(all_types.size() == 4);
    for (const auto& tw : sauer_types(Graph::complete(2)))
        CHECK(edge_types.count(tw.type.serialize()) == 1);
}

TEST_CASE("per-graph type census on three vertices") {
    // Hand derivation over the two event shapes: the branch-then-branch
    // shape contributes 12 types to every graph; the branch-terminate-
    // branch shape contributes 4 more exactly when the two later vertices
    // have equal adjacency to vertex 0, since they then share one alive
    // branch while vertex 0 terminates.
    CHECK(sauer_type_count(Graph::empty_graph(3)) == 16);
    CHECK(sauer_type_count(Graph::complete(3)) == 16);
    CHECK(sauer_type_count(G(3, {{1, 2}})) == 16);
    CHECK(sauer_type_count(G(3, {{0, 1}, {0, 2}})) == 16);
    CHECK(sauer_type_count(G(3, {{0, 1}})) == 12);
    CHECK(sauer_type_count(G(3, {{0, 2}})) == 12);
    CHECK(sauer_type_count(G(3, {{0, 1}, {1, 2}})) == 12);
    CHECK(sauer_type_count(G(3, {{0, 2}, {1, 2}})) == 12);

    // Counts attach to the coded vertex order, not the isomorphism class:
    // the two labelled copies of a single edge disagree.
    CHECK(sauer_type_count(G(3, {{0, 1}})) != sauer_type_count(G(3, {{1, 2}})));

    // The per-graph counts partition the full census.
    std::size_t total2 = 0, total3 = 0;
    for (const Graph& g : all_graphs(2)) total2 += sauer_type_count(g);
    for (const Graph& g : all_graphs(3)) total3 += sauer_type_count(g);
    CHECK(total2 == 4);
    CHECK(total3 == 112);
}

TEST_CASE("census witnesses are realizable and decode back") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (const Graph& g : all_graphs(n)) {
            std::set<std::string> seen;
            for (const auto& tw : sauer_types(g)) {
                CHECK(is_strongly_diagonal(tw.realization));
                CHECK(tw.realization.height() <= 2 * n);
                CHECK(codes_graph(terminal_nodes(tw.realization), g));
                CHECK(canonical_type(tw.realization, SimilarityMode::with_passing) == tw.type);
                seen.insert(tw.type.serialize());
            }
            CHECK(seen.size() == sauer_type_count(g));
        }
}

TEST_CASE("decoding is constant on similarity classes") {
    // Equal canonical type forces an equal decoded labelled graph, because a
    // similarity preserves relative lengths and passing bits; this is what
    // makes the per-graph census well defined.
    std::map<std::string, Graph> decoded;
    for (const FinTree& z : diagonal_pairs(4)) {
        const std::string ty = canonical_type(z, SimilarityMode::with_passing).serialize();
        const Graph g = graph_from_nodes(terminal_nodes(z));
        const auto [it, fresh] = decoded.emplace(ty, g);
        if (!fresh) CHECK(it->second == g);
    }
    CHECK(decoded.size() == 4);
}

TEST_CASE("four-vertex census partitions and matches triangle scans") {
    std::map<Graph, std::size_t> bucket;
    std::size_t checked = 0;
    for (const auto& tw :
         enumerate_diagonal_types(4, SimilarityMode::with_passing)) {
        const auto ts = terminal_nodes(tw.realization);
        const Graph g = graph_from_nodes(ts);
        ++bucket[g];
        // Bit-scan triangles agree with adjacency-scan triangles.
        const auto direct = triangle_witness(ts);
        const auto via_graph = oracle_triangle(ts);
        CHECK(direct == via_graph);
        CHECK(direct.has_value() == !is_triangle_free(g));
        ++checked;
    }
    CHECK(checked == 12352);
    // Every labelled four-vertex graph is realized, and the filtered counts
    // agree with the buckets of the unfiltered census.
    CHECK(bucket.size() == 64);
    for (const Graph& g :
         {Graph::cycle(4), Graph::complete(4), Graph::empty_graph(4), Graph::path(4)})
        CHECK(bucket.at(g) == sauer_type_count(g));
}

TEST_CASE("free extension of demanded bit patterns") {
    CHECK(extension_property_check(6, 2));
    CHECK(extension_property_check(4, 3));
    CHECK(extension_property_check(8, 3));
    CHECK_THROWS_AS(extension_property_check(2, 2), input_error);
    CHECK_THROWS_AS(extension_property_check(6, 0), input_error);

    // Prune every node carrying bit 1 at level 0: the demand "bit 1 at
    // level 0" becomes unrealizable.
    const FinTree ambient = FinTree::full(6);
    std::vector<Bits> zeros;
    for (const Bits& t : ambient.nodes())
        if (t.size() == 0 || !t.bit(0)) zeros.push_back(t);
    const FinTree no_ones = FinTree::from_nodes(zeros);
    CHECK_FALSE(extension_property_check(6, 1, &no_ones));

    // Prune the cone above 11: single-level demands survive, but the joint
    // demand "bit 1 at levels 0 and 1" does not.
    std::vector<Bits> no11;
    for (const Bits& t : ambient.nodes())
        if (t.size() < 2 || !(t.bit(0) && t.bit(1))) no11.push_back(t);
    const FinTree pruned = FinTree::from_nodes(no11);
    CHECK(extension_property_check(6, 1, &pruned));
    CHECK_FALSE(extension_property_check(6, 2, &pruned));
}
