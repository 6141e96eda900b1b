#pragma once
/// \file graph.hpp
/// Finite simple graphs and their codings by node sequences.
///
/// A sequence of nodes with strictly increasing lengths codes a graph on
/// vertices 0..n-1: vertices m < n are adjacent exactly when the later node
/// carries bit 1 at the earlier node's length.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "similarity.hpp"
#include "tree.hpp"

namespace treelab {

/// A finite simple graph on vertices 0..n-1 with a sorted edge list.
class Graph {
public:
    using Edge = std::pair<std::size_t, std::size_t>;

    Graph() = default;

    Graph(std::size_t vertices, std::vector<Edge> edges) : n_(vertices) {
        for (Edge& e : edges) {
            if (e.first == e.second)
                throw input_error("loop edge at vertex " + std::to_string(e.first));
            if (e.first > e.second) std::swap(e.first, e.second);
            if (e.second >= n_)
                throw input_error("edge endpoint " + std::to_string(e.second) +
                                  " outside 0.." + std::to_string(n_ ? n_ - 1 : 0));
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
    }

    static Graph empty_graph(std::size_t n) { return Graph(n, {}); }

    static Graph complete(std::size_t n) {
        std::vector<Edge> es;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) es.push_back({i, j});
        return Graph(n, std::move(es));
    }

    static Graph cycle(std::size_t n) {
        if (n < 3) throw input_error("a cycle needs at least 3 vertices");
        std::vector<Edge> es;
        for (std::size_t i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
        return Graph(n, std::move(es));
    }

    static Graph path(std::size_t n) {
        std::vector<Edge> es;
        for (std::size_t i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
        return Graph(n, std::move(es));
    }

    std::size_t vertex_count() const noexcept { return n_; }
    const std::vector<Edge>& edges() const& noexcept { return edges_; }
    // Calling through a temporary hands the edges over instead of dangling.
    std::vector<Edge> edges() && { return std::move(edges_); }

    bool adjacent(std::size_t i, std::size_t j) const {
        if (i == j) return false;
        if (i > j) std::swap(i, j);
        return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
    }

    /// The graph with vertex i renamed to perm[i].
    Graph relabel(const std::vector<std::size_t>& perm) const {
        if (perm.size() != n_) throw input_error("permutation size differs from vertex count");
        std::vector<Edge> es;
        for (const Edge& e : edges_) es.push_back({perm[e.first], perm[e.second]});
        return Graph(n_, std::move(es));
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }
    friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }
    friend bool operator<(const Graph& a, const Graph& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.edges_ < b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

/// Decode the graph a node sequence codes.  Precondition: node lengths are
/// strictly increasing (input_error otherwise).
inline Graph graph_from_nodes(const std::vector<Bits>& nodes) {
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (nodes[i].size() >= nodes[i + 1].size())
            throw input_error("coding nodes must have strictly increasing lengths");
    std::vector<Graph::Edge> edges;
    for (std::size_t m = 0; m < nodes.size(); ++m)
        for (std::size_t n = m + 1; n < nodes.size(); ++n)
            if (nodes[n].bit(nodes[m].size())) edges.push_back({m, n});
    return Graph(nodes.size(), std::move(edges));
}

/// Does the node sequence code exactly this graph?
inline bool codes_graph(const std::vector<Bits>& nodes, const Graph& g) {
    return graph_from_nodes(nodes) == g;
}

/// Do two nodes both carry bit 1 at some level of the given set?
/// Levels at or beyond either node's length are ignored.
inline bool has_parallel_ones(const Bits& u, const Bits& v,
                              const std::vector<std::size_t>& levels) {
    for (std::size_t l : levels)
        if (l < u.size() && l < v.size() && u.bit(l) && v.bit(l)) return true;
    return false;
}

/// Triangle-freeness checked directly on the adjacency structure.
inline bool is_triangle_free(const Graph& g) {
    const std::size_t n = g.vertex_count();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (g.adjacent(i, j) && g.adjacent(i, k) && g.adjacent(j, k)) return false;
    return true;
}

/// Lexicographically least triple (i,j,k) of coding positions whose passing
/// bits are all 1 — i.e. a triangle of the decoded graph — if any.
/// Precondition: node lengths strictly increasing.
inline std::optional<std::array<std::size_t, 3>> triangle_witness(const std::vector<Bits>& ts) {
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (ts[i].size() >= ts[i + 1].size())
            throw input_error("coding nodes must have strictly increasing lengths");
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            if (!ts[j].bit(ts[i].size())) continue;
            for (std::size_t k = j + 1; k < ts.size(); ++k)
                if (ts[k].bit(ts[i].size()) && ts[k].bit(ts[j].size()))
                    return std::array<std::size_t, 3>{i, j, k};
        }
    return std::nullopt;
}

/// The passing-mode types of strongly diagonal trees whose terminal sequence
/// (ordered by length) codes exactly this graph, with realization witnesses.
/// Graphs on more than 4 vertices are refused: the underlying type census
/// grows too fast for exhaustive enumeration.
inline std::vector<TypeWitness> sauer_types(const Graph& g) {
    const std::size_t m = g.vertex_count();
    if (m > 4)
        throw budget_refusal("type census for " + std::to_string(m) +
                             " vertices exceeds the supported bound of 4");
    return enumerate_diagonal_types(m, SimilarityMode::with_passing,
                                    [&](const std::vector<Bits>& terminals) {
                                        return codes_graph(terminals, g);
                                    });
}

/// Number of such types.  The vertexless graph counts 1 (the empty type).
inline std::size_t sauer_type_count(const Graph& g) {
    if (g.vertex_count() == 0) return 1;
    return sauer_types(g).size();
}

/// Free-extension property of a tree: for every pair of disjoint level sets
/// A, B inside {0..r-1} with |A| + |B| <= r there is a node of the tree,
/// longer than every demanded level and shorter than `depth`, carrying bit 1
/// over all of A and bit 0 over all of B.  The ambient tree defaults to the
/// full binary tree of the given depth.  Precondition: r >= 1 and depth > r.
inline bool extension_property_check(std::size_t depth, std::size_t r,
                                     const FinTree* ambient = nullptr) {
    if (r < 1) throw input_error("the demand range must cover at least one level");
    if (depth <= r) throw input_error("witness depth must exceed the demand range");
    const FinTree full = ambient ? FinTree{} : FinTree::full(depth);
    const FinTree& tree = ambient ? *ambient : full;

    // Roles per level below r: 0 = unused, 1 = demand bit 1, 2 = demand bit 0.
    std::vector<std::size_t> role(r, 0);
    auto demands_met = [&]() {
        std::size_t max_level = 0;
        bool any = false;
        for (std::size_t l = 0; l < r; ++l)
            if (role[l]) {
                max_level = l;
                any = true;
            }
        for (const Bits& t : tree.nodes()) {
            if (t.size() >= depth) continue;
            if (any && t.size() <= max_level) continue;
            bool ok = true;
            for (std::size_t l = 0; l < r && ok; ++l) {
                if (!role[l]) continue;
                if (t.bit(l) != (role[l] == 1)) ok = false;
            }
            if (ok) return true;
        }
        return false;
    };

    auto rec = [&](auto&& self, std::size_t l) -> bool {
        if (l == r) return demands_met();
        for (std::size_t v : {0u, 1u, 2u}) {
            role[l] = v;
            if (!self(self, l + 1)) return false;
        }
        role[l] = 0;
        return true;
    };
    return rec(rec, 0);
}

} // namespace treelab
