#pragma once
/// \file
/// Brute-force Ramsey oracles: finite partition arrows over d-subsets,
/// monochromatic level-product search across tuples of strong trees, the
/// pigeonhole reduction from tree extensions to level products, node-tuple
/// type censuses, and persistence checks for diagonal similarity types.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treelab/bits.hpp"
#include "treelab/errors.hpp"
#include "treelab/similarity.hpp"
#include "treelab/tree.hpp"

namespace treelab {

/// What a coloring's keys describe.
enum class ColoringDomain { level_products, extensions, subsets };

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace detail

/// Canonical key of an ordered node tuple: node strings joined by commas.
inline std::string tuple_key(const std::vector<Bits>& nodes) {
    std::string key;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) key += ',';
        key += nodes[i].str();
    }
    return key;
}

/// Canonical key of a finite tree: its nodes in canonical order, joined by
/// commas.  A single-node tree keys identically to the 1-tuple of its node.
inline std::string tree_key(const FinTree& t) { return tuple_key(t.nodes()); }

/// Total deterministic coloring of string keys into {0..palette-1}: either
/// an explicit table or a seeded hash.  The same seed yields the same
/// assignment on every key; a table rejects keys outside its domain.
class Coloring {
public:
    static Coloring seeded(std::size_t palette, std::uint64_t seed,
                           ColoringDomain domain = ColoringDomain::level_products) {
        if (palette < 1) throw input_error("a coloring needs at least one color");
        Coloring c;
        c.palette_ = palette;
        c.domain_ = domain;
        c.seed_ = seed;
        c.seeded_ = true;
        return c;
    }

    static Coloring from_table(std::size_t palette, std::map<std::string, std::size_t> table,
                               ColoringDomain domain = ColoringDomain::level_products) {
        if (palette < 1) throw input_error("a coloring needs at least one color");
        for (const auto& [key, color] : table)
            if (color >= palette)
                throw input_error("color " + std::to_string(color) + " of key \"" + key +
                                  "\" exceeds the palette 0.." + std::to_string(palette - 1));
        Coloring c;
        c.palette_ = palette;
        c.domain_ = domain;
        c.table_ = std::move(table);
        return c;
    }

    std::size_t palette() const noexcept { return palette_; }
    ColoringDomain domain() const noexcept { return domain_; }
    bool is_seeded() const noexcept { return seeded_; }

    std::uint64_t seed() const {
        if (!seeded_) throw input_error("a table coloring has no seed");
        return seed_;
    }

    /// The explicit table; empty for seeded colorings.
    const std::map<std::string, std::size_t>& table() const noexcept { return table_; }

    std::size_t color(const std::string& key) const {
        if (seeded_) return detail::splitmix64(seed_ ^ detail::fnv1a(key)) % palette_;
        const auto it = table_.find(key);
        if (it == table_.end())
            throw input_error("coloring table has no entry for key \"" + key + "\"");
        return it->second;
    }

private:
    Coloring() = default;
    std::size_t palette_ = 1;
    ColoringDomain domain_ = ColoringDomain::level_products;
    bool seeded_ = false;
    std::uint64_t seed_ = 0;
    std::map<std::string, std::size_t> table_;
};

namespace detail {

/// All d-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets_of(std::size_t n, std::size_t d) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> pick(d);
    auto rec = [&](auto&& self, std::size_t idx, std::size_t from) -> void {
        if (idx == d) {
            out.push_back(pick);
            return;
        }
        for (std::size_t v = from; v + (d - idx) <= n; ++v) {
            pick[idx] = v;
            self(self, idx + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

} // namespace detail

inline constexpr std::uint64_t default_arrow_budget = std::uint64_t{1} << 22;

/// Exhaustive finite partition arrow: true iff every coloring of the
/// d-subsets of an n-element set with `sigma` colors admits a k-element
/// subset all of whose d-subsets share one color.  Refuses (rather than
/// sampling) when the sigma^C(n,d) colorings exceed the budget.
inline bool arrow_check(std::size_t n, std::size_t k, std::size_t d, std::size_t sigma,
                        std::uint64_t budget = default_arrow_budget) {
    if (n < 1 || k < 1 || d < 1 || sigma < 1)
        throw input_error("all arrow parameters must be positive");
    if (d > k) throw input_error("the subset size d may not exceed the target size k");
    if (k > n) return false; // no k-element subset exists at all

    const std::vector<std::vector<std::size_t>> cells = detail::subsets_of(n, d);
    // Refuse honestly when sigma^|cells| exceeds the budget.
    std::uint64_t colorings = 1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (colorings > budget / sigma)
            throw budget_refusal("arrow search needs more than " + std::to_string(budget) +
                                 " colorings of " + std::to_string(cells.size()) +
                                 " cells over " + std::to_string(sigma) + " colors");
        colorings *= sigma;
    }

    // Index the d-subsets of every k-subset once.
    std::map<std::vector<std::size_t>, std::size_t> cell_index;
    for (std::size_t i = 0; i < cells.size(); ++i) cell_index[cells[i]] = i;
    std::vector<std::vector<std::size_t>> k_cells;
    for (const auto& x : detail::subsets_of(n, k)) {
        std::vector<std::size_t> idx;
        for (const auto& cell : detail::subsets_of(k, d)) {
            std::vector<std::size_t> named;
            for (std::size_t j : cell) named.push_back(x[j]);
            idx.push_back(cell_index.at(named));
        }
        k_cells.push_back(std::move(idx));
    }

    std::vector<std::size_t> colors(cells.size(), 0);
    for (std::uint64_t code = 0; code < colorings; ++code) {
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < colors.size(); ++i) {
            colors[i] = rest % sigma;
            rest /= sigma;
        }
        bool homogeneous = false;
        for (const auto& idx : k_cells) {
            bool same = true;
            for (std::size_t j = 1; j < idx.size() && same; ++j)
                if (colors[idx[j]] != colors[idx[0]]) same = false;
            if (same) {
                homogeneous = true;
                break;
            }
        }
        if (!homogeneous) return false;
    }
    return true;
}

namespace detail {

/// Distinct node lengths of a tree, ascending.
inline std::vector<std::size_t> level_lengths(const FinTree& t) {
    std::vector<std::size_t> out;
    for (const Bits& n : t.nodes())
        if (out.empty() || out.back() != n.size()) out.push_back(n.size());
    return out;
}

/// All strong subtrees of t witnessed by exactly the given levels, sorted.
inline std::vector<FinTree> pinned_strong_subtrees(const FinTree& t,
                                                   const std::vector<std::size_t>& levels) {
    const std::set<Bits> closure = closure_set(t);
    std::vector<std::vector<Bits>> by_len(t.height() + 1);
    for (const Bits& n : t.nodes()) by_len[n.size()].push_back(n);
    for (std::size_t l : levels)
        if (l > t.height()) return {};

    std::vector<FinTree> out;
    auto grow = [&](auto&& self, std::vector<std::vector<Bits>>& tiers, std::size_t j) -> void {
        if (j + 1 == levels.size()) {
            std::vector<Bits> all;
            for (const auto& tier : tiers) all.insert(all.end(), tier.begin(), tier.end());
            out.push_back(FinTree::from_nodes(std::move(all)));
            return;
        }
        std::vector<std::vector<Bits>> slots;
        for (const Bits& u : tiers[j]) {
            const std::vector<Bits> arms = closure_successors(closure, u);
            if (arms.empty()) return;
            for (const Bits& a : arms) {
                std::vector<Bits> choices;
                for (const Bits& v : by_len[levels[j + 1]])
                    if (a.is_prefix_of(v)) choices.push_back(v);
                if (choices.empty()) return;
                slots.push_back(std::move(choices));
            }
        }
        std::vector<std::size_t> pick(slots.size(), 0);
        for (;;) {
            std::vector<Bits> tier;
            for (std::size_t i = 0; i < slots.size(); ++i) tier.push_back(slots[i][pick[i]]);
            std::sort(tier.begin(), tier.end());
            tiers.push_back(std::move(tier));
            self(self, tiers, j + 1);
            tiers.pop_back();
            std::size_t i = slots.size();
            while (i > 0 && ++pick[i - 1] == slots[i - 1].size()) pick[--i] = 0;
            if (i == 0) break;
        }
    };
    for (const Bits& stem : by_len[levels[0]]) {
        std::vector<std::vector<Bits>> tiers{{stem}};
        grow(grow, tiers, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// A monochromatic configuration found by hl_solve: the chosen level
/// indices (into the shared level list), one strong subtree per input tree,
/// and the constant color.
struct HLWitness {
    std::vector<std::size_t> level_indices;
    std::vector<FinTree> subtrees;
    std::size_t color;
};

/// Search for level indices L of the requested size and strong subtrees
/// S_i of the input trees, pinned exactly at L, such that the coloring is
/// constant on all same-level node tuples of the S_i.  Tuples are keyed by
/// tuple_key in input-tree order.  The search is canonical — level
/// combinations ascending, subtree tuples lexicographic — so the first
/// witness is well-defined; absence means the whole space was checked.
inline std::optional<HLWitness> hl_solve(const std::vector<FinTree>& trees, const Coloring& c,
                                         std::size_t target_levels) {
    if (trees.empty()) throw input_error("the search needs at least one tree");
    if (target_levels < 1) throw input_error("the search needs at least one target level");
    std::vector<std::vector<std::size_t>> lengths;
    for (const FinTree& t : trees) {
        if (t.empty()) throw input_error("the search needs nonempty trees");
        lengths.push_back(detail::level_lengths(t));
        if (lengths.back().size() != lengths.front().size())
            throw input_error("all trees must share their level count");
    }
    const std::size_t level_count = lengths.front().size();
    if (target_levels > level_count) return std::nullopt; // nothing to search

    for (const auto& combo : detail::subsets_of(level_count, target_levels)) {
        // Candidate subtrees per tree, pinned at this level combination.
        std::vector<std::vector<FinTree>> candidates;
        bool feasible = true;
        for (std::size_t i = 0; i < trees.size() && feasible; ++i) {
            std::vector<std::size_t> pinned;
            for (std::size_t j : combo) pinned.push_back(lengths[i][j]);
            candidates.push_back(detail::pinned_strong_subtrees(trees[i], pinned));
            if (candidates.back().empty()) feasible = false;
        }
        if (!feasible) continue;

        std::vector<std::size_t> pick(trees.size(), 0);
        for (;;) {
            // Constancy of c over all same-level tuples of the chosen S_i.
            std::optional<std::size_t> constant;
            bool ok = true;
            for (std::size_t j = 0; j < target_levels && ok; ++j) {
                std::vector<std::vector<Bits>> tier(trees.size());
                for (std::size_t i = 0; i < trees.size(); ++i) {
                    const std::size_t len = lengths[i][combo[j]];
                    for (const Bits& n : candidates[i][pick[i]].nodes())
                        if (n.size() == len) tier[i].push_back(n);
                }
                std::vector<std::size_t> at(trees.size(), 0);
                for (;;) {
                    std::vector<Bits> tuple;
                    for (std::size_t i = 0; i < trees.size(); ++i)
                        tuple.push_back(tier[i][at[i]]);
                    const std::size_t col = c.color(tuple_key(tuple));
                    if (!constant) constant = col;
                    if (*constant != col) {
                        ok = false;
                        break;
                    }
                    std::size_t i = trees.size();
                    while (i > 0 && ++at[i - 1] == tier[i - 1].size()) at[--i] = 0;
                    if (i == 0) break;
                }
            }
            if (ok && constant) {
                HLWitness w;
                w.level_indices = combo;
                for (std::size_t i = 0; i < trees.size(); ++i)
                    w.subtrees.push_back(candidates[i][pick[i]]);
                w.color = *constant;
                return w;
            }
            std::size_t i = trees.size();
            while (i > 0 && ++pick[i - 1] == candidates[i - 1].size()) pick[--i] = 0;
            if (i == 0) break;
        }
    }
    return std::nullopt;
}

/// The pigeonhole reduction: given a strong tree U with k levels sitting
/// strongly inside T and a coloring of the (k+1)-level one-node-per-arm
/// extensions of U inside T, build the induced coloring of same-length
/// node tuples from the 2^k cones of T above the immediate successors of
/// U's maximal nodes (listed left to right).  For an empty U the single
/// cone is T itself and the reduction is the identity.  The induced table
/// satisfies d(tuple) = c(U together with the tuple's nodes) pointwise.
inline Coloring milliken_reduce(const FinTree& u, const FinTree& t, const Coloring& c) {
    if (t.empty()) throw input_error("the ambient tree is empty");

    std::vector<Bits> successors;
    if (u.empty()) {
        successors.push_back(Bits{}); // one cone: all of t
    } else {
        if (!is_strong_subtree(u, t))
            throw input_error("the restriction is not a strong subtree of the ambient tree");
        const std::size_t top = u.height();
        for (const Bits& n : u.nodes())
            if (n.size() == top) {
                successors.push_back(n.extended(false));
                successors.push_back(n.extended(true));
            }
    }

    // Cone node lists and their common lengths.
    std::vector<std::vector<Bits>> cones(successors.size());
    std::map<std::size_t, std::size_t> length_hits;
    for (std::size_t i = 0; i < successors.size(); ++i) {
        std::set<std::size_t> seen;
        for (const Bits& n : t.nodes())
            if (successors[i].is_prefix_of(n)) {
                cones[i].push_back(n);
                seen.insert(n.size());
            }
        for (std::size_t l : seen) ++length_hits[l];
    }
    std::vector<std::size_t> common;
    for (const auto& [l, hits] : length_hits)
        if (hits == successors.size()) common.push_back(l);
    if (common.empty())
        throw input_error("no level of the ambient tree extends every arm of the restriction");

    std::map<std::string, std::size_t> table;
    for (std::size_t l : common) {
        std::vector<std::vector<Bits>> tier(cones.size());
        for (std::size_t i = 0; i < cones.size(); ++i)
            for (const Bits& n : cones[i])
                if (n.size() == l) tier[i].push_back(n);
        std::vector<std::size_t> at(cones.size(), 0);
        for (;;) {
            std::vector<Bits> tuple;
            for (std::size_t i = 0; i < cones.size(); ++i) tuple.push_back(tier[i][at[i]]);
            std::vector<Bits> extension = u.nodes();
            extension.insert(extension.end(), tuple.begin(), tuple.end());
            table[tuple_key(tuple)] =
                c.color(tree_key(FinTree::from_nodes(meet_closure(std::move(extension)))));
            std::size_t i = cones.size();
            while (i > 0 && ++at[i - 1] == tier[i - 1].size()) at[--i] = 0;
            if (i == 0) break;
        }
    }
    return Coloring::from_table(c.palette(), std::move(table), ColoringDomain::level_products);
}

/// Number of order-only similarity types of strongly diagonal trees with
/// the given number of terminal nodes (the node-order census).  Refuses
/// beyond the bound rather than running an open-ended enumeration.
inline std::size_t devlin_type_count(std::size_t terminals, std::size_t bound = 4) {
    if (terminals < 1) throw input_error("the census needs at least one terminal node");
    if (terminals > bound)
        throw budget_refusal("type census limited to " + std::to_string(bound) +
                             " terminal nodes; " + std::to_string(terminals) + " requested");
    return enumerate_diagonal_types(terminals, SimilarityMode::order_only).size();
}

/// Tuple-type descriptors for laver_type_count: d nodes, one from each of
/// d disjoint copies of the binary tree.
enum class TupleTypeNotion {
    trivial,      ///< every tuple has the same type
    length_order, ///< the weak ordering of the d node lengths
    interleaving  ///< the weak ordering of node lengths and pairwise meet lengths
};

/// Number of distinct tuple types under the chosen notion, enumerated over
/// all d-tuples of nodes of the full binary tree of the ambient depth.
/// Reported for comparison with (d+1)!; no equality is asserted.
inline std::size_t laver_type_count(std::size_t d, TupleTypeNotion notion,
                                    std::size_t ambient_depth = 4) {
    if (d < 1 || d > 3) throw input_error("tuple census supports 1..3 coordinates");
    if (notion == TupleTypeNotion::trivial) return 1;

    const FinTree ambient = FinTree::full(ambient_depth);
    const std::vector<Bits>& nodes = ambient.nodes();
    std::set<std::string> descriptors;
    std::vector<std::size_t> at(d, 0);
    for (;;) {
        std::vector<std::size_t> values;
        for (std::size_t i = 0; i < d; ++i) values.push_back(nodes[at[i]].size());
        if (notion == TupleTypeNotion::interleaving)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i + 1; j < d; ++j)
                    values.push_back(meet(nodes[at[i]], nodes[at[j]]).size());
        // Dense ranks make the descriptor a pure interleaving pattern.
        std::vector<std::size_t> sorted(values);
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::string desc;
        for (std::size_t v : values) {
            const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
            if (!desc.empty()) desc += ',';
            desc += std::to_string(it - sorted.begin());
        }
        descriptors.insert(std::move(desc));
        std::size_t i = d;
        while (i > 0 && ++at[i - 1] == nodes.size()) at[--i] = 0;
        if (i == 0) break;
    }
    return descriptors.size();
}

/// Does some strongly diagonal node subset of the tree realize the given
/// passing-sensitive type?  Insufficient depth simply yields false.
inline bool persistence_check(const SimilarityType& ty, const FinTree& s) {
    if (ty.mode() != SimilarityMode::with_passing)
        throw input_error("persistence is defined for passing-sensitive types");
    if (s.empty()) return false;
    const std::size_t m = ty.terminal_count();
    const std::vector<Bits>& nodes = s.nodes();

    std::vector<Bits> picked;
    // Terminal candidates in increasing length order; a diagonal tree's
    // terminal lengths are pairwise distinct.
    auto search = [&](auto&& self, std::size_t from) -> bool {
        if (picked.size() == m) {
            const FinTree z = FinTree::from_nodes(meet_closure(picked));
            return is_strongly_diagonal(z) &&
                   canonical_type(z, SimilarityMode::with_passing) == ty;
        }
        for (std::size_t i = from; i < nodes.size(); ++i) {
            if (!picked.empty() && nodes[i].size() <= picked.back().size()) continue;
            picked.push_back(nodes[i]);
            if (self(self, i + 1)) return true;
            picked.pop_back();
        }
        return false;
    };
    return search(search, 0);
}

} // namespace treelab
