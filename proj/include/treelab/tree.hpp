#pragma once
/// \file tree.hpp
/// Finite trees of binary sequences and the strong-subtree machinery.
///
/// A tree here is a finite meet-closed set of nodes — closed under longest
/// common initial segments but not necessarily under initial segments.  A
/// tree may mark some of its nodes as coding nodes; marked nodes must have
/// pairwise distinct lengths.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace treelab {

/// Finite meet-closed node set with optionally marked coding nodes.
/// Nodes are kept sorted in canonical display order (length, then lex) and
/// deduplicated; coding nodes are kept sorted by length.
class FinTree {
public:
    FinTree() = default;

    /// Validating constructor.  Throws input_error when the node set is not
    /// meet-closed, a coding node is not a node of the tree, or two coding
    /// nodes share a length.
    static FinTree from_nodes(std::vector<Bits> nodes, std::vector<Bits> coding = {}) {
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        check_meet_closed(nodes);
        std::sort(coding.begin(), coding.end());
        coding.erase(std::unique(coding.begin(), coding.end()), coding.end());
        for (std::size_t i = 0; i + 1 < coding.size(); ++i)
            if (coding[i].size() == coding[i + 1].size())
                throw input_error("coding nodes must have pairwise distinct lengths: \"" +
                                  coding[i].str() + "\" and \"" + coding[i + 1].str() + "\"");
        for (const Bits& c : coding)
            if (!std::binary_search(nodes.begin(), nodes.end(), c))
                throw input_error("coding node \"" + c.str() + "\" is not a node of the tree");
        FinTree t;
        t.nodes_ = std::move(nodes);
        t.coding_ = std::move(coding);
        return t;
    }

    /// The full binary tree of all nodes of length <= depth.
    static FinTree full(std::size_t depth) {
        std::vector<Bits> ns;
        ns.emplace_back();
        for (std::size_t pos = 0, lvl = 0; lvl < depth; ++lvl) {
            const std::size_t end = ns.size();
            for (; pos < end; ++pos) {
                ns.push_back(ns[pos].extended(false));
                ns.push_back(ns[pos].extended(true));
            }
        }
        std::sort(ns.begin(), ns.end());
        FinTree t;
        t.nodes_ = std::move(ns);
        return t;
    }

    const std::vector<Bits>& nodes() const& noexcept { return nodes_; }
    const std::vector<Bits>& coding_nodes() const& noexcept { return coding_; }
    // Calling through a temporary hands the nodes over instead of dangling.
    std::vector<Bits> nodes() && { return std::move(nodes_); }
    std::vector<Bits> coding_nodes() && { return std::move(coding_); }

    bool empty() const noexcept { return nodes_.empty(); }
    std::size_t size() const noexcept { return nodes_.size(); }

    bool contains(const Bits& t) const {
        return std::binary_search(nodes_.begin(), nodes_.end(), t);
    }

    bool is_coding(const Bits& t) const {
        return std::binary_search(coding_.begin(), coding_.end(), t);
    }

    /// Largest node length.  Precondition: nonempty.
    std::size_t height() const {
        if (nodes_.empty()) throw input_error("height of an empty tree");
        return nodes_.back().size();
    }

    friend bool operator==(const FinTree& a, const FinTree& b) {
        return a.nodes_ == b.nodes_ && a.coding_ == b.coding_;
    }
    friend bool operator!=(const FinTree& a, const FinTree& b) { return !(a == b); }
    friend bool operator<(const FinTree& a, const FinTree& b) {
        if (a.nodes_ != b.nodes_)
            return std::lexicographical_compare(a.nodes_.begin(), a.nodes_.end(),
                                                b.nodes_.begin(), b.nodes_.end());
        return std::lexicographical_compare(a.coding_.begin(), a.coding_.end(),
                                            b.coding_.begin(), b.coding_.end());
    }

private:
    // A sorted node list is meet-closed iff the meet of every pair of
    // neighbours in subtree-first (lexicographic) order is present; meets of
    // distant pairs are minima of neighbour meets along the way.
    static void check_meet_closed(const std::vector<Bits>& sorted_nodes) {
        std::vector<Bits> lex = sorted_nodes;
        std::sort(lex.begin(), lex.end(), [](const Bits& a, const Bits& b) {
            const std::size_t d = common_prefix_len(a, b);
            if (d == a.size()) return d != b.size(); // a is a proper prefix (or equal)
            if (d == b.size()) return false;
            return !a.bit(d);
        });
        for (std::size_t i = 0; i + 1 < lex.size(); ++i) {
            const Bits m = meet(lex[i], lex[i + 1]);
            if (!std::binary_search(sorted_nodes.begin(), sorted_nodes.end(), m))
                throw input_error("node set is not meet-closed: meet of \"" + lex[i].str() +
                                  "\" and \"" + lex[i + 1].str() + "\" (= \"" + m.str() +
                                  "\") is missing");
        }
    }

    std::vector<Bits> nodes_;
    std::vector<Bits> coding_;
};

/// Meet closure of a node set: the input together with all pairwise longest
/// common initial segments, sorted canonically.
inline std::vector<Bits> meet_closure(std::vector<Bits> nodes) {
    std::set<Bits> out(nodes.begin(), nodes.end());
    // Meets of pairs already in the closure never leave it, and binary meets
    // of meets are again pairwise meets, so one pass over pairs suffices.
    for (auto i = out.begin(); i != out.end(); ++i)
        for (auto j = std::next(i); j != out.end(); ++j)
            out.insert(meet(*i, *j));
    return {out.begin(), out.end()};
}

/// Initial-segment closure: every initial segment of every node.  Coding
/// marks are preserved.
inline FinTree initial_closure(const FinTree& t) {
    std::set<Bits> out;
    for (const Bits& n : t.nodes())
        for (std::size_t l = 0; l <= n.size(); ++l)
            out.insert(n.prefix(l));
    return FinTree::from_nodes({out.begin(), out.end()},
                               t.coding_nodes());
}

/// Nodes of the tree of exactly length n, in canonical order.
inline std::vector<Bits> level_set(const FinTree& t, std::size_t n) {
    std::vector<Bits> out;
    for (const Bits& b : t.nodes())
        if (b.size() == n) out.push_back(b);
    return out;
}

namespace detail {

/// True when t is an initial segment of some node of the tree.
inline bool in_initial_closure(const FinTree& tree, const Bits& t) {
    for (const Bits& n : tree.nodes())
        if (t.is_prefix_of(n)) return true;
    return false;
}

/// Immediate successors of t within a precomputed initial closure set.
inline std::vector<Bits> closure_successors(const std::set<Bits>& closure, const Bits& t) {
    std::vector<Bits> out;
    for (bool b : {false, true})
        if (closure.count(t.extended(b))) out.push_back(t.extended(b));
    return out;
}

inline std::set<Bits> closure_set(const FinTree& t) {
    std::set<Bits> out;
    for (const Bits& n : t.nodes())
        for (std::size_t l = 0; l <= n.size(); ++l)
            out.insert(n.prefix(l));
    return out;
}

} // namespace detail

/// Immediate successors of t inside the initial-segment closure of the tree:
/// those of t⌢0, t⌢1 that are initial segments of tree nodes.  Throws
/// input_error when t itself is not in the closure.
inline std::vector<Bits> successors(const FinTree& tree, const Bits& t) {
    if (!detail::in_initial_closure(tree, t))
        throw input_error("node \"" + t.str() + "\" is not in the tree's initial closure");
    std::vector<Bits> out;
    for (bool b : {false, true}) {
        const Bits e = t.extended(b);
        if (detail::in_initial_closure(tree, e)) out.push_back(e);
    }
    return out;
}

/// Strong-subtree test.  S is a strong subtree of T witnessed by the level
/// list (strictly increasing absolute lengths) when:
///  * every S-node lies in T's initial closure and its length is a witness
///    level;
///  * there is exactly one S-node at the first level (the stem);
///  * at every non-final level, above each immediate successor of each
///    S-node there is exactly one S-node of the next level, and every
///    next-level S-node arises this way;
///  * maximal S-nodes all lie at the final level.
/// Malformed input yields false; this function does not throw.
inline bool is_strong_subtree(const FinTree& s, const FinTree& t,
                              const std::vector<std::size_t>& levels) {
    if (s.empty() || levels.empty()) return false;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (levels[i] >= levels[i + 1]) return false;

    const std::set<Bits> closure = detail::closure_set(t);
    std::vector<std::vector<Bits>> tier(levels.size());
    for (const Bits& n : s.nodes()) {
        if (!closure.count(n)) return false;
        const auto it = std::find(levels.begin(), levels.end(), n.size());
        if (it == levels.end()) return false;
        tier[static_cast<std::size_t>(it - levels.begin())].push_back(n);
    }
    if (tier[0].size() != 1) return false;

    for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
        if (tier[j].empty()) return false;
        // Every next-tier node must sit above an arm of a current-tier node.
        for (const Bits& v : tier[j + 1]) {
            const Bits p = v.prefix(levels[j]);
            if (std::find(tier[j].begin(), tier[j].end(), p) == tier[j].end()) return false;
        }
        for (const Bits& u : tier[j]) {
            const std::vector<Bits> arms = detail::closure_successors(closure, u);
            if (arms.empty()) return false; // maximal before the final level
            for (const Bits& a : arms) {
                std::size_t above = 0;
                for (const Bits& v : tier[j + 1])
                    if (a.is_prefix_of(v)) ++above;
                if (above != 1) return false;
            }
        }
    }
    return tier.back().size() >= 1;
}

/// Overload that witnesses the levels by the distinct node lengths of S.
inline bool is_strong_subtree(const FinTree& s, const FinTree& t) {
    std::vector<std::size_t> levels;
    for (const Bits& n : s.nodes())
        if (levels.empty() || levels.back() != n.size()) levels.push_back(n.size());
    return is_strong_subtree(s, t, levels);
}

namespace detail {

/// Number of splitting nodes of the tree's initial closure strictly below t.
inline std::size_t split_count_below(const std::set<Bits>& closure, const Bits& t) {
    std::size_t count = 0;
    for (std::size_t l = 0; l < t.size(); ++l) {
        const Bits p = t.prefix(l);
        if (closure.count(p.extended(false)) && closure.count(p.extended(true))) ++count;
    }
    return count;
}

} // namespace detail

/// First k levels of a tree: the nodes with fewer than k splitting nodes of
/// the tree's initial closure strictly below them.  k = 0 yields the empty
/// tree; k exceeding the available levels signals exhaustion (input_error).
/// Coding marks on surviving nodes are preserved.
inline FinTree restrict_levels(const FinTree& t, std::size_t k) {
    if (k == 0) return FinTree{};
    const std::set<Bits> closure = detail::closure_set(t);
    std::size_t available = 0;
    std::vector<Bits> kept;
    for (const Bits& n : t.nodes()) {
        const std::size_t c = detail::split_count_below(closure, n);
        available = std::max(available, c + 1);
        if (c < k) kept.push_back(n);
    }
    if (k > available)
        throw input_error("restriction exhausted: tree has " + std::to_string(available) +
                          " levels, " + std::to_string(k) + " requested");
    std::vector<Bits> marks;
    for (const Bits& c : t.coding_nodes())
        if (std::binary_search(kept.begin(), kept.end(), c)) marks.push_back(c);
    return FinTree::from_nodes(std::move(kept), std::move(marks));
}

/// All k-level strong subtrees of the tree, in canonical order: by witness
/// level sequence first, then by node list (lexicographically in the
/// canonical node order).  Precondition: 1 <= k <= number of levels of t.
inline std::vector<FinTree> enumerate_strong_subtrees(const FinTree& t, std::size_t k) {
    if (t.empty()) throw input_error("enumeration over an empty tree");
    const std::set<Bits> closure = detail::closure_set(t);
    std::size_t available = 0;
    for (const Bits& n : t.nodes())
        available = std::max(available, detail::split_count_below(closure, n) + 1);
    if (k < 1 || k > available)
        throw input_error("level count " + std::to_string(k) + " outside 1.." +
                          std::to_string(available));

    const std::size_t max_len = t.height();
    // Nodes of t by length, in canonical order.
    std::vector<std::vector<Bits>> by_len(max_len + 1);
    for (const Bits& n : t.nodes()) by_len[n.size()].push_back(n);

    std::vector<FinTree> result;
    std::vector<std::size_t> levels(k);

    // Extend the tier at index j (levels fixed); on success recurse to j+1.
    auto build_tiers = [&](auto&& self, std::vector<std::vector<Bits>>& tiers,
                           std::size_t j, std::vector<FinTree>& sink) -> void {
        if (j + 1 == k) {
            std::vector<Bits> all;
            for (const auto& tier : tiers) all.insert(all.end(), tier.begin(), tier.end());
            sink.push_back(FinTree::from_nodes(std::move(all)));
            return;
        }
        // Collect one choice list per arm of every current-tier node.
        std::vector<std::vector<Bits>> slots;
        for (const Bits& u : tiers[j]) {
            const std::vector<Bits> arms = detail::closure_successors(closure, u);
            if (arms.empty()) return; // u is maximal: no k-level subtree this way
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
            self(self, tiers, j + 1, sink);
            tiers.pop_back();
            std::size_t i = slots.size();
            while (i > 0 && ++pick[i - 1] == slots[i - 1].size()) pick[--i] = 0;
            if (i == 0) break;
        }
    };

    // Strictly increasing level tuples in lexicographic order.
    auto choose_levels = [&](auto&& self, std::size_t idx, std::size_t from) -> void {
        if (idx == k) {
            std::vector<FinTree> group;
            for (const Bits& stem : by_len[levels[0]]) {
                std::vector<std::vector<Bits>> tiers{{stem}};
                build_tiers(build_tiers, tiers, 0, group);
            }
            std::sort(group.begin(), group.end());
            result.insert(result.end(), group.begin(), group.end());
            return;
        }
        for (std::size_t l = from; l <= max_len; ++l) {
            levels[idx] = l;
            self(self, idx + 1, l + 1);
        }
    };
    choose_levels(choose_levels, 0, 0);
    return result;
}

/// All k-level strong subtrees of the full binary tree of the given depth.
/// Precondition: 1 <= k <= depth + 1.
inline std::vector<FinTree> enumerate_strong_subtrees(std::size_t depth, std::size_t k) {
    return enumerate_strong_subtrees(FinTree::full(depth), k);
}

} // namespace treelab
