#pragma once
/// \file
/// Construction of a finite triangle-free strong coding tree: a binary tree
/// with one distinguished coding node per level, branching maximally
/// subject to the triangle-free extension criterion, whose coding nodes
/// decode to a triangle-free graph with scheduled adjacency demands.  Also
/// the density-demand audit and the skewing transform that isolates one
/// critical node per level.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "treelab/bits.hpp"
#include "treelab/errors.hpp"
#include "treelab/graph.hpp"
#include "treelab/tree.hpp"

namespace treelab {

/// Finite prefix of an adjacency-demand schedule: entry i is a set
/// F_i ⊆ {0..i-1} of earlier vertex indices the i-th even-step coding node
/// should become adjacent to.
struct DemandSchedule {
    std::vector<std::vector<std::size_t>> entries;

    explicit DemandSchedule(std::vector<std::vector<std::size_t>> es) : entries(std::move(es)) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            auto& f = entries[i];
            std::sort(f.begin(), f.end());
            f.erase(std::unique(f.begin(), f.end()), f.end());
            if (!f.empty() && f.back() >= i)
                throw input_error("demand entry " + std::to_string(i) +
                                  " mentions index " + std::to_string(f.back()) +
                                  ", but only earlier indices may be demanded");
        }
    }

    /// The default deterministic schedule: entry i encodes the bit positions
    /// of c(i) = i - T, where T is the largest triangular number <= i.  The
    /// counter c sweeps 0,0,1,0,1,2,0,1,2,3,... so every finite set recurs
    /// unboundedly often as the horizon grows.
    static DemandSchedule standard(std::size_t count) {
        std::vector<std::vector<std::size_t>> es;
        std::size_t triangle = 0, step = 1;
        for (std::size_t i = 0; i < count; ++i) {
            if (i == triangle + step) {
                triangle += step;
                ++step;
            }
            const std::size_t c = i - triangle;
            std::vector<std::size_t> f;
            for (std::size_t b = 0; (c >> b) != 0; ++b)
                if (((c >> b) & 1) != 0 && b < i) f.push_back(b);
            es.push_back(std::move(f));
        }
        return DemandSchedule(std::move(es));
    }
};

/// Node supplier for the odd construction steps: position i of a fixed
/// enumeration of all finite binary sequences in which every sequence of
/// length k precedes every sequence of length k+1.
using NodeEnum = std::function<Bits(std::size_t)>;

/// The default enumeration: by length, then lexicographically.
inline Bits length_lex_node(std::size_t index) {
    std::size_t level = 0;
    std::size_t before = 0; // nodes strictly shorter than `level`
    while (index - before >= (std::size_t{1} << level)) {
        before += std::size_t{1} << level;
        ++level;
    }
    const std::size_t offset = index - before;
    Bits node;
    for (std::size_t i = level; i-- > 0;) node.push_back((offset >> i) & 1);
    return node;
}

/// The triangle-free extension criterion: a node at a coding node's level
/// may extend rightward iff the two share no parallel 1s at the given
/// coding lengths.  Requires equal lengths.
inline bool extension_allowed(const Bits& t, const Bits& tn,
                              const std::vector<std::size_t>& coding_lengths) {
    if (t.size() != tn.size())
        throw input_error("the criterion compares nodes at the coding node's own level");
    return !has_parallel_ones(t, tn, coding_lengths);
}

/// One designation step of the build: which node became the coding node and
/// whether the scheduled pattern was abandoned for the fallback 0^k1.
struct BuildStep {
    std::size_t index = 0;
    Bits node;
    bool fallback = false;
};

/// A built tree together with its step trace.
struct CodingBuild {
    FinTree tree;
    std::vector<BuildStep> steps;
};

namespace detail {

/// Levels 0..height of a prefix-closed tree under construction.
struct LevelBuild {
    std::vector<std::vector<Bits>> levels;
    std::set<Bits> members;

    void push_level(std::vector<Bits> level) {
        for (const Bits& t : level) members.insert(t);
        levels.push_back(std::move(level));
    }
    bool contains(const Bits& t) const { return members.count(t) != 0; }
};

} // namespace detail

/// Build the triangle-free coding tree with 2*rounds coding nodes, one per
/// level 1..2*rounds, and return it with the full step trace.
///
/// The seed is the full tree of depth 1 with the first coding node ⟨1⟩,
/// which extends only leftward (an explicit seed rule: it has no earlier
/// coding length for the extension criterion to act on).  Each later level
/// grows by maximal branching subject to the criterion, then designates its
/// coding node: odd steps extend the scheduled enumeration node so that the
/// new vertex's only edge goes to the previous vertex; even steps realize
/// the demand entry — adjacent to every demanded earlier vertex and to the
/// previous vertex — provided the demanded vertices are pairwise
/// non-adjacent.  When a step's condition fails (including a demand that
/// would close a triangle through the previous vertex), the fallback node
/// 0^k1 is designated instead; it codes exactly the edge to the previous
/// vertex.  A demanded pattern that is consistent yet missing from the
/// grown level falsifies maximal branching and raises contract_violation.
inline CodingBuild build_coding_tree_trace(std::size_t rounds,
                                           const DemandSchedule& schedule,
                                           const NodeEnum& node_enum = length_lex_node) {
    if (rounds < 1) throw input_error("at least one build round is required");
    if (schedule.entries.size() < rounds)
        throw input_error("demand schedule too short: the build consumes " +
                          std::to_string(rounds) + " entries, got " +
                          std::to_string(schedule.entries.size()));

    detail::LevelBuild lb;
    lb.push_level({Bits{}});
    lb.push_level({Bits::from_string("0"), Bits::from_string("1")});
    std::vector<Bits> coding{Bits::from_string("1")};
    std::vector<BuildStep> steps{{0, coding[0], false}};
    std::size_t last_enum_length = 0;

    for (std::size_t k = 1; k < 2 * rounds; ++k) {
        // Grow level k+1 across the level of the latest coding node.
        const Bits& crossing = coding[k - 1];
        std::vector<std::size_t> earlier_lengths;
        for (std::size_t j = 0; j + 1 < k; ++j) earlier_lengths.push_back(j + 1);
        std::vector<Bits> next;
        for (const Bits& t : lb.levels[k]) {
            next.push_back(t.extended(false));
            const bool right = k == 1 ? t != crossing // seed rule for ⟨1⟩
                                      : extension_allowed(t, crossing, earlier_lengths);
            if (right) next.push_back(t.extended(true));
        }
        std::sort(next.begin(), next.end());
        lb.push_level(std::move(next));

        // Designate the coding node t_k at level k+1.
        Bits target;
        bool fallback = false;
        if (k % 2 == 1) {
            // Odd step: extend the enumerated node u so the new vertex's
            // only edge is to the previous vertex, i.e. bits at coding
            // positions 1..k-1 are 0 and the bit at position k is 1.
            const Bits u = node_enum((k - 1) / 2);
            if (u.size() < last_enum_length)
                throw input_error("node enumeration must not revisit shorter lengths");
            last_enum_length = u.size();
            bool ok = u.size() <= k + 1 && lb.contains(u);
            for (std::size_t p = 1; ok && p < std::min<std::size_t>(u.size(), k); ++p)
                if (u.bit(p)) ok = false;
            if (ok && u.size() == k + 1 && !u.bit(k)) ok = false;
            if (ok) {
                Bits s = u;
                while (s.size() < k) s.push_back(false);
                if (s.size() == k) s.push_back(true);
                if (!lb.contains(s))
                    throw contract_violation(
                        "maximal branching lost the demanded odd-step node " + s.str());
                target = s;
            } else {
                fallback = true;
            }
        } else {
            // Even step: realize the demand entry F = entries[k/2] if its
            // vertices are pairwise non-adjacent.
            const auto& demand = schedule.entries[k / 2];
            bool edge_free = true;
            for (std::size_t a = 0; a < demand.size() && edge_free; ++a)
                for (std::size_t b = a + 1; b < demand.size() && edge_free; ++b)
                    if (coding[demand[b]].bit(demand[a] + 1)) edge_free = false;
            if (edge_free) {
                Bits pattern; // leading bit set below; then coding positions
                pattern.push_back(false);
                for (std::size_t p = 1; p < k; ++p)
                    pattern.push_back(
                        std::binary_search(demand.begin(), demand.end(), p - 1));
                pattern.push_back(true); // mandatory edge to the previous vertex
                // Candidates differ only in the free leading bit.
                std::vector<Bits> candidates{pattern};
                {
                    Bits one;
                    one.push_back(true);
                    for (std::size_t p = 1; p < pattern.size(); ++p) one.push_back(pattern.bit(p));
                    candidates.push_back(one);
                }
                const auto hit = std::find_if(candidates.begin(), candidates.end(),
                                              [&](const Bits& c) { return lb.contains(c); });
                if (hit != candidates.end()) {
                    target = *hit;
                } else {
                    bool demand_independent = true;
                    for (std::size_t i : demand)
                        if (coding[k - 1].bit(i + 1)) demand_independent = false;
                    if (demand_independent)
                        throw contract_violation(
                            "maximal branching lost the demanded even-step pattern " +
                            pattern.str());
                    fallback = true; // the demand would close a triangle
                }
            } else {
                fallback = true;
            }
        }
        if (fallback) {
            Bits fb;
            for (std::size_t p = 0; p < k; ++p) fb.push_back(false);
            fb.push_back(true);
            if (!lb.contains(fb))
                throw contract_violation("maximal branching lost the fallback node " + fb.str());
            target = fb;
        }
        coding.push_back(target);
        steps.push_back({k, target, fallback});
    }

    std::vector<Bits> all;
    for (const auto& level : lb.levels) all.insert(all.end(), level.begin(), level.end());
    return {FinTree::from_nodes(std::move(all), std::move(coding)), std::move(steps)};
}

/// Replay audit for a built tree: every node below the last level has its
/// left child, and has its right child exactly when the extension criterion
/// (or, at the first coding node's level, the seed rule) allows it.
inline bool audit_maximal_branching(const FinTree& s) {
    if (s.empty() || s.coding_nodes().empty())
        throw input_error("the audit needs a tree with coding nodes");
    const std::vector<Bits>& coding = s.coding_nodes();
    const std::size_t h = s.height();
    if (!s.contains(Bits::from_string("0")) || !s.contains(Bits::from_string("1")))
        return false;
    for (const Bits& t : s.nodes()) {
        const std::size_t level = t.size();
        if (level == 0 || level >= h) continue;
        if (level > coding.size()) return false; // a level with no coding node to cross
        if (!s.contains(t.extended(false))) return false;
        const Bits& cn = coding[level - 1];
        std::vector<std::size_t> earlier_lengths;
        for (std::size_t j = 0; j + 1 < level; ++j) earlier_lengths.push_back(j + 1);
        const bool allowed =
            level == 1 ? t != cn : extension_allowed(t, cn, earlier_lengths);
        if (s.contains(t.extended(true)) != allowed) return false;
    }
    return true;
}

/// The built tree alone.
inline FinTree build_coding_tree(std::size_t rounds,
                                 const DemandSchedule& schedule,
                                 const NodeEnum& node_enum = length_lex_node) {
    return build_coding_tree_trace(rounds, schedule, node_enum).tree;
}

/// Convenience overload using the standard schedule.
inline FinTree build_coding_tree(std::size_t rounds) {
    return build_coding_tree(rounds, DemandSchedule::standard(rounds));
}

/// Status of one demand entry in a finite tree: realized by some coding
/// node, not yet realized at this depth, or exempt because the demanded
/// vertices already carry an edge (the density condition presumes an
/// edge-free demand).
enum class DemandStatus { satisfied, pending, exempt };

struct DemandReport {
    std::vector<DemandStatus> statuses;
    /// True when every applicable (non-exempt) entry is satisfied.
    bool complete() const {
        return std::none_of(statuses.begin(), statuses.end(),
                            [](DemandStatus s) { return s == DemandStatus::pending; });
    }
};

/// Audit the density condition on a built tree's coding nodes: entry i is
/// satisfied when some coding node t_n with n >= i carries passing number 1
/// at exactly the coding lengths of the demanded vertices among all
/// vertices below i.  Requires at least `upto` coding nodes and schedule
/// entries.
inline DemandReport check_demand_schedule(const FinTree& s, const DemandSchedule& schedule,
                                          std::size_t upto) {
    const std::vector<Bits>& coding = s.coding_nodes();
    if (coding.size() < upto)
        throw input_error("the tree has " + std::to_string(coding.size()) +
                          " coding nodes, fewer than the requested horizon " +
                          std::to_string(upto));
    if (schedule.entries.size() < upto)
        throw input_error("demand schedule too short for the requested horizon");

    DemandReport report;
    for (std::size_t i = 0; i < upto; ++i) {
        const auto& demand = schedule.entries[i];
        bool edge_free = true;
        for (std::size_t a = 0; a < demand.size() && edge_free; ++a)
            for (std::size_t b = a + 1; b < demand.size() && edge_free; ++b)
                if (coding[demand[b]].bit(coding[demand[a]].size())) edge_free = false;
        if (!edge_free) {
            report.statuses.push_back(DemandStatus::exempt);
            continue;
        }
        bool found = false;
        for (std::size_t n = i; n < coding.size() && !found; ++n) {
            bool matches = true;
            for (std::size_t k = 0; k < i && matches; ++k) {
                const bool want = std::binary_search(demand.begin(), demand.end(), k);
                if (coding[n].bit(coding[k].size()) != want) matches = false;
            }
            found = matches;
        }
        report.statuses.push_back(found ? DemandStatus::satisfied : DemandStatus::pending);
    }
    return report;
}

/// Skew a built tree so that every level carries at most one critical node
/// (a splitting node or a coding node).  Within one original level the
/// inserted stages run splitting nodes first, in lexicographic order, then
/// the coding node.  At a splitting stage only the split's own two arms
/// carry their arm bits and every other path extends by 0; at a coding
/// stage every path extends by its original arm bit, so passing numbers at
/// coding-node images — and hence the decoded graph — are preserved
/// exactly.  Node count is preserved; only levels stretch.
inline FinTree skew(const FinTree& s) {
    if (s.empty()) throw input_error("cannot skew an empty tree");
    const std::size_t height = s.height();
    const std::set<Bits> nodes(s.nodes().begin(), s.nodes().end());
    for (const Bits& c : s.coding_nodes())
        if (nodes.count(c.extended(false)) && nodes.count(c.extended(true)))
            throw input_error("skew expects coding nodes that extend only leftward, but \"" +
                              c.str() + "\" splits");

    std::vector<Bits> out_nodes;
    std::vector<Bits> out_coding;
    // Images of the current original level's nodes, in step with `front`.
    std::vector<Bits> front{Bits{}};
    std::vector<Bits> image{Bits{}};

    for (std::size_t level = 0; level < height; ++level) {
        // Children inherit their parent's image.
        std::vector<Bits> kids;
        std::vector<Bits> kid_image;
        std::vector<std::size_t> parent_of;
        std::vector<Bits> splits;
        for (std::size_t p = 0; p < front.size(); ++p) {
            const Bits left = front[p].extended(false);
            const Bits right = front[p].extended(true);
            const bool has_left = nodes.count(left) != 0;
            const bool has_right = nodes.count(right) != 0;
            if (has_left) {
                kids.push_back(left);
                kid_image.push_back(image[p]);
                parent_of.push_back(p);
            }
            if (has_right) {
                kids.push_back(right);
                kid_image.push_back(image[p]);
                parent_of.push_back(p);
            }
            if (has_left && has_right) splits.push_back(front[p]);
        }

        // Emit images of this level's nodes that do not survive as critical
        // stages: non-splitting, non-coding nodes are finalized as they
        // stand; splitting and coding nodes are finalized at their stages.
        std::sort(splits.begin(), splits.end());
        const Bits* coding_here = nullptr;
        for (std::size_t p = 0; p < front.size(); ++p) {
            if (s.is_coding(front[p])) coding_here = &front[p];
            const bool is_split =
                std::binary_search(splits.begin(), splits.end(), front[p]);
            if (!is_split && !(coding_here == &front[p])) out_nodes.push_back(image[p]);
        }

        std::size_t stages = 0;
        // Splitting stages, lexicographic order.
        for (const Bits& sp : splits) {
            // Finalize the split's image at this stage.
            for (std::size_t c = 0; c < kids.size(); ++c)
                if (front[parent_of[c]] == sp) {
                    out_nodes.push_back(kid_image[c]);
                    break;
                }
            for (std::size_t c = 0; c < kids.size(); ++c)
                kid_image[c].push_back(front[parent_of[c]] == sp && kids[c].back());
            ++stages;
        }
        // Coding stage: every path extends by its own arm bit.
        if (coding_here) {
            for (std::size_t c = 0; c < kids.size(); ++c)
                if (front[parent_of[c]] == *coding_here) {
                    out_nodes.push_back(kid_image[c]);
                    out_coding.push_back(kid_image[c]);
                    break;
                }
            for (std::size_t c = 0; c < kids.size(); ++c)
                kid_image[c].push_back(kids[c].back());
            ++stages;
        }
        // Padding stage so images of distinct levels stay distinct.
        if (stages == 0)
            for (std::size_t c = 0; c < kids.size(); ++c)
                kid_image[c].push_back(kids[c].back());

        front = std::move(kids);
        image = std::move(kid_image);
    }

    // The last level: coding node finalized with its mark, others as-is.
    for (std::size_t p = 0; p < front.size(); ++p) {
        out_nodes.push_back(image[p]);
        if (s.is_coding(front[p])) out_coding.push_back(image[p]);
    }
    return FinTree::from_nodes(std::move(out_nodes), std::move(out_coding));
}

} // namespace treelab
