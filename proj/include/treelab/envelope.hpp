#pragma once
/// \file
/// Strong-tree envelopes of strongly diagonal trees, and recovery of the
/// unique copy of a diagonal type inside a matching strong tree.  Envelopes
/// let colorings of diagonal trees ride on partition theorems for strong
/// trees; the transfer is sound exactly because the copy is unique.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "treelab/bits.hpp"
#include "treelab/errors.hpp"
#include "treelab/similarity.hpp"
#include "treelab/tree.hpp"

namespace treelab {

namespace detail {

/// All length-`target` extensions of `arm`, in lexicographic order.
inline std::vector<Bits> arm_extensions(const Bits& arm, std::size_t target) {
    const std::size_t gap = target - arm.size();
    std::vector<Bits> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << gap); ++mask) {
        Bits e = arm;
        for (std::size_t i = gap; i-- > 0;) e.push_back((mask >> i) & 1);
        out.push_back(e);
    }
    return out;
}

/// The critical levels of a strongly diagonal tree are the levels of its
/// meets and maximal nodes — by diagonality, of every node.
inline std::vector<std::size_t> critical_levels(const FinTree& d) {
    std::vector<std::size_t> levels;
    for (const Bits& n : d.nodes()) levels.push_back(n.size());
    return levels;
}

/// The candidate nodes one stage of envelope growth may place above `arm`
/// at level `next`: forced to the prefix of a tree node passing through the
/// arm, free among all extensions otherwise.  Nodes of the tree passing
/// through a common arm share their prefix at `next`, because their meet is
/// a tree node and the tree has no level strictly between two consecutive
/// critical levels.
inline std::vector<Bits> envelope_slot(const std::vector<Bits>& dn, const Bits& arm,
                                       std::size_t next) {
    for (const Bits& t : dn)
        if (t.size() >= next && arm.is_prefix_of(t)) return {t.prefix(next)};
    return arm_extensions(arm, next);
}

} // namespace detail

/// All minimal envelopes of a strongly diagonal tree inside the full binary
/// tree of the given depth: strong subtrees whose level set is exactly the
/// tree's critical levels and whose nodes include every node of the tree.
/// Returned sorted by node list.  Rejects an empty or non-diagonal tree and
/// an ambient depth below the tree's height.
inline std::vector<FinTree> minimal_envelopes(const FinTree& d, std::size_t ambient_depth) {
    if (d.empty() || !is_strongly_diagonal(d))
        throw input_error("envelopes are defined for nonempty strongly diagonal trees");
    if (ambient_depth < d.height())
        throw input_error("ambient depth " + std::to_string(ambient_depth) +
                          " cannot contain a tree of height " + std::to_string(d.height()));

    const std::vector<Bits>& dn = d.nodes(); // one node per critical level
    std::vector<FinTree> out;
    std::vector<std::vector<Bits>> tiers{{dn.front()}};

    auto grow = [&](auto&& self, std::size_t stage) -> void {
        if (stage + 1 == dn.size()) {
            std::vector<Bits> all;
            for (const auto& tier : tiers) all.insert(all.end(), tier.begin(), tier.end());
            out.push_back(FinTree::from_nodes(all));
            return;
        }
        const std::size_t next = dn[stage + 1].size();
        std::vector<std::vector<Bits>> slots;
        for (const Bits& u : tiers[stage])
            for (bool b : {false, true})
                slots.push_back(detail::envelope_slot(dn, u.extended(b), next));

        std::vector<Bits> pick(slots.size());
        auto product = [&](auto&& inner, std::size_t s) -> void {
            if (s == slots.size()) {
                tiers.push_back(pick);
                self(self, stage + 1);
                tiers.pop_back();
                return;
            }
            for (const Bits& c : slots[s]) {
                pick[s] = c;
                inner(inner, s + 1);
            }
        };
        product(product, 0);
    };
    grow(grow, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// The number of minimal envelopes, computed from the free-slot product
/// without enumerating.  Useful as a budget estimate and a cross-check.
inline std::size_t minimal_envelope_count(const FinTree& d, std::size_t ambient_depth) {
    if (d.empty() || !is_strongly_diagonal(d))
        throw input_error("envelopes are defined for nonempty strongly diagonal trees");
    if (ambient_depth < d.height())
        throw input_error("ambient depth " + std::to_string(ambient_depth) +
                          " cannot contain a tree of height " + std::to_string(d.height()));
    const std::vector<Bits>& dn = d.nodes();
    std::size_t count = 1;
    std::size_t tier_width = 1;
    for (std::size_t stage = 0; stage + 1 < dn.size(); ++stage) {
        const std::size_t here = dn[stage].size();
        const std::size_t next = dn[stage + 1].size();
        // Slots forced by the tree are the distinct arms its deeper nodes
        // pass through; the rest of the doubled tier is free.
        std::set<Bits> forced_arms;
        for (const Bits& t : dn)
            if (t.size() >= next) forced_arms.insert(t.prefix(here + 1));
        const std::size_t free_slots = 2 * tier_width - forced_arms.size();
        for (std::size_t s = 0; s < free_slots; ++s) count *= std::size_t{1} << (next - here - 1);
        tier_width *= 2;
    }
    return count;
}

/// The unique meet-closed subset of a strong tree carrying the given
/// passing-mode diagonal type.  The host must have exactly one level per
/// critical node of the type.  Zero or several copies falsify the
/// uniqueness contract and raise contract_violation.
inline FinTree unique_copy(const SimilarityType& type_d, const FinTree& u) {
    if (type_d.mode() != SimilarityMode::with_passing)
        throw input_error("copies are recovered from passing-mode types");
    const std::size_t critical = type_d.events().size();
    std::vector<std::size_t> levels;
    for (const Bits& n : u.nodes())
        if (levels.empty() || levels.back() != n.size()) levels.push_back(n.size());
    if (levels.size() != critical)
        throw input_error("the host tree must have one level per critical node: expected " +
                          std::to_string(critical) + ", found " + std::to_string(levels.size()));
    if (!is_strong_subtree(u, FinTree::full(u.height())))
        throw input_error("the host tree is not a strong tree");

    const std::size_t m = type_d.terminal_count();
    const std::vector<Bits>& nodes = u.nodes();
    std::vector<FinTree> copies;
    std::vector<std::size_t> idx(m);
    auto choose = [&](auto&& self, std::size_t slot, std::size_t from) -> void {
        if (slot == m) {
            std::vector<Bits> picked;
            for (std::size_t i : idx) picked.push_back(nodes[i]);
            const FinTree z = FinTree::from_nodes(meet_closure(picked));
            if (!is_strongly_diagonal(z) || terminal_nodes(z).size() != m) return;
            for (const Bits& n : z.nodes())
                if (!u.contains(n)) return; // meets must stay inside the host
            if (canonical_type(z, SimilarityMode::with_passing) == type_d) copies.push_back(z);
            return;
        }
        for (std::size_t i = from; i < nodes.size(); ++i) {
            idx[slot] = i;
            self(self, slot + 1, i + 1);
        }
    };
    choose(choose, 0, 0);
    if (copies.size() != 1)
        throw contract_violation("expected exactly one copy of type " + type_d.serialize() +
                                 " in the host tree, found " + std::to_string(copies.size()));
    return copies.front();
}

} // namespace treelab
