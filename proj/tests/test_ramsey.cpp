/// \file
/// Tests for the brute-force Ramsey oracles: deterministic colorings, finite
/// partition arrows, the monochromatic level-product search, the pigeonhole
/// reduction from tree extensions to level products, tuple-type censuses,
/// and persistence of diagonal similarity types.
///
/// Independent anchors:
///  * arrow facts are pinned against classical values — 6 -> (3)^2_2 holds,
///    5 -> (3)^2_2 fails, and the d = 1 case is the exact pigeonhole
///    threshold n >= sigma(k-1) + 1;
///  * first witnesses of the level-product search are frozen node by node
///    for a constant and a parity coloring, and a seeded battery is replayed
///    against a test-local exhaustive search built from the library's
///    all-subtree enumerator;
///  * the reduction identity d(tuple) = c(extension tree) is re-derived in
///    the test from the table keys alone, never from the cone enumeration;
///  * tuple-type counts were frozen from an enumeration that is stable from
///    the default ambient depth upward (1/3/13 by length order; 1/6/127 by
///    interleaving pattern, against the factorial bounds 2/6/24).

#include <catch2/catch_amalgamated.hpp>

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
#include "treelab/ramsey.hpp"
#include "treelab/similarity.hpp"
#include "treelab/tree.hpp"

using namespace treelab;

namespace {

Bits B(const std::string& s) { return Bits::from_string(s); }

std::vector<Bits> NS(const std::vector<std::string>& ss) {
    std::vector<Bits> out;
    for (const auto& s : ss) out.push_back(B(s));
    return out;
}

std::vector<std::string> strings(const std::vector<Bits>& bs) {
    std::vector<std::string> out;
    for (const Bits& b : bs) out.push_back(b.str());
    return out;
}

/// Distinct node lengths, ascending.
std::vector<std::size_t> levels_of(const FinTree& t) {
    std::vector<std::size_t> out;
    for (const Bits& n : t.nodes())
        if (out.empty() || out.back() != n.size()) out.push_back(n.size());
    return out;
}

/// Is the coloring constant over all same-level node tuples of the given
/// subtrees, reading levels off the subtrees themselves?
bool constant_on_products(const std::vector<FinTree>& subtrees, const Coloring& c,
                          std::optional<std::size_t>* found = nullptr) {
    const std::size_t level_count = levels_of(subtrees.front()).size();
    std::optional<std::size_t> constant;
    for (std::size_t j = 0; j < level_count; ++j) {
        std::vector<std::vector<Bits>> tier(subtrees.size());
        for (std::size_t i = 0; i < subtrees.size(); ++i) {
            const std::size_t want = levels_of(subtrees[i])[j];
            for (const Bits& n : subtrees[i].nodes())
                if (n.size() == want) tier[i].push_back(n);
        }
        std::vector<std::size_t> at(subtrees.size(), 0);
        for (;;) {
            std::vector<Bits> tuple;
            for (std::size_t i = 0; i < subtrees.size(); ++i) tuple.push_back(tier[i][at[i]]);
            const std::size_t col = c.color(tuple_key(tuple));
            if (!constant) constant = col;
            if (*constant != col) return false;
            std::size_t i = subtrees.size();
            while (i > 0 && ++at[i - 1] == tier[i - 1].size()) at[--i] = 0;
            if (i == 0) break;
        }
    }
    if (found) *found = constant;
    return true;
}

/// Test-local exhaustive search over full trees of one shared depth: does
/// any aligned tuple of target-level strong subtrees make c constant on its
/// level products?  Built from the library's all-subtree enumerator, so it
/// shares no search-order logic with the solver under test.
bool exhaustive_hl(const std::vector<FinTree>& trees, const Coloring& c,
                   std::size_t target_levels) {
    std::vector<std::vector<FinTree>> all;
    for (const FinTree& t : trees) all.push_back(enumerate_strong_subtrees(t, target_levels));
    std::vector<std::size_t> pick(trees.size(), 0);
    for (;;) {
        std::vector<FinTree> tuple;
        for (std::size_t i = 0; i < trees.size(); ++i) tuple.push_back(all[i][pick[i]]);
        bool aligned = true;
        for (std::size_t i = 1; i < tuple.size(); ++i)
            if (levels_of(tuple[i]) != levels_of(tuple[0])) aligned = false;
        if (aligned && constant_on_products(tuple, c)) return true;
        std::size_t i = trees.size();
        while (i > 0 && ++pick[i - 1] == all[i - 1].size()) pick[--i] = 0;
        if (i == 0) break;
    }
    return false;
}

/// The extension a reduction table entry stands for, rebuilt from the table
/// key alone: the restriction's nodes together with the tuple's nodes,
/// meet-closed.
std::vector<Bits> extension_nodes(const FinTree& u, const std::string& tuple_key_text) {
    std::vector<Bits> nodes = u.nodes();
    std::string part;
    for (const char ch : tuple_key_text + ",") {
        if (ch == ',') {
            nodes.push_back(B(part));
            part.clear();
        } else {
            part += ch;
        }
    }
    return meet_closure(std::move(nodes));
}

/// The key the reduction must have colored that entry with.
std::string extension_key(const FinTree& u, const std::string& tuple_key_text) {
    std::string key;
    for (const Bits& n : extension_nodes(u, tuple_key_text)) {
        if (!key.empty()) key += ',';
        key += n.str();
    }
    return key;
}

} // namespace

TEST_CASE("colorings are total, deterministic, and validated") {
    const Coloring a = Coloring::seeded(3, 42);
    const Coloring b = Coloring::seeded(3, 42);
    const Coloring other = Coloring::seeded(3, 43);
    CHECK(a.palette() == 3);
    CHECK(a.is_seeded());
    CHECK(a.seed() == 42);
    CHECK(a.table().empty());

    std::vector<std::size_t> first, again, shifted;
    for (int i = 0; i < 64; ++i) {
        const std::string key = "node" + std::to_string(i);
        first.push_back(a.color(key));
        again.push_back(b.color(key));
        shifted.push_back(other.color(key));
        CHECK(first.back() < 3);
    }
    CHECK(first == again);
    CHECK(first != shifted);

    const Coloring table = Coloring::from_table(2, {{"-,0,1", 1}, {"0", 0}});
    CHECK_FALSE(table.is_seeded());
    CHECK(table.color("-,0,1") == 1);
    CHECK(table.color("0") == 0);
    CHECK(table.table().size() == 2);
    CHECK_THROWS_AS(table.color("missing"), input_error);
    CHECK_THROWS_AS(table.seed(), input_error);
    CHECK_THROWS_AS(Coloring::seeded(0, 1), input_error);
    CHECK_THROWS_AS(Coloring::from_table(2, {{"x", 2}}), input_error);

    CHECK(tuple_key(NS({"-", "01"})) == "-,01");
    CHECK(tree_key(FinTree::full(1)) == "-,0,1");
}

TEST_CASE("partition arrows match the classical small cases") {
    // The Ramsey number of the triangle is six.
    CHECK(arrow_check(6, 3, 2, 2));
    CHECK_FALSE(arrow_check(5, 3, 2, 2));

    // Singleton subsets: exactly the pigeonhole threshold.
    CHECK(arrow_check(5, 3, 1, 2));
    CHECK_FALSE(arrow_check(4, 3, 1, 2));
    CHECK(arrow_check(7, 3, 1, 3));
    CHECK_FALSE(arrow_check(6, 3, 1, 3));
    CHECK(arrow_check(3, 3, 1, 1));
    CHECK_FALSE(arrow_check(2, 3, 1, 1));

    // k = d: any single cell is homogeneous on its own.
    CHECK(arrow_check(2, 2, 2, 2));
    CHECK_FALSE(arrow_check(1, 2, 2, 2));

    CHECK_THROWS_AS(arrow_check(0, 1, 1, 1), input_error);
    CHECK_THROWS_AS(arrow_check(5, 1, 1, 0), input_error);
    CHECK_THROWS_AS(arrow_check(5, 2, 3, 2), input_error);
    CHECK_THROWS_AS(arrow_check(100, 4, 2, 2), budget_refusal);
    CHECK_THROWS_AS(arrow_check(6, 3, 2, 2, 10), budget_refusal);
}

TEST_CASE("partition arrows are monotone and match pigeonhole exactly") {
    for (std::size_t sigma = 1; sigma <= 3; ++sigma)
        for (std::size_t k = 1; k <= 4; ++k) {
            bool seen_true = false;
            for (std::size_t n = 1; n <= 9; ++n) {
                const bool holds = arrow_check(n, k, 1, sigma);
                CHECK(holds == (n >= sigma * (k - 1) + 1));
                if (seen_true) CHECK(holds); // never true then false as n grows
                seen_true = seen_true || holds;
            }
        }

    // Pair coloring strip: false up to five vertices, true from six on.
    const std::vector<bool> expected{false, false, false, true};
    for (std::size_t n = 3; n <= 6; ++n)
        CHECK(arrow_check(n, 3, 2, 2) == expected[n - 3]);
}

TEST_CASE("level-product search returns the first canonical witness") {
    const Coloring constant = Coloring::seeded(1, 7);

    const auto one = hl_solve({FinTree::full(2)}, constant, 1);
    REQUIRE(one.has_value());
    CHECK(one->level_indices == std::vector<std::size_t>{0});
    CHECK(strings(one->subtrees.at(0).nodes()) == std::vector<std::string>{"-"});
    CHECK(one->color == 0);

    const auto two = hl_solve({FinTree::full(2)}, constant, 2);
    REQUIRE(two.has_value());
    CHECK(two->level_indices == std::vector<std::size_t>{0, 1});
    CHECK(strings(two->subtrees.at(0).nodes()) == std::vector<std::string>{"-", "0", "1"});

    const auto three = hl_solve({FinTree::full(2)}, constant, 3);
    REQUIRE(three.has_value());
    CHECK(three->subtrees.at(0) == FinTree::full(2));

    const auto pair = hl_solve({FinTree::full(3), FinTree::full(3)}, constant, 2);
    REQUIRE(pair.has_value());
    CHECK(pair->level_indices == std::vector<std::size_t>{0, 1});
    CHECK(strings(pair->subtrees.at(0).nodes()) == std::vector<std::string>{"-", "0", "1"});
    CHECK(pair->subtrees.at(1) == pair->subtrees.at(0));

    CHECK(hl_solve({FinTree::full(1)}, constant, 5) == std::nullopt);
    CHECK_THROWS_AS(hl_solve({}, constant, 1), input_error);
    CHECK_THROWS_AS(hl_solve({FinTree::full(2)}, constant, 0), input_error);
    CHECK_THROWS_AS(hl_solve({FinTree{}}, constant, 1), input_error);
    CHECK_THROWS_AS(hl_solve({FinTree::full(2), FinTree::full(1)}, constant, 1), input_error);
}

TEST_CASE("level-product search handles the parity coloring") {
    std::map<std::string, std::size_t> parity;
    for (const Bits& n : FinTree::full(2).nodes()) parity[n.str()] = n.size() % 2;
    const Coloring c = Coloring::from_table(2, parity);

    const auto one = hl_solve({FinTree::full(2)}, c, 1);
    REQUIRE(one.has_value());
    CHECK(one->level_indices == std::vector<std::size_t>{0});
    CHECK(one->color == 0);

    // Two levels must skip the odd middle level: lengths {0, 2} work and the
    // lexicographically least subtree there is kept.
    const auto two = hl_solve({FinTree::full(2)}, c, 2);
    REQUIRE(two.has_value());
    CHECK(two->level_indices == std::vector<std::size_t>{0, 2});
    CHECK(strings(two->subtrees.at(0).nodes()) == std::vector<std::string>{"-", "00", "10"});
    CHECK(two->color == 0);

    // Three levels of 2^{<=2} always mix both parities: verified absence.
    CHECK(hl_solve({FinTree::full(2)}, c, 3) == std::nullopt);
}

TEST_CASE("level-product search agrees with exhaustive search on a seeded battery") {
    for (const std::size_t depth : {2, 3})
        for (const std::size_t d : {1, 2})
            for (const std::size_t target : {1, 2})
                for (std::uint64_t seed = 0; seed < 25; ++seed) {
                    const std::vector<FinTree> trees(d, FinTree::full(depth));
                    const Coloring c = Coloring::seeded(2, seed * 1000 + depth * 10 + target);
                    const auto witness = hl_solve(trees, c, target);
                    if (witness.has_value()) {
                        REQUIRE(witness->subtrees.size() == d);
                        std::optional<std::size_t> color;
                        for (std::size_t i = 0; i < d; ++i) {
                            std::vector<std::size_t> lengths;
                            for (const std::size_t j : witness->level_indices)
                                lengths.push_back(levels_of(trees[i])[j]);
                            CHECK(is_strong_subtree(witness->subtrees[i], trees[i], lengths));
                        }
                        CHECK(constant_on_products(witness->subtrees, c, &color));
                        REQUIRE(color.has_value());
                        CHECK(*color == witness->color);
                        CHECK(witness->color < c.palette());
                    } else {
                        CHECK_FALSE(exhaustive_hl(trees, c, target));
                    }
                }
}

TEST_CASE("reduction with an empty restriction is literally the identity") {
    const FinTree t = FinTree::full(3);
    const Coloring c = Coloring::seeded(2, 99);
    const Coloring d = milliken_reduce(FinTree{}, t, c);
    CHECK(d.palette() == 2);
    CHECK(d.table().size() == t.nodes().size());
    for (const Bits& v : t.nodes()) CHECK(d.color(v.str()) == c.color(v.str()));

    // Pigeonhole on one tree: solving over the single cone with the induced
    // coloring is the same problem as solving over the tree itself.
    const auto direct = hl_solve({t}, c, 2);
    const auto reduced = hl_solve({t}, d, 2);
    REQUIRE(direct.has_value() == reduced.has_value());
    if (direct.has_value()) {
        CHECK(direct->level_indices == reduced->level_indices);
        CHECK(direct->subtrees.at(0) == reduced->subtrees.at(0));
        CHECK(direct->color == reduced->color);
    }
}

TEST_CASE("reduction tables satisfy the extension identity pointwise") {
    // One-level restriction inside 2^{<=3}: cones above 0 and 1 share the
    // three lengths 1, 2, 3, giving 1 + 4 + 16 tuples.
    const FinTree u = FinTree::from_nodes({B("-")});
    const FinTree t = FinTree::full(3);
    const Coloring c = Coloring::seeded(3, 2026);
    const Coloring d = milliken_reduce(u, t, c);
    CHECK(d.table().size() == 21);
    CHECK(d.color("0,1") == c.color("-,0,1"));

    const Coloring constant = milliken_reduce(u, t, Coloring::seeded(1, 5));
    for (const auto& [key, color] : constant.table()) CHECK(color == 0);

    // Full sweep: every restriction with at most two levels in every full
    // tree up to depth four, identity re-derived from the table keys alone.
    for (std::size_t depth = 1; depth <= 4; ++depth) {
        const FinTree host = FinTree::full(depth);
        for (std::size_t k = 0; k <= std::min<std::size_t>(2, depth); ++k) {
            std::vector<FinTree> restrictions;
            if (k == 0)
                restrictions.push_back(FinTree{});
            else
                restrictions = enumerate_strong_subtrees(host, k);
            for (const FinTree& r : restrictions) {
                if (!r.empty() && r.height() == host.height()) {
                    // Arms of the top level leave the host: nothing to color.
                    CHECK_THROWS_AS(milliken_reduce(r, host, c), input_error);
                    continue;
                }
                const Coloring induced = milliken_reduce(r, host, c);
                CHECK(!induced.table().empty());
                for (const auto& [key, color] : induced.table()) {
                    CHECK(color == c.color(extension_key(r, key)));
                    // Each colored extension is a strong subtree of the host
                    // with one more level than the restriction.
                    const FinTree ext = FinTree::from_nodes(extension_nodes(r, key));
                    CHECK(is_strong_subtree(ext, host));
                    CHECK(levels_of(ext).size() == k + 1);
                }
            }
        }
    }

    CHECK_THROWS_AS(milliken_reduce(FinTree{}, FinTree{}, c), input_error);
    CHECK_THROWS_AS(milliken_reduce(FinTree::from_nodes(NS({"0", "1"})), t, c), input_error);
    CHECK_THROWS_AS(milliken_reduce(FinTree::full(1), FinTree::full(1), c), input_error);
}

TEST_CASE("order-type census counts are stable and guarded") {
    CHECK(devlin_type_count(1) == 1);
    CHECK(devlin_type_count(2) == 2);
    CHECK(devlin_type_count(3) == 16);
    CHECK_THROWS_AS(devlin_type_count(0), input_error);
    CHECK_THROWS_AS(devlin_type_count(5), budget_refusal);
    CHECK_THROWS_AS(devlin_type_count(4, 3), budget_refusal);
}

TEST_CASE("tuple-type census counts by notion") {
    for (const std::size_t d : {1, 2, 3})
        CHECK(laver_type_count(d, TupleTypeNotion::trivial) == 1);

    // Weak orders of d lengths.
    CHECK(laver_type_count(1, TupleTypeNotion::length_order) == 1);
    CHECK(laver_type_count(2, TupleTypeNotion::length_order) == 3);
    CHECK(laver_type_count(3, TupleTypeNotion::length_order) == 13);

    // Interleaving patterns of lengths and pairwise meet lengths.  The
    // factorial bounds are 2, 6, 24: one coordinate stays below its bound,
    // two coordinates meet it exactly, three exceed it.
    CHECK(laver_type_count(1, TupleTypeNotion::interleaving) == 1);
    CHECK(laver_type_count(2, TupleTypeNotion::interleaving) == 6);
    CHECK(laver_type_count(3, TupleTypeNotion::interleaving) == 127);

    // Counts are stable once the ambient tree is deep enough to realize
    // every pattern; depth three is too shallow for three coordinates.
    CHECK(laver_type_count(3, TupleTypeNotion::interleaving, 5) == 127);
    CHECK(laver_type_count(2, TupleTypeNotion::interleaving, 3) == 6);
    CHECK(laver_type_count(3, TupleTypeNotion::length_order, 5) == 13);

    CHECK_THROWS_AS(laver_type_count(0, TupleTypeNotion::trivial), input_error);
    CHECK_THROWS_AS(laver_type_count(4, TupleTypeNotion::trivial), input_error);
}

TEST_CASE("persistence of passing-sensitive types") {
    // A single terminal persists everywhere.
    const SimilarityType single =
        canonical_type(FinTree::from_nodes({B("101")}), SimilarityMode::with_passing);
    CHECK(persistence_check(single, FinTree::full(3)));
    CHECK(persistence_check(single, FinTree::full(0)));

    // Both passing behaviors of a two-terminal type persist in depth six.
    const SimilarityType edge =
        canonical_type(FinTree::from_nodes(NS({"-", "0", "11"})), SimilarityMode::with_passing);
    const SimilarityType non_edge =
        canonical_type(FinTree::from_nodes(NS({"-", "0", "10"})), SimilarityMode::with_passing);
    CHECK(edge != non_edge);
    CHECK(persistence_check(edge, FinTree::full(6)));
    CHECK(persistence_check(non_edge, FinTree::full(6)));
    for (const TypeWitness& w : enumerate_diagonal_types(2, SimilarityMode::with_passing))
        CHECK(persistence_check(w.type, FinTree::full(6)));

    // Depth one cannot host two terminals of distinct lengths.
    CHECK_FALSE(persistence_check(edge, FinTree::full(1)));
    // A host whose only diagonal pair realizes the other passing behavior.
    CHECK_FALSE(persistence_check(edge, FinTree::from_nodes(NS({"-", "0", "10"}))));
    CHECK_FALSE(persistence_check(edge, FinTree{}));

    const SimilarityType order_only =
        canonical_type(FinTree::from_nodes({B("0")}), SimilarityMode::order_only);
    CHECK_THROWS_AS(persistence_check(order_only, FinTree::full(2)), input_error);

    // A three-terminal type from the census persists in depth six.
    const auto triples = enumerate_diagonal_types(3, SimilarityMode::with_passing);
    REQUIRE(!triples.empty());
    CHECK(persistence_check(triples.front().type, FinTree::full(6)));
}
