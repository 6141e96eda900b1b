#pragma once
/// \file similarity.hpp
/// Passing numbers, strongly diagonal trees, similarity of finite trees, and
/// the canonical similarity types with their enumeration.
///
/// A strongly diagonal tree is the meet closure of an antichain of terminal
/// nodes in which all node lengths are pairwise distinct and, at the level of
/// each splitting node, every longer node that does not pass through the
/// splitting node carries bit 0.  Such a tree is described up to similarity
/// by the sequence of events read off its levels from the root upward: at
/// each critical level either one branch splits in two or one branch
/// terminates, and (in passing mode) the bits the surviving branches carry at
/// that level are recorded.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "tree.hpp"

namespace treelab {

/// The bit a longer node carries at the level of a shorter one.
/// Precondition: u is strictly longer than t.
inline bool passing_number(const Bits& u, const Bits& t) {
    if (u.size() <= t.size())
        throw input_error("passing number requires a node strictly longer than the level node");
    return u.bit(t.size());
}

/// Strongly diagonal test; see the file comment.  Malformed or empty input
/// yields false.
inline bool is_strongly_diagonal(const FinTree& z) {
    if (z.empty()) return false;
    const auto& nodes = z.nodes();

    // All lengths pairwise distinct (nodes are sorted by length).
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (nodes[i].size() == nodes[i + 1].size()) return false;

    // Terminal nodes: the maximal ones.
    std::vector<Bits> terminals;
    for (const Bits& n : nodes) {
        bool maximal = true;
        for (const Bits& o : nodes)
            if (o != n && n.is_prefix_of(o)) { maximal = false; break; }
        if (maximal) terminals.push_back(n);
    }

    // The tree must be exactly the meet closure of its terminals.
    if (meet_closure(terminals) != nodes) return false;

    // Every longer node avoiding a splitting node carries bit 0 at its level.
    for (const Bits& s : nodes) {
        if (std::binary_search(terminals.begin(), terminals.end(), s)) continue;
        for (const Bits& u : nodes)
            if (u.size() > s.size() && !s.is_prefix_of(u) && u.bit(s.size())) return false;
    }
    return true;
}

/// How similarity is judged: by tree shape, relative levels and left-to-right
/// order alone, or additionally by all passing numbers at critical levels.
enum class SimilarityMode { order_only, with_passing };

/// Similarity test for a given bijection f between the node sets of two
/// trees.  The map must be a bijection that preserves meets (hence initial
/// segments), relative lengths, and left-to-right order of incomparable
/// nodes; in passing mode it must additionally preserve the bit every longer
/// node carries at the level of every shorter one.  Malformed input yields
/// false; this function does not throw.
inline bool is_similarity(const std::map<Bits, Bits>& f, const FinTree& a,
                          const FinTree& b, SimilarityMode mode) {
    if (a.size() != b.size() || f.size() != a.size()) return false;
    std::set<Bits> image;
    for (const auto& [s, fs] : f) {
        if (!a.contains(s) || !b.contains(fs)) return false;
        image.insert(fs);
    }
    if (image.size() != b.size()) return false;

    const auto& nodes = a.nodes();
    for (const Bits& s : nodes) {
        for (const Bits& t : nodes) {
            const Bits& fs = f.at(s);
            const Bits& ft = f.at(t);
            if (f.at(meet(s, t)) != meet(fs, ft)) return false;
            if ((s.size() < t.size()) != (fs.size() < ft.size())) return false;
            if (incomparable(s, t)) {
                if (!incomparable(fs, ft)) return false;
                if (lex_left_of(s, t) != lex_left_of(fs, ft)) return false;
            }
            if (mode == SimilarityMode::with_passing && t.size() > s.size()) {
                if (ft.size() <= fs.size()) return false;
                if (t.bit(s.size()) != ft.bit(fs.size())) return false;
            }
        }
    }
    return true;
}

/// One critical-level event of a similarity type: branch `pos` (counting the
/// alive branches left to right from 0) either splits in two or terminates.
/// `column` records the bits of the other alive branches at that level, in
/// their left-to-right order; it is empty in order-only types.
struct TypeEvent {
    enum Kind { split, terminal };
    Kind kind;
    std::size_t pos;
    std::string column;
    friend bool operator==(const TypeEvent&, const TypeEvent&) = default;
    friend bool operator<(const TypeEvent& x, const TypeEvent& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        if (x.pos != y.pos) return x.pos < y.pos;
        return x.column < y.column;
    }
};

/// A similarity type: the validated event sequence of a strongly diagonal
/// tree.  Serialization: events joined by '/', each "S:<pos>" or "T:<pos>",
/// followed by ":<column>" when the column is nonempty.
class SimilarityType {
public:
    SimilarityType(SimilarityMode mode, std::vector<TypeEvent> events)
        : mode_(mode), events_(std::move(events)) {
        validate();
    }

    SimilarityMode mode() const noexcept { return mode_; }
    const std::vector<TypeEvent>& events() const noexcept { return events_; }

    std::size_t terminal_count() const {
        std::size_t t = 0;
        for (const auto& e : events_)
            if (e.kind == TypeEvent::terminal) ++t;
        return t;
    }

    std::string serialize() const {
        std::string out;
        for (std::size_t i = 0; i < events_.size(); ++i) {
            if (i) out += '/';
            out += events_[i].kind == TypeEvent::split ? 'S' : 'T';
            out += ':';
            out += std::to_string(events_[i].pos);
            if (!events_[i].column.empty()) {
                out += ':';
                out += events_[i].column;
            }
        }
        return out;
    }

    static SimilarityType parse(std::string_view text, SimilarityMode mode) {
        std::vector<TypeEvent> events;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('/', start);
            if (end == std::string_view::npos) end = text.size();
            const std::string_view item = text.substr(start, end - start);
            events.push_back(parse_event(item));
            if (end == text.size()) break;
            start = end + 1;
        }
        return SimilarityType(mode, std::move(events));
    }

    friend bool operator==(const SimilarityType& x, const SimilarityType& y) {
        return x.mode_ == y.mode_ && x.events_ == y.events_;
    }
    friend bool operator!=(const SimilarityType& x, const SimilarityType& y) {
        return !(x == y);
    }
    friend bool operator<(const SimilarityType& x, const SimilarityType& y) {
        if (x.mode_ != y.mode_) return x.mode_ < y.mode_;
        return x.events_ < y.events_;
    }

private:
    static TypeEvent parse_event(std::string_view item) {
        const auto bad = [&](const std::string& why) {
            return input_error("invalid type event \"" + std::string(item) + "\": " + why);
        };
        if (item.size() < 3 || (item[0] != 'S' && item[0] != 'T') || item[1] != ':')
            throw bad("expected S:<pos> or T:<pos>");
        const std::size_t colon = item.find(':', 2);
        const std::string_view pos_text =
            item.substr(2, colon == std::string_view::npos ? std::string_view::npos : colon - 2);
        if (pos_text.empty() || pos_text.find_first_not_of("0123456789") != std::string_view::npos)
            throw bad("position is not a number");
        TypeEvent e;
        e.kind = item[0] == 'S' ? TypeEvent::split : TypeEvent::terminal;
        e.pos = std::stoul(std::string(pos_text));
        if (colon != std::string_view::npos) {
            e.column = std::string(item.substr(colon + 1));
            if (e.column.empty() ||
                e.column.find_first_not_of("01") != std::string::npos)
                throw bad("column must be a nonempty string over {0,1}");
        }
        return e;
    }

    void validate() const {
        if (events_.empty()) throw input_error("a similarity type has at least one event");
        std::size_t alive = 1;
        for (const auto& e : events_) {
            if (alive == 0) throw input_error("type has events after all branches terminated");
            if (e.pos >= alive)
                throw input_error("event position " + std::to_string(e.pos) +
                                  " out of range for " + std::to_string(alive) + " branches");
            const std::size_t others = alive - 1;
            if (mode_ == SimilarityMode::order_only) {
                if (!e.column.empty())
                    throw input_error("order-only types carry no passing columns");
            } else {
                if (e.column.size() != others)
                    throw input_error("passing column \"" + e.column + "\" should list " +
                                      std::to_string(others) + " other branches");
                if (e.kind == TypeEvent::split &&
                    e.column.find('1') != std::string::npos)
                    throw input_error("branches avoiding a splitting level carry bit 0");
            }
            alive += e.kind == TypeEvent::split ? 1 : std::size_t(-1);
        }
        if (alive != 0)
            throw input_error("type ends with " + std::to_string(alive) +
                              " branches still alive");
    }

    SimilarityMode mode_;
    std::vector<TypeEvent> events_;
};

/// The similarity type of a strongly diagonal tree: its event sequence read
/// level by level from the root upward.  Throws input_error when the tree is
/// not strongly diagonal.
inline SimilarityType canonical_type(const FinTree& z, SimilarityMode mode) {
    if (!is_strongly_diagonal(z))
        throw input_error("canonical type requires a strongly diagonal tree");
    const auto& nodes = z.nodes();

    std::set<Bits> terminal_set;
    for (const Bits& n : nodes) {
        bool maximal = true;
        for (const Bits& o : nodes)
            if (o != n && n.is_prefix_of(o)) { maximal = false; break; }
        if (maximal) terminal_set.insert(n);
    }
    std::vector<Bits> terminals(terminal_set.begin(), terminal_set.end());
    std::sort(terminals.begin(), terminals.end(), [](const Bits& x, const Bits& y) {
        return incomparable(x, y) && lex_left_of(x, y);
    });

    std::vector<std::vector<Bits>> classes{terminals};
    std::vector<TypeEvent> events;
    for (const Bits& v : nodes) { // by increasing length: one event per level
        const std::size_t l = v.size();
        TypeEvent e;
        if (terminal_set.count(v)) {
            e.kind = TypeEvent::terminal;
            e.pos = classes.size();
            for (std::size_t i = 0; i < classes.size(); ++i)
                if (classes[i].size() == 1 && classes[i][0] == v) { e.pos = i; break; }
            if (e.pos == classes.size())
                throw contract_violation("terminating branch is not alone in its class");
            if (mode == SimilarityMode::with_passing)
                for (std::size_t i = 0; i < classes.size(); ++i)
                    if (i != e.pos) e.column += classes[i][0].bit(l) ? '1' : '0';
            classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(e.pos));
        } else {
            e.kind = TypeEvent::split;
            e.pos = classes.size();
            for (std::size_t i = 0; i < classes.size(); ++i)
                if (v.is_prefix_of(classes[i][0])) { e.pos = i; break; }
            if (e.pos == classes.size())
                throw contract_violation("splitting node with no class above it");
            std::vector<Bits> left, right;
            for (const Bits& t : classes[e.pos])
                (t.bit(l) ? right : left).push_back(t);
            if (left.empty() || right.empty())
                throw contract_violation("splitting node fails to separate its class");
            if (mode == SimilarityMode::with_passing)
                for (std::size_t i = 0; i < classes.size(); ++i)
                    if (i != e.pos) e.column += classes[i][0].bit(l) ? '1' : '0';
            classes[e.pos] = std::move(left);
            classes.insert(classes.begin() + static_cast<std::ptrdiff_t>(e.pos) + 1,
                           std::move(right));
        }
        events.push_back(std::move(e));
    }
    return SimilarityType(mode, std::move(events));
}

/// Canonical realization of a type as a strongly diagonal tree with critical
/// levels 0, 1, 2, ...: event j happens at level j, and branches not involved
/// in an event extend by their recorded column bit (by 0 in order-only mode).
inline FinTree realize_type(const SimilarityType& type) {
    std::vector<Bits> paths{Bits{}};
    std::vector<Bits> out;
    for (const auto& e : type.events()) {
        if (e.pos >= paths.size())
            throw contract_violation("type event position escaped validation");
        out.push_back(paths[e.pos]);
        std::vector<Bits> next;
        std::size_t other = 0;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (i == e.pos) {
                if (e.kind == TypeEvent::split) {
                    next.push_back(paths[i].extended(false));
                    next.push_back(paths[i].extended(true));
                }
                continue;
            }
            const bool bit = !e.column.empty() && e.column[other] == '1';
            ++other;
            next.push_back(paths[i].extended(bit));
        }
        paths = std::move(next);
    }
    return FinTree::from_nodes(std::move(out));
}

/// A similarity type together with its canonical realization witness.
struct TypeWitness {
    SimilarityType type;
    FinTree realization;
};

/// Predicate over the length-ordered terminal node sequence of a realization;
/// an empty function accepts everything.
using TerminalFilter = std::function<bool(const std::vector<Bits>&)>;

/// The length-ordered terminal (maximal) nodes of a tree.
inline std::vector<Bits> terminal_nodes(const FinTree& z) {
    std::vector<Bits> out;
    for (const Bits& n : z.nodes()) {
        bool maximal = true;
        for (const Bits& o : z.nodes())
            if (o != n && n.is_prefix_of(o)) { maximal = false; break; }
        if (maximal) out.push_back(n);
    }
    return out;
}

/// All similarity types of strongly diagonal trees with the given number of
/// terminal nodes, each with a realization witness, sorted by serialization
/// and duplicate-free.  A filter, when given, keeps only the types whose
/// witness terminal sequence satisfies it.  Zero terminals yield the empty
/// list.  Work grows steeply with the terminal count; caller-facing wrappers
/// refuse large requests.
inline std::vector<TypeWitness> enumerate_diagonal_types(std::size_t terminals,
                                                         SimilarityMode mode,
                                                         const TerminalFilter& filter = {}) {
    std::vector<TypeWitness> out;
    if (terminals == 0) return out;
    std::vector<TypeEvent> events;

    auto columns_for = [&](std::size_t others, TypeEvent::Kind kind) {
        std::vector<std::string> cols;
        if (mode == SimilarityMode::order_only || others == 0) {
            cols.emplace_back();
        } else if (kind == TypeEvent::split) {
            cols.emplace_back(others, '0');
        } else {
            for (std::size_t mask = 0; mask < (std::size_t{1} << others); ++mask) {
                std::string c(others, '0');
                for (std::size_t i = 0; i < others; ++i)
                    if (mask & (std::size_t{1} << i)) c[i] = '1';
                cols.push_back(std::move(c));
            }
        }
        return cols;
    };

    auto rec = [&](auto&& self, std::size_t alive, std::size_t splits_left,
                   std::size_t terms_left) -> void {
        if (alive == 0) {
            if (splits_left == 0 && terms_left == 0) {
                SimilarityType type(mode, events);
                FinTree witness = realize_type(type);
                if (!filter || filter(terminal_nodes(witness)))
                    out.push_back({std::move(type), std::move(witness)});
            }
            return;
        }
        if (splits_left > 0) {
            for (std::size_t pos = 0; pos < alive; ++pos)
                for (auto& col : columns_for(alive - 1, TypeEvent::split)) {
                    events.push_back({TypeEvent::split, pos, col});
                    self(self, alive + 1, splits_left - 1, terms_left);
                    events.pop_back();
                }
        }
        if (terms_left > 0) {
            for (std::size_t pos = 0; pos < alive; ++pos)
                for (auto& col : columns_for(alive - 1, TypeEvent::terminal)) {
                    events.push_back({TypeEvent::terminal, pos, col});
                    self(self, alive - 1, splits_left, terms_left - 1);
                    events.pop_back();
                }
        }
    };
    rec(rec, 1, terminals - 1, terminals);

    std::sort(out.begin(), out.end(), [](const TypeWitness& x, const TypeWitness& y) {
        return x.type.serialize() < y.type.serialize();
    });
    return out;
}

/// The strict total order on nodes matching the rational line: incomparable
/// nodes compare by left-to-right position; a node precedes its extension
/// exactly when the extension carries bit 1 at the node's length.  Equal
/// nodes are rejected.
inline bool devlin_less(const Bits& s, const Bits& t) {
    if (s == t) throw input_error("the node order compares distinct nodes only");
    if (s.is_prefix_of(t)) return t.bit(s.size());
    if (t.is_prefix_of(s)) return !s.bit(t.size());
    return lex_left_of(s, t);
}

} // namespace treelab
