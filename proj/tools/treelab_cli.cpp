/// \file
/// Command-line front end: parses the text formats, dispatches the library
/// operations, and emits deterministic line-oriented reports plus optional
/// DOT figures.  Exit codes: 0 success, 1 budget refusal, 2 input error,
/// 3 contract violation.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "treelab/bits.hpp"
#include "treelab/coding.hpp"
#include "treelab/envelope.hpp"
#include "treelab/errors.hpp"
#include "treelab/graph.hpp"
#include "treelab/io.hpp"
#include "treelab/ramsey.hpp"
#include "treelab/similarity.hpp"
#include "treelab/tree.hpp"

namespace {

using namespace treelab;

/// Everything a run wants to emit, gathered first and written only after
/// the whole computation has succeeded.
struct Output {
    std::string report;
    std::vector<std::pair<std::string, std::string>> files;

    void line(const std::string& text) { report += text + "\n"; }
    void file(const std::string& path, const std::string& content) {
        files.emplace_back(path, content);
    }
};

std::vector<Bits> parse_node_list(const std::string& csv) {
    std::vector<Bits> out;
    std::string part;
    for (const char ch : csv + ",") {
        if (ch != ',') {
            part += ch;
            continue;
        }
        if (part.empty()) throw input_error("empty node token in \"" + csv + "\"");
        out.push_back(Bits::from_string(part));
        part.clear();
    }
    return out;
}

/// A coloring flag value: either the literal "seed:N" (palette taken from
/// --colors) or a coloring file path (palette taken from the file).
Coloring coloring_from_flag(const std::string& value, std::size_t colors) {
    if (value.rfind("seed:", 0) == 0)
        return parse_coloring("colors " + std::to_string(colors) + "\n" + value + "\n",
                              "<coloring argument>");
    return load_coloring(value);
}

std::size_t factorial(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

SimilarityMode parse_mode(const std::string& name) {
    if (name == "order") return SimilarityMode::order_only;
    if (name == "passing") return SimilarityMode::with_passing;
    throw input_error("unknown mode \"" + name + "\" (expected order or passing)");
}

TupleTypeNotion parse_notion(const std::string& name) {
    if (name == "trivial") return TupleTypeNotion::trivial;
    if (name == "length-order") return TupleTypeNotion::length_order;
    if (name == "interleaving") return TupleTypeNotion::interleaving;
    throw input_error("unknown notion \"" + name +
                      "\" (expected trivial, length-order, or interleaving)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale laboratory for strong trees, graph codings, and Ramsey oracles"};
    app.require_subcommand(1);
    Output out;

    // trees enumerate
    auto* trees = app.add_subcommand("trees", "Strong-subtree operations");
    trees->require_subcommand(1);
    {
        auto* cmd = trees->add_subcommand("enumerate",
                                          "List all k-level strong subtrees of 2^{<=depth}");
        auto depth = std::make_shared<std::size_t>(0);
        auto levels = std::make_shared<std::size_t>(0);
        auto dot = std::make_shared<std::string>();
        cmd->add_option("--depth", *depth, "Ambient full-tree depth")->required();
        cmd->add_option("--levels", *levels, "Levels of the enumerated subtrees")->required();
        cmd->add_option("--dot", *dot, "Write the ambient tree with the first subtree darkened");
        cmd->callback([&out, depth, levels, dot] {
            const FinTree ambient = FinTree::full(*depth);
            const std::vector<FinTree> found = enumerate_strong_subtrees(ambient, *levels);
            out.line("count " + std::to_string(found.size()));
            for (const FinTree& s : found) out.line(tree_key(s));
            if (!dot->empty())
                out.file(*dot, emit_dot(ambient, DotOptions{found.front().nodes()}));
        });
    }

    // types count / list / laver
    auto* types = app.add_subcommand("types", "Similarity-type censuses");
    types->require_subcommand(1);
    {
        auto* cmd = types->add_subcommand(
            "count", "Count types: order census of diagonal trees, or coding census of a graph");
        auto devlin = std::make_shared<std::size_t>(0);
        auto graph_file = std::make_shared<std::string>();
        auto bound = std::make_shared<std::size_t>(4);
        auto* dev_opt = cmd->add_option("--devlin", *devlin,
                                        "Terminal count for the order-only census");
        auto* graph_opt =
            cmd->add_option("--graph", *graph_file, "Graph file for the coding census");
        cmd->add_option("--budget", *bound, "Largest allowed terminal count");
        dev_opt->excludes(graph_opt);
        cmd->callback([&out, devlin, graph_file, bound, dev_opt, graph_opt] {
            if (dev_opt->count())
                out.line(std::to_string(devlin_type_count(*devlin, *bound)));
            else if (graph_opt->count())
                out.line(std::to_string(sauer_type_count(load_graph(*graph_file))));
            else
                throw input_error("types count needs --devlin or --graph");
        });
    }
    {
        auto* cmd = types->add_subcommand("list", "List diagonal similarity types");
        auto terminals = std::make_shared<std::size_t>(0);
        auto mode = std::make_shared<std::string>("passing");
        cmd->add_option("--devlin", *terminals, "Terminal count")->required();
        cmd->add_option("--mode", *mode, "order or passing");
        cmd->callback([&out, terminals, mode] {
            for (const TypeWitness& w : enumerate_diagonal_types(*terminals, parse_mode(*mode)))
                out.line(w.type.serialize());
        });
    }
    {
        auto* cmd = types->add_subcommand("laver", "Tuple-type census over disjoint tree copies");
        auto d = std::make_shared<std::size_t>(0);
        auto notion = std::make_shared<std::string>("interleaving");
        auto depth = std::make_shared<std::size_t>(4);
        cmd->add_option("--d", *d, "Number of coordinates")->required();
        cmd->add_option("--notion", *notion, "trivial, length-order, or interleaving");
        cmd->add_option("--depth", *depth, "Ambient full-tree depth");
        cmd->callback([&out, d, notion, depth] {
            out.line("count " +
                     std::to_string(laver_type_count(*d, parse_notion(*notion), *depth)));
            out.line("bound " + std::to_string(factorial(*d + 1)));
        });
    }

    // code
    {
        auto* cmd = app.add_subcommand("code", "Decode the graph coded by a node list");
        auto nodes = std::make_shared<std::string>();
        cmd->add_option("--nodes", *nodes, "Comma-separated coding nodes, increasing length")
            ->required();
        cmd->callback([&out, nodes] {
            out.report += serialize_graph(graph_from_nodes(parse_node_list(*nodes)));
        });
    }

    // envelopes
    {
        auto* cmd = app.add_subcommand("envelopes",
                                       "Minimal strong-tree envelopes of a diagonal tree");
        auto terminals = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(0);
        auto dot = std::make_shared<std::string>();
        cmd->add_option("--terminals", *terminals, "Comma-separated terminal nodes")->required();
        cmd->add_option("--depth", *depth, "Ambient full-tree depth")->required();
        cmd->add_option("--dot", *dot, "Write the first envelope with the tree darkened");
        cmd->callback([&out, terminals, depth, dot] {
            const FinTree z = FinTree::from_nodes(meet_closure(parse_node_list(*terminals)));
            const std::vector<FinTree> found = minimal_envelopes(z, *depth);
            out.line("count " + std::to_string(found.size()));
            for (const FinTree& e : found) out.line(tree_key(e));
            if (!dot->empty() && !found.empty())
                out.file(*dot, emit_dot(found.front(), DotOptions{z.nodes()}));
        });
    }

    // coding-tree build / check
    auto* coding = app.add_subcommand("coding-tree", "Triangle-free coding-tree construction");
    coding->require_subcommand(1);
    {
        auto* cmd = coding->add_subcommand("build", "Build the tree and print it");
        auto coding_nodes = std::make_shared<std::size_t>(0);
        auto do_skew = std::make_shared<bool>(false);
        auto out_file = std::make_shared<std::string>();
        auto dot = std::make_shared<std::string>();
        cmd->add_option("--coding-nodes", *coding_nodes, "Number of coding nodes (even)")
            ->required();
        cmd->add_flag("--skew", *do_skew, "Emit the skewed image instead");
        cmd->add_option("--out", *out_file, "Also write the tree file here");
        cmd->add_option("--dot", *dot, "Write a DOT rendering here");
        cmd->callback([&out, coding_nodes, do_skew, out_file, dot] {
            if (*coding_nodes == 0 || *coding_nodes % 2 != 0)
                throw input_error("--coding-nodes must be a positive even number");
            FinTree t = build_coding_tree(*coding_nodes / 2);
            if (*do_skew) t = skew(t);
            const std::string text = serialize_tree(t);
            out.report += text;
            if (!out_file->empty()) out.file(*out_file, text);
            if (!dot->empty()) out.file(*dot, emit_dot(t));
        });
    }
    {
        auto* cmd = coding->add_subcommand("check", "Audit the construction invariants");
        auto coding_nodes = std::make_shared<std::size_t>(0);
        cmd->add_option("--coding-nodes", *coding_nodes, "Number of coding nodes (even)")
            ->required();
        cmd->callback([&out, coding_nodes] {
            if (*coding_nodes == 0 || *coding_nodes % 2 != 0)
                throw input_error("--coding-nodes must be a positive even number");
            const std::size_t rounds = *coding_nodes / 2;
            const FinTree t = build_coding_tree(rounds);
            out.line(std::string("branching-audit ") +
                     (audit_maximal_branching(t) ? "pass" : "fail"));
            out.line(std::string("triangle-free ") +
                     (triangle_witness(t.coding_nodes()) ? "false" : "true"));
            const DemandReport report =
                check_demand_schedule(t, DemandSchedule::standard(rounds), rounds);
            for (std::size_t i = 0; i < report.statuses.size(); ++i) {
                const char* text = report.statuses[i] == DemandStatus::satisfied ? "satisfied"
                                   : report.statuses[i] == DemandStatus::pending ? "pending"
                                                                                 : "exempt";
                out.line("demand " + std::to_string(i) + " " + text);
            }
            out.line(std::string("complete ") + (report.complete() ? "true" : "false"));
        });
    }

    // hl solve
    auto* hl = app.add_subcommand("hl", "Monochromatic level-product search");
    hl->require_subcommand(1);
    {
        auto* cmd = hl->add_subcommand("solve", "Search tuples of strong subtrees");
        auto depth = std::make_shared<std::size_t>(0);
        auto count = std::make_shared<std::size_t>(1);
        auto target = std::make_shared<std::size_t>(1);
        auto coloring = std::make_shared<std::string>();
        auto colors = std::make_shared<std::size_t>(2);
        cmd->add_option("--depth", *depth, "Depth of each full input tree")->required();
        cmd->add_option("--trees", *count, "Number of input trees");
        cmd->add_option("--target-levels", *target, "Levels each witness subtree must have");
        cmd->add_option("--coloring", *coloring, "Coloring file or seed:N")->required();
        cmd->add_option("--colors", *colors, "Palette size for seed literals");
        cmd->callback([&out, depth, count, target, coloring, colors] {
            const std::vector<FinTree> inputs(*count, FinTree::full(*depth));
            const Coloring c = coloring_from_flag(*coloring, *colors);
            const auto witness = hl_solve(inputs, c, *target);
            if (!witness) {
                out.line("absence verified");
                return;
            }
            std::string levels;
            for (const std::size_t j : witness->level_indices) {
                if (!levels.empty()) levels += ',';
                levels += std::to_string(j);
            }
            out.line("witness");
            out.line("levels " + levels);
            out.line("color " + std::to_string(witness->color));
            for (const FinTree& s : witness->subtrees) out.line("subtree " + tree_key(s));
        });
    }

    // arrow
    {
        auto* cmd = app.add_subcommand("arrow", "Exhaustive finite partition arrow");
        auto n = std::make_shared<std::size_t>(0);
        auto k = std::make_shared<std::size_t>(0);
        auto d = std::make_shared<std::size_t>(0);
        auto colors = std::make_shared<std::size_t>(0);
        auto budget = std::make_shared<std::uint64_t>(default_arrow_budget);
        cmd->add_option("--n", *n, "Ground-set size")->required();
        cmd->add_option("--k", *k, "Homogeneous-set size")->required();
        cmd->add_option("--d", *d, "Subset size being colored")->required();
        cmd->add_option("--colors", *colors, "Palette size")->required();
        cmd->add_option("--budget", *budget, "Largest allowed number of colorings");
        cmd->callback([&out, n, k, d, colors, budget] {
            out.line(arrow_check(*n, *k, *d, *colors, *budget) ? "true" : "false");
        });
    }

    // persist-check
    {
        auto* cmd = app.add_subcommand("persist-check",
                                       "Does a passing-sensitive type persist in 2^{<=depth}?");
        auto type_text = std::make_shared<std::string>();
        auto depth = std::make_shared<std::size_t>(0);
        cmd->add_option("--type", *type_text, "Serialized similarity type")->required();
        cmd->add_option("--depth", *depth, "Host full-tree depth")->required();
        cmd->callback([&out, type_text, depth] {
            const SimilarityType ty =
                SimilarityType::parse(*type_text, SimilarityMode::with_passing);
            out.line(persistence_check(ty, FinTree::full(*depth)) ? "true" : "false");
        });
    }

    // extend-check
    {
        auto* cmd = app.add_subcommand(
            "extend-check", "One-vertex extension realizability over coding nodes");
        auto depth = std::make_shared<std::size_t>(0);
        auto range = std::make_shared<std::size_t>(0);
        auto coding_nodes = std::make_shared<std::size_t>(0);
        cmd->add_option("--depth", *depth, "Witness search depth")->required();
        cmd->add_option("--range", *range, "Number of earlier vertices demands may mention")
            ->required();
        auto* amb = cmd->add_option("--coding-nodes", *coding_nodes,
                                    "Check inside the built coding tree instead (even)");
        cmd->callback([&out, depth, range, coding_nodes, amb] {
            if (amb->count()) {
                if (*coding_nodes == 0 || *coding_nodes % 2 != 0)
                    throw input_error("--coding-nodes must be a positive even number");
                const FinTree t = build_coding_tree(*coding_nodes / 2);
                out.line(extension_property_check(*depth, *range, &t) ? "true" : "false");
            } else {
                out.line(extension_property_check(*depth, *range) ? "true" : "false");
            }
        });
    }

    // milliken reduce
    auto* milliken = app.add_subcommand("milliken", "Extension-to-product reductions");
    milliken->require_subcommand(1);
    {
        auto* cmd = milliken->add_subcommand(
            "reduce", "Induced coloring of cones above the first k levels of 2^{<=depth}");
        auto depth = std::make_shared<std::size_t>(0);
        auto levels = std::make_shared<std::size_t>(0);
        auto coloring = std::make_shared<std::string>();
        auto colors = std::make_shared<std::size_t>(2);
        cmd->add_option("--depth", *depth, "Ambient full-tree depth")->required();
        cmd->add_option("--levels", *levels, "Levels of the restriction (0 for empty)")
            ->required();
        cmd->add_option("--coloring", *coloring, "Coloring file or seed:N")->required();
        cmd->add_option("--colors", *colors, "Palette size for seed literals");
        cmd->callback([&out, depth, levels, coloring, colors] {
            const FinTree host = FinTree::full(*depth);
            const FinTree u = *levels == 0 ? FinTree{} : restrict_levels(host, *levels);
            const Coloring c = coloring_from_flag(*coloring, *colors);
            out.report += serialize_coloring(milliken_reduce(u, host, c));
        });
    }

    try {
        app.parse(argc, argv);
        std::fputs(out.report.c_str(), stdout);
        for (const auto& [path, content] : out.files) {
            std::ofstream file(path, std::ios::binary);
            if (!file) throw input_error("cannot write \"" + path + "\"");
            file << content;
        }
        return 0;
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return treelab::input_error::exit_code;
    } catch (const treelab::budget_refusal& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return treelab::budget_refusal::exit_code;
    } catch (const treelab::input_error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return treelab::input_error::exit_code;
    } catch (const treelab::contract_violation& e) {
        std::fprintf(stderr, "contract violation: %s\n", e.what());
        return treelab::contract_violation::exit_code;
    }
}
