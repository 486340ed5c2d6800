/*
 * treemat: forward-numbered rooted trees, their adjacency matrices, and
 * exact inverses, from the command line.
 *
 * Input graphs are read from a file argument ("-" for stdin) in any of the
 * three text formats (edge list, DOT subset, JSON); the format is detected
 * from the content. Matrix output is byte-deterministic: the same input
 * always renders the same bytes. Exit codes: 0 success, 1 domain error
 * (invalid tree, singular matrix, unknown node), 2 usage or parse error.
 */

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treemat/treemat.hpp"

namespace {

using namespace treemat;

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw Error("cannot open " + path);
        }
        buf << in.rdbuf();
    }
    return buf.str();
}

Tree load_tree(const std::string& path) {
    return build_tree(parse_graph_auto(read_input(path)));
}

std::string render_matrix(const DenseMatrix& m, const std::string& format) {
    if (format == "mm") {
        return render_matrix_market(m);
    }
    if (format == "json") {
        nlohmann::json doc;
        doc["rows"] = m.rows();
        doc["cols"] = m.cols();
        doc["entries"] = nlohmann::json::array();
        for (const auto& [r, c, v] : m.nonzero_entries()) {
            doc["entries"].push_back({r, c, v});
        }
        return doc.dump() + "\n";
    }
    return render_dense(m);
}

std::string render_graph(const RawGraph& g, const std::string& format) {
    if (format == "dot") {
        return render_dot(g);
    }
    if (format == "json") {
        return render_json_graph(g);
    }
    return render_edge_list(g);
}

std::string join(const std::vector<int>& nodes) {
    std::string out;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        if (s > 0) {
            out += ' ';
        }
        out += std::to_string(nodes[s]);
    }
    return out;
}

Shape shape_from_name(const std::string& name) {
    if (name == "path") {
        return Shape::path;
    }
    if (name == "star") {
        return Shape::star;
    }
    if (name == "caterpillar") {
        return Shape::caterpillar;
    }
    return Shape::uniform_random;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forward-numbered rooted trees and their adjacency matrix inverses"};
    app.require_subcommand(1);

    const std::vector<std::string> matrix_formats{"dense", "mm", "json"};
    const std::vector<std::string> graph_formats{"edges", "dot", "json"};

    auto* validate_cmd =
        app.add_subcommand("validate", "check that the input is a forward-numbered tree");
    std::string validate_file;
    validate_cmd->add_option("file", validate_file, "input graph, - for stdin")->required();

    auto* renumber_cmd =
        app.add_subcommand("renumber", "relabel an arbitrary tree with a forward numbering");
    std::string renumber_file;
    std::string renumber_strategy = "dfs";
    std::string renumber_format = "edges";
    renumber_cmd->add_option("file", renumber_file, "input graph, - for stdin")->required();
    renumber_cmd->add_option("--strategy", renumber_strategy, "traversal that assigns the labels")
        ->check(CLI::IsMember({"dfs", "bfs"}));
    renumber_cmd->add_option("--format", renumber_format, "output format")
        ->check(CLI::IsMember(graph_formats));

    auto* matrix_cmd = app.add_subcommand("matrix", "print the forward adjacency matrix");
    std::string matrix_file;
    std::string matrix_format = "dense";
    matrix_cmd->add_option("file", matrix_file, "input graph, - for stdin")->required();
    matrix_cmd->add_option("--format", matrix_format, "output format")
        ->check(CLI::IsMember(matrix_formats));

    auto* invert_cmd = app.add_subcommand("invert", "print the inverse of the adjacency matrix");
    std::string invert_file;
    std::string invert_method = "fast";
    std::string invert_format = "dense";
    invert_cmd->add_option("file", invert_file, "input graph, - for stdin")->required();
    invert_cmd->add_option("--method", invert_method,
                           "fast, cofactor, oracle, or all for a cross check")
        ->check(CLI::IsMember({"fast", "cofactor", "oracle", "all"}));
    invert_cmd->add_option("--format", invert_format, "output format")
        ->check(CLI::IsMember(matrix_formats));

    auto* minor_cmd =
        app.add_subcommand("minor", "print the minor with row J and column I deleted");
    std::string minor_file;
    int minor_j = 0;
    int minor_i = 0;
    bool minor_trace = false;
    std::string minor_format = "dense";
    minor_cmd->add_option("file", minor_file, "input graph, - for stdin")->required();
    minor_cmd->add_option("J", minor_j, "row to delete")->required();
    minor_cmd->add_option("I", minor_i, "column to delete, I < J")->required();
    minor_cmd->add_flag("--trace", minor_trace, "also print the triangularization steps");
    minor_cmd->add_option("--format", minor_format, "output format")
        ->check(CLI::IsMember(matrix_formats));

    auto* route_cmd = app.add_subcommand("route", "print the forward route from I to J");
    std::string route_file;
    int route_i = 0;
    int route_j = 0;
    route_cmd->add_option("file", route_file, "input graph, - for stdin")->required();
    route_cmd->add_option("I", route_i, "start node")->required();
    route_cmd->add_option("J", route_j, "end node")->required();

    auto* closure_cmd = app.add_subcommand("closure", "print the forward closure of a node");
    std::string closure_file;
    int closure_node = 0;
    closure_cmd->add_option("file", closure_file, "input graph, - for stdin")->required();
    closure_cmd->add_option("K", closure_node, "node whose subtree to list")->required();

    auto* gen_cmd = app.add_subcommand("gen", "generate a tree deterministically from a seed");
    GeneratorConfig gen_config;
    std::string gen_shape = "uniform";
    std::string gen_numbering = "valid";
    std::string gen_format = "edges";
    gen_cmd->add_option("--n", gen_config.n, "node count excluding the datum")->required();
    gen_cmd->add_option("--seed", gen_config.seed, "generator seed");
    gen_cmd->add_option("--shape", gen_shape, "tree shape")
        ->check(CLI::IsMember({"uniform", "path", "star", "caterpillar"}));
    gen_cmd->add_option("--numbering", gen_numbering, "valid or scrambled labels")
        ->check(CLI::IsMember({"valid", "scrambled"}));
    gen_cmd->add_option("--format", gen_format, "output format")
        ->check(CLI::IsMember(graph_formats));

    auto* check_cmd =
        app.add_subcommand("check", "cross-verify the three inversion methods on the input");
    std::string check_file;
    std::string check_format = "text";
    check_cmd->add_option("file", check_file, "input graph, - for stdin")->required();
    check_cmd->add_option("--format", check_format, "report format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* bench_cmd = app.add_subcommand("bench", "time the path inversion on a generated tree");
    GeneratorConfig bench_config;
    std::string bench_shape = "uniform";
    bench_cmd->add_option("--n", bench_config.n, "node count")->required();
    bench_cmd->add_option("--seed", bench_config.seed, "generator seed");
    bench_cmd->add_option("--shape", bench_shape, "tree shape")
        ->check(CLI::IsMember({"uniform", "path", "star", "caterpillar"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate_cmd) {
            load_tree(validate_file);
            std::cout << "valid\n";
        } else if (*renumber_cmd) {
            const RawGraph raw = parse_graph_auto(read_input(renumber_file));
            const auto relabel = assign_forward_indexing(
                raw, renumber_strategy == "bfs" ? IndexingStrategy::bfs_level
                                                : IndexingStrategy::dfs_preorder);
            RawGraph out;
            out.datum = relabel.at(raw.datum);
            for (const auto& [u, v] : raw.edges) {
                out.edges.emplace_back(relabel.at(u), relabel.at(v));
            }
            internal_check(validate_indexing(build_tree(out)).pass,
                           "renumbering produced a non-monotone tree");
            std::cout << render_graph(out, renumber_format);
        } else if (*matrix_cmd) {
            const Tree tree = load_tree(matrix_file);
            std::cout << render_matrix(build_A(tree).dense(), matrix_format);
        } else if (*invert_cmd) {
            const Tree tree = load_tree(invert_file);
            if (invert_method == "all") {
                const VerifyReport report = verify_inverse_triple(tree);
                std::cout << (invert_format == "json" ? report.to_json() + "\n"
                                                      : report.to_text());
                return report.ok ? 0 : 1;
            }
            DenseMatrix inv;
            if (invert_method == "fast") {
                inv = invert_fast(tree).dense();
            } else if (invert_method == "cofactor") {
                inv = invert_cofactor(build_A(tree), tree).dense();
            } else {
                const ExactMatrix exact = invert_oracle(build_A(tree).dense());
                internal_check(exact.is_integral(), "tree inverse must be integral");
                inv = exact.numerators();
            }
            std::cout << render_matrix(inv, invert_format);
        } else if (*minor_cmd) {
            const Tree tree = load_tree(minor_file);
            const FwdAdjMatrix a = build_A(tree);
            const MinorMatrix minor = minor_matrix(a, minor_j, minor_i);
            std::cout << render_matrix(minor.dense(), minor_format);
            if (minor_trace) {
                const TriangularizationTrace trace = upper_triangularize(minor, tree);
                std::cout << "rotated:\n" << render_dense(trace.rotated);
                std::cout << "interchanges: " << trace.interchanges << "\n";
                std::cout << "sign: " << trace.sign << "\n";
                std::cout << "added_columns:";
                for (const int k : trace.added_columns) {
                    std::cout << ' ' << k;
                }
                std::cout << "\n";
                std::cout << "final:\n" << render_dense(trace.final_matrix);
                std::cout << "d: " << trace.d << "\n";
                std::cout << "det: " << det_minor(a, tree, minor_j, minor_i) << "\n";
            }
        } else if (*route_cmd) {
            const Tree tree = load_tree(route_file);
            const auto r = route(tree, route_i, route_j);
            std::cout << (r.has_value() ? join(r->nodes) : "absent") << "\n";
        } else if (*closure_cmd) {
            const Tree tree = load_tree(closure_file);
            std::cout << join(forward_closure(tree, closure_node)) << "\n";
        } else if (*gen_cmd) {
            gen_config.shape = shape_from_name(gen_shape);
            gen_config.numbering =
                gen_numbering == "scrambled" ? Numbering::scrambled : Numbering::valid;
            std::cout << render_graph(generate(gen_config), gen_format);
        } else if (*check_cmd) {
            const Tree tree = load_tree(check_file);
            const VerifyReport report = verify_inverse_triple(tree);
            std::cout << (check_format == "json" ? report.to_json() + "\n" : report.to_text());
            return report.ok ? 0 : 1;
        } else if (*bench_cmd) {
            bench_config.shape = shape_from_name(bench_shape);
            const Tree tree = build_tree(generate(bench_config));
            const auto start = std::chrono::steady_clock::now();
            const PathMatrix inv = invert_fast(tree);
            const auto elapsed = std::chrono::steady_clock::now() - start;
            std::cout << "n: " << tree.node_count() << "\n";
            std::cout << "shape: " << bench_shape << "\n";
            std::cout << "ones: " << inv.ones() << "\n";
            std::cout << "time_ms: "
                      << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
                      << "\n";
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
