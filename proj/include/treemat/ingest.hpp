#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treemat/errors.hpp"
#include "treemat/rng.hpp"
#include "treemat/tree.hpp"

namespace treemat {

/*
 * Graph input and output formats, plus the deterministic tree generator
 * used by the property and fuzz suites.
 *
 * Edge-list format: one "u v" pair per line, '#' starts a comment, an
 * optional "datum k" line names the datum label (default 0).
 *
 * DOT subset: "graph { ... }" with undirected "u -- v;" statements and an
 * optional "datum = k;" statement. Anything else in the DOT grammar is
 * rejected, naming the offending token.
 *
 * JSON: {"datum": 0, "edges": [[u, v], ...]}.
 *
 * Parsers check only form; structural rules (self-loops, duplicates,
 * connectivity, numbering) are enforced when a tree is built.
 */

inline RawGraph parse_edge_list(const std::string& text) {
    RawGraph g;
    bool datum_seen = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? eol : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::vector<std::string> tokens;
        std::size_t t = 0;
        while (t < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[t]))) {
                ++t;
                continue;
            }
            std::size_t end = t;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) {
                ++end;
            }
            tokens.push_back(line.substr(t, end - t));
            t = end;
        }
        if (tokens.empty()) {
            continue;
        }

        const auto as_label = [&](const std::string& tok) {
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError(line_no, "expected a non-negative integer, got '" + tok + "'");
            }
            if (tok.size() > 9) {
                throw ParseError(line_no, "node label too large: '" + tok + "'");
            }
            return std::stoi(tok);
        };

        if (tokens[0] == "datum") {
            if (tokens.size() != 2) {
                throw ParseError(line_no, "malformed datum declaration");
            }
            if (datum_seen) {
                throw ParseError(line_no, "duplicate datum declaration");
            }
            g.datum = as_label(tokens[1]);
            datum_seen = true;
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError(line_no, "expected two integers");
        }
        g.edges.emplace_back(as_label(tokens[0]), as_label(tokens[1]));
    }
    return g;
}

inline std::string render_edge_list(const RawGraph& g) {
    std::string out = "datum " + std::to_string(g.datum) + "\n";
    for (const auto& [u, v] : g.edges) {
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    }
    return out;
}

namespace detail {

struct DotToken {
    std::string text;
    int line = 0;
};

inline std::vector<DotToken> dot_tokens(const std::string& text) {
    std::vector<DotToken> out;
    int line = 1;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '\n') {
            ++line;
            ++pos;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        if (c == '{' || c == '}' || c == ';' || c == '=') {
            out.push_back({std::string(1, c), line});
            ++pos;
            continue;
        }
        if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '-') {
            out.push_back({"--", line});
            pos += 2;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos;
            while (end < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) {
                ++end;
            }
            out.push_back({text.substr(pos, end - pos), line});
            pos = end;
            continue;
        }
        throw ParseError(line, std::string("unexpected character '") + c + "'");
    }
    return out;
}

}  // namespace detail

inline RawGraph parse_dot_subset(const std::string& text) {
    const auto tokens = detail::dot_tokens(text);
    std::size_t pos = 0;
    const auto peek_line = [&]() { return pos < tokens.size() ? tokens[pos].line : 1; };
    const auto need = [&](const char* what) -> const detail::DotToken& {
        if (pos >= tokens.size()) {
            throw ParseError(peek_line(), std::string("unexpected end of input, expected ") + what);
        }
        return tokens[pos++];
    };
    const auto expect = [&](const std::string& tok) {
        const auto& t = need(("'" + tok + "'").c_str());
        if (t.text != tok) {
            throw ParseError(t.line, "expected '" + tok + "', got '" + t.text + "'");
        }
    };
    const auto is_int = [](const std::string& s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    };
    const auto as_label = [&](const detail::DotToken& t) {
        if (!is_int(t.text) || t.text.size() > 9) {
            throw ParseError(t.line, "expected a node label, got '" + t.text + "'");
        }
        return std::stoi(t.text);
    };

    const auto& head = need("'graph'");
    if (head.text != "graph") {
        throw ParseError(head.line, "unsupported directive '" + head.text + "'");
    }
    expect("{");

    RawGraph g;
    bool datum_seen = false;
    while (true) {
        const auto& t = need("a statement or '}'");
        if (t.text == "}") {
            break;
        }
        if (t.text == "datum") {
            if (datum_seen) {
                throw ParseError(t.line, "duplicate datum declaration");
            }
            expect("=");
            g.datum = as_label(need("a node label"));
            expect(";");
            datum_seen = true;
            continue;
        }
        if (is_int(t.text)) {
            const int u = as_label(t);
            expect("--");
            const int v = as_label(need("a node label"));
            expect(";");
            g.edges.emplace_back(u, v);
            continue;
        }
        throw ParseError(t.line, "unsupported directive '" + t.text + "'");
    }
    if (pos != tokens.size()) {
        throw ParseError(tokens[pos].line, "unexpected token '" + tokens[pos].text + "' after '}'");
    }
    return g;
}

inline std::string render_dot(const RawGraph& g) {
    std::string out = "graph {\n";
    out += "  datum = " + std::to_string(g.datum) + ";\n";
    for (const auto& [u, v] : g.edges) {
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    }
    out += "}\n";
    return out;
}

inline RawGraph parse_json_graph(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(1, "expected a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "datum" && key != "edges") {
            throw ParseError(1, "unexpected key '" + key + "'");
        }
    }
    if (!doc.contains("edges") || !doc["edges"].is_array()) {
        throw ParseError(1, "missing 'edges' array");
    }
    RawGraph g;
    if (doc.contains("datum")) {
        if (!doc["datum"].is_number_integer() || doc["datum"].get<long long>() < 0) {
            throw ParseError(1, "'datum' must be a non-negative integer");
        }
        g.datum = doc["datum"].get<int>();
    }
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer() || e[0].get<long long>() < 0 || e[1].get<long long>() < 0) {
            throw ParseError(1, "each edge must be a pair of non-negative integers");
        }
        g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return g;
}

inline std::string render_json_graph(const RawGraph& g) {
    nlohmann::json doc;
    doc["datum"] = g.datum;
    doc["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : g.edges) {
        doc["edges"].push_back({u, v});
    }
    return doc.dump() + "\n";
}

// Format detection for the command line: JSON starts with '{', the DOT
// subset with the word "graph", anything else is an edge list.
inline RawGraph parse_graph_auto(const std::string& text) {
    std::size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
    if (pos < text.size() && text[pos] == '{') {
        return parse_json_graph(text);
    }
    if (text.compare(pos, 5, "graph") == 0) {
        return parse_dot_subset(text);
    }
    return parse_edge_list(text);
}

enum class Shape { uniform_random, path, star, caterpillar };
enum class Numbering { valid, scrambled };

struct GeneratorConfig {
    int n = 1;
    std::uint64_t seed = 0;
    Shape shape = Shape::uniform_random;
    Numbering numbering = Numbering::valid;
};

// Deterministic tree generator: equal configs give byte-identical graphs.
// Every shape assigns each node k a parent below k, so the valid numbering
// is monotone by construction; the scrambled variant then applies a random
// relabeling (for exercising renumbering) and declares the datum's new
// label.
inline RawGraph generate(const GeneratorConfig& config) {
    if (config.n < 1) {
        throw PreconditionViolated("generator needs n >= 1");
    }
    const int n = config.n;
    SplitMix64 rng(config.seed);
    std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
    switch (config.shape) {
        case Shape::path:
            for (int k = 1; k <= n; ++k) {
                parent[static_cast<std::size_t>(k)] = k - 1;
            }
            break;
        case Shape::star:
            break;
        case Shape::caterpillar: {
            const int spine = std::max(1, n / 2);
            for (int k = 1; k <= spine; ++k) {
                parent[static_cast<std::size_t>(k)] = k - 1;
            }
            for (int k = spine + 1; k <= n; ++k) {
                parent[static_cast<std::size_t>(k)] =
                    1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spine)));
            }
            break;
        }
        case Shape::uniform_random:
            for (int k = 1; k <= n; ++k) {
                parent[static_cast<std::size_t>(k)] =
                    static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
            }
            break;
    }

    RawGraph g;
    for (int k = 1; k <= n; ++k) {
        g.edges.emplace_back(parent[static_cast<std::size_t>(k)], k);
    }
    g.datum = 0;

    if (config.numbering == Numbering::scrambled) {
        std::vector<int> relabel(static_cast<std::size_t>(n) + 1);
        std::iota(relabel.begin(), relabel.end(), 0);
        for (int k = n; k >= 1; --k) {
            const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(k) + 1));
            std::swap(relabel[static_cast<std::size_t>(k)], relabel[static_cast<std::size_t>(r)]);
        }
        for (auto& [u, v] : g.edges) {
            u = relabel[static_cast<std::size_t>(u)];
            v = relabel[static_cast<std::size_t>(v)];
        }
        g.datum = relabel[0];
    }
    return g;
}

}  // namespace treemat
