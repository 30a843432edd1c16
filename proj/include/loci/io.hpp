#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "loci/ci_set.hpp"
#include "loci/graph.hpp"

namespace loci {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Whitespace tokens of one line, with everything from '#' on dropped.
inline std::vector<std::string> tokenize(const std::string& line) {
    const std::size_t hash = line.find('#');
    std::istringstream is(hash == std::string::npos ? line : line.substr(0, hash));
    std::vector<std::string> tokens;
    std::string t;
    while (is >> t) tokens.push_back(t);
    return tokens;
}

[[noreturn]] inline void parse_fail(int line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

inline int parse_int(const std::string& tok, int line_no, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_fail(line_no, std::string("expected an integer ") + what + ", got '" + tok + "'");
    return value;
}

struct NameTable {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
};

inline NameTable parse_vars(const std::vector<std::string>& tokens, int line_no) {
    NameTable t;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!t.index.emplace(tokens[i], static_cast<int>(i) - 1).second)
            parse_fail(line_no, "duplicate vertex name '" + tokens[i] + "'");
        t.names.push_back(tokens[i]);
    }
    return t;
}

inline int lookup(const NameTable& t, const std::string& name, int line_no) {
    const auto it = t.index.find(name);
    if (it == t.index.end()) parse_fail(line_no, "unknown vertex name '" + name + "'");
    return it->second;
}

inline std::vector<std::string> effective_names(const Graph& g) {
    if (static_cast<int>(g.names.size()) == g.num_vertices()) return g.names;
    std::vector<std::string> out;
    for (int v = 0; v < g.num_vertices(); ++v) out.push_back("v" + std::to_string(v));
    return out;
}

}  // namespace detail

/// Graph text format: a `vars <name>...` line, then one edge per line,
/// `<a> -> <b>` directed or `<a> -- <b>` undirected. '#' starts a comment.
/// Unknown names, self-loops, and a second edge on a pair are errors.
inline Graph read_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    detail::NameTable table;
    bool have_vars = false;
    Graph g;
    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<std::string> tokens = detail::tokenize(line);
        if (tokens.empty()) continue;
        if (!have_vars) {
            if (tokens[0] != "vars") detail::parse_fail(line_no, "expected a 'vars' line first");
            table = detail::parse_vars(tokens, line_no);
            g = Graph(static_cast<int>(table.names.size()));
            g.names = table.names;
            have_vars = true;
            continue;
        }
        if (tokens.size() != 3 || (tokens[1] != "->" && tokens[1] != "--"))
            detail::parse_fail(line_no, "expected '<a> -> <b>' or '<a> -- <b>'");
        const int a = detail::lookup(table, tokens[0], line_no);
        const int b = detail::lookup(table, tokens[2], line_no);
        if (a == b) detail::parse_fail(line_no, "self-loop on '" + tokens[0] + "'");
        if (g.adjacent(a, b)) detail::parse_fail(line_no, "duplicate edge on pair '" + tokens[0] + "', '" + tokens[2] + "'");
        if (tokens[1] == "->") g.add_directed(a, b);
        else g.add_undirected(a, b);
    }
    if (!have_vars) throw ParseError("missing 'vars' line");
    return g;
}

/// Directed edges first, then undirected, pairs in ascending index order.
inline void write_graph(std::ostream& os, const Graph& g) {
    const std::vector<std::string> names = detail::effective_names(g);
    os << "vars";
    for (const std::string& name : names) os << ' ' << name;
    os << '\n';
    const int n = g.num_vertices();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const EdgeKind kind = g.edge_kind(a, b);
            if (kind == EdgeKind::DirectedAB) os << names[a] << " -> " << names[b] << '\n';
            else if (kind == EdgeKind::DirectedBA) os << names[b] << " -> " << names[a] << '\n';
        }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (g.edge_kind(a, b) == EdgeKind::Undirected) os << names[a] << " -- " << names[b] << '\n';
}

/// CI text format: `vars <name>...`, then `k <int>`, then one statement per
/// line, `ci <a> <b>` marginal or `ci <a> <b> | <z>...` conditional.
/// Duplicates are idempotent; an endpoint inside the conditioning set or a
/// conditioning set larger than k is an error.
inline CISet read_ci_set(std::istream& in) {
    std::string line;
    int line_no = 0;
    detail::NameTable table;
    int stage = 0;  // 0: want vars, 1: want k, 2: statements
    CISet s(0, 0);
    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<std::string> tokens = detail::tokenize(line);
        if (tokens.empty()) continue;
        if (stage == 0) {
            if (tokens[0] != "vars") detail::parse_fail(line_no, "expected a 'vars' line first");
            table = detail::parse_vars(tokens, line_no);
            stage = 1;
            continue;
        }
        if (stage == 1) {
            if (tokens.size() != 2 || tokens[0] != "k") detail::parse_fail(line_no, "expected 'k <integer>'");
            const int k = detail::parse_int(tokens[1], line_no, "order bound");
            if (k < 0) detail::parse_fail(line_no, "order bound must be nonnegative");
            s = CISet(static_cast<int>(table.names.size()), k);
            s.names = table.names;
            stage = 2;
            continue;
        }
        if (tokens[0] != "ci" || tokens.size() < 3) detail::parse_fail(line_no, "expected 'ci <a> <b> [| <z>...]'");
        const int a = detail::lookup(table, tokens[1], line_no);
        const int b = detail::lookup(table, tokens[2], line_no);
        std::vector<int> z;
        if (tokens.size() > 3) {
            if (tokens[3] != "|" || tokens.size() == 4)
                detail::parse_fail(line_no, "conditioning set must follow a '|'");
            for (std::size_t i = 4; i < tokens.size(); ++i) z.push_back(detail::lookup(table, tokens[i], line_no));
        }
        try {
            s.insert(a, b, z);
        } catch (const std::invalid_argument& e) {
            detail::parse_fail(line_no, e.what());
        }
    }
    if (stage == 0) throw ParseError("missing 'vars' line");
    if (stage == 1) throw ParseError("missing 'k' line");
    return s;
}

/// Statements in canonical order, one per line.
inline void write_ci_set(std::ostream& os, const CISet& s) {
    std::vector<std::string> names = s.names;
    if (static_cast<int>(names.size()) != s.num_vertices()) {
        names.clear();
        for (int v = 0; v < s.num_vertices(); ++v) names.push_back("v" + std::to_string(v));
    }
    os << "vars";
    for (const std::string& name : names) os << ' ' << name;
    os << '\n';
    os << "k " << s.order_bound() << '\n';
    for (const CIStatement& st : s.statements()) {
        os << "ci " << names[st.a] << ' ' << names[st.b];
        if (!st.z.empty()) {
            os << " |";
            for (int v : st.z) os << ' ' << names[v];
        }
        os << '\n';
    }
}

}  // namespace loci
