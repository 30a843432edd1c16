#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "loci/graph.hpp"

namespace loci {

namespace detail {

/// Rule 1: some c -> a with c and b nonadjacent (else a -> c <- b would
/// have been a collider).
inline bool meek_rule1(const Graph& g, int a, int b) {
    for (int c : g.parents(a))
        if (!g.adjacent(c, b)) return true;
    return false;
}

/// Rule 2: a directed chain a -> c -> b exists, so b -> a would close a cycle.
inline bool meek_rule2(const Graph& g, int a, int b) {
    for (int c : g.children(a))
        if (g.has_directed(c, b)) return true;
    return false;
}

/// Rule 3: two chains a - c -> b and a - d -> b with c, d nonadjacent.
inline bool meek_rule3(const Graph& g, int a, int b) {
    std::vector<int> mid;
    for (int c : g.undirected_neighbors(a))
        if (c != b && g.has_directed(c, b)) mid.push_back(c);
    for (std::size_t i = 0; i < mid.size(); ++i)
        for (std::size_t j = i + 1; j < mid.size(); ++j)
            if (!g.adjacent(mid[i], mid[j])) return true;
    return false;
}

inline bool meek_orients(const Graph& g, int a, int b) {
    return meek_rule1(g, a, b) || meek_rule2(g, a, b) || meek_rule3(g, a, b);
}

}  // namespace detail

/// Applies the three orientation rules to a fixpoint. Each application
/// removes one half of an undirected edge; no edge is ever added, so the
/// loop terminates. The fixpoint is independent of application order.
inline Graph meek_closure(const Graph& g) {
    if (has_directed_cycle(g)) throw std::invalid_argument("meek_closure: directed part has a cycle");
    Graph out = g;
    const int n = out.num_vertices();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (!out.has_undirected(a, b)) continue;
                if (detail::meek_orients(out, a, b)) {
                    out.remove_half(b, a);
                    changed = true;
                } else if (detail::meek_orients(out, b, a)) {
                    out.remove_half(a, b);
                    changed = true;
                }
            }
    }
    return out;
}

/// Orients every undirected edge of a PDAG into a DAG with the same skeleton
/// and the same v-structures, if one exists. Repeatedly eliminates a vertex
/// x that has no outgoing directed edge and whose undirected neighbors are
/// adjacent to all other neighbors of x; undirected edges at x then point
/// into x without creating a new collider. Lowest-index admissible vertex
/// first, so the result is deterministic.
inline std::optional<Graph> consistent_extension(const Graph& g) {
    if (has_directed_cycle(g)) throw std::invalid_argument("consistent_extension: directed part has a cycle");
    const int n = g.num_vertices();
    Graph out = g;
    std::vector<char> active(n, 1);
    for (int round = 0; round < n; ++round) {
        int chosen = -1;
        for (int x = 0; x < n && chosen < 0; ++x) {
            if (!active[x]) continue;
            bool sink = true;
            for (int y : g.children(x))
                if (active[y]) {
                    sink = false;
                    break;
                }
            if (!sink) continue;
            bool admissible = true;
            for (int y : g.undirected_neighbors(x)) {
                if (!active[y]) continue;
                for (int w : g.neighbors(x)) {
                    if (w == y || !active[w]) continue;
                    if (!g.adjacent(y, w)) {
                        admissible = false;
                        break;
                    }
                }
                if (!admissible) break;
            }
            if (admissible) chosen = x;
        }
        if (chosen < 0) return std::nullopt;
        for (int y : g.undirected_neighbors(chosen))
            if (active[y]) out.remove_half(chosen, y);
        active[chosen] = 0;
    }
    return out;
}

/// Skeleton of a DAG with exactly the v-structure arrows kept directed.
inline Graph pattern_of(const Graph& d) {
    if (!is_dag(d)) throw std::invalid_argument("pattern_of: graph is not a DAG");
    Graph out = skeleton(d);
    for (const VStructure& vs : v_structures(d)) {
        out.remove_half(vs.c, vs.a);
        out.remove_half(vs.c, vs.b);
    }
    return out;
}

/// The completed PDAG of the Markov equivalence class of d: its pattern
/// closed under the orientation rules.
inline Graph cpdag_of(const Graph& d) { return meek_closure(pattern_of(d)); }

/// Whether g is the completed PDAG of some DAG's equivalence class: g must
/// extend consistently to a DAG whose completed PDAG is g itself.
inline bool is_cpdag(const Graph& g) {
    if (has_directed_cycle(g)) return false;
    const std::optional<Graph> ext = consistent_extension(g);
    if (!ext) return false;
    return cpdag_of(*ext) == g;
}

}  // namespace loci
