#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "loci/ci_set.hpp"
#include "loci/graph.hpp"
#include "loci/meek.hpp"

namespace loci {

/// Output of the learning pipeline: the learned graph plus the order bound
/// and a fingerprint of the input statements it was computed from.
struct Representation {
    Graph graph;
    int k = 0;
    std::uint64_t source_hash = 0;
};

/// Stage 1: undirected graph with an edge a - b exactly when s holds no
/// statement (a ⊥ b | Z). With k = 1 this is the 0-1 graph.
inline Graph k_partial_graph(const CISet& s) {
    const int n = s.num_vertices();
    Graph g(n);
    g.names = s.names;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!s.pair_separated(a, b)) g.add_undirected(a, b);
    return g;
}

/// Stage 2: for every statement (a ⊥ b | z) and every c outside {a, b} and
/// z that s leaves dependent on both a and b given z, delete the halves
/// c -> a and c -> b. Such a c cannot be a non-collider between a and b in
/// any graph agreeing with s, so neither half survives in any of them.
///
/// Every condition reads the immutable s, never the evolving graph, so the
/// result does not depend on iteration order. Statements are still visited
/// in canonical order, c ascending, to keep traces reproducible.
inline Graph stage2_remove(Graph g, const CISet& s) {
    const int n = g.num_vertices();
    std::vector<char> in_z(n, 0);
    for (const CIStatement& st : s.statements()) {
        for (int v : st.z) in_z[v] = 1;
        const std::span<const int> z(st.z);
        for (int c = 0; c < n; ++c) {
            if (c == st.a || c == st.b || in_z[c]) continue;
            if (!s.contains(st.a, c, z) && !s.contains(c, st.b, z)) {
                g.remove_half(c, st.a);
                g.remove_half(c, st.b);
            }
        }
        for (int v : st.z) in_z[v] = 0;
    }
    return g;
}

/// Definition-style incompatibility of a pair: a witness u with
/// (u ⊥ b | S), (u ⊥̸ a | S), (a ⊥̸ b | S), a ∉ S, and symmetrically a
/// witness v, T with the roles of a and b exchanged. An incompatible pair
/// is nonadjacent in every graph agreeing with s.
inline bool incompatible(const CISet& s, int a, int b) {
    if (a == b) throw std::invalid_argument("incompatible: pair endpoints coincide");
    if (a < 0 || a >= s.num_vertices() || b < 0 || b >= s.num_vertices())
        throw std::invalid_argument("incompatible: vertex out of range");
    bool against_a = false, against_b = false;
    for (const CIStatement& st : s.statements()) {
        const std::span<const int> z(st.z);
        // st separates {u, other}; the query endpoint must stay out of z.
        const auto witnesses = [&](int target, int non_target) {
            if (st.a != target && st.b != target) return false;
            const int u = st.a == target ? st.b : st.a;
            if (u == non_target) return false;
            for (int v : st.z)
                if (v == non_target) return false;
            return !s.contains(u, non_target, z) && !s.contains(a, b, z);
        };
        if (!against_b && witnesses(b, a)) against_b = true;
        if (!against_a && witnesses(a, b)) against_a = true;
        if (against_a && against_b) return true;
    }
    return false;
}

/// The LOCI pipeline: k-partial graph, dependence-driven half deletions,
/// then orientation closure. On inputs with no agreeing DAG the stage-2
/// graph can carry a directed cycle; the closure is skipped then, since no
/// guarantee is attached to such output anyway.
inline Representation run_loci(const CISet& s) {
    Graph g = stage2_remove(k_partial_graph(s), s);
    if (!has_directed_cycle(g)) g = meek_closure(g);
    return Representation{std::move(g), s.order_bound(), s.digest()};
}

}  // namespace loci
