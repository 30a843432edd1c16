#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "loci/algorithm.hpp"
#include "loci/ci_set.hpp"
#include "loci/dsep.hpp"
#include "loci/graph.hpp"
#include "loci/meek.hpp"

namespace loci {

/// All DAGs on a fixed vertex count that agree with one CI set.
struct FaithfulFamily {
    std::vector<Graph> members;
    int k = 0;
    int n = 0;
};

/// Whether the order-bounded separation statements of d coincide exactly
/// with s: for every pair and every conditioning set of size at most k,
/// membership in s equals d-separation in d. Conditioning sets are scanned
/// smallest first and the scan stops at the first mismatch, so marginal
/// disagreements are cheap to detect.
inline bool is_k_faithful(const Graph& d, const CISet& s) {
    if (!is_dag(d)) throw std::invalid_argument("is_k_faithful: graph is not a DAG");
    const int n = d.num_vertices();
    if (n != s.num_vertices()) throw std::invalid_argument("is_k_faithful: vertex count mismatch");
    bool ok = true;
    std::vector<char> in_z(n, 0);
    std::vector<char> reached;
    detail::for_each_subset_upto(n, s.order_bound(), [&](std::span<const int> z) {
        if (!ok) return;
        std::fill(in_z.begin(), in_z.end(), 0);
        for (int v : z) in_z[v] = 1;
        const std::vector<char> open = detail::collider_open_set(d, in_z);
        for (int a = 0; a < n && ok; ++a) {
            if (in_z[a]) continue;
            detail::active_reach(d, a, in_z, open, reached);
            for (int b = a + 1; b < n; ++b) {
                if (in_z[b]) continue;
                if ((reached[b] == 0) != s.contains(a, b, z)) {
                    ok = false;
                    break;
                }
            }
        }
    });
    return ok;
}

namespace detail {

/// All DAGs on n labeled vertices, in ascending order of the adjacency
/// bitmask over ordered pairs (row-major, diagonal skipped). Built once per
/// n and cached; n = 4 yields 543 DAGs, n = 5 yields 29281.
inline const std::vector<Graph>& all_dags(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Graph>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const int bits = n * (n - 1);
    std::vector<std::pair<int, int>> pair_of(bits);
    std::vector<int> bit_of(static_cast<std::size_t>(n) * n, -1);
    int p = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            pair_of[p] = {a, b};
            bit_of[static_cast<std::size_t>(a) * n + b] = p;
            ++p;
        }

    std::vector<Graph> dags;
    std::vector<int> indeg(n), stack;
    for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
        bool both = false;
        for (int a = 0; a < n && !both; ++a)
            for (int b = a + 1; b < n; ++b) {
                const int ab = bit_of[static_cast<std::size_t>(a) * n + b];
                const int ba = bit_of[static_cast<std::size_t>(b) * n + a];
                if ((mask >> ab & 1) && (mask >> ba & 1)) {
                    both = true;
                    break;
                }
            }
        if (both) continue;
        std::fill(indeg.begin(), indeg.end(), 0);
        for (int q = 0; q < bits; ++q)
            if (mask >> q & 1) ++indeg[pair_of[q].second];
        stack.clear();
        for (int v = 0; v < n; ++v)
            if (indeg[v] == 0) stack.push_back(v);
        int removed = 0;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++removed;
            for (int u = 0; u < n; ++u) {
                if (u == v) continue;
                const int q = bit_of[static_cast<std::size_t>(v) * n + u];
                if ((mask >> q & 1) && --indeg[u] == 0) stack.push_back(u);
            }
        }
        if (removed != n) continue;
        Graph d(n);
        for (int q = 0; q < bits; ++q)
            if (mask >> q & 1) d.add_directed(pair_of[q].first, pair_of[q].second);
        dags.push_back(std::move(d));
    }
    return cache.emplace(n, std::move(dags)).first->second;
}

}  // namespace detail

/// Exhaustively collects every DAG agreeing with s. Exponential in n; the
/// guard keeps accidental large calls out (pass a larger limit to override).
inline FaithfulFamily enumerate_faithful(const CISet& s, int n_limit = 5) {
    const int n = s.num_vertices();
    if (n > n_limit) throw std::invalid_argument("enumerate_faithful: vertex count over limit");
    FaithfulFamily fam;
    fam.k = s.order_bound();
    fam.n = n;
    for (const Graph& d : detail::all_dags(n)) {
        if (is_k_faithful(d, s)) {
            fam.members.push_back(d);
            fam.members.back().names = s.names;
        }
    }
    return fam;
}

/// The minimal graph containing every DAG agreeing with s, built from its
/// definition: a - b if both orientations occur across the family, a -> b
/// if only that one occurs, no edge if the pair is nowhere adjacent. Empty
/// family yields no graph.
inline std::optional<Graph> brute_force_representation(const CISet& s, int n_limit = 5) {
    const FaithfulFamily fam = enumerate_faithful(s, n_limit);
    if (fam.members.empty()) return std::nullopt;
    const int n = fam.n;
    Graph out(n);
    out.names = s.names;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            bool ab = false, ba = false;
            for (const Graph& d : fam.members) {
                if (d.has_directed(a, b)) ab = true;
                else if (d.has_directed(b, a)) ba = true;
                if (ab && ba) break;
            }
            if (ab && ba) out.add_undirected(a, b);
            else if (ab) out.add_directed(a, b);
            else if (ba) out.add_directed(b, a);
        }
    return out;
}

struct DecideResult {
    bool representable = false;
    Representation rep;
};

/// Whether some DAG agrees with s, by the learned graph itself: s admits an
/// agreeing DAG iff the output is a CPDAG with one (hence, by Markov
/// equivalence, every) consistent extension agreeing with s. Polynomial,
/// unlike the enumeration oracle.
inline DecideResult decide_representable(const CISet& s) {
    Representation r = run_loci(s);
    bool ok = false;
    if (is_cpdag(r.graph)) {
        const std::optional<Graph> ext = consistent_extension(r.graph);
        ok = is_k_faithful(*ext, s);
    }
    return DecideResult{ok, std::move(r)};
}

/// Marginal-only learner: build the dependence graph U, then orient each
/// U-edge by comparing closed neighborhoods Bd(v) = N_U(v) ∪ {v}: strict
/// containment directs the edge toward the larger boundary, equality keeps
/// it undirected, incomparable boundaries drop it.
inline Graph boundary_algorithm_k0(const CISet& s) {
    if (s.order_bound() != 0) throw std::invalid_argument("boundary_algorithm_k0: order bound must be 0");
    const int n = s.num_vertices();
    std::vector<std::vector<char>> bd(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v) bd[v][v] = 1;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!s.pair_separated(a, b)) {
                bd[a][b] = 1;
                bd[b][a] = 1;
            }
    const auto subset = [n](const std::vector<char>& x, const std::vector<char>& y) {
        for (int v = 0; v < n; ++v)
            if (x[v] && !y[v]) return false;
        return true;
    };
    Graph h(n);
    h.names = s.names;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!bd[a][b]) continue;
            const bool ab = subset(bd[a], bd[b]);
            const bool ba = subset(bd[b], bd[a]);
            if (ab && ba) h.add_undirected(a, b);
            else if (ab) h.add_directed(a, b);
            else if (ba) h.add_directed(b, a);
        }
    return h;
}

/// Asserts the marginal-order equivalence: the boundary learner and the full
/// pipeline produce the same graph at order 0, and the orientation closure
/// contributes nothing there (stage-2 output is already the fixpoint).
inline bool check_k0_equivalence(const CISet& s) {
    if (s.order_bound() != 0) throw std::invalid_argument("check_k0_equivalence: order bound must be 0");
    const Graph h = boundary_algorithm_k0(s);
    const Graph stage2 = stage2_remove(k_partial_graph(s), s);
    const Representation r = run_loci(s);
    return h == r.graph && stage2 == r.graph;
}

}  // namespace loci
