#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace loci {

/// Kind of edge between an ordered vertex pair (a, b).
enum class EdgeKind { None, DirectedAB, DirectedBA, Undirected };

/// Partially directed graph over dense integer vertices 0..n-1.
///
/// An undirected edge a - b is stored as the pair of directed halves
/// a -> b and b -> a; a directed edge a -> b is the single half a -> b.
/// All structural queries derive from the stored halves.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), half_(static_cast<std::size_t>(n) * n, 0) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    }

    static Graph complete_undirected(int n) {
        Graph g(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                g.set_half(a, b);
                g.set_half(b, a);
            }
        return g;
    }

    int num_vertices() const { return n_; }

    /// Stored half a -> b (true for a directed edge a -> b and for an
    /// undirected edge a - b).
    bool has_half(int a, int b) const {
        check_pair(a, b);
        return half_[idx(a, b)] != 0;
    }

    bool adjacent(int a, int b) const {
        check_pair(a, b);
        return half_[idx(a, b)] || half_[idx(b, a)];
    }

    /// Strictly directed edge a -> b (half b -> a absent).
    bool has_directed(int a, int b) const {
        check_pair(a, b);
        return half_[idx(a, b)] && !half_[idx(b, a)];
    }

    bool has_undirected(int a, int b) const {
        check_pair(a, b);
        return half_[idx(a, b)] && half_[idx(b, a)];
    }

    EdgeKind edge_kind(int a, int b) const {
        check_pair(a, b);
        const bool ab = half_[idx(a, b)], ba = half_[idx(b, a)];
        if (ab && ba) return EdgeKind::Undirected;
        if (ab) return EdgeKind::DirectedAB;
        if (ba) return EdgeKind::DirectedBA;
        return EdgeKind::None;
    }

    void add_directed(int a, int b) {
        check_pair(a, b);
        if (adjacent(a, b)) throw std::invalid_argument("Graph: pair already has an edge");
        half_[idx(a, b)] = 1;
    }

    void add_undirected(int a, int b) {
        check_pair(a, b);
        if (adjacent(a, b)) throw std::invalid_argument("Graph: pair already has an edge");
        half_[idx(a, b)] = 1;
        half_[idx(b, a)] = 1;
    }

    /// Delete the stored half a -> b; no-op if absent. Removing one half of
    /// an undirected edge orients it, removing both deletes the edge.
    void remove_half(int a, int b) {
        check_pair(a, b);
        half_[idx(a, b)] = 0;
    }

    void remove_edge(int a, int b) {
        check_pair(a, b);
        half_[idx(a, b)] = 0;
        half_[idx(b, a)] = 0;
    }

    /// u with a strictly directed edge u -> v, ascending.
    std::vector<int> parents(int v) const {
        check_vertex(v);
        std::vector<int> out;
        for (int u = 0; u < n_; ++u)
            if (u != v && half_[idx(u, v)] && !half_[idx(v, u)]) out.push_back(u);
        return out;
    }

    std::vector<int> children(int v) const {
        check_vertex(v);
        std::vector<int> out;
        for (int u = 0; u < n_; ++u)
            if (u != v && half_[idx(v, u)] && !half_[idx(u, v)]) out.push_back(u);
        return out;
    }

    std::vector<int> undirected_neighbors(int v) const {
        check_vertex(v);
        std::vector<int> out;
        for (int u = 0; u < n_; ++u)
            if (u != v && half_[idx(v, u)] && half_[idx(u, v)]) out.push_back(u);
        return out;
    }

    std::vector<int> neighbors(int v) const {
        check_vertex(v);
        std::vector<int> out;
        for (int u = 0; u < n_; ++u)
            if (u != v && (half_[idx(v, u)] || half_[idx(u, v)])) out.push_back(u);
        return out;
    }

    /// Number of adjacent pairs (skeleton edge count).
    int edge_count() const {
        int c = 0;
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (half_[idx(a, b)] || half_[idx(b, a)]) ++c;
        return c;
    }

    int undirected_edge_count() const {
        int c = 0;
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (half_[idx(a, b)] && half_[idx(b, a)]) ++c;
        return c;
    }

    /// Presentation-only vertex names; excluded from equality.
    std::vector<std::string> names;

    friend bool operator==(const Graph& x, const Graph& y) {
        return x.n_ == y.n_ && x.half_ == y.half_;
    }
    friend bool operator!=(const Graph& x, const Graph& y) { return !(x == y); }

private:
    int n_ = 0;
    std::vector<std::uint8_t> half_;

    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Graph: vertex out of range");
    }
    void check_pair(int a, int b) const {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw std::invalid_argument("Graph: self-loop pair");
    }

    void set_half(int a, int b) { half_[idx(a, b)] = 1; }
};

/// Proper descendants of a: vertices reachable from a along strictly
/// directed edges. Undirected edges never lie on a causal path.
inline std::vector<int> descendants(const Graph& g, int a) {
    if (a < 0 || a >= g.num_vertices()) throw std::invalid_argument("descendants: vertex out of range");
    const int n = g.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : g.children(v))
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (seen[v] && v != a) out.push_back(v);
    return out;
}

/// Descendants of a including a itself.
inline std::vector<int> descendants_incl(const Graph& g, int a) {
    std::vector<int> out = descendants(g, a);
    out.insert(std::lower_bound(out.begin(), out.end(), a), a);
    return out;
}

inline std::vector<int> ancestors(const Graph& g, int a) {
    if (a < 0 || a >= g.num_vertices()) throw std::invalid_argument("ancestors: vertex out of range");
    const int n = g.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : g.parents(v))
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (seen[v] && v != a) out.push_back(v);
    return out;
}

/// Cycle among strictly directed edges only. A PDAG must not have one.
inline bool has_directed_cycle(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(g.parents(v).size());
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    int removed = 0;
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        ++removed;
        for (int u : g.children(v))
            if (--indeg[u] == 0) queue.push_back(u);
    }
    return removed != n;
}

inline bool is_pdag(const Graph& g) { return !has_directed_cycle(g); }

/// Fully directed and acyclic.
inline bool is_dag(const Graph& g) {
    return g.undirected_edge_count() == 0 && !has_directed_cycle(g);
}

inline Graph skeleton(const Graph& g) {
    const int n = g.num_vertices();
    Graph out(n);
    out.names = g.names;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (g.adjacent(a, b)) out.add_undirected(a, b);
    return out;
}

/// Collider a -> c <- b whose parents a, b are nonadjacent; a < b.
struct VStructure {
    int a, b, c;
    friend bool operator==(const VStructure& x, const VStructure& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
    friend bool operator<(const VStructure& x, const VStructure& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }
};

/// All v-structures, sorted by (a, b, c).
inline std::vector<VStructure> v_structures(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<VStructure> out;
    for (int c = 0; c < n; ++c) {
        const std::vector<int> ps = g.parents(c);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j)
                if (!g.adjacent(ps[i], ps[j])) out.push_back({ps[i], ps[j], c});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Topological order of a DAG; ties broken by ascending vertex index.
inline std::vector<int> topological_order(const Graph& g) {
    if (!is_dag(g)) throw std::invalid_argument("topological_order: graph is not a DAG");
    const int n = g.num_vertices();
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(g.parents(v).size());
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int u : g.children(v))
            if (--indeg[u] == 0) ready.push(u);
    }
    return order;
}

}  // namespace loci
