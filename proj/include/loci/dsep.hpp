#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "loci/graph.hpp"

namespace loci {

namespace detail {

/// Mask of z together with every ancestor of a member of z. A collider v is
/// open given z exactly when v lies in this set.
inline std::vector<char> collider_open_set(const Graph& d, const std::vector<char>& in_z) {
    const int n = d.num_vertices();
    std::vector<char> open(n, 0);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (in_z[v]) {
            open[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : d.parents(v))
            if (!open[u]) {
                open[u] = 1;
                stack.push_back(u);
            }
    }
    return open;
}

/// Marks every vertex reachable from a along a trail that is active given z.
/// States are (vertex, arrival direction); constraints apply on departure,
/// so the endpoints themselves are unconstrained.
inline void active_reach(const Graph& d, int a, const std::vector<char>& in_z,
                         const std::vector<char>& collider_open, std::vector<char>& reached) {
    const int n = d.num_vertices();
    reached.assign(n, 0);
    // seen[v] bit 0: arrived via an edge into v; bit 1: via an edge out of v.
    std::vector<char> seen(n, 0);
    std::vector<int> stack;  // encoded v * 2 + mode, mode 0 = in, 1 = out
    const auto push = [&](int v, int mode) {
        const char bit = static_cast<char>(1 << mode);
        if (!(seen[v] & bit)) {
            seen[v] = static_cast<char>(seen[v] | bit);
            reached[v] = 1;
            stack.push_back(v * 2 + mode);
        }
    };
    for (int y : d.children(a)) push(y, 0);
    for (int y : d.parents(a)) push(y, 1);
    reached[a] = 1;
    while (!stack.empty()) {
        const int code = stack.back();
        stack.pop_back();
        const int v = code / 2;
        const int mode = code % 2;
        // Departing through a child keeps v a chain or fork vertex.
        if (!in_z[v])
            for (int y : d.children(v)) push(y, 0);
        if (mode == 0) {
            // in -> out turns v into a collider.
            if (collider_open[v])
                for (int y : d.parents(v)) push(y, 1);
        } else {
            // out -> out is a chain traversed against the arrows.
            if (!in_z[v])
                for (int y : d.parents(v)) push(y, 1);
        }
    }
}

inline std::vector<char> member_mask(int n, std::span<const int> z, const char* what) {
    std::vector<char> in_z(n, 0);
    for (int v : z) {
        if (v < 0 || v >= n) throw std::invalid_argument(std::string(what) + ": conditioning vertex out of range");
        in_z[v] = 1;
    }
    return in_z;
}

inline void check_query(int n, int a, int b, const std::vector<char>& in_z, const char* what) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument(std::string(what) + ": vertex out of range");
    if (a == b) throw std::invalid_argument(std::string(what) + ": query endpoints coincide");
    if (in_z[a] || in_z[b]) throw std::invalid_argument(std::string(what) + ": endpoint inside conditioning set");
}

}  // namespace detail

/// A d-separation query (a ⊥ b | z): a ≠ b and neither endpoint is in z.
struct SeparationQuery {
    int a = 0, b = 0;
    std::vector<int> z;
};

/// Whether a and b are d-separated by z in the DAG d: no path between them
/// is active given z. Runs one reachability sweep, O(n + m) after the
/// ancestor closure of z.
inline bool d_separated(const Graph& d, int a, int b, std::span<const int> z) {
    if (!is_dag(d)) throw std::invalid_argument("d_separated: graph is not a DAG");
    const int n = d.num_vertices();
    const std::vector<char> in_z = detail::member_mask(n, z, "d_separated");
    detail::check_query(n, a, b, in_z, "d_separated");
    const std::vector<char> open = detail::collider_open_set(d, in_z);
    std::vector<char> reached;
    detail::active_reach(d, a, in_z, open, reached);
    return !reached[b];
}

/// Reference implementation: enumerate every simple path between a and b and
/// apply the blocking clauses literally. Exponential; only for small graphs.
inline bool d_separated_bruteforce(const Graph& d, int a, int b, std::span<const int> z) {
    if (!is_dag(d)) throw std::invalid_argument("d_separated_bruteforce: graph is not a DAG");
    const int n = d.num_vertices();
    const std::vector<char> in_z = detail::member_mask(n, z, "d_separated_bruteforce");
    detail::check_query(n, a, b, in_z, "d_separated_bruteforce");

    // desc_in_z[v]: some descendant of v (v included) lies in z.
    std::vector<char> desc_in_z(n, 0);
    for (int v = 0; v < n; ++v) {
        if (in_z[v]) {
            desc_in_z[v] = 1;
            continue;
        }
        for (int u : descendants(d, v))
            if (in_z[u]) {
                desc_in_z[v] = 1;
                break;
            }
    }

    std::vector<int> path{a};
    std::vector<char> on_path(n, 0);
    on_path[a] = 1;
    bool active_found = false;

    const auto path_is_active = [&]() {
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            const int prev = path[i - 1], v = path[i], next = path[i + 1];
            const bool collider = d.has_directed(prev, v) && d.has_directed(next, v);
            if (collider) {
                if (!desc_in_z[v]) return false;
            } else {
                if (in_z[v]) return false;
            }
        }
        return true;
    };

    const auto dfs = [&](auto&& self, int v) -> void {
        if (active_found) return;
        if (v == b) {
            if (path_is_active()) active_found = true;
            return;
        }
        for (int u : d.neighbors(v)) {
            if (on_path[u]) continue;
            on_path[u] = 1;
            path.push_back(u);
            self(self, u);
            path.pop_back();
            on_path[u] = 0;
        }
    };
    dfs(dfs, a);
    return !active_found;
}

inline bool d_separated(const Graph& d, const SeparationQuery& q) {
    return d_separated(d, q.a, q.b, std::span<const int>(q.z));
}

inline bool d_separated_bruteforce(const Graph& d, const SeparationQuery& q) {
    return d_separated_bruteforce(d, q.a, q.b, std::span<const int>(q.z));
}

}  // namespace loci
