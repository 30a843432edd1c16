#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "loci/dsep.hpp"
#include "loci/graph.hpp"

namespace loci {

/// One conditional independence statement (a ⊥ b | z), canonicalized so
/// that a < b and z is sorted ascending.
struct CIStatement {
    int a = 0, b = 0;
    std::vector<int> z;

    friend bool operator==(const CIStatement& x, const CIStatement& y) {
        return x.a == y.a && x.b == y.b && x.z == y.z;
    }
    friend bool operator<(const CIStatement& x, const CIStatement& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.z.size() != y.z.size()) return x.z.size() < y.z.size();
        return x.z < y.z;
    }
};

namespace detail {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline std::uint64_t fnv_step(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
    return h;
}

/// Borrowed view of a canonical statement, for allocation-free lookups.
struct CIKey {
    int a, b;
    std::span<const int> z;
};

struct CIHash {
    using is_transparent = void;
    static std::size_t mix(int a, int b, std::span<const int> z) {
        std::uint64_t h = kFnvOffset;
        h = fnv_step(h, static_cast<std::uint64_t>(a));
        h = fnv_step(h, static_cast<std::uint64_t>(b));
        for (int v : z) h = fnv_step(h, static_cast<std::uint64_t>(v));
        return static_cast<std::size_t>(h);
    }
    std::size_t operator()(const CIStatement& s) const { return mix(s.a, s.b, s.z); }
    std::size_t operator()(const CIKey& k) const { return mix(k.a, k.b, k.z); }
};

struct CIEq {
    using is_transparent = void;
    static bool eq(int a1, int b1, std::span<const int> z1, int a2, int b2, std::span<const int> z2) {
        return a1 == a2 && b1 == b2 && std::equal(z1.begin(), z1.end(), z2.begin(), z2.end());
    }
    bool operator()(const CIStatement& x, const CIStatement& y) const { return eq(x.a, x.b, x.z, y.a, y.b, y.z); }
    bool operator()(const CIStatement& x, const CIKey& y) const { return eq(x.a, x.b, x.z, y.a, y.b, y.z); }
    bool operator()(const CIKey& x, const CIStatement& y) const { return eq(x.a, x.b, x.z, y.a, y.b, y.z); }
    bool operator()(const CIKey& x, const CIKey& y) const { return eq(x.a, x.b, x.z, y.a, y.b, y.z); }
};

/// Calls fn(span) for every subset of {0..n-1} of size at most k, smallest
/// sizes first and each size in lexicographic order, so the empty set leads.
template <typename Fn>
void for_each_subset_upto(int n, int k, Fn&& fn) {
    std::vector<int> z;
    fn(std::span<const int>(z));
    for (int size = 1; size <= k; ++size) {
        if (size > n) break;
        z.assign(size, 0);
        for (int i = 0; i < size; ++i) z[i] = i;
        while (true) {
            fn(std::span<const int>(z));
            int i = size - 1;
            while (i >= 0 && z[i] == n - size + i) --i;
            if (i < 0) break;
            ++z[i];
            for (int j = i + 1; j < size; ++j) z[j] = z[j - 1] + 1;
        }
    }
}

}  // namespace detail

/// The set of conditional independence statements over n vertices whose
/// conditioning sets have size at most k. Statements absent from the set
/// are read as dependences, so a store must be complete up to order k.
class CISet {
public:
    CISet(int n, int k) : n_(n), k_(k), sep_(static_cast<std::size_t>(n) * n, 0) {
        if (n < 0) throw std::invalid_argument("CISet: negative vertex count");
        if (k < 0) throw std::invalid_argument("CISet: negative order bound");
    }

    int num_vertices() const { return n_; }
    int order_bound() const { return k_; }
    std::size_t size() const { return set_.size(); }

    /// Inserts (a ⊥ b | z) after canonicalizing; returns false if already
    /// present. Duplicate conditioning entries collapse, set semantics.
    bool insert(int a, int b, std::span<const int> z) {
        CIStatement s = canonical(a, b, z);
        const bool added = set_.insert(std::move(s)).second;
        if (added) {
            sep_[static_cast<std::size_t>(a) * n_ + b] = 1;
            sep_[static_cast<std::size_t>(b) * n_ + a] = 1;
        }
        return added;
    }

    bool contains(int a, int b, std::span<const int> z) const {
        if (a > b) std::swap(a, b);
        validate(a, b, z);
        const bool canonical_z = std::is_sorted(z.begin(), z.end()) &&
                                 std::adjacent_find(z.begin(), z.end()) == z.end();
        if (canonical_z) {
            check_order(z.size());
            return set_.find(detail::CIKey{a, b, z}) != set_.end();
        }
        std::vector<int> zs(z.begin(), z.end());
        std::sort(zs.begin(), zs.end());
        zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
        check_order(zs.size());
        return set_.find(detail::CIKey{a, b, std::span<const int>(zs)}) != set_.end();
    }

    /// Some statement (a ⊥ b | ·) is present, at any order.
    bool pair_separated(int a, int b) const {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw std::invalid_argument("CISet: pair endpoints coincide");
        return sep_[static_cast<std::size_t>(a) * n_ + b] != 0;
    }

    /// All statements in canonical order: by endpoint pair, then by
    /// conditioning set size, then lexicographically.
    std::vector<CIStatement> statements() const {
        std::vector<CIStatement> out(set_.begin(), set_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Order-insensitive content fingerprint over (n, k, statements).
    std::uint64_t digest() const {
        std::uint64_t h = detail::kFnvOffset;
        h = detail::fnv_step(h, static_cast<std::uint64_t>(n_));
        h = detail::fnv_step(h, static_cast<std::uint64_t>(k_));
        for (const CIStatement& s : statements()) {
            h = detail::fnv_step(h, static_cast<std::uint64_t>(s.a));
            h = detail::fnv_step(h, static_cast<std::uint64_t>(s.b));
            h = detail::fnv_step(h, static_cast<std::uint64_t>(s.z.size()));
            for (int v : s.z) h = detail::fnv_step(h, static_cast<std::uint64_t>(v));
        }
        return h;
    }

    /// Presentation-only vertex names; excluded from equality and digest.
    std::vector<std::string> names;

private:
    int n_, k_;
    std::unordered_set<CIStatement, detail::CIHash, detail::CIEq> set_;
    std::vector<std::uint8_t> sep_;

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("CISet: vertex out of range");
    }

    // The order bound applies to the deduplicated conditioning set.
    void check_order(std::size_t size) const {
        if (static_cast<int>(size) > k_)
            throw std::invalid_argument("CISet: conditioning set larger than the order bound");
    }

    void validate(int a, int b, std::span<const int> z) const {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw std::invalid_argument("CISet: statement endpoints coincide");
        for (int v : z) {
            check_vertex(v);
            if (v == a || v == b)
                throw std::invalid_argument("CISet: endpoint inside conditioning set");
        }
    }

    CIStatement canonical(int a, int b, std::span<const int> z) const {
        if (a > b) std::swap(a, b);
        validate(a, b, z);
        CIStatement s;
        s.a = a;
        s.b = b;
        s.z.assign(z.begin(), z.end());
        std::sort(s.z.begin(), s.z.end());
        s.z.erase(std::unique(s.z.begin(), s.z.end()), s.z.end());
        check_order(s.z.size());
        return s;
    }
};

/// Every d-separation statement of d with conditioning sets of size at most
/// k: the order-k oracle model of the DAG. One reachability sweep serves
/// all targets of a source, for each conditioning set.
inline CISet generate_from_dag(const Graph& d, int k) {
    if (!is_dag(d)) throw std::invalid_argument("generate_from_dag: graph is not a DAG");
    const int n = d.num_vertices();
    if (k < 0 || k > n - 2) throw std::invalid_argument("generate_from_dag: order bound out of range");
    CISet out(n, k);
    out.names = d.names;
    std::vector<char> in_z(n, 0);
    std::vector<char> reached;
    detail::for_each_subset_upto(n, k, [&](std::span<const int> z) {
        std::fill(in_z.begin(), in_z.end(), 0);
        for (int v : z) in_z[v] = 1;
        const std::vector<char> open = detail::collider_open_set(d, in_z);
        for (int a = 0; a < n; ++a) {
            if (in_z[a]) continue;
            detail::active_reach(d, a, in_z, open, reached);
            for (int b = a + 1; b < n; ++b)
                if (!in_z[b] && !reached[b]) out.insert(a, b, z);
        }
    });
    return out;
}

}  // namespace loci
