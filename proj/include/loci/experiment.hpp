#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "loci/algorithm.hpp"
#include "loci/ci_set.hpp"
#include "loci/graph.hpp"

namespace loci {

namespace detail {

/// One splitmix64 scramble; used to derive independent per-trial seeds from
/// (master seed, stream index) so trial i's draws never depend on trial j.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// mt19937_64 with hand-rolled draw helpers. The standard distributions are
/// not pinned across implementations; these helpers are, so identical seeds
/// give identical structures on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, 1): top 53 bits of one draw.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound); rejection keeps it exact for every bound.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng: zero bound");
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % bound;
    }

private:
    std::mt19937_64 eng_;
};

struct ExperimentConfig {
    int n = 0;
    double d = 0.0;  // expected degree
    int k = 1;
    int trials = 0;
    std::uint64_t seed = 0;
};

struct ExperimentRecord {
    int trial = 0;
    int edges_01 = 0;  // dependence-graph edges at the configured order
    int edges_G = 0;   // skeleton edges of the learned graph
    int edges_D = 0;   // edges of the generating DAG
    int vs_G = 0;
    int vs_D = 0;
    int vs_both = 0;
};

struct ExperimentSummary {
    double edges_01 = 0, edges_G = 0, edges_D = 0;
    double vs_G = 0, vs_D = 0, vs_both = 0;
    // v-structure means divided by n, the unit the reference tables use
    double vs_G_per_node = 0, vs_D_per_node = 0, vs_both_per_node = 0;
    // standard errors of the six means
    double se_edges_01 = 0, se_edges_G = 0, se_edges_D = 0;
    double se_vs_G = 0, se_vs_D = 0, se_vs_both = 0;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    ExperimentSummary summary;
};

/// Random DAG with expected degree d: each unordered pair becomes an edge
/// independently with probability d/(n-1), oriented from earlier to later
/// in a uniformly random permutation. Draw order is fixed (permutation
/// first, then pairs ascending), so a seed pins the structure.
inline Graph random_dag(int n, double d, Rng& rng) {
    if (n < 0) throw std::invalid_argument("random_dag: negative vertex count");
    if (d < 0 || (n > 1 && d > n - 1) || (n <= 1 && d > 0))
        throw std::invalid_argument("random_dag: expected degree out of range");
    const double p = n > 1 ? d / (n - 1) : 0.0;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(pos[i], pos[j]);
    }
    Graph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (rng.uniform01() >= p) continue;
            if (pos[a] < pos[b]) g.add_directed(a, b);
            else g.add_directed(b, a);
        }
    return g;
}

namespace detail {

inline int vs_intersection_count(const std::vector<VStructure>& x, const std::vector<VStructure>& y) {
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] == y[j]) {
            ++count;
            ++i;
            ++j;
        } else if (x[i] < y[j]) ++i;
        else ++j;
    }
    return count;
}

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("experiment: need at least two vertices");
    if (cfg.d < 0 || cfg.d > cfg.n - 1) throw std::invalid_argument("experiment: expected degree out of range");
    if (cfg.k < 0 || cfg.k > cfg.n - 2) throw std::invalid_argument("experiment: order bound out of range");
    if (cfg.trials < 1) throw std::invalid_argument("experiment: need at least one trial");
}

}  // namespace detail

/// One oracle-model trial: draw a DAG, read off its order-bounded
/// separations, learn, and count adjacencies and v-structures of the
/// dependence graph, the learned graph, and the truth. Matching
/// v-structures are exact triple matches.
inline ExperimentRecord run_trial(const ExperimentConfig& cfg, int trial) {
    detail::validate_config(cfg);
    Rng rng(detail::derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const Graph d = random_dag(cfg.n, cfg.d, rng);
    const CISet s = generate_from_dag(d, cfg.k);
    const Representation rep = run_loci(s);
    const std::vector<VStructure> vs_d = v_structures(d);
    const std::vector<VStructure> vs_g = v_structures(rep.graph);
    ExperimentRecord r;
    r.trial = trial;
    r.edges_01 = k_partial_graph(s).edge_count();
    r.edges_G = rep.graph.edge_count();
    r.edges_D = d.edge_count();
    r.vs_G = static_cast<int>(vs_g.size());
    r.vs_D = static_cast<int>(vs_d.size());
    r.vs_both = detail::vs_intersection_count(vs_g, vs_d);
    return r;
}

/// All trials plus column means. Workers claim trial indices from a shared
/// counter and write into preallocated slots, so the record set is
/// identical for every thread count, including one.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads = 1) {
    detail::validate_config(cfg);
    if (threads < 1) throw std::invalid_argument("experiment: thread count must be positive");
    ExperimentResult out;
    out.records.resize(static_cast<std::size_t>(cfg.trials));
    if (threads == 1) {
        for (int t = 0; t < cfg.trials; ++t) out.records[t] = run_trial(cfg, t);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
                    out.records[t] = run_trial(cfg, t);
            });
        for (std::thread& th : pool) th.join();
    }

    const auto mean_se = [&](auto field, double& mean, double& se) {
        double sum = 0;
        for (const ExperimentRecord& r : out.records) sum += r.*field;
        mean = sum / cfg.trials;
        double ss = 0;
        for (const ExperimentRecord& r : out.records) {
            const double dev = r.*field - mean;
            ss += dev * dev;
        }
        se = cfg.trials > 1 ? std::sqrt(ss / (cfg.trials - 1) / cfg.trials) : 0.0;
    };
    ExperimentSummary& s = out.summary;
    mean_se(&ExperimentRecord::edges_01, s.edges_01, s.se_edges_01);
    mean_se(&ExperimentRecord::edges_G, s.edges_G, s.se_edges_G);
    mean_se(&ExperimentRecord::edges_D, s.edges_D, s.se_edges_D);
    mean_se(&ExperimentRecord::vs_G, s.vs_G, s.se_vs_G);
    mean_se(&ExperimentRecord::vs_D, s.vs_D, s.se_vs_D);
    mean_se(&ExperimentRecord::vs_both, s.vs_both, s.se_vs_both);
    s.vs_G_per_node = s.vs_G / cfg.n;
    s.vs_D_per_node = s.vs_D / cfg.n;
    s.vs_both_per_node = s.vs_both / cfg.n;
    return out;
}

/// One row per trial plus a summary row whose trial column reads "mean".
inline void write_csv(std::ostream& os, const ExperimentConfig& cfg, const ExperimentResult& res) {
    os << "trial,n,d,k,seed,edges_01,edges_G,edges_D,vs_G,vs_D,vs_both\n";
    const auto prefix = [&](std::ostream& o) {
        o << ',' << cfg.n << ',' << cfg.d << ',' << cfg.k << ',' << cfg.seed << ',';
    };
    for (const ExperimentRecord& r : res.records) {
        os << r.trial;
        prefix(os);
        os << r.edges_01 << ',' << r.edges_G << ',' << r.edges_D << ',' << r.vs_G << ',' << r.vs_D
           << ',' << r.vs_both << '\n';
    }
    const ExperimentSummary& s = res.summary;
    os << std::setprecision(10) << "mean";
    prefix(os);
    os << s.edges_01 << ',' << s.edges_G << ',' << s.edges_D << ',' << s.vs_G << ',' << s.vs_D << ','
       << s.vs_both << '\n';
}

}  // namespace loci
