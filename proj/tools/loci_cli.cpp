#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "loci/loci.hpp"

namespace {

// Exit codes: 0 success, 1 semantic negative (not representable, not
// equivalent, no extension), 2 bad input, 3 contract violation.
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitContract = 3;

loci::Graph load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw loci::ParseError("cannot open '" + path + "'");
    return loci::read_graph(f);
}

loci::CISet load_ci_set(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw loci::ParseError("cannot open '" + path + "'");
    return loci::read_ci_set(f);
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw loci::ParseError("cannot open '" + path + "' for writing");
    body(f);
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = csv.find(',', start);
        out.push_back(csv.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void apply_names(std::vector<std::string>& target, const std::string& csv, int n) {
    if (csv.empty()) return;
    std::vector<std::string> names = split_csv(csv);
    if (static_cast<int>(names.size()) != n)
        throw loci::ParseError("--names needs exactly " + std::to_string(n) + " comma-separated names");
    target = std::move(names);
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const loci::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-order causal structure learning from conditional independence statements"};
    app.require_subcommand(1);
    int rc = 0;

    struct {
        std::string in, out = "-", names;
        int k = 1;
    } oracle;
    CLI::App* cmd_oracle = app.add_subcommand("oracle", "write all separation statements of a DAG up to order k");
    cmd_oracle->add_option("dag_file", oracle.in, "input DAG in graph text format")->required();
    cmd_oracle->add_option("-k,--k", oracle.k, "order bound (default 1)");
    cmd_oracle->add_option("-o,--out", oracle.out, "output CI file ('-' for stdout)");
    cmd_oracle->add_option("--names", oracle.names, "comma-separated vertex names for the output");
    cmd_oracle->callback([&] {
        rc = guarded([&] {
            const loci::Graph d = load_graph(oracle.in);
            loci::CISet s = loci::generate_from_dag(d, oracle.k);
            apply_names(s.names, oracle.names, s.num_vertices());
            emit(oracle.out, [&](std::ostream& os) { loci::write_ci_set(os, s); });
            return 0;
        });
    });

    struct {
        std::string in, out = "-", names;
        bool decide = false;
    } learn;
    CLI::App* cmd_learn = app.add_subcommand("learn", "run the learning pipeline on a CI file");
    cmd_learn->add_option("ci_file", learn.in, "input CI file")->required();
    cmd_learn->add_option("-o,--out", learn.out, "output graph file ('-' for stdout)");
    cmd_learn->add_flag("--decide", learn.decide, "also test whether some DAG agrees with the input exactly");
    cmd_learn->add_option("--names", learn.names, "comma-separated vertex names for the output");
    cmd_learn->callback([&] {
        rc = guarded([&] {
            const loci::CISet s = load_ci_set(learn.in);
            if (!learn.decide) {
                loci::Representation rep = loci::run_loci(s);
                apply_names(rep.graph.names, learn.names, rep.graph.num_vertices());
                emit(learn.out, [&](std::ostream& os) { loci::write_graph(os, rep.graph); });
                return 0;
            }
            loci::DecideResult res = loci::decide_representable(s);
            apply_names(res.rep.graph.names, learn.names, res.rep.graph.num_vertices());
            emit(learn.out, [&](std::ostream& os) { loci::write_graph(os, res.rep.graph); });
            std::cout << "representable: " << (res.representable ? "true" : "false") << '\n';
            return res.representable ? 0 : kExitNegative;
        });
    });

    struct {
        std::string in, out = "-", names;
    } extend;
    CLI::App* cmd_extend = app.add_subcommand("extend", "orient a PDAG into a consistent DAG extension");
    cmd_extend->add_option("graph_file", extend.in, "input PDAG in graph text format")->required();
    cmd_extend->add_option("-o,--out", extend.out, "output DAG file ('-' for stdout)");
    cmd_extend->add_option("--names", extend.names, "comma-separated vertex names for the output");
    cmd_extend->callback([&] {
        rc = guarded([&] {
            loci::Graph g = load_graph(extend.in);
            std::optional<loci::Graph> ext = loci::consistent_extension(g);
            if (!ext) {
                std::cerr << "no consistent extension exists\n";
                return kExitNegative;
            }
            apply_names(ext->names, extend.names, ext->num_vertices());
            emit(extend.out, [&](std::ostream& os) { loci::write_graph(os, *ext); });
            return 0;
        });
    });

    struct {
        int n = 0, k = 1, trials = 100, threads = 0;
        double d = 0.0;
        std::uint64_t seed = 0;
        std::string out = "-", names;
    } exp;
    CLI::App* cmd_experiment = app.add_subcommand("experiment", "oracle-model study on random DAGs, CSV output");
    cmd_experiment->add_option("-n,--n", exp.n, "vertex count")->required();
    cmd_experiment->add_option("-d,--d", exp.d, "expected degree")->required();
    cmd_experiment->add_option("-k,--k", exp.k, "order bound (default 1)");
    cmd_experiment->add_option("--trials", exp.trials, "trial count (default 100)");
    cmd_experiment->add_option("--seed", exp.seed, "64-bit master seed");
    cmd_experiment->add_option("--threads", exp.threads, "worker threads, 0 = all cores (records are identical regardless)");
    cmd_experiment->add_option("-o,--out", exp.out, "output CSV file ('-' for stdout)");
    cmd_experiment->add_option("--names", exp.names, "ignored: the CSV carries no vertex names");
    cmd_experiment->callback([&] {
        rc = guarded([&] {
            const loci::ExperimentConfig cfg{exp.n, exp.d, exp.k, exp.trials, exp.seed};
            try {
                loci::detail::validate_config(cfg);
                if (exp.threads < 0) throw std::invalid_argument("experiment: thread count must be nonnegative");
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << '\n';
                return kExitInput;
            }
            int threads = exp.threads;
            if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
            if (threads < 1) threads = 1;
            if (threads > cfg.trials) threads = cfg.trials;
            const loci::ExperimentResult res = loci::run_experiment(cfg, threads);
            emit(exp.out, [&](std::ostream& os) { loci::write_csv(os, cfg, res); });
            return 0;
        });
    });

    struct {
        std::string in, names;
    } compare;
    CLI::App* cmd_compare = app.add_subcommand("compare-k0", "check the marginal-order equivalence on a k=0 CI file");
    cmd_compare->add_option("ci_file", compare.in, "input CI file with k = 0")->required();
    cmd_compare->add_option("--names", compare.names, "ignored: this command writes no graph");
    cmd_compare->callback([&] {
        rc = guarded([&] {
            const loci::CISet s = load_ci_set(compare.in);
            const bool eq = loci::check_k0_equivalence(s);
            std::cout << "equivalent: " << (eq ? "true" : "false") << '\n';
            return eq ? 0 : kExitNegative;
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }
    return rc;
}
