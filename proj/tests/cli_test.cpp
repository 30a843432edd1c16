#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "loci/loci.hpp"
#include "test_util.hpp"

// Drives the installed binary end to end through a shell, files in, files out.

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("loci_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path scratch_file(const std::string& stem) {
    static int counter = 0;
    return scratch_dir() / (stem + "_" + std::to_string(counter++) + ".txt");
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path);
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

fs::path write_file(const std::string& stem, const std::string& content) {
    const fs::path path = scratch_file(stem);
    std::ofstream f(path);
    f << content;
    return path;
}

fs::path write_graph_file(const std::string& stem, const loci::Graph& g) {
    std::ostringstream out;
    loci::write_graph(out, g);
    return write_file(stem, out.str());
}

CliResult run_cli(const std::string& args) {
    const fs::path out_path = scratch_file("stdout");
    const fs::path err_path = scratch_file("stderr");
    const std::string cmd = std::string("'") + LOCI_CLI_PATH + "' " + args + " > '" +
                            out_path.string() + "' 2> '" + err_path.string() + "'";
    const int status = std::system(cmd.c_str());
    CliResult r;
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = read_file(out_path);
    r.err = read_file(err_path);
    return r;
}

loci::Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return loci::read_graph(in);
}

const char* kSingleCiFile = "vars a b c d\nk 1\nci c d | a\n";
const char* kLearnedGolden =
    "vars a b c d\n"
    "a -> b\n"
    "c -> b\n"
    "d -> b\n"
    "a -- c\n"
    "a -- d\n";
const char* kFourCycleFile = "vars a b c d\nk 0\nci a c\nci b d\n";

}  // namespace

TEST(CliOracle, EmitsTheStatementsOfTheDag) {
    loci::Graph d = testutil::incompatible_pair_dag();
    d.names = {"a", "b", "c", "d", "u", "v"};
    const fs::path dag = write_graph_file("dag", d);
    const CliResult r = run_cli("oracle '" + dag.string() + "' -k 1");
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    const loci::CISet s = loci::read_ci_set(in);
    EXPECT_EQ(s.digest(), loci::generate_from_dag(d, 1).digest());
}

TEST(CliOracle, RejectsAGraphWithUndirectedEdges) {
    loci::Graph g(3);
    g.add_undirected(0, 1);
    const fs::path file = write_graph_file("pdag", g);
    const CliResult r = run_cli("oracle '" + file.string() + "'");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(CliLearn, SingleStatementGolden) {
    const fs::path ci = write_file("ci", kSingleCiFile);
    const CliResult r = run_cli("learn '" + ci.string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, kLearnedGolden);
}

TEST(CliLearn, NamesOverrideRelabelsTheOutput) {
    const fs::path ci = write_file("ci", kSingleCiFile);
    const CliResult r = run_cli("learn '" + ci.string() + "' --names w,x,y,z");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out,
              "vars w x y z\n"
              "w -> x\n"
              "y -> x\n"
              "z -> x\n"
              "w -- y\n"
              "w -- z\n");
    const CliResult bad = run_cli("learn '" + ci.string() + "' --names w,x");
    EXPECT_EQ(bad.code, 2);
}

TEST(CliLearn, DecideReportsBothWays) {
    const fs::path good = write_file("ci", kSingleCiFile);
    const CliResult yes = run_cli("learn '" + good.string() + "' --decide -o /dev/null");
    EXPECT_EQ(yes.code, 0);
    EXPECT_EQ(yes.out, "representable: true\n");

    const fs::path bad = write_file("ci", kFourCycleFile);
    const CliResult no = run_cli("learn '" + bad.string() + "' --decide -o /dev/null");
    EXPECT_EQ(no.code, 1);
    EXPECT_EQ(no.out, "representable: false\n");
}

TEST(CliPipeline, OracleIntoLearnRecoversTheDag) {
    loci::Graph d = testutil::incompatible_pair_dag();
    d.names = {"a", "b", "c", "d", "u", "v"};
    const fs::path dag = write_graph_file("dag", d);
    const fs::path ci = scratch_file("ci");
    ASSERT_EQ(run_cli("oracle '" + dag.string() + "' -k 1 -o '" + ci.string() + "'").code, 0);
    const CliResult r = run_cli("learn '" + ci.string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_graph(r.out), d);
}

TEST(CliExtend, OrientsTheLearnedGraphIntoAFamilyMember) {
    const fs::path ci = write_file("ci", kSingleCiFile);
    const fs::path learned = scratch_file("learned");
    ASSERT_EQ(run_cli("learn '" + ci.string() + "' -o '" + learned.string() + "'").code, 0);
    const CliResult r = run_cli("extend '" + learned.string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    const loci::Graph ext = parse_graph(r.out);
    EXPECT_TRUE(testutil::is_consistent_extension_of(ext, testutil::single_ci_expected()));
    EXPECT_EQ(ext, testutil::single_ci_faithful_dags()[1]);
}

TEST(CliExtend, DagComesBackUnchanged) {
    loci::Graph d = testutil::incompatible_pair_dag();
    d.names = {"a", "b", "c", "d", "u", "v"};
    const fs::path dag = write_graph_file("dag", d);
    const CliResult r = run_cli("extend '" + dag.string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, read_file(dag));
}

TEST(CliExtend, ReportsInextensibleInputs) {
    const fs::path file = write_graph_file("stuck", testutil::inextensible_pdag());
    const CliResult r = run_cli("extend '" + file.string() + "'");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("no consistent extension"), std::string::npos);
}

TEST(CliExperiment, CsvMatchesTheLibrary) {
    const fs::path csv = scratch_file("csv");
    const CliResult r = run_cli("experiment -n 6 -d 2 -k 1 --trials 5 --seed 44 --threads 2 -o '" +
                                csv.string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    const loci::ExperimentConfig cfg{.n = 6, .d = 2.0, .k = 1, .trials = 5, .seed = 44};
    std::ostringstream want;
    loci::write_csv(want, cfg, loci::run_experiment(cfg));
    EXPECT_EQ(read_file(csv), want.str());
}

TEST(CliExperiment, RejectsAnInvalidConfiguration) {
    EXPECT_EQ(run_cli("experiment -n 1 -d 0").code, 2);
    EXPECT_EQ(run_cli("experiment -n 5 -d 2 --trials 0").code, 2);
    EXPECT_EQ(run_cli("experiment -n 5 -d -1").code, 2);
}

TEST(CliCompareK0, ConfirmsTheEquivalenceOnAnOrderZeroFile) {
    const fs::path ci = write_file("ci", kFourCycleFile);
    const CliResult r = run_cli("compare-k0 '" + ci.string() + "'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "equivalent: true\n");
}

TEST(CliCompareK0, RefusesHigherOrderFiles) {
    const fs::path ci = write_file("ci", kSingleCiFile);
    const CliResult r = run_cli("compare-k0 '" + ci.string() + "'");
    EXPECT_EQ(r.code, 3);
}

TEST(CliErrors, BadUsageAndBadFilesExitTwo) {
    EXPECT_EQ(run_cli("").code, 2);                        // subcommand required
    EXPECT_EQ(run_cli("frobnicate").code, 2);              // unknown subcommand
    EXPECT_EQ(run_cli("learn /no/such/file").code, 2);     // missing file
    EXPECT_EQ(run_cli("learn --bogus x").code, 2);         // unknown flag
    const fs::path junk = write_file("junk", "not a ci file\n");
    EXPECT_EQ(run_cli("learn '" + junk.string() + "'").code, 2);
    EXPECT_EQ(run_cli("--help").code, 0);
}
