#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "support.hpp"

using namespace k3test;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

CliRun run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = quote(K3AUTO_BIN) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string golden(const std::string& name) { return slurp(std::string(K3AUTO_GOLDEN) + "/" + name); }

std::string fx(const std::string& name) { return quote(fixture(name)); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ClassifyOrder16Surface) {
    const CliRun r = run("classify " + fx("order16_surface.txt"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, golden("classify_order16.txt"));
    EXPECT_TRUE(contains(r.out, "t | III* | 3 inf 9 | 9 | 1"));
    EXPECT_TRUE(contains(r.out, "t^4 - 1 | III | 1 inf 3 | 3 | 4"));
    EXPECT_TRUE(contains(r.out, "INFINITY | III | 1 inf 3 | 3 | 1"));
    EXPECT_TRUE(contains(r.out, "euler_total = 24"));
    EXPECT_TRUE(contains(r.out, "is_k3 = yes"));
}

TEST(Cli, ClassifyRationalElliptic) {
    const CliRun r = run("classify " + fx("rational_elliptic.txt"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "euler_total = 12"));
    EXPECT_TRUE(contains(r.out, "is_k3 = no"));
}

TEST(Cli, MalformedInputIsAnInputError) {
    const CliRun r = run("classify " + fx("malformed.txt"), true);
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.out, "SyntaxError"));
    EXPECT_TRUE(contains(r.out, "line 2"));
    EXPECT_TRUE(contains(r.out, "column 10"));
    EXPECT_EQ(run("classify /nonexistent/file.txt").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("lattice info Q7").code, 2);
}

TEST(Cli, CheckMap) {
    const CliRun sigma = run("check-map " + fx("order16_surface.txt") + " sigma");
    EXPECT_EQ(sigma.code, 0);
    for (const auto& line : {"well_defined = yes", "ambient_scalar = zeta^2", "omega_factor = zeta^1", "order = 16",
                             "primitive = yes", "symplectic = no"}) {
        EXPECT_TRUE(contains(sigma.out, line)) << line;
    }
    const CliRun tau = run("check-map " + fx("order16_surface.txt") + " tau");
    EXPECT_TRUE(contains(tau.out, "order = 2"));
    EXPECT_TRUE(contains(tau.out, "omega_factor = 1\n"));
    EXPECT_TRUE(contains(tau.out, "symplectic = yes"));
    const CliRun ast = run("check-map " + fx("order16_surface.txt") + " sigma_ast");
    EXPECT_TRUE(contains(ast.out, "order = 16"));
    EXPECT_TRUE(contains(ast.out, "omega_factor = zeta^1"));
}

TEST(Cli, NotAMorphismReportsTheResidual) {
    const CliRun r = run("check-map " + fx("not_a_morphism.txt") + " bad", true);
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "well_defined = no"));
    EXPECT_TRUE(contains(r.out, "residual"));
}

TEST(Cli, JsonOutputParses) {
    const CliRun r = run("--json check-map " + fx("order16_surface.txt") + " sigma");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(j["order"], 16);
    EXPECT_EQ(j["omega_factor"], "zeta^1");
    EXPECT_EQ(j["primitive"], true);

    const auto census = nlohmann::ordered_json::parse(run("--json rigidity census " + fx("order16_graph.txt") + " sigma").out);
    EXPECT_EQ(census["N"], 10);
    EXPECT_EQ(census["k"], 1);
    const auto classify = nlohmann::ordered_json::parse(run("--json classify " + fx("order16_surface.txt")).out);
    EXPECT_EQ(classify["euler_total"], 24);
    EXPECT_EQ(classify["is_k3"], true);
    const auto lattice = nlohmann::ordered_json::parse(run("--json lattice info " + fx("order16_graph.txt")).out);
    EXPECT_EQ(lattice["rank"], 14);
}

TEST(Cli, RigidityCensusAndCompose) {
    const CliRun sigma = run("rigidity census " + fx("order16_graph.txt") + " sigma");
    EXPECT_EQ(sigma.code, 0);
    EXPECT_TRUE(contains(sigma.out, "N = 10, k = 1"));
    EXPECT_TRUE(contains(run("rigidity census " + fx("order16_graph.txt") + " sigma_ast").out, "N = 4, k = 0"));
    EXPECT_TRUE(contains(run("rigidity census " + fx("order16_graph.txt") + " tau").out, "N = 8, k = 0"));
    EXPECT_TRUE(contains(run("rigidity power " + fx("order16_graph.txt") + " sigma 2").out, "N = 10, k = 1"));
    const CliRun comp = run("rigidity compose " + fx("order16_graph.txt") + " sigma 'inv(sigma_ast)'");
    EXPECT_EQ(comp.code, 0);
    EXPECT_TRUE(contains(comp.out, "N = 8, k = 0"));
}

TEST(Cli, RigidityEnumerate) {
    const CliRun r = run("rigidity enumerate " + fx("order16_graph.txt") + " --n 16 --c 1 --filter 10,1");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "classes = 1\n"));
    EXPECT_EQ(r.out, run("rigidity enumerate " + fx("order16_graph.txt") + " --n 16 --c 1 --filter 10,1 --jobs 3").out);
}

TEST(Cli, LatticeCommands) {
    const CliRun info = run("lattice info " + fx("order16_graph.txt"));
    EXPECT_EQ(info.code, 0);
    EXPECT_TRUE(contains(info.out, "rank = 14"));
    EXPECT_TRUE(contains(info.out, "signature = (1, 13)"));
    EXPECT_TRUE(contains(info.out, "invariant_factors = (2, 2, 2, 2)"));
    EXPECT_TRUE(contains(run("lattice genus-equal 'U+D8+D4' 'U(2)+E8+D4'").out, "genus_equal = true"));
    EXPECT_TRUE(contains(run("lattice genus-equal U 'U(2)'").out, "genus_equal = false"));
    EXPECT_TRUE(contains(run("lattice genus-equal " + fx("order16_graph.txt") + " 'U(2)+D4+E8'").out,
                         "genus_equal = true"));
}

TEST(Cli, DotExportIsByteStable) {
    const auto dir = std::filesystem::temp_directory_path() / ("k3auto_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string a = (dir / "a.dot").string();
    const std::string b = (dir / "b.dot").string();
    EXPECT_EQ(run("rigidity census " + fx("order16_graph.txt") + " sigma --dot " + quote(a)).code, 0);
    EXPECT_EQ(run("rigidity census " + fx("order16_graph.txt") + " sigma --dot " + quote(b)).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a), golden("census_sigma.dot"));
    std::filesystem::remove_all(dir);
}

TEST(Cli, ReportsAreByteStable) {
    for (const std::string& args : std::vector<std::string>
         {"classify " + fx("order16_surface.txt"), "--json classify " + fx("order16_surface.txt"),
          "check-map " + fx("order16_surface.txt") + " sigma_ast", "rigidity census " + fx("order16_graph.txt") + " tau",
          "--json rigidity census " + fx("order16_graph.txt") + " sigma", "lattice info 'U(2)+E8+D4'"}) {
        EXPECT_EQ(run(args).out, run(args).out) << args;
    }
}

TEST(Cli, RigidityErrorsAreVerificationFailures) {
    const std::string bad = std::string(::testing::TempDir()) + "/bad_graph.txt";
    {
        std::ofstream out(bad);
        out << "vertex A\nvertex B\nvertex C\nedge A B\nedge B C\nedge A C\n\n"
               "[action.t]\nn = 4\nc = 1\nperm = ()\nanchor = A @ A:B = 0\n";
    }
    const CliRun r = run("rigidity census " + quote(bad) + " t", true);
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "InconsistentCycle"));
    EXPECT_TRUE(contains(r.out, "cycle"));
    std::filesystem::remove(bad);
}
