#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {
struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int c = hlest::cli::parse_and_dispatch(args, o, e);
    return {c, o.str(), e.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& s, std::string& header) {
    std::istringstream in(s);
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    for (std::string line; std::getline(in, line);) {
        std::vector<double> r;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) r.push_back(std::stod(cell));
        rows.push_back(r);
    }
    return rows;
}
}  // namespace

TEST(Cli, HsDegree) {
    const auto r = run({"hs-degree", "--t", "1", "--eps", "0.0009765625"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "5\n");
}

TEST(Cli, ShadowComplexity) {
    const auto r = run({"complexity", "--method", "shadow", "--N", "2", "--eta", "1", "--k", "1", "--eps", "0.1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "300\n");
}

TEST(Cli, QaeUniformMax) {
    const auto r = run({"qae-mse", "--q", "8", "--probe", "uniform", "--points", "4096", "--full-range"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string header;
    const auto rows = parse_csv(r.out, header);
    EXPECT_EQ(header, "theta,mse");
    ASSERT_EQ(rows.size(), 4096u);
    double mx = 0.0;
    for (const auto& row : rows) mx = std::max(mx, row[1]);
    EXPECT_NEAR(mx, 1.0 / 512, 1e-9);
}

TEST(Cli, QaeCompareHeader) {
    const auto r = run({"qae-mse", "--q", "4", "--probe", "compare", "--points", "16"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "theta,mse_sine,mse_uniform,mse_optimal");
    const auto j = run({"qae-mse", "--q", "4", "--probe", "sine", "--points", "16", "--json"});
    ASSERT_EQ(j.code, 0);
    const auto parsed = nlohmann::json::parse(j.out);
    EXPECT_GT(parsed["max"]["mse"]["max"].get<double>(), 0.0);
}

TEST(Cli, ProbeFailureJson) {
    const auto r = run({"probe-failure", "--probe", "all", "--p", "3", "--grid", "20000", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["families"]["uniform"]["max_failure"].get<double>(), 0.1789, 5e-4);
    EXPECT_NEAR(j["families"]["cos1"]["variance"].get<double>(), 0.16515, 1e-4);
    EXPECT_EQ(j["families"]["kaiser"]["alpha"].get<double>(), 0.98);
}

TEST(Cli, ProbeFailureCsvAndScan) {
    const auto r = run({"probe-failure", "--probe", "cos1", "--grid", "100"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "theta,failure_prob");
    const auto s = run({"probe-failure", "--kaiser-scan", "--alpha-from", "0", "--alpha-to", "2", "--alpha-steps",
                        "3", "--grid", "200"});
    ASSERT_EQ(s.code, 0) << s.err;
    std::string header;
    const auto rows = parse_csv(s.out, header);
    EXPECT_EQ(header, "alpha,max_failure");
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1][0], 1.0);
}

TEST(Cli, ComplexityTraceJson) {
    const auto r = run({"complexity", "--method", "method1", "--N", "4", "--eta", "2", "--k", "1", "--eps", "0.1",
                        "--trace"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["L"].get<std::string>(), "223706");
    ASSERT_EQ(j["trace"].size(), 4u);
    EXPECT_EQ(j["trace"][3]["Q"].get<int>(), 3313);
}

TEST(Cli, SweepCsv) {
    const auto r = run({"sweep", "--mode", "femo", "--axis", "eps", "--k", "1", "--from", "0.1", "--to", "0.001",
                        "--points", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "axis,shadow,qae,wyy,method1,method2");
    EXPECT_NE(r.out.find("\n0.01,"), std::string::npos);
    EXPECT_NE(r.out.find("\n0.001,"), std::string::npos);
    const auto h = run({"sweep", "--mode", "hubbard", "--axis", "N", "--k", "1", "--values", "16,80"});
    ASSERT_EQ(h.code, 0) << h.err;
    EXPECT_NE(h.out.find("\n80,"), std::string::npos);
}

TEST(Cli, OracleCommands) {
    const auto f = run({"oracle", "fermion-norm", "--N", "2", "--eta", "1", "--k", "1"});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_NEAR(nlohmann::json::parse(f.out)["brute_norm"].get<double>(), 3.0, 1e-12);
    const auto i = run({"oracle", "identity", "--Nmax", "6"});
    ASSERT_EQ(i.code, 0);
    EXPECT_EQ(i.out.find("fail"), std::string::npos);
    EXPECT_NE(i.out.find("pass"), std::string::npos);
    const auto m = run({"oracle", "mc", "--N", "4", "--eta", "2", "--k", "1", "--trials", "200", "--seed", "9"});
    ASSERT_EQ(m.code, 0) << m.err;
    EXPECT_EQ(m.out, run({"oracle", "mc", "--N", "4", "--eta", "2", "--k", "1", "--trials", "200", "--seed", "9"}).out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"hs-degree", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"qae-mse", "--q", "2"}).code, 2);
    EXPECT_EQ(run({"complexity", "--method", "method1", "--N", "4", "--eta", "0", "--k", "1", "--eps", "0.1"}).code, 1);
    const auto bad = run({"hs-degree", "--t", "-1", "--eps", "0.1"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("t must be positive"), std::string::npos);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, OutFileAndDeterminism) {
    const auto path = std::filesystem::temp_directory_path() / "hlest_cli_test.csv";
    const std::vector<std::string> args = {"qae-mse", "--q", "5", "--probe", "sine", "--points", "50"};
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", path.string()});
    const auto c = run(with_out);
    ASSERT_EQ(c.code, 0);
    EXPECT_TRUE(c.out.empty());
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(ss.str(), a.out);
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
    std::filesystem::remove(path);
}
