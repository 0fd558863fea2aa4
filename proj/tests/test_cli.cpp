#include <dosusy/cli.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace dosusy;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "dosusy");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main_with(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST(CliTabulate, RowCountAndHeader)
{
    const auto r = run_cli({"tabulate", "--kappa", "1", "--l", "0", "--rho-min", "0.5", "--rho-max", "2", "--points", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"rho", "alpha", "w1", "w1_prime", "u_eff", "f", "f_sq", "S", "V",
                                                 "V_lambda", "W2"}));
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(CliTabulate, ValuesAndSingularToken)
{
    const auto r = run_cli({"tabulate", "--kappa", "1", "--l", "0", "--rho-min", "0.5", "--rho-max", "2", "--points", "3"});
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(std::stod(rows[2][0]), 1.0);
    EXPECT_EQ(rows[2][10], "SINGULAR");
    EXPECT_EQ(std::stod(rows[3][0]), 2.0);
    EXPECT_NEAR(std::stod(rows[3][8]), -1.2, 1e-12);
    EXPECT_NEAR(std::stod(rows[3][10]), -0.9333333333333333, 1e-12);
}

TEST(CliTabulate, VColumnRoundTripsExactly)
{
    const auto r = run_cli({"tabulate", "--kappa", "0.5", "--l", "2", "--lambda", "1.5", "--points", "50"});
    ASSERT_EQ(r.code, 0);
    const auto p = validate_params(Rational(1, 2), 2);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double rho = std::stod(rows[i][0]);
        EXPECT_EQ(std::stod(rows[i][8]), v_second(p, rho));
        EXPECT_EQ(std::stod(rows[i][9]), v_lambda(p, LambdaParam(1.5), rho));
    }
}

TEST(CliTabulate, Deterministic)
{
    const std::vector<std::string> args = {"tabulate", "--kappa", "1/2", "--l", "3", "--lambda", "-2"};
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
    const std::vector<std::string> json = {"tabulate", "--kappa", "1", "--l", "1", "--format", "json", "--points", "7"};
    const auto a = run_cli(json);
    EXPECT_EQ(a.out, run_cli(json).out);
    const auto doc = nlohmann::json::parse(a.out);
    EXPECT_EQ(doc["rows"].size(), 7u);
    EXPECT_EQ(doc["columns"].size(), 11u);
}

TEST(CliTabulate, WritesOutputFile)
{
    const auto path = std::filesystem::temp_directory_path() / "dosusy_cli_test.csv";
    const auto r = run_cli({"tabulate", "--points", "4", "-o", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), run_cli({"tabulate", "--points", "4"}).out);
    std::filesystem::remove(path);
    EXPECT_EQ(run_cli({"tabulate", "-o", "/nonexistent-dir/x.csv"}).code, cli::IoError);
}

TEST(CliVerify, PassAndFault)
{
    EXPECT_EQ(run_cli({"verify", "--kappa", "1", "--l", "0"}).code, 0);
    EXPECT_EQ(run_cli({"verify", "--kappa", "1/2", "--l", "3", "--lambda", "-2"}).code, 0);
    const auto f = run_cli({"verify", "--kappa", "1", "--l", "0", "--fault", "scale-v"});
    EXPECT_EQ(f.code, 1);
    const auto rows = parse_csv(f.out);
    ASSERT_GE(rows.size(), 2u);
    EXPECT_EQ(rows[1][0], "ode_residual");
    EXPECT_NEAR(std::stod(rows[1][1]), 1.0, 1e-6);
    EXPECT_EQ(rows[1][6], "FAIL");
}

TEST(CliVerify, Json)
{
    const auto r = run_cli({"verify", "--kappa", "1", "--l", "2", "--format", "json", "--points", "40"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_TRUE(doc["pass"].get<bool>());
    EXPECT_EQ(doc["checks"].size(), 8u);
}

TEST(CliSweep, RowsInOrder)
{
    const auto a = run_cli({"sweep", "--kappa", "1", "--l", "0..5", "--points", "60"});
    EXPECT_EQ(a.code, 0) << a.err;
    const auto rows = parse_csv(a.out);
    ASSERT_EQ(rows.size(), 7u);
    for (int l = 0; l <= 5; ++l)
        EXPECT_EQ(rows[static_cast<std::size_t>(l) + 1][1], std::to_string(l));
    const auto b = run_cli({"sweep", "--kappa", "1/2", "--l", "0..3", "--points", "60"});
    EXPECT_EQ(b.code, 0);
    EXPECT_EQ(parse_csv(b.out).size(), 5u);
    EXPECT_EQ(run_cli({"sweep", "--kappa", "1/2", "--l", "0..3", "--points", "60"}).out, b.out);
    EXPECT_EQ(run_cli({"sweep", "--kappa", "1", "--l", "0..1", "--points", "30", "--fault", "scale-v"}).code, 1);
}

TEST(CliAudit, FisheyeVerdicts)
{
    const auto r = run_cli({"audit", "--kappa", "1", "--l", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    bool saw_s = false, saw_v = false;
    for (const auto& f : doc["forms"]) {
        if (f["form"] == "fisheye_antiderivative") {
            EXPECT_EQ(f["verdict"], "MATCH");
            saw_s = true;
        }
        if (f["form"] == "fisheye_second_solution" && f["reading"] == "as_printed") {
            EXPECT_NE(f["verdict"], "MATCH");
            saw_v = true;
        }
    }
    EXPECT_TRUE(saw_s && saw_v);
    EXPECT_EQ(doc["grid"].size(), 200u);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliAudit, AufbauLogCoefficient)
{
    const auto r = run_cli({"audit", "--kappa", "1/2", "--l", "0", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto& s = doc["forms"][0];
    EXPECT_EQ(s["form"], "aufbau_antiderivative");
    EXPECT_NE(s["verdict"], "MATCH");
    EXPECT_EQ(s["printed_log_coeff"].get<double>(), 4.0);
    bool saw = false;
    for (const auto& c : s["components"])
        if (c["component"] == "log_coefficient") {
            EXPECT_EQ(c["verdict"], "MATCH");
            saw = true;
        }
    EXPECT_TRUE(saw);
}

TEST(CliUsage, ExitCodeTwo)
{
    const std::vector<std::vector<std::string>> bad = {
        {},
        {"frobnicate"},
        {"tabulate", "--kappa", "abc"},
        {"tabulate", "--kappa", "1/3"},
        {"tabulate", "--kappa", "0"},
        {"tabulate", "--l", "-1"},
        {"tabulate", "--points", "1"},
        {"tabulate", "--rho-min", "2", "--rho-max", "1"},
        {"tabulate", "--rho-min", "0"},
        {"tabulate", "--format", "xml"},
        {"verify", "--l", "0..3"},
        {"verify", "--fault", "bogus"},
        {"sweep", "--l", "3..1"},
        {"sweep", "--l", "x..2"},
        {"audit", "--l", "6"},
    };
    for (const auto& args : bad)
        EXPECT_EQ(run_cli(args).code, 2) << (args.empty() ? "<none>" : args[0] + " " + (args.size() > 1 ? args[1] : ""));
}
