#include "cli_app.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nilpath;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args, const std::string& input = "")
{
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir()
    {
        path_ = std::filesystem::temp_directory_path() /
                ("nilpath_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
                 std::to_string(std::rand()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const
    {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

private:
    std::filesystem::path path_;
};

std::string matrix_text(const Matrix& m) { return to_json(m).dump(); }

} // namespace

TEST(Cli, SolvableNegative)
{
    const CliResult r = run({"solvable", "--zeros", "2,3", "--profile", "2:1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(Json::parse(r.out), Json::parse(R"({"solvable":false})"));
}

TEST(Cli, SolvablePositiveCarriesWitness)
{
    const CliResult r = run({"solvable", "--zeros", "2,3", "--profile", "3:1,2:1,1:1"});
    EXPECT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["solvable"], true);
    EXPECT_EQ(j["witness"]["generators"].size(), 2u);
}

TEST(Cli, ChainTwoSteps)
{
    const CliResult r = run({"chain", "--p", "2", "--from", "1:2", "--to", "2:1"});
    EXPECT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["steps"], Json::parse(R"(["1:2","2:1"])"));
}

TEST(Cli, ChainPowerMismatchIsNegative)
{
    const CliResult r = run({"chain", "--p", "2", "--from", "3:1", "--to", "2:1,1:1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(Json::parse(r.out)["chain"].is_null());
}

TEST(Cli, RootOfJordanCellDoesNotExist)
{
    const CliResult r = run({"root", "-", "--p", "2"}, matrix_text(jordan_cell(2)));
    EXPECT_EQ(r.code, 1);
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["root"].is_null());
    EXPECT_EQ(j["target"], "2:1");
}

TEST(Cli, RootIsExact)
{
    std::mt19937 rng(51);
    const Matrix s = testkit::random_invertible(5, rng);
    const Matrix a = s * matrix_pow(direct_sum({jordan_cell(3), jordan_cell(2)}), 2) * inverse(s);
    const CliResult r = run({"root", "-", "--p", "2"}, matrix_text(a));
    ASSERT_EQ(r.code, 0) << r.err;
    const Matrix x = matrix_from_json(Json::parse(r.out)["root"]);
    EXPECT_EQ(matrix_pow(x, 2), a);
}

TEST(Cli, ProfileCommand)
{
    const CliResult r = run({"profile", "-"}, matrix_text(direct_sum({jordan_cell(3), jordan_cell(1)})));
    EXPECT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["string"], "3:1,1:1");
    EXPECT_EQ(j["size"], 4);
}

TEST(Cli, MalformedInputExitsTwo)
{
    EXPECT_EQ(run({"profile", "-"}, "{not json").code, 2);
    EXPECT_EQ(run({"profile", "-"}, R"({"rows":2,"cols":2,"entries":[["1","0"],["0","0"]]})").code, 2);
    EXPECT_EQ(run({"chain", "--p", "2", "--from", "1:x", "--to", "2:1"}).code, 2);
    EXPECT_EQ(run({"solvable", "--zeros", "0", "--profile", "1:1"}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"graph", "--p", "2"}).code, 2);
    const CliResult missing = run({"profile", "/nonexistent/nilpath/matrix.json"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_FALSE(missing.err.empty());
}

TEST(Cli, SizeCapExitsThree)
{
    ::setenv("NILPATH_SIZE_CAP", "2", 1);
    const CliResult r = run({"graph", "--p", "2", "--profile", "1:6"});
    ::unsetenv("NILPATH_SIZE_CAP");
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(run({"graph", "--p", "2", "--profile", "1:6"}).code, 0);
}

TEST(Cli, OutputIsDeterministic)
{
    const std::vector<std::string> args{"graph", "--p", "2", "--profile", "2:2,1:2"};
    const CliResult a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, DotOutput)
{
    const CliResult r = run({"graph", "--p", "2", "--profile", "1:2", "--dot"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("graph profiles {", 0), 0u);
    EXPECT_NE(r.out.find("[label=\"(0,0,2)\"]"), std::string::npos);
}

TEST(Cli, ConnectVerifyEvalRoundTrip)
{
    TempDir dir;
    const Matrix x = direct_sum({jordan_cell(4), jordan_cell(2)});
    const Matrix a = matrix_pow(x, 2);
    const std::string a_file = dir.write("a.json", matrix_text(a));
    const std::string x_file = dir.write("x.json", matrix_text(x));

    const CliResult root = run({"root", a_file, "--p", "2", "--profile", "3:2"});
    ASSERT_EQ(root.code, 0) << root.err;
    const std::string y_file = dir.write("y.json", Json::parse(root.out)["root"].dump());

    const CliResult conn = run({"connect", "--p", "2", "--a", a_file, "--x", x_file, "--y", y_file, "--samples", "20"});
    ASSERT_EQ(conn.code, 0) << conn.err;
    EXPECT_EQ(Json::parse(conn.out)["certificate"]["ok"], true);
    const std::string path_file = dir.write("path.json", conn.out);

    const CliResult ver = run({"verify", path_file, "--samples", "10"});
    EXPECT_EQ(ver.code, 0) << ver.err;
    EXPECT_EQ(Json::parse(ver.out)["ok"], true);

    const CliResult start = run({"eval-path", path_file, "--t", "0"});
    ASSERT_EQ(start.code, 0);
    EXPECT_EQ(matrix_from_json(Json::parse(start.out)), x);
    const CliResult end = run({"eval-path", path_file, "--t", "1"});
    EXPECT_EQ(matrix_from_json(Json::parse(end.out)), matrix_from_json(Json::parse(root.out)["root"]));
    const CliResult mid = run({"eval-path", "-", "--t", "3/7"}, conn.out);
    ASSERT_EQ(mid.code, 0);
    EXPECT_EQ(matrix_pow(matrix_from_json(Json::parse(mid.out)), 2), a);

    EXPECT_EQ(run({"eval-path", path_file, "--t", "3/2"}).code, 2);
    EXPECT_EQ(run({"verify", path_file, "--mode", "exact"}).code, 2);
}
