#include "bellscope/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace bellscope::cli;

namespace {

int exit_status(const std::string& args)
{
    const std::string cmd = std::string(BELLSCOPE_BIN) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunConfig config(std::string command)
{
    RunConfig cfg;
    cfg.command = std::move(command);
    return cfg;
}

} // namespace

TEST(Validate, RejectsBadConfigs)
{
    RunConfig c = config("tables");
    EXPECT_NO_THROW(validate(c));
    c.tol = 0.0;
    EXPECT_THROW(validate(c), ConfigError);
    c = config("tables");
    c.samples = 999;
    EXPECT_THROW(validate(c), ConfigError);
    c = config("tables");
    c.format = "xml";
    EXPECT_THROW(validate(c), ConfigError);
    c = config("measure");
    c.grid = 31;
    EXPECT_THROW(validate(c), ConfigError);
    c = config("measure");
    c.samples = 50000;
    EXPECT_THROW(validate(c), ConfigError);
    c = config("check-model");
    EXPECT_THROW(validate(c), ConfigError);
    c = config("nonsense");
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Run, TablesJsonShape)
{
    std::ostringstream out, err;
    ASSERT_EQ(run(config("tables"), out, err), kPass) << err.str();
    const auto j = nlohmann::json::parse(out.str());
    EXPECT_EQ(j.at("command"), "tables");
    EXPECT_EQ(j.at("config").at("grid"), 21);
    EXPECT_EQ(j.at("results").size(), 42u);
    EXPECT_TRUE(j.at("version").is_string());
    for (const auto& c : j.at("checks")) {
        EXPECT_TRUE(c.at("pass").get<bool>()) << c.at("name");
    }
}

TEST(Run, TablesCsvHeader)
{
    RunConfig c = config("tables");
    c.format = "csv";
    c.grid = 3;
    std::ostringstream out, err;
    ASSERT_EQ(run(c, out, err), kPass);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "family,p,E,M,M1,M2,F,bound_E,saturates_bound");
    std::string first;
    std::getline(lines, first);
    EXPECT_EQ(first, "table1,0,2,0,0,0,1,2,true");
}

TEST(Run, TradeoffPasses)
{
    std::ostringstream out, err;
    EXPECT_EQ(run(config("tradeoff"), out, err), kPass) << err.str();
}

TEST(Run, VerifySingletPasses)
{
    std::ostringstream out, err;
    EXPECT_EQ(run(config("verify-singlet"), out, err), kPass) << err.str();
}

TEST(Run, MeasureBellUniform)
{
    RunConfig c = config("measure");
    c.model = "bell-uniform";
    c.trials = 20;
    std::ostringstream out, err;
    EXPECT_EQ(run(c, out, err), kPass) << err.str();
}

TEST(Run, ConfigErrorExitCode)
{
    RunConfig c = config("tables");
    c.tol = -1.0;
    std::ostringstream out, err;
    EXPECT_EQ(run(c, out, err), kConfigError);
    EXPECT_TRUE(out.str().empty());
    EXPECT_NE(err.str().find("--tol"), std::string::npos);
}

TEST(Binary, ExitCodes)
{
    EXPECT_EQ(exit_status("tables"), 0);
    EXPECT_EQ(exit_status("tables --tol 0"), 2);
    EXPECT_EQ(exit_status("tables --format yaml"), 2);
    EXPECT_EQ(exit_status("bogus"), 2);
    EXPECT_EQ(exit_status("--help"), 0);
    EXPECT_EQ(exit_status("check-model --model-file " FIXTURE_DIR "/corrupted_model.json"), 1);
    EXPECT_EQ(exit_status("check-model --model-file " FIXTURE_DIR "/local_model.json"), 0);
    EXPECT_EQ(exit_status("check-model --model-file " FIXTURE_DIR "/malformed_model.json"), 2);
    EXPECT_EQ(exit_status("check-model --model-file " FIXTURE_DIR "/does_not_exist.json"), 2);
}

TEST(Binary, ByteIdenticalReruns)
{
    const auto dir = std::filesystem::temp_directory_path() / "bellscope_cli_test";
    std::filesystem::create_directories(dir);
    for (const std::string fmt : {"json", "csv"}) {
        const auto a = dir / ("a." + fmt);
        const auto b = dir / ("b." + fmt);
        const std::string args = "verify-singlet --samples 20000 --seed 77 --format " + fmt + " --out ";
        ASSERT_EQ(exit_status(args + a.string()), 0);
        ASSERT_EQ(exit_status(args + b.string()), 0);
        const std::string ta = slurp(a);
        EXPECT_FALSE(ta.empty());
        EXPECT_EQ(ta, slurp(b));
    }
    std::filesystem::remove_all(dir);
}
