// End-to-end checks of the command-line driver: exit codes, golden handling,
// and report output.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef RAMWEIL_CLI_PATH
#define RAMWEIL_CLI_PATH "ramweil"
#endif
#ifndef RAMWEIL_GOLDEN_DIR
#define RAMWEIL_GOLDEN_DIR "goldens"
#endif

namespace {

int runCli(const std::string& args, std::string* output = nullptr) {
    std::string tmp = ::testing::TempDir() + "cli_out.txt";
    std::string cmd = std::string(RAMWEIL_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    if (output) {
        std::ifstream f(tmp);
        std::stringstream ss;
        ss << f.rdbuf();
        *output = ss.str();
    }
    return WEXITSTATUS(rc);
}

}  // namespace

TEST(Cli, VerifyPassesAtP2) {
    std::string out;
    EXPECT_EQ(runCli("verify --p 3 --ell 1 --m 2 --form type1", &out), 0);
    EXPECT_NE(out.find("\"group_order\": 108"), std::string::npos);
    EXPECT_NE(out.find("constituents: 7"), std::string::npos);
}

TEST(Cli, ExplicitDiagonal) {
    std::string out;
    EXPECT_EQ(runCli("decompose --p 3 --ell 1 --m 2 --form 1,-1", &out), 0);
    EXPECT_NE(out.find("\"type\": \"type1\""), std::string::npos);
    EXPECT_EQ(runCli("decompose --p 3 --ell 1 --m 2 --form 1,1", &out), 0);
    EXPECT_NE(out.find("\"type\": \"typedelta\""), std::string::npos);
}

TEST(Cli, EvenCharacteristicIsRejected) {
    std::string out;
    EXPECT_EQ(runCli("verify --p 2 --ell 1 --m 1 --form type1", &out), 1);
    EXPECT_NE(out.find("odd characteristic required"), std::string::npos);
}

TEST(Cli, LowCapYieldsResourceExit) {
    EXPECT_EQ(runCli("verify --p 3 --ell 1 --m 2 --form type1 --cap 50"), 3);
}

TEST(Cli, OrbitsCommand) {
    std::string out;
    EXPECT_EQ(runCli("orbits --p 3 --ell 1 --m 2 --form type1", &out), 0);
    EXPECT_NE(out.find("\"orbit_counts\": {\"V\": 7, \"V_minus_y2V\": 6, \"V_minus_yV\": 3}"),
              std::string::npos);
}

TEST(Cli, ExtensionFieldRun) {
    // q = 9 via F_3[t]/(t^2+1): U_1 is the norm-one group of order 2q = 18
    std::string out;
    EXPECT_EQ(runCli("decompose --p 3 --k 2 --modulus 1,0,1 --ell 1 --m 1 --form type1", &out), 0);
    EXPECT_NE(out.find("\"group_order\": 18"), std::string::npos);
    EXPECT_NE(out.find("constituents: 9"), std::string::npos);  // q^ell
}

TEST(Cli, CorruptedGoldenFails) {
    namespace fs = std::filesystem;
    fs::path dir = fs::path(::testing::TempDir()) / "goldens_corrupt";
    fs::create_directories(dir);
    for (const auto& entry : fs::directory_iterator(RAMWEIL_GOLDEN_DIR))
        fs::copy_file(entry.path(), dir / entry.path().filename(),
                      fs::copy_options::overwrite_existing);
    {
        std::ofstream f(dir / "ring_p7_l1.json", std::ios::app);
        f << "corrupted\n";
    }
    std::string out;
    EXPECT_NE(runCli("selftest --goldens " + dir.string(), &out), 0);
    EXPECT_NE(out.find("FAIL ring_p7_l1"), std::string::npos);
    EXPECT_NE(out.find("PASS ring_p5_l1"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, MissingFormIsUsageError) {
    EXPECT_EQ(runCli("decompose --p 3 --ell 1 --m 2 --form bogus"), 1);
}
