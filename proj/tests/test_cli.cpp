#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "theta/cli.hpp"
#include "theta/json_io.hpp"
#include "theta/random.hpp"

using namespace theta;

TEST(Cli, HomCount) {
  CliResult const r = run_cli({"hom", "--n", "1", "--src", "[*]", "--dst", "[*]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.output, "3\n");
}

TEST(Cli, SegalCheck) {
  EXPECT_EQ(run_cli({"segal-check", "--ua", "point"}).code, 0);
  CliResult const r = run_cli({"segal-check", "--example", "free-horn"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("k=2"), std::string::npos);
}

TEST(Cli, MalformedInputExitsTwo) {
  CliResult const a = run_cli({"hom", "--n", "1", "--src", "[*", "--dst", "[*]"});
  EXPECT_EQ(a.code, 2);
  EXPECT_FALSE(a.error.empty());
  EXPECT_EQ(run_cli({"no-such-command"}).code, 2);
  EXPECT_EQ(run_cli({"hom", "--n", "9", "--src", "[*]", "--dst", "[*]"}).code, 2);
  EXPECT_EQ(run_cli({"roundtrip", "--input", "/nonexistent/file.json"}).code, 2);
}

TEST(Cli, NerveOfUA) {
  CliResult const r = run_cli({"nerve", "--ua", "[1]", "--max-p", "2"});
  EXPECT_EQ(r.code, 0);
  // Level p of the nerve of UA(Delta[1]) has 2 + p |Delta[1](c)| cells.
  EXPECT_NE(r.output.find("p=1: 4 5 6"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("strict"), std::string::npos);
}

TEST(Cli, LiftSuites) {
  CliResult const d = run_cli({"lift", "--suite", "discrete-n1", "--count", "3", "--seed", "1"});
  EXPECT_EQ(d.code, 0) << d.output;
  EXPECT_NE(d.output.find("3/3"), std::string::npos);
  EXPECT_EQ(run_cli({"lift", "--suite", "surjective", "--count", "5"}).code, 0);
}

TEST(Cli, FuzzIsDeterministicAcrossThreads) {
  std::vector<std::string> const args{"fuzz", "--suite", "laws", "--seed", "5", "--count", "6",
                                      "--format", "json"};
  ::unsetenv("THETA_CALC_THREADS");
  CliResult const one = run_cli(args);
  ::setenv("THETA_CALC_THREADS", "3", 1);
  CliResult const three = run_cli(args);
  ::unsetenv("THETA_CALC_THREADS");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.output, three.output);
  EXPECT_EQ(run_cli(args).output, one.output);
}

TEST(Cli, RoundtripFile) {
  Rng                         rng(71);
  Presentation const          p    = random_presentation(Site({1, 2}), RandomSpec{1, 3, 2, 2, {}}, rng);
  std::filesystem::path const file = std::filesystem::temp_directory_path() / "theta_cli_roundtrip.json";
  {
    std::ofstream out(file);
    out << presentation_to_json(p).dump();
  }
  CliResult const r = run_cli({"roundtrip", "--input", file.string(), "--format", "json"});
  std::filesystem::remove(file);
  EXPECT_EQ(r.code, 0) << r.error;
  EXPECT_NE(r.output.find("\"window\""), std::string::npos);
}

TEST(Cli, JsonReportsCarryWindow) {
  CliResult const r = run_cli({"segal-check", "--ua", "point", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  Json const j = parse_json(r.output);
  EXPECT_TRUE(j.contains("window"));
  EXPECT_TRUE(j["window"].contains("degree"));
}
