#include "gammatail/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace gammatail;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, FormatDoubleRoundTrips) {
  EXPECT_EQ(cli::format_double(0.1), "0.1");
  EXPECT_EQ(cli::format_double(2.0), "2");
  EXPECT_EQ(cli::format_double(-1.0 / 0.0), "-inf");
  const double v = 0.5578254003710746;
  EXPECT_EQ(std::stod(cli::format_double(v)), v);
}

TEST(Cli, Eval) {
  const CliRun r = run({"eval", "--a", "2", "--c", "-0.5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "a,c,p,err_bound,method");
  EXPECT_NE(r.out.find("2,-0.5,0.5578254003710746,"), std::string::npos);
}

TEST(Cli, EvalJsonWithOracle) {
  const CliRun r = run({"eval", "--a", "3", "--c", "0.2", "--json", "--use-oracle"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"p_oracle\""), std::string::npos);
  EXPECT_NE(r.out.find("\"method\": \"lower_series\""), std::string::npos);
}

TEST(Cli, ScanRows) {
  const CliRun r = run({"scan", "--c", "0", "--a-min", "1", "--a-max", "4", "--n", "4"});
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "a,p,delta,err_bound");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("1,0.3678794411714422,,", 0), 0u);
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(Cli, CertifyExitCodes) {
  const CliRun up = run({"certify", "--c", "0.5", "--n", "100"});
  EXPECT_EQ(up.code, 0);
  EXPECT_NE(up.out.find("\"direction\": \"increasing\""), std::string::npos);

  const CliRun mid = run({"certify", "--c", "-0.2", "--a-min", "0.21", "--a-max", "500", "--n", "600"});
  EXPECT_EQ(mid.code, 0);
  EXPECT_NE(mid.out.find("\"direction\": \"non_monotone\""), std::string::npos);
  EXPECT_NE(mid.out.find("\"kind\": \"valley\""), std::string::npos);

  const CliRun tight = run({"certify", "--c", "0.5", "--n", "10", "--strict-margin", "1e30"});
  EXPECT_EQ(tight.code, 3);
  EXPECT_NE(tight.out.find("\"status\": \"inconclusive\""), std::string::npos);
}

TEST(Cli, Median) {
  const CliRun r = run({"median", "--a", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("a,median,offset,residual\n1,0.693147180559945", 0), 0u);
}

TEST(Cli, MedianGrid) {
  const CliRun r = run({"median", "--a-min", "0.5", "--a-max", "50", "--n", "5", "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"offset_certified\": true"), std::string::npos);
}

TEST(Cli, Means) {
  const CliRun r = run({"means", "--x", "1", "--y", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "geo,L,G_tilde,arith,chain_ok\n2,2.1640425613334453,2.1708011270346415,2.5,true\n");
  EXPECT_EQ(run({"means", "--x", "3", "--y", "3"}).code, 2);
}

TEST(Cli, InvalidInput) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "-1", "--c", "0"}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1", "--c", "0", "--rel-tol", "-1"}).code, 2);
  EXPECT_EQ(run({"scan", "--c", "0", "--scale", "cubic"}).code, 2);
  EXPECT_EQ(run({"median", "--a", "0"}).code, 2);
}

TEST(Cli, HelpSucceeds) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("certify"), std::string::npos);
  EXPECT_EQ(r.out.find("inject-fault"), std::string::npos);
}

TEST(Cli, OutFile) {
  const std::string path = ::testing::TempDir() + "gammatail_cli_out.csv";
  const CliRun r = run({"eval", "--a", "1", "--c", "0", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::string head;
  std::getline(f, head);
  EXPECT_EQ(head, "a,c,p,err_bound,method");
  std::remove(path.c_str());
}
