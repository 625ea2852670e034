#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "holo/arith_parser.hpp"
#include "holo/serialize.hpp"

using namespace holo;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "holo_cli_" + name; }

}  // namespace

TEST(Cli, AnnihilatorLaguerre) {
  auto r = run({"annihilator", "--expr", "laguerreL(n,a,x)", "--algebra", "S[n],S[a],Der[x]", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto g = gb_from_json(json::parse(r.out));
  EXPECT_EQ(g.size(), 3u);
  auto alg = g.algebra();
  for (const char* t : {"(n+1)*S[n] - x*Der[x] + (-a-n+x-1)", "S[a] + Der[x] - 1", "x*Der[x]^2 + (a-x+1)*Der[x] + n"})
    EXPECT_TRUE(reduce(parse_operator(t, alg), g).is_zero()) << t;
}

TEST(Cli, PrintedOperatorsReparse) {
  auto r = run({"annihilator", "--expr", "chebyshevT(n, 1-x^2*y)/sqrt(1-x^2)", "--algebra", "S[n],Der[x],Der[y]"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto json_start = r.out.find('{');
  auto g = gb_from_json(json::parse(r.out.substr(json_start)));
  std::istringstream text(r.out.substr(0, json_start));
  std::string line;
  std::getline(text, line);
  std::size_t i = 0;
  while (std::getline(text, line)) {
    ASSERT_LT(i, g.size());
    EXPECT_EQ(parse_operator(line, g.algebra()), g.elements()[i++]);
  }
  EXPECT_EQ(i, g.size());
}

TEST(Cli, ReduceExitCodes) {
  auto path = temp_path("lag.json");
  ASSERT_EQ(run({"annihilator", "--expr", "laguerreL(n,a,x)", "--algebra", "S[n],S[a],Der[x]", "--output", path}).code, 0);
  auto zero = run({"reduce", "--ideal", path, "--op", "x*Der[x]^2 + (a-x+1)*Der[x] + n", "--format", "text"});
  EXPECT_EQ(zero.code, 0);
  EXPECT_EQ(zero.out, "0\n");
  auto nonzero = run({"reduce", "--ideal", path, "--op", "S[a] - 1", "--format", "text"});
  EXPECT_EQ(nonzero.code, 3);
  EXPECT_EQ(nonzero.out, "-Der[x]\n");
  std::remove(path.c_str());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  auto bad = run({"annihilator", "--expr", "binomial(n k)", "--algebra", "S[n],S[k]"});
  EXPECT_EQ(bad.code, 1);
  auto j = json::parse(bad.err);
  EXPECT_EQ(j["error"], "parse");
  EXPECT_NE(j["message"].get<std::string>().find("column 12"), std::string::npos);
  EXPECT_EQ(run({"ct", "--expr", "binomial(n,k)", "--algebra", "S[n],S[k]"}).code, 1);
  EXPECT_EQ(run({"gb", "--ops", "S[n]-1", "--algebra", "S[n]", "--set", "no.such.key=1"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CapExceeded) {
  auto r = run({"ct", "--algo", "heuristic", "--expr", "binomial(n,k)^2", "--algebra", "S[n],S[k]", "--deltas", "S[k]-1",
                "--target", "S[n]", "--set", "heuristic.max_order=0"});
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_EQ(json::parse(r.err)["error"], "cap_exceeded");
}

TEST(Cli, TelescopingAndVerify) {
  auto path = temp_path("ct.json");
  auto r = run({"ct", "--algo", "slow", "--expr", "binomial(n,k)", "--algebra", "S[n],S[k]", "--deltas", "S[k]-1",
                "--target", "S[n]", "--bounds", "k=0..n", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("certificate identity: verified"), std::string::npos);
  EXPECT_NE(r.out.find("S[n] - 2"), std::string::npos);
  auto v = run({"verify", "--ct", path, "--summand", "binomial(n,k)", "--bounds", "k=0..n", "--grid", "n=0..10",
                "--closed-form", "2^n", "--format", "json"});
  EXPECT_EQ(v.code, 0) << v.out << v.err;
  EXPECT_EQ(json::parse(v.out)["checked"], 11);
  auto wrong = run({"verify", "--ct", path, "--summand", "binomial(n,k)", "--bounds", "k=0..n", "--grid", "n=0..3",
                    "--closed-form", "3^n", "--format", "json"});
  EXPECT_EQ(wrong.code, 3);
  auto failures = json::parse(wrong.out)["failures"];
  EXPECT_EQ(failures.size(), 3u);
  EXPECT_EQ(failures[0]["operator"], 1);
  std::remove(path.c_str());
}

TEST(Cli, IteratedSum) {
  auto r = run({"ct", "--expr", "sum(sum(binomial(n,k)*binomial(k,j), j, 0, k), k, 0, n)", "--algebra", "S[n],S[k],S[j]",
                "--target", "S[n]", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["telescopers"], json::array({"S[n] - 3"}));
  EXPECT_EQ(j["levels"].size(), 2u);
  EXPECT_EQ(j["assumptions"].size(), 2u);
}

TEST(Cli, VerifyAnnihilator) {
  auto ok = run({"verify", "--expr", "laguerreL(n,a,x)", "--algebra", "S[n],S[a],Der[x]", "--grid", "n=0..4;a=1..3;x=1/2,2"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  auto bad = run({"verify", "--ops", "S[n] - 2", "--algebra", "S[n]", "--expr", "3^n", "--grid", "n=0..2", "--format", "text"});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.out.find("residue 3"), std::string::npos) << bad.out;
}

TEST(Cli, FindRelationAndClosure) {
  auto fr = run({"find-relation", "--expr", "laguerreL(n,a,x)", "--algebra", "S[n],S[a],Der[x]", "--format", "json"});
  ASSERT_EQ(fr.code, 0) << fr.err;
  EXPECT_FALSE(json::parse(fr.out)["operators"].empty());
  auto plus = run({"closure", "--op", "plus", "--expr", "x^2", "--expr2", "1/(1+x)", "--algebra", "Der[x]", "--format", "json"});
  ASSERT_EQ(plus.code, 0) << plus.err;
  auto g = gb_from_json(json::parse(plus.out));
  EXPECT_EQ(g.size(), 1u);
  auto apply = run({"closure", "--op", "apply", "--expr", "exp(x)", "--algebra", "Der[x]", "--operator", "Der[x] + x", "--format", "json"});
  ASSERT_EQ(apply.code, 0) << apply.err;
  auto subst = run({"closure", "--op", "subst", "--expr", "exp(x)", "--algebra", "Der[x]", "--var", "x", "--value", "y^2",
                    "--target-algebra", "Der[y]", "--format", "json"});
  ASSERT_EQ(subst.code, 0) << subst.err;
  auto s = gb_from_json(json::parse(subst.out));
  EXPECT_TRUE(reduce(parse_operator("Der[y] - 2*y", s.algebra()), s).is_zero());
}

TEST(Cli, ConfigFile) {
  auto path = temp_path("holo.conf");
  {
    std::ofstream f(path);
    f << "# caps\nheuristic.max_order = 0\n\nexecution = serial\n";
  }
  auto cfg = cli::read_config(path);
  EXPECT_EQ(cfg.at("heuristic.max_order"), "0");
  EXPECT_EQ(cfg.at("execution"), "serial");
  auto r = run({"--config", path, "ct", "--expr", "binomial(n,k)", "--algebra", "S[n],S[k]", "--deltas", "S[k]-1", "--target", "S[n]"});
  EXPECT_EQ(r.code, 2);
  std::remove(path.c_str());
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"ct", "--expr", "binomial(n,k)^2", "--algebra", "S[n],S[k]", "--deltas", "S[k]-1", "--target", "S[n]"};
  EXPECT_EQ(run(args).out, run(args).out);
}
