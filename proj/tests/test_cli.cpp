#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aesq/cli.hpp"

using namespace aesq;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "aesq");
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("buchstab subcommand") {
  const auto r = run({"buchstab", "--u", "2.5"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "u,omega,bound");
  CHECK(ls[1].rfind("2.5,0.562186043243,", 0) == 0);
  CHECK(run({"buchstab", "--u", "0.9"}).code == 1);
}

TEST_CASE("figure1 subcommand") {
  const auto r = run({"figure1", "--tol", "1e-7", "--format", "csv"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 12);
  CHECK(ls[0] == "theta,label,C_tilde,published,abs_diff");
  const auto j = nlohmann::json::parse(run({"figure1", "--format", "json"}).out);
  CHECK(j["increasing"] == true);
  for (const auto& row : j["rows"]) CHECK(row["abs_diff"].get<double>() <= 0.003);
}

TEST_CASE("scan subcommand") {
  const auto r = run({"scan", "--s", "5", "--X", "40", "--H", "inf", "--window", "20:60", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["exceptions"] == nlohmann::json::array({29, 53}));
  const auto c = run({"scan", "--s", "5", "--X", "40", "--window", "20:60"});
  const auto ls = lines(c.out);
  CHECK(ls[0] == "n,in_H,rep_count");
  CHECK(ls.size() == 42);
  CHECK(ls[1 + 29 - 20] == "29,true,0");
  CHECK(run({"scan", "--s", "4", "--X", "10000", "--H", "1", "--window", "9000:10000"}).code == 1);
}

TEST_CASE("count, window, arcs, singular-series, decomp-check") {
  auto r = run({"count", "--n", "125", "--s", "5"});
  CHECK(lines(r.out)[1] == "125,5,inf,true,11");
  r = run({"count", "--n", "125", "--s", "5", "--H-exp", "0", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["count"] == 1);
  r = run({"window", "--lo", "4", "--hi", "12", "--s", "3"});
  CHECK(r.out.find("\n123,3\n") != std::string::npos);
  r = run({"arcs", "--P", "3", "--Q", "100", "--classify", "0.3351"});
  CHECK(lines(r.out)[1] == "0.3351,major,3,1");
  r = run({"singular-series", "--n", "100", "--s", "4", "--P", "2"});
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(2.0));
  r = run({"decomp-check", "--z", "3", "--U", "10", "--V", "30", "--sqrt-x1", "50", "--lo", "50", "--hi", "200"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["failures"]["a"] == 0);
  CHECK(j["first_counterexample"].is_null());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"count", "--n", "3", "--s", "4"}).code == 1);
  const auto inf = run({"constants", "--context", "thm5", "--s", "7", "--theta", "0.8"});
  CHECK(inf.code == 2);
  CHECK(inf.err.find("(s-4)*sigma > 1-theta") != std::string::npos);
  CHECK(lines(inf.err).size() == 1);
  CHECK(run({"constants", "--theta", "0.5"}).code == 1);
}

TEST_CASE("atomic output file") {
  const auto path = std::filesystem::temp_directory_path() / "aesq_cli_test_out.csv";
  std::filesystem::remove(path);
  const auto r = run({"buchstab", "--u", "1.5", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "u,omega,bound\n1.5,0.666666666667,0.666666666667\n");
  std::filesystem::remove(path);
}

TEST_CASE("repeat runs are identical") {
  const std::vector<std::string> cmd = {"decomp-check", "--theta", "0.9", "--x", "100000"};
  auto a = cmd, b = cmd;
  a.push_back("--threads");
  a.push_back("1");
  b.push_back("--threads");
  b.push_back("3");
  CHECK(run(a).out == run(b).out);
  CHECK(run(a).out == run(a).out);
}
