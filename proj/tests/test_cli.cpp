#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rcprod/cli.hpp"

using namespace rcprod;
using namespace rcprod::cli;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run(args, o, e);
  return {c, o.str(), e.str()};
}

std::string shell_quote(const std::string& s) {
  std::string r = "'";
  for (char c : s) r += (c == '\'') ? std::string("'\\''") : std::string(1, c);
  return r + "'";
}

// Runs the installed binary; returns the exit status and stdout.
Outcome spawn(const std::vector<std::string>& args) {
  const char* bin = std::getenv("RCPROD_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = shell_quote(bin);
  for (auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out, ""};
}

const std::vector<std::string> kRay = {"rayclass", "--field", "Q(sqrt:-1)", "--modulus", "(3)"};

}  // namespace

TEST_CASE("argument parsing") {
  auto p = parse_args(kRay);
  CHECK(p.command == "rayclass");
  CHECK(p.field == "Q(sqrt:-1)");
  CHECK(p.modulus == "(3)");
  auto f = parse_args({"--format", "csv", "field-info", "--field", "Q(sqrt:2)"});
  CHECK(f.command == "field-info");
  CHECK(f.format == "csv");
  auto v = parse_args({"verify", "ideal-count", "--field", "Q(sqrt:-1)", "--modulus", "(3)", "--xs", "100,1000"});
  CHECK(v.kind == "ideal-count");
  CHECK(v.xs == std::vector<i64>{100, 1000});
  CHECK_THROWS_AS(parse_args({"nope"}), UsageError);
  CHECK_THROWS_AS(parse_args({"rayclass", "--bogus"}), UsageError);
  CHECK_THROWS_AS(parse_args({"field-info", "--field", "Q(sqrt:4)"}), ValidationError);
}

TEST_CASE("usage and validation exit 2") {
  auto e = call({});
  CHECK(e.code == kUsage);
  CHECK(e.err.find("Usage") != std::string::npos);
  CHECK(call({"frobnicate"}).code == kUsage);
  auto bad = call({"field-info", "--field", "Q(sqrt:4)"});
  CHECK(bad.code == kUsage);
  CHECK(bad.err.find("4") != std::string::npos);
  CHECK(call({"rayclass", "--field", "Q(sqrt:-1)", "--modulus", "(0)"}).code == kUsage);
}

TEST_CASE("successful commands exit 0") {
  auto r = call(kRay);
  CHECK(r.code == kOk);
  auto j = json::parse(r.out);
  CHECK(j["order"] == 2);
  CHECK(j["invariants"] == json::array({2}));

  auto fi = call({"field-info", "--field", "Q(sqrt:3)"});
  CHECK(fi.code == kOk);
  CHECK(json::parse(fi.out)["h_narrow"] == 2);

  auto cover = call({"verify", "cover", "--field", "Q(sqrt:-1)", "--modulus", "(3)", "--xmax", "14"});
  CHECK(cover.code == kOk);
  auto cj = json::parse(cover.out);
  CHECK(cj["extrema"]["covered"] == true);
  CHECK(cj["params"].contains("seed"));

  auto sc = call({"sieve-check", "--field", "Q(sqrt:-1)", "--modulus", "(3)", "--z", "5"});
  CHECK(sc.code == kOk);
  CHECK(json::parse(sc.out)["reciprocal"]["lhs"] == "2/5");

  auto pr = call({"primes", "--field", "Q(sqrt:-1)", "--modulus", "(3)", "--xmax", "10", "--include-ramified"});
  CHECK(pr.code == kOk);
}

TEST_CASE("violations exit 1") {
  auto r = call({"--inject-violation", "verify", "degree-one-ideal", "--field", "Q(sqrt:-1)", "--modulus", "(3)"});
  CHECK(r.code == kViolated);
  CHECK(json::parse(r.out)["verdict"] == "violated");
  // The flag does not leak into later runs.
  CHECK(call({"verify", "degree-one-ideal", "--field", "Q(sqrt:-1)", "--modulus", "(3)"}).code == kOk);
}

TEST_CASE("factoring cap exits 3 with a structured error") {
  auto r = call({"--factor-cap", "10", "rayclass", "--field", "Q(sqrt:-1)", "--modulus", "(1000003)"});
  CHECK(r.code == kUndecided);
  auto e = json::parse(r.err);
  CHECK(e["error"] == "factoring-cap");
  CHECK(e["cap"] == 10);
  CHECK(call(kRay).code == kOk);
}

TEST_CASE("output formats") {
  std::vector<std::string> base = {"verify", "three-primes", "--field", "Q(sqrt:-1)", "--modulus", "(3)", "--xmax",
                                   "100"};
  auto csv = base;
  csv.insert(csv.begin(), {"--format", "csv"});
  auto c = call(csv);
  CHECK(c.code == kOk);
  std::istringstream lines(c.out);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header.rfind("experiment,field,modulus,verdict", 0) == 0);
  int rows = 0;
  while (std::getline(lines, row))
    if (!row.empty()) ++rows;
  CHECK(rows == 2);

  auto text = base;
  text.insert(text.begin(), {"--format", "text"});
  auto t = call(text);
  CHECK(t.code == kOk);
  CHECK(t.out.find("verdict=holds") != std::string::npos);

  auto fic = call({"--format", "csv", "field-info", "--field", "Q(sqrt:5)"});
  CHECK(fic.out.find("disc,5") != std::string::npos);
  CHECK(call({"--format", "xml", "field-info", "--field", "Q(sqrt:5)"}).code == kUsage);
}

TEST_CASE("deterministic output") {
  std::vector<std::string> args = {"verify", "kernel-prime", "--field", "Q(sqrt:-5)", "--modulus", "(7)"};
  CHECK(call(args).out == call(args).out);
  auto a = args;
  a.insert(a.begin(), {"--threads", "4"});
  CHECK(call(a).out == call(args).out);
  auto timed = call({"--timing", "field-info", "--field", "Q(sqrt:-1)"});
  CHECK(timed.code == kOk);
  CHECK(call(args).out.find("runtime_ms") == std::string::npos);
}

TEST_CASE("report written to --out") {
  auto path = std::filesystem::temp_directory_path() / "rcprod_cli_test.json";
  std::filesystem::remove(path);
  auto r = call({"--out", path.string(), "field-info", "--field", "Q(sqrt:-1)"});
  CHECK(r.code == kOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(json::parse(ss.str())["disc"] == -4);
  std::filesystem::remove(path);
}

TEST_CASE("binary exit statuses and byte-identical reruns") {
  CHECK(spawn({}).code == 2);
  CHECK(spawn(kRay).code == 0);
  CHECK(spawn({"--inject-violation", "verify", "cover", "--field", "Q(sqrt:-1)", "--modulus", "(3)", "--xmax", "14"})
            .code == 1);
  CHECK(spawn({"--factor-cap", "10", "rayclass", "--field", "Q(sqrt:-1)", "--modulus", "(1000003)"}).code == 3);
  std::vector<std::string> sweep = {"--seed", "7", "verify", "ideal-count", "--field", "Q(sqrt:2)", "--modulus",
                                    "(5)", "--xs", "100,1000"};
  auto a = spawn(sweep), b = spawn(sweep);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"seed\": 7") != std::string::npos);
}
