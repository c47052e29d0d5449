// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cuntz/cli.hpp"
#include "cuntz/io.hpp"

using namespace cuntz;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "cuntz_cli_test";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("gen, dw, du and sandwich on interval fields") {
  const fs::path d = scratch();
  const std::string a = (d / "a.json").string(), b = (d / "b.json").string();
  REQUIRE(run({"gen", "--space", "interval", "--mesh", "16", "--n", "2", "--seed", "1", "--out", a}).code == 0);
  REQUIRE(run({"gen", "--space", "interval", "--mesh", "16", "--n", "3", "--seed", "2", "--out", b}).code == 0);

  const Run dw = run({"dw", a, b, "--grid", "512"});
  CHECK(dw.code == 0);
  const json r = json::parse(dw.out);
  CHECK(r["command"] == "dw");
  CHECK(r["grid"].get<double>() == 1.0 / 512);
  CHECK(r["result"]["hi"].get<double>() - r["result"]["lo"].get<double>() <= 2.0 / 512 + 1e-15);

  const Run du = run({"du", a, b});
  CHECK(du.code == 0);
  const double du_lo = json::parse(du.out)["result"]["lo"].get<double>();
  CHECK(du_lo >= r["result"]["lo"].get<double>());

  CHECK(run({"sandwich", a, b}).code == 0);
  // Reports carry no timestamps: reruns are byte-identical.
  CHECK(run({"dw", a, b}).out == run({"dw", a, b}).out);
}

TEST_CASE("exit codes") {
  const fs::path d = scratch();
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"dw", (d / "missing.json").string(), (d / "missing.json").string()}).code == 1);

  const std::string bad = (d / "bad.json").string();
  write_text_file(bad, R"({"space": {"kind": "interval", "resolution": 4}, "n": 1, "samples": "oops"})");
  const Run schema = run({"dw", bad, bad});
  CHECK(schema.code == 1);
  CHECK(schema.err.find("/samples") != std::string::npos);

  const std::string s = (d / "s.json").string();
  REQUIRE(run({"gen", "--space", "sphere", "--mesh", "42", "--n", "2", "--out", s}).code == 0);
  CHECK(run({"du", s, s}).code == 3);
  CHECK(run({"sphere-pair", "--mesh", "12", "--k", "3"}).code == 4);
  CHECK(run({"selftest", "--count", "12", "--tau", "1"}).code == 2);
  CHECK(run({"selftest", "--count", "0"}).code == 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sphere pair report and saved fields") {
  const fs::path d = scratch();
  const std::string a = (d / "pa.json").string(), b = (d / "pb.json").string(), out = (d / "sp.json").string();
  const Run r = run({"sphere-pair", "--mesh", "42", "--out", out, "--save-a", a, "--save-b", b, "--csv-dir",
                     (d / "csv").string()});
  CHECK(r.code == 0);
  const json rep = read_json_file(out);
  CHECK(rep["result"]["passed"] == true);
  CHECK(fs::exists(d / "csv" / "sphere_verdicts.csv"));
  CHECK(slurp(d / "csv" / "sphere_branches.csv").rfind("field,point", 0) == 0);
  CHECK(field_from_json(read_json_file(a)).n() == 2);
  // The pair is a d_W-equivalent pair at rank level: suspension separates it.
  const Run su = run({"suspend", a, b, "--eps", "0.2"});
  CHECK(su.code == 0);
  CHECK(json::parse(su.out)["result"]["suspended"]["lo"].get<double>() >= 0.02);

  // Custom eigenvalue functions violating min λ1 ≤ max λ2.
  CHECK(run({"sphere-pair", "--mesh", "42", "--lambda1", "0.9,0,0,0.05"}).code == 1);
}

TEST_CASE("villadsen and realize") {
  const Run v = run({"villadsen", "--stages", "3"});
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["result"]["stages"].size() == 3);
  CHECK(run({"villadsen", "--stages", "40"}).code == 1);

  const fs::path d = scratch();
  const std::string b = (d / "rb.json").string(), p = (d / "path.json").string(), a = (d / "ra.json").string();
  REQUIRE(run({"gen", "--space", "interval", "--mesh", "8", "--n", "2", "--seed", "4", "--out", b}).code == 0);
  // Path file: t ↦ rank of (b − t)_+ on a 1/32 grid.
  json path = {{"space", read_json_file(b)["space"]}, {"grid", json::array()}, {"images", json::array()}};
  const MatrixField fb = field_from_json(read_json_file(b));
  for (int k = 0; k < 32; ++k) {
    path["grid"].push_back(k / 32.0);
    path["images"].push_back(rank_field(fb, k / 32.0).ranks);
  }
  write_text_file(p, dump(path));
  CHECK(run({"realize", "--alpha", p, "--n", "2", "--eps", "0.125", "--out", a}).code == 0);
  const json ra = read_json_file(a);
  CHECK(ra["meta"]["result"]["path_dw"]["hi"].get<double>() <= 0.125 + 2.0 / 32);
  CHECK(field_from_json(ra).n() == 2);
  CHECK(run({"realize", "--alpha", p, "--n", "2", "--space", "circle"}).code == 1);
}
