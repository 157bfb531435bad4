// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "eacc/cli.hpp"
#include "eacc/report.hpp"

using namespace eacc;
using report::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = eacc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/eacc_test_" + name;
}

}  // namespace

TEST_CASE("code documents round-trip") {
  const std::vector<codes::EaccCode> all{codes::build_spaceshared(3, 2, 2, 2u), codes::build_spaceshared(5, 3, 2),
                                         codes::build_separate(3, 2, 2), codes::build_separate(4, 3, 1),
                                         codes::build_superdense(3, 2, gf::Field::of_order(4)),
                                         codes::build_unassisted(4, 2, gf::Field::of_order(9))};
  for (const auto& code : all) {
    const Json doc = report::code_to_json(code);
    CHECK(doc["schema"] == "eacc-lab/1");
    const auto back = report::code_from_json(Json::parse(doc.dump()));
    CHECK(back.params().k == code.params().k);
    CHECK(back.params().q == code.params().q);
    CHECK(back.schedule() == code.schedule());
    CHECK(back.field()->spec() == code.field()->spec());
    REQUIRE(back.subcodes().size() == code.subcodes().size());
    for (std::size_t i = 0; i < back.subcodes().size(); ++i) {
      CHECK(back.subcodes()[i].generator == code.subcodes()[i].generator);
      CHECK(back.subcodes()[i].row == code.subcodes()[i].row);
    }
    CHECK(report::code_to_json(back).dump() == doc.dump());
    CHECK(verify::check_separate_encoders(back).separate == verify::check_separate_encoders(code).separate);
  }
}

TEST_CASE("worked example document contents") {
  const Json doc = report::code_to_json(codes::build_spaceshared(3, 2, 2, 2u));
  CHECK(doc["label"] == "[3,10/3,2;2]_8");
  CHECK(doc["params"]["k"] == "10/3");
  CHECK(doc["schedule"][2]["from"] == "A1,3");
  CHECK(doc["schedule"][2]["to"] == "Q2,2");
  CHECK(doc["subcodes"][0]["generator"] == Json::parse("[[1,0,1],[0,1,1]]"));
}

TEST_CASE("malformed documents are rejected") {
  const Json good = report::code_to_json(codes::build_spaceshared(3, 2, 2, 2u));
  auto broken = [&](auto mutate) {
    Json doc = good;
    mutate(doc);
    return doc;
  };
  CHECK_THROWS_AS(report::code_from_json(Json::array()), Error);
  CHECK_THROWS_AS(report::code_from_json(broken([](Json& d) { d["schema"] = "eacc-lab/0"; })), Error);
  CHECK_THROWS_AS(report::code_from_json(broken([](Json& d) { d["params"].erase("n"); })), Error);
  CHECK_THROWS_AS(report::code_from_json(broken([](Json& d) { d["params"]["k"] = "3"; })), Error);
  CHECK_THROWS_AS(report::code_from_json(broken([](Json& d) { d["schedule"][0]["to"] = "Q9,1"; })), Error);
  CHECK_THROWS_AS(report::code_from_json(broken([](Json& d) { d["schedule"][0]["to"] = "X1,1"; })), Error);
  CHECK_THROWS_AS(report::code_from_json(broken([](Json& d) { d["subcodes"][0]["generator"][0][0] = 2; })), Error);
  CHECK_THROWS_AS(report::code_from_json(broken([](Json& d) { d["field"]["primitive_poly"] = {1, 1}; })), Error);
  CHECK_THROWS_AS(report::code_from_json(broken([](Json& d) { d["subcodes"][0]["kind"] = "magic"; })), Error);
}

TEST_CASE("sweep CSV") {
  sweep::SweepOptions opts;
  opts.nmax = 3;
  const auto rows = sweep::run_sweep(opts);
  const std::string csv = report::sweep_csv(rows, false);
  CHECK(csv.rfind("n,d,c,qbar,q,k_achieved,eacc_bound,separate_bound,verified,separate,saturates,failures,error\n", 0) ==
        0);
  CHECK(csv.find("\n3,2,2,4,64,10/3,10/3,3,true,false,true,0,\n") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == rows.size() + 1);
  for (const auto& r : rows) {
    CHECK(r.k_achieved == r.eacc_bound);
    if (r.c == 0) CHECK(r.k_achieved == Rational(r.n - r.d + 1));
  }
}

TEST_CASE("cli: construct") {
  const auto r = run_cli({"construct", "--n", "3", "--d", "2", "--c", "2", "--qbar", "2"});
  CHECK(r.code == 0);
  CHECK(r.err == "[3,10/3,2;2]_8\n");
  CHECK(Json::parse(r.out)["label"] == "[3,10/3,2;2]_8");

  const auto plain = run_cli({"construct", "--n", "3", "--d", "2", "--c", "0"});
  CHECK(plain.code == 0);
  CHECK(plain.err == "[3,2,2;0]_4\n");

  const auto bad = run_cli({"construct", "--n", "3", "--d", "2", "--c", "4"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("inadmissible: c > n") != std::string::npos);

  CHECK(run_cli({"construct", "--n", "3"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"construct", "--n", "3", "--d", "2", "--c", "2", "--kind", "asymptotic"}).code == 2);
  const auto asym = run_cli({"construct", "--n", "3", "--d", "2", "--c", "2", "--kind", "asymptotic", "--q", "4096"});
  CHECK(asym.code == 0);
  CHECK(asym.err == "[3,10/3,2;2]_4096\n");
}

TEST_CASE("cli: verify from a file, byte-identical reruns") {
  const std::string path = temp_path("example.json");
  REQUIRE(run_cli({"construct", "--n", "3", "--d", "2", "--c", "2", "--qbar", "2", "--out", path}).code == 0);
  const auto r = run_cli({"verify", "--file", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("3 patterns × 1024 messages: PASS") != std::string::npos);
  const auto json1 = run_cli({"verify", "--file", path, "--format", "json", "--policy", "sampled", "--seed", "9"});
  const auto json2 = run_cli({"verify", "--file", path, "--format", "json", "--policy", "sampled", "--seed", "9"});
  CHECK(json1.out == json2.out);
  CHECK(Json::parse(json1.out)["schema"] == "eacc-lab/1");
  CHECK(Json::parse(json1.out)["messages_per_pattern"] == 1026);

  const auto over = run_cli({"verify", "--file", path, "--claimed-d", "3", "--format", "json"});
  CHECK(over.code == 1);
  CHECK(Json::parse(over.out)["failure_count"] == 3072);

  std::ofstream(temp_path("garbage.json")) << "{not json";
  CHECK(run_cli({"verify", "--file", temp_path("garbage.json")}).code == 2);
  CHECK(run_cli({"verify", "--file", temp_path("missing.json")}).code == 2);
  std::remove(path.c_str());
  std::remove(temp_path("garbage.json").c_str());
}

TEST_CASE("cli: bounds") {
  const auto r = run_cli({"bounds", "--n", "3", "--d", "2", "--c", "2", "--format", "json"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["eacc_bound"] == "10/3");
  CHECK(doc["separate_bound"] == "3");
  CHECK(doc["regime"] == "entanglement-rich");
  CHECK_FALSE(doc.contains("eacc_bound_float"));
  const auto f = run_cli({"bounds", "--n", "3", "--d", "2", "--c", "2", "--format", "json", "--float"});
  CHECK(Json::parse(f.out)["eacc_bound_float"].get<double>() == doctest::Approx(10.0 / 3.0));
  const auto table = run_cli({"bounds", "--n", "3", "--d", "2", "--c", "2"});
  CHECK(table.out.find("10/3") != std::string::npos);
  const auto code = run_cli({"bounds", "--n", "3", "--d", "2", "--c", "2", "--kind", "spaceshared", "--format", "json"});
  CHECK(Json::parse(code.out)["code"]["saturates_eacc"] == true);
  CHECK(run_cli({"bounds", "--n", "3", "--d", "5", "--c", "0"}).code == 2);
}

TEST_CASE("cli: audit") {
  const auto r = run_cli({"audit", "--n", "2", "--d", "2", "--c", "2", "--regime", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("weak-monotonicity") != std::string::npos);
  const auto j = run_cli({"audit", "--n", "3", "--d", "2", "--c", "0", "--qbar", "2", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(Json::parse(j.out)["terminal"] == 2.0);
  CHECK(Json::parse(j.out)["regime"] == 2);
  const auto refused = run_cli({"audit", "--n", "3", "--d", "2", "--c", "2", "--kind", "spaceshared", "--qbar", "2"});
  CHECK(refused.code == 2);
  CHECK(refused.err.find("separate encoders") != std::string::npos);
  CHECK(run_cli({"audit", "--n", "2", "--d", "2", "--c", "2", "--regime", "3"}).code == 2);
}

TEST_CASE("cli: sweep") {
  const auto r = run_cli({"sweep", "--nmax", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("3,2,2,4,64,10/3,10/3,3,true,false,true,0,") != std::string::npos);
  const auto again = run_cli({"sweep", "--nmax", "3"});
  CHECK(again.out == r.out);
  const auto j = run_cli({"sweep", "--nmax", "2", "--format", "json", "--float"});
  CHECK(Json::parse(j.out)["rows"].size() == 2 * 2 + 3 * 3);
  CHECK(run_cli({"sweep", "--nmax", "9"}).code == 2);
  const auto sep = run_cli({"sweep", "--nmax", "3", "--kind", "separate"});
  CHECK(sep.code == 0);
}

TEST_CASE("cli: EACC_LOG raises the log level") {
  setenv("EACC_LOG", "info", 1);
  const auto r = run_cli({"construct", "--n", "2", "--d", "1", "--c", "1"});
  unsetenv("EACC_LOG");
  CHECK(r.code == 0);
  CHECK(r.err.find("[info] construct took") != std::string::npos);
  const auto quiet = run_cli({"construct", "--n", "2", "--d", "1", "--c", "1"});
  CHECK(quiet.err.find("[info]") == std::string::npos);
}
