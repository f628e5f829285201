#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <zerofn/poly.hpp>
#include <zerofn/ring.hpp>

#include "cli.hpp"
#include "test_rings.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = zerofn::cli::run_command(std::move(args), out, err);
  return RunResult{code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const std::string kTablePath = "test_cli_table.json";

void write_table_file() {
  zerofn::TableData data = zerofn::testing::f2su_table();
  std::ofstream f(kTablePath);
  auto rows = [&](const std::vector<zerofn::Elem>& flat) {
    std::string s;
    for (std::size_t a = 0; a < 8; ++a) {
      s += a ? ",[" : "[";
      for (std::size_t b = 0; b < 8; ++b)
        s += (b ? "," : "") + std::to_string(flat[a * 8 + b]);
      s += "]";
    }
    return s;
  };
  f << "{\"order\":8,\"zero\":0,\"one\":1,\"add\":[" << rows(data.add)
    << "],\"mul\":[" << rows(data.mul) << "]}";
}

}  // namespace

TEST_CASE("ring-info reports the residue structure") {
  RunResult r = run({"ring-info", "--ring", "Z/9", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  json doc = json::parse(r.out);
  CHECK(doc["command"] == "ring-info");
  CHECK(doc["ring"]["label"] == "Z/3^2");
  CHECK(doc["ring"]["kind"] == "modular");
  CHECK(doc["ring"]["order"] == 9);
  CHECK(doc["ring"]["residue_order"] == 3);
  CHECK(doc["ring"]["nilpotency_index"] == 2);
  CHECK(doc["ring"]["field"] == false);
  CHECK(doc["result"]["maximal_ideal"] == json::array({0, 3, 6}));
  CHECK(doc["result"]["coset_representatives"] == json::array({0, 1, 2}));
  CHECK(doc["result"]["principal_generator"] == 3);

  RunResult t = run({"ring-info", "--ring", "F2[t]/t^3"});
  CHECK(t.code == 0);
  CHECK(contains(t.out, "ring: F2[t]/t^3"));
  CHECK(contains(t.out, "kind: chain"));
  CHECK(contains(t.out, "order: 8"));
  CHECK(contains(t.out, "nilpotency index e: 3"));
  CHECK(contains(t.out, "principal generator of m: 2 (t)"));
}

TEST_CASE("null-gens certifies the whole-ring ideal of Z/9") {
  RunResult r = run({"null-gens", "--ring", "Z/3^2", "--format", "json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  const json& res = doc["result"];
  CHECK(res["status"] == "verified");
  CHECK(res["ideal"]["form"] == "power");
  CHECK(res["ideal"]["power"] == 2);
  CHECK(res["ideal"]["m_generator"] == 3);
  CHECK(res["ideal"]["base"] == "1*x^3 + 6*x^2 + 2*x");
  CHECK(res["ideal"]["generators"] ==
        json::array({"3*x^3 + 6*x",
                     "1*x^6 + 3*x^5 + 4*x^4 + 6*x^3 + 4*x^2"}));
  CHECK(res["verification"]["degree_bound"] == 7);
  CHECK(res["verification"]["candidates"] == 4782969);
  CHECK(res["verification"]["members"] == 243);
  CHECK(res["verification"]["mismatches"] == 0);
  CHECK(res["verification"]["certified"] == true);
  CHECK(res["function_count"] == "19683");

  zerofn::Ring ring = zerofn::parse_ring_spec("Z/3^2");
  for (const auto& g : res["ideal"]["generators"]) {
    std::string s = g.get<std::string>();
    CHECK(zerofn::parse_polynomial(ring, s).to_string() == s);
  }
}

TEST_CASE("null-gens renders a literal representative choice") {
  RunResult r = run({"null-gens", "--ring", "Z/3^2", "--reps", "0,1,8"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(1*x^3 + 8*x, 3)^2"));
  CHECK(contains(r.out, "3*x^3 + 6*x"));
  CHECK(contains(r.out, "1*x^6 + 7*x^4 + 1*x^2"));
  CHECK(contains(r.out, "status: verified"));
}

TEST_CASE("null-gens maximal target on Z/8") {
  RunResult r = run({"null-gens", "--ring", "Z/8", "--target", "maximal",
                     "--bound", "5", "--format", "json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  const json& res = doc["result"];
  CHECK(res["ideal"]["form"] == "power-plus");
  CHECK(res["ideal"]["generators"] ==
        json::array({"4*x", "2*x^2", "1*x^3", "1*x^2 + 6*x"}));
  CHECK(res["verification"]["members"] == 1024);
  CHECK(res["status"] == "verified");
  CHECK_FALSE(res.contains("function_count"));
}

TEST_CASE("membership reports violations with the offending layer") {
  RunResult no = run({"membership", "--ring", "Z/8", "--target", "maximal",
                      "--poly", "x^2"});
  CHECK(no.code == 0);
  CHECK(contains(no.out, "member: no"));
  CHECK(contains(no.out,
                 "violation: component 1, coefficient 0, valuation 1, "
                 "required 2"));

  RunResult yes = run({"membership", "--ring", "Z/8", "--target", "maximal",
                       "--poly", "4x", "--format", "json"});
  CHECK(yes.code == 0);
  json doc = json::parse(yes.out);
  CHECK(doc["result"]["member"] == true);
  CHECK(doc["result"]["expansion"] == json::array({"0", "4"}));
  CHECK_FALSE(doc["result"].contains("violation"));
}

TEST_CASE("membership against the literal pi base") {
  RunResult r = run({"membership", "--ring", "Z/3^2", "--reps", "0,1,8",
                     "--poly", "x^3-x", "--format", "json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["member"] == false);
  CHECK(doc["result"]["violation"]["component"] == 1);
  CHECK(doc["result"]["violation"]["coefficient_index"] == 0);
  CHECK(doc["result"]["violation"]["valuation"] == 0);
  CHECK(doc["result"]["violation"]["required"] == 1);
}

TEST_CASE("factor walks the lifting traces") {
  RunResult r = run({"factor", "--ring", "Z/5^3", "--poly",
                     "x^5+5x^4+40x^3+85x^2+24x+50"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "roots: 50 31 72 18 74"));
  CHECK(contains(r.out, "trace from 1: 1 81 31 31"));
  CHECK(contains(r.out, "product matches: yes"));

  RunResult j = run({"factor", "--ring", "Z/5^3", "--poly",
                     "x^5+5x^4+40x^3+85x^2+24x+50", "--format", "json"});
  json doc = json::parse(j.out);
  CHECK(doc["result"]["roots"] == json::array({50, 31, 72, 18, 74}));
  CHECK(doc["result"]["traces"][1]["iterates"] ==
        json::array({1, 81, 31, 31}));
  CHECK(doc["result"]["traces"][1]["difference_valuations"] ==
        json::array({1, 2, 3}));
  CHECK(doc["result"]["product_matches"] == true);

  RunResult bad = run({"factor", "--ring", "Z/5^3", "--poly", "x^2"});
  CHECK(bad.code == 3);
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("decompose splits a zero function through pi") {
  RunResult r = run({"decompose", "--ring", "Z/8", "--poly",
                     "x^4+6*x^3+7*x^2+2*x"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "pi: 1*x^2 + 7*x"));
  CHECK(contains(r.out, "p_0: 1*x^2 + 6*x"));
  CHECK(contains(r.out, "p_1: 0"));
  CHECK(contains(r.out, "reconstructed: yes"));

  RunResult bad = run({"decompose", "--ring", "Z/8", "--poly", "x"});
  CHECK(bad.code == 3);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("decompose primary components of Z/9") {
  RunResult r = run({"decompose", "--ring", "Z/9", "--format", "json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  const json& comps = doc["result"]["components"];
  REQUIRE(comps.size() == 3);
  CHECK(comps[0]["center"] == 0);
  CHECK(comps[0]["generators"] == json::array({"3*x", "1*x^2"}));
  CHECK(comps[1]["generators"] ==
        json::array({"3*x + 6", "1*x^2 + 7*x + 1"}));
  CHECK(comps[2]["generators"] ==
        json::array({"3*x + 3", "1*x^2 + 5*x + 4"}));
  CHECK(comps[0]["witness_value_at_center"] != 0);
}

TEST_CASE("decompose table rings via slice generators") {
  write_table_file();
  RunResult bare = run({"decompose", "--ring", "table:" + kTablePath});
  CHECK(bare.code == 3);
  RunResult r = run({"decompose", "--ring", "table:" + kTablePath,
                     "--slice-gens", "--format", "json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["result"]["components"].size() == 2);
  std::remove(kTablePath.c_str());
}

TEST_CASE("intersect-check tells zero functions from the rest") {
  RunResult no = run({"intersect-check", "--ring", "Z/9", "--poly", "x^3-x",
                      "--format", "json"});
  CHECK(no.code == 0);
  json doc = json::parse(no.out);
  CHECK(doc["result"]["divisible_by_all"] == false);
  CHECK(doc["result"]["pi_polynomials_total"] == 27);
  CHECK(doc["result"]["failing_representatives"] == json::array({0, 1, 2}));
  CHECK(doc["result"]["failing_pi"] == "1*x^3 + 6*x^2 + 2*x");
  CHECK(doc["result"]["failing_remainder"] == "3*x^2 + 6*x");

  RunResult yes = run({"intersect-check", "--ring", "Z/9", "--poly",
                       "3x^3-3x"});
  CHECK(yes.code == 0);
  CHECK(contains(yes.out, "divisible by all: yes"));
  CHECK(contains(yes.out, "(27 of 27 pi-polynomials)"));

  RunResult sampled = run({"intersect-check", "--ring", "Z/27", "--poly",
                           "0", "--sample", "50", "--seed", "9",
                           "--format", "json"});
  CHECK(sampled.code == 0);
  json sdoc = json::parse(sampled.out);
  CHECK(sdoc["config"]["mode"] == "sample");
  CHECK(sdoc["result"]["pi_polynomials_checked"] == 50);
  CHECK(sdoc["result"]["divisible_by_all"] == true);
}

TEST_CASE("count agrees across methods") {
  RunResult both = run({"count", "--ring", "Z/9", "--method", "both",
                        "--format", "json"});
  CHECK(both.code == 0);
  json doc = json::parse(both.out);
  CHECK(doc["result"]["normal_form"] == "19683");
  CHECK(doc["result"]["exhaustive"] == "19683");
  CHECK(doc["result"]["agreement"] == true);

  RunResult normal = run({"count", "--ring", "Z/5^2"});
  CHECK(normal.code == 0);
  CHECK(contains(normal.out, "normal form count: 30517578125"));

  write_table_file();
  RunResult table = run({"count", "--ring", "table:" + kTablePath,
                         "--format", "json"});
  CHECK(table.code == 0);
  json tdoc = json::parse(table.out);
  CHECK(tdoc["result"]["method_used"] == "exhaustive");
  std::remove(kTablePath.c_str());
}

TEST_CASE("classify prints both verdicts") {
  RunResult field = run({"classify", "--ring", "Z/3", "--format", "json"});
  CHECK(field.code == 0);
  json fdoc = json::parse(field.out);
  CHECK(fdoc["result"]["field"] == true);
  CHECK(fdoc["result"]["null_ideal_of_maximal"]["principal"] == true);
  CHECK(fdoc["result"]["null_ideal_of_maximal"]["principal_generator"] ==
        "1*x");
  CHECK(fdoc["result"]["null_ideal_of_ring"]["principal_generator"] ==
        "1*x^3 + 2*x");
  CHECK_FALSE(fdoc["result"].contains("principality_failure"));

  RunResult local = run({"classify", "--ring", "Z/4", "--format", "json"});
  CHECK(local.code == 0);
  json ldoc = json::parse(local.out);
  CHECK(ldoc["result"]["field"] == false);
  CHECK(ldoc["result"]["null_ideal_of_maximal"]["principal"] == false);
  CHECK(ldoc["result"]["null_ideal_of_ring"]["principal"] == false);
  CHECK(ldoc["result"]["annihilator"] == 2);
  CHECK(ldoc["result"]["principality_failure"]["pi_value"] != 0);

  RunResult text = run({"classify", "--ring", "Z/4"});
  CHECK(contains(text.out, "principality failure: pi("));
}

TEST_CASE("verify runs the battery end to end") {
  RunResult r = run({"verify", "--ring", "F2[t]/t^3", "--bound", "5"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "[pass] null-maximal-slice:"));
  CHECK(contains(r.out, "[pass] classification:"));
  CHECK(contains(r.out, "result: pass (10 pass, 0 approximate, 0 skipped, "
                        "0 fail)"));

  write_table_file();
  RunResult table = run({"verify", "--ring", "table:" + kTablePath,
                         "--format", "json"});
  CHECK(table.code == 0);
  json doc = json::parse(table.out);
  CHECK(doc["result"]["passed"] == true);
  CHECK(doc["result"]["checks"][0]["name"] == "null-maximal-slice");
  CHECK(doc["result"]["checks"][0]["status"] == "approximate");
  CHECK(doc["result"]["checks"][8]["name"] == "function-count");
  CHECK(doc["result"]["checks"][8]["status"] == "skipped");
  std::remove(kTablePath.c_str());
}

TEST_CASE("verify output is byte-identical run to run") {
  std::vector<std::string> argv{"verify", "--ring",  "Z/3^2", "--seed", "11",
                                "--bound", "5",      "--format", "json"};
  RunResult a = run(argv);
  RunResult b = run(argv);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  std::vector<std::string> text_argv{"verify", "--ring", "Z/8", "--bound",
                                     "4"};
  CHECK(run(text_argv).out == run(text_argv).out);
}

TEST_CASE("parallel scans do not change the result payload") {
  RunResult one = run({"verify", "--ring", "Z/8", "--bound", "5",
                       "--format", "json"});
  RunResult four = run({"verify", "--ring", "Z/8", "--bound", "5",
                        "--jobs", "4", "--format", "json"});
  CHECK(one.code == 0);
  CHECK(four.code == 0);
  json a = json::parse(one.out);
  json b = json::parse(four.out);
  CHECK(a["result"] == b["result"]);
}

TEST_CASE("exit codes separate usage, refusal, and verification") {
  CHECK(run({"null-gens"}).code == 2);                      // missing --ring
  CHECK(run({"frobnicate", "--ring", "Z/9"}).code == 2);    // no such command
  CHECK(run({}).code == 2);                                 // no subcommand
  CHECK(run({"count", "--ring", "Z/9", "--method", "bogus"}).code == 2);
  CHECK(run({"ring-info", "--ring", "ring soup"}).code == 2);
  CHECK(run({"ring-info", "--ring", "table:missing.json"}).code == 2);
  CHECK(run({"membership", "--ring", "Z/9", "--poly", "2y"}).code == 2);

  CHECK(run({"ring-info", "--ring", "Z/12"}).code == 3);  // not a prime power
  CHECK(run({"null-gens", "--ring", "Z/2^4"}).code == 3);   // out of range
  CHECK(run({"count", "--ring", "Z/2^4", "--method", "normal-form"}).code ==
        3);
  CHECK(run({"decompose", "--ring", "Z/9", "--poly", "x"}).code == 3);
  CHECK(run({"ring-info", "--ring", "Z/2^13"}).code == 3);  // order cap

  RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK_FALSE(help.out.empty());
  RunResult sub_help = run({"verify", "--help"});
  CHECK(sub_help.code == 0);
  CHECK(contains(sub_help.out, "--seed"));
}

TEST_CASE("candidate cap comes from the environment when not given") {
  setenv("ZEROFN_CANDIDATE_CAP", "100", 1);
  RunResult r = run({"null-gens", "--ring", "Z/3^2", "--format", "json"});
  unsetenv("ZEROFN_CANDIDATE_CAP");
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["config"]["degree_bound"] == 2);
  CHECK(doc["result"]["verification"]["candidates"] == 81);

  RunResult flag = run({"null-gens", "--ring", "Z/3^2", "--cap-candidates",
                        "100", "--format", "json"});
  json fdoc = json::parse(flag.out);
  CHECK(fdoc["config"]["degree_bound"] == 2);
}

TEST_CASE("ring cap flag widens the accepted orders") {
  CHECK(run({"ring-info", "--ring", "Z/2^13"}).code == 3);
  RunResult ok = run({"ring-info", "--ring", "Z/2^13", "--ring-cap", "10000",
                      "--format", "json"});
  CHECK(ok.code == 0);
  json doc = json::parse(ok.out);
  CHECK(doc["ring"]["order"] == 8192);
}

TEST_CASE("every printed polynomial re-parses") {
  zerofn::Ring z8 = zerofn::parse_ring_spec("Z/8");
  auto looks_like_poly = [](const std::string& s) {
    if (s.empty() || s.find('x') == std::string::npos) return false;
    return s.find_first_not_of("0123456789x^*+- ") == std::string::npos;
  };
  for (const char* cmd : {"null-gens", "membership", "decompose"}) {
    std::vector<std::string> argv{cmd, "--ring", "Z/8", "--format", "json"};
    if (std::string(cmd) == "membership") {
      argv.push_back("--poly");
      argv.push_back("x^2+6x");
    }
    RunResult r = run(argv);
    json doc = json::parse(r.out);
    std::vector<std::string> polys;
    std::function<void(const json&)> walk = [&](const json& node) {
      if (node.is_object() || node.is_array()) {
        for (const auto& child : node) walk(child);
        return;
      }
      if (node.is_string() && looks_like_poly(node.get<std::string>()))
        polys.push_back(node.get<std::string>());
    };
    walk(doc["result"]);
    CHECK(!polys.empty());
    for (const std::string& s : polys)
      CHECK(zerofn::parse_polynomial(z8, s).to_string() == s);
  }
}
