#include <doctest.h>

#include "hfb/errors.hpp"
#include "hfb/serialize.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hfb;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with the given argument string (already shell-quoted) and
// optional stdin text.
Run hfb_cli(const std::string &args, const std::string &stdin_text = "", const std::string &env = "") {
  namespace fs = std::filesystem;
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / ("hfb_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string tag = std::to_string(counter++);
  const fs::path in = dir / ("in" + tag), out = dir / ("out" + tag), err = dir / ("err" + tag);
  std::ofstream(in) << stdin_text;
  const std::string cmd = env + " '" + std::string(HFB_CLI_PATH) + "' " + args + " < '" + in.string() + "' > '" +
                          out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  fs::remove(in);
  fs::remove(out);
  fs::remove(err);
  return r;
}

const char *kGamma7 =
    R"({"vertices":[{"id":0,"weight":-1},{"id":1,"weight":-2},{"id":2,"weight":-3},{"id":3,"weight":-7}],)"
    R"("edges":[[0,1],[0,2],[0,3]]})";

} // namespace

TEST_CASE("invariants: worked examples as JSON") {
  const Run t = hfb_cli("invariants 'torus(3,7)'");
  REQUIRE(t.code == 0);
  const Json jt = Json::parse(t.out);
  CHECK(jt["schema"] == 1);
  CHECK(jt["delta"] == Json::parse("[-2,1]"));
  CHECK(jt["red_conn"] == Json::array());
  CHECK(jt["omega"] == 0);

  const Run p = hfb_cli("invariants 'pretzel(2, -3, -7)'");
  REQUIRE(p.code == 0);
  const Json jp = Json::parse(p.out);
  CHECK(jp["spec"] == "pretzel(2,-3,-7)");
  CHECK(jp["red_conn"] == Json::parse(R"([{"degree":[-2,1],"length":1}])"));
  CHECK(jp["delta_bar"] == Json::parse("[-2,1]"));
  CHECK(jp["delta_under"] == Json::parse("[-4,1]"));
  CHECK(jp["d_normalized"]["delta_under"] == Json::parse("[-2,1]"));
  CHECK(jp["signature"] == 8);
}

TEST_CASE("invariants: ordering and worker independence") {
  const std::string specs = "'torus(3,7)' 'pretzel(7,-3,5)' 'pretzel(2,-3,-7)' 'torus(2,5)' 'montesinos(1;2/5)'";
  const Run one = hfb_cli("invariants " + specs + " --workers 1");
  const Run four = hfb_cli("invariants " + specs + " --workers 4");
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  const Json j = Json::parse(one.out);
  REQUIRE(j.size() == 5);
  CHECK(j[0]["spec"] == "torus(3,7)");
  CHECK(j[4]["spec"] == "montesinos(1;2/5)");
  CHECK(hfb_cli("invariants " + specs + " --workers 3").out == one.out);
}

TEST_CASE("invariants: text format and verify") {
  const Run r = hfb_cli("invariants 'pretzel(2,-3,-7)' --format text --verify");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("HFB_red     F_(-2)") != std::string::npos);
  CHECK(r.out.find("signature   8") != std::string::npos);
}

TEST_CASE("exit code contract") {
  CHECK(hfb_cli("invariants ''").code == 2);
  CHECK(hfb_cli("invariants 'knot(3)'").code == 2);
  CHECK(hfb_cli("invariants 'torus(3,7'").code == 2);
  CHECK(hfb_cli("root", "{not json").code == 2);
  CHECK(hfb_cli("root", R"({"edges":[]})").code == 2);
  CHECK(hfb_cli("root", R"({"vertices":[{"id":0,"weight":1}],"edges":[]})").code == 3);
  CHECK(hfb_cli("root 'pretzel(2,-3,-7)' --n-max 0").code == 4);
  CHECK(hfb_cli("invariants 'torus(3,7)' --n-max 0").code == 4);
  CHECK(hfb_cli("invariants 'sum(pretzel(2,-3,-7),pretzel(2,-3,-7))' --verify --rank-bound 4").code == 5);
  CHECK(hfb_cli("invariants 'torus(2,4)'").code == 6);
  CHECK(hfb_cli("invariants 'pretzel(2,2)'").code == 6);
  CHECK(hfb_cli("root", R"({"vertices":[{"id":0,"weight":-2},{"id":1,"weight":-2}],"edges":[]})").code == 6);
  CHECK(hfb_cli("").code == 64);
  CHECK(hfb_cli("invariants").code == 64);
  CHECK(hfb_cli("invariants 'torus(3,7)' --format xml").code == 64);
  CHECK(hfb_cli("invariants 'torus(3,7)' --workers 0").code == 64);
  CHECK(hfb_cli("invariants 'torus(3,7)' --format dot").code == 64);
  CHECK(hfb_cli("--help").code == 0);
  // The first failing spec decides the code; the others are still reported.
  const Run mixed = hfb_cli("invariants 'torus(3,7)' 'torus(2,4)' ''");
  CHECK(mixed.code == 6);
  const Json j = Json::parse(mixed.out);
  CHECK(j[0].contains("delta"));
  CHECK(j[1]["exit_code"] == 6);
  CHECK(j[2]["exit_code"] == 2);
}

TEST_CASE("root: plumbing JSON on stdin, spec, DOT") {
  const Run dot = hfb_cli("root --format dot", kGamma7);
  REQUIRE(dot.code == 0);
  // Two leaves at weight 0 swapped by J.
  CHECK(dot.out.find("v0 [label=\"0\"]") != std::string::npos);
  CHECK(dot.out.find("v1 [label=\"0\"]") != std::string::npos);
  CHECK(dot.out.find("v0 -> v1 [style=dashed") != std::string::npos);
  CHECK(dot.out == hfb_cli("root 'pretzel(2,-3,-7)' --format dot").out);
  CHECK(dot.out == hfb_cli("root - --format dot", kGamma7).out);

  const Run stem = hfb_cli("root --format json", R"({"vertices":[{"id":0,"weight":-1}],"edges":[]})");
  REQUIRE(stem.code == 0);
  const Json j = Json::parse(stem.out);
  CHECK(j["leaves"].size() == 1);
  for (const auto &v : j["vertices"])
    CHECK(v["weight"][1] == 1);

  const Run warn = hfb_cli("root 'pretzel(2,-3,-7)' --n-max 0 --format dot");
  CHECK(warn.code == 4);
  CHECK(warn.err.find("unstable truncation at level 0") != std::string::npos);

  // Box engine agrees with the star engine.
  CHECK(hfb_cli("root --box 2 --format text", kGamma7).out == hfb_cli("root --format text", kGamma7).out);
}

TEST_CASE("independence certificates") {
  const Run k = hfb_cli("independence 'pretzel(7,-3,5)' 'pretzel(11,-5,9)' --workers 2");
  REQUIRE(k.code == 0);
  const Json jk = Json::parse(k.out);
  CHECK(jk["certified"] == true);
  CHECK(jk["omega"][0]["omega"] == 1);
  CHECK(jk["omega"][1]["omega"] == 2);
  CHECK(jk["omega"][2]["omega"] == 2);

  const Run dup = hfb_cli("independence 'pretzel(7,-3,5)' 'pretzel(7,-3,5)'");
  REQUIRE(dup.code == 0);
  CHECK(Json::parse(dup.out)["certified"] == false);

  const Run torus = hfb_cli("independence 'pretzel(7,-3,5)' 'torus(3,7)'");
  REQUIRE(torus.code == 0);
  const Json jt = Json::parse(torus.out);
  CHECK(jt["omega"][1]["omega"] == 0);
  CHECK(jt["omega_zero"] == Json::parse(R"j(["torus(3,7)"])j"));
  CHECK(jt["independent"] == Json::parse(R"j(["pretzel(7,-3,5)"])j"));
}

TEST_CASE("disk cache gives identical output") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("hfb_cache_test_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const std::string env = "HFB_CACHE_DIR='" + dir.string() + "'";
  const Run cold = hfb_cli("invariants 'pretzel(2,-3,-9)'", "", env);
  REQUIRE(cold.code == 0);
  CHECK(!fs::is_empty(dir));
  const Run warm = hfb_cli("invariants 'pretzel(2,-3,-9)'", "", env);
  CHECK(warm.out == cold.out);
  CHECK(warm.out == hfb_cli("invariants 'pretzel(2,-3,-9)'").out);
  fs::remove_all(dir);
}

TEST_CASE("serialization round trips") {
  const PlumbingTree t = plumbing_from_json(Json::parse(kGamma7));
  CHECK(plumbing_to_json(t) == Json::parse(
                                   R"({"vertices":[{"id":0,"weight":-1},{"id":1,"weight":-2},{"id":2,"weight":-3},)"
                                   R"({"id":3,"weight":-7}],"edges":[[0,1],[0,2],[0,3]]})"));
  const Json sym = Json::parse(R"({"vertices":[{"id":5,"weight":-1},{"id":7,"weight":-3},{"id":9,"weight":-3}],)"
                               R"("edges":[[5,7],[5,9]],"automorphism":{"7":9,"9":7,"5":5}})");
  const PlumbingTree s = plumbing_from_json(sym);
  CHECK(s.has_automorphism());
  CHECK(plumbing_from_json(plumbing_to_json(s)).automorphism() == s.automorphism());
  CHECK_THROWS_AS(plumbing_from_json(Json::parse(R"({"vertices":[{"id":0}]})")), ParseError);
  CHECK_THROWS_AS(plumbing_from_json(Json::parse(R"({"vertices":[{"id":0,"weight":-2},{"id":1,"weight":-3}],)"
                                                 R"("edges":[],"automorphism":[[0,1],[1,0]]})")),
                  InvalidInputError);

  const auto k = spin_char(t);
  const GradedRoot root = lattice_involution(t, k, build_root_star(t, k));
  const GradedRoot back = root_from_json(root_to_json(root));
  CHECK(canonical_form(back) == canonical_form(root));
  CHECK(root_to_json(back)["vertices"] == root_to_json(root)["vertices"]);

  CHECK(rational_to_json(Rational(BigInt(-3), BigInt(4))) == Json::parse("[-3,4]"));
  CHECK(rational_from_json(Json::parse("[6,-8]")) == Rational(BigInt(-3), BigInt(4)));
  CHECK_THROWS_AS(rational_from_json(Json::parse("[1,0]")), ParseError);
}
