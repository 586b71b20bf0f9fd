#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ckm/cli.hpp"
#include "ckm/serialize.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ckm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ckm_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

const std::string kP3 = R"({"kind":"projective_space","n":3})";

}  // namespace

TEST_CASE("projectors and verify") {
  TempDir dir;
  auto r = run({"projectors", "--space", kP3, "--verify", "--out", dir.file("p3.json"), "--report", dir.file("r.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("all checks pass") != std::string::npos);
  CHECK(ckm::Json::parse(slurp(dir.file("r.json")))["pass"] == true);

  auto v = run({"verify", "--projectors", dir.file("p3.json"), "--out", dir.file("v1.json")});
  CHECK(v.code == 0);
  auto v4 = run({"verify", "--projectors", dir.file("p3.json"), "--out", dir.file("v4.json"), "--jobs", "4"});
  CHECK(v4.code == 0);
  CHECK(slurp(dir.file("v1.json")) == slurp(dir.file("v4.json")));
}

TEST_CASE("negative controls exit 1") {
  TempDir dir;
  REQUIRE(run({"projectors", "--space", kP3, "--out", dir.file("p3.json")}).code == 0);
  auto doc = ckm::Json::parse(slurp(dir.file("p3.json")));

  auto scaled = doc;
  for (auto& p : scaled["projectors"])
    if (p["index"] == 0)
      for (auto& t : p["terms"]) t[2] = "2";
  write(dir.file("scaled.json"), scaled.dump());
  auto r = run({"verify", "--projectors", dir.file("scaled.json")});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL idempotence [0]") != std::string::npos);
  CHECK(r.out.find("2*h^3 x 1") != std::string::npos);

  auto missing = doc;
  auto& list = missing["projectors"];
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i]["index"] == 6) list.erase(i);
  write(dir.file("missing.json"), missing.dump());
  r = run({"verify", "--projectors", dir.file("missing.json"), "--out", dir.file("report.json")});
  CHECK(r.code == 1);
  auto report = ckm::Json::parse(slurp(dir.file("report.json")));
  int failed = 0;
  for (const auto& c : report["checks"])
    if (c["pass"] == false) {
      ++failed;
      CHECK(c["check"] == "completeness");
    }
  CHECK(failed == 1);
}

TEST_CASE("malformed input exits 2") {
  CHECK(run({"projectors", "--space", R"({"kind":"nothing"})"}).code == 2);
  CHECK(run({"projectors", "--space", "/nonexistent/space.json"}).code == 2);
  CHECK(run({"projectors", "--space", "{not json"}).code == 2);
  CHECK(run({"projectors"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"projectors", "--space", kP3, "--jobs", "0"}).code == 2);
  auto r = run({"act", "--corr", "{}", "--class", "h"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"projectors", "--space", R"({"kind":"hypersurface","n":2,"d":3,"middle_rank":2})", "--cutoff", "1"})
            .code == 2);
}

TEST_CASE("build, diagonal, compose and act") {
  TempDir dir;
  auto b = run({"build", "--space", R"({"kind":"grassmannian","k":2,"n":4})", "--out", dir.file("g.json")});
  CHECK(b.code == 0);
  auto ring = ckm::ring_from_json(ckm::Json::parse(slurp(dir.file("g.json"))));
  CHECK(ring->size() == 6);

  auto d = run({"diagonal", "--space", kP3, "--out", dir.file("d.json")});
  CHECK(d.code == 0);
  CHECK(d.out.find("h x h^2") != std::string::npos);
  auto c = run({"compose", "--f", dir.file("d.json"), "--g", dir.file("d.json"), "--out", dir.file("dd.json")});
  CHECK(c.code == 0);
  CHECK(ckm::Json::parse(slurp(dir.file("dd.json")))["terms"] == ckm::Json::parse(slurp(dir.file("d.json")))["terms"]);
  auto a = run({"act", "--corr", dir.file("d.json"), "--class", "2*h"});
  CHECK(a.code == 0);
  CHECK(a.out.find("2*h") != std::string::npos);

  // an explicit ring with a broken ring law fails the audit
  auto bad = R"({"kind":"explicit","dim":1,"basis":[{"label":"1","degree":0},{"label":"p","degree":2}],
                 "products":[["1","1",[["1","1"]]],["1","p",[["p","1"]]],["p","1",[["p","2"]]]],"integral":[["p","1"]]})";
  CHECK(run({"build", "--space", bad}).code == 1);
}

TEST_CASE("equivariant commands") {
  TempDir dir;
  auto l = run({"lift", "--space", R"({"kind":"projective_space","n":2})", "--group", "gl:2", "--N", "8", "--verify",
                "--out", dir.file("lift.json")});
  CHECK(l.code == 0);
  auto r = run({"restrict", "--lifted", dir.file("lift.json"), "--verify"});
  CHECK(r.code == 0);
  auto t = run({"lift", "--space", R"({"kind":"projective_space","n":2})", "--group", "torus", "--weights", "0,1,3",
                "--N", "6", "--verify"});
  CHECK(t.code == 0);
  auto s = run({"stabilize", "--space", R"({"kind":"projective_space","n":1})", "--group", "torus", "--D", "4", "--N1",
                "6", "--N2", "10"});
  CHECK(s.code == 0);
  CHECK(s.out.find("stable") != std::string::npos);
  CHECK(run({"lift", "--space", kP3, "--group", "su:2", "--N", "4"}).code == 2);

  REQUIRE(run({"projectors", "--space", R"({"kind":"hypersurface","n":3,"d":3,"middle_rank":6})", "--out",
               dir.file("cubic.json")})
              .code == 0);
  auto k = run({"restrict", "--projectors", dir.file("cubic.json"), "--kill-primitive", "--verify"});
  CHECK(k.code == 0);
}

TEST_CASE("formulas") {
  auto f = run({"formulas", "fano", "--n", "4", "--degrees", "5", "--r", "1"});
  CHECK(f.code == 0);
  CHECK(f.out.find("δ=0") != std::string::npos);
  auto w = run({"formulas", "fano", "--n", "4", "--degrees", "3", "--r", "1"});
  CHECK(w.out.find("δ=1") != std::string::npos);
  CHECK(w.out.find("warning:") != std::string::npos);
  CHECK(run({"formulas", "rep", "--g", "2", "--n", "2"}).out.find("dim=13") != std::string::npos);
  CHECK(run({"formulas", "barth", "--n", "6", "--d", "4"}).out.find("m=2") != std::string::npos);
}
