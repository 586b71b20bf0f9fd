// One line per acceptance criterion; exit status is the number of failures.
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "ckm/cli.hpp"
#include "ckm/equivariant.hpp"
#include "ckm/expression.hpp"
#include "ckm/schubert.hpp"
#include "ckm/serialize.hpp"
#include "ckm/spaces.hpp"
#include "lr_oracle.hpp"

using namespace ckm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << n << "] " << title;
  if (!o.pass) std::cout << ": " << o.detail;
  std::cout << std::endl;
}

ClassVector cls(const RingPtr& r, const std::string& e) { return parse_class(r, e); }

std::string hpow(int k) { return k == 0 ? "1" : k == 1 ? "h" : "h^" + std::to_string(k); }

// H^k on the degree-d hypersurface model in P^n, read off from labels: ambient
// powers below and at the middle, d times the dual class above it.
ClassVector hyperplane_power(const RingPtr& x, int n, int d, int k) {
  const int dim = n - 1;
  if (2 * k <= dim) return cls(x, hpow(k));
  const int co = dim - k;
  return cls(x, co == 0 ? "pt" : "dual(" + hpow(co) + ")").scaled(d);
}

bool checks_pass(const VerificationReport& r, const std::set<std::string>& names) {
  for (const auto& c : r.checks)
    if (names.count(c.check) && !c.pass) return false;
  return true;
}

Correspondence block(const RingPtr& ring, int p, std::initializer_list<std::initializer_list<int>> rows) {
  Matrix a(ring->size(), ring->size());
  auto idx = ring->degree_indices(p);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (int v : r) a(idx[i], idx[j++]) = v;
    ++i;
  }
  return from_action_matrix(ring, a);
}

struct Cli {
  int code;
  std::string out;
};

Cli run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str() + err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool report_has_failure(const fs::path& report, const std::string& check) {
  auto j = Json::parse(slurp(report));
  for (const auto& c : j["checks"])
    if (c["check"] == check && c["pass"] == false) return true;
  return false;
}

}  // namespace

int main() {
  criterion(1, "full Chow-Kunneth verification on the corpus", [](Outcome& o) {
    std::vector<std::pair<std::string, RingPtr>> corpus;
    for (int n = 0; n <= 5; ++n) corpus.emplace_back("P" + std::to_string(n), projective_space(n));
    corpus.emplace_back("G(2,4)", grassmannian(2, 4));
    corpus.emplace_back("G(2,5)", grassmannian(2, 5));
    auto p3 = projective_space(3);
    auto p1 = projective_space(1);
    auto p2 = projective_space(2);
    std::vector<ClassVector> line{cls(p3, "h^2"), cls(p3, "h^3")};
    corpus.emplace_back("Bl_L P3", blowup(p3, p1, 2, line, std::vector<ClassVector>{cls(p1, "2*h")}));
    std::vector<ClassVector> point{cls(p2, "h^2")};
    corpus.emplace_back("Bl_pt P2", blowup(p2, projective_space(0), 2, point, {}));
    corpus.emplace_back("P1xP2", product_space(p1, p2));
    corpus.emplace_back("plane in P3", hypersurface_model(3, 1, 0));
    corpus.emplace_back("quadric surface", hypersurface_model(3, 2, 1));
    corpus.emplace_back("cubic surface", hypersurface_model(3, 3, 6));
    corpus.emplace_back("quadric threefold", hypersurface_model(4, 2, 0));
    for (int d = 1; d <= 3; ++d) corpus.emplace_back("plane curve family d=" + std::to_string(d), plane_curve_family(d));
    for (const auto& [name, ring] : corpus) {
      o.require(ring_invariant_violations(*ring).empty(), name + ": ring invariants");
      auto set = standard_projectors(ring);
      o.require(set.claims_complete, name + ": set is not complete");
      auto report = verify_ck(set);
      o.require(report.pass(), name + ":\n" + report.text());
      for (const char* check : {"idempotence", "orthogonality", "completeness", "graded_action"}) {
        bool seen = false;
        for (const auto& c : report.checks) seen = seen || c.check == check;
        if (set.projectors.size() == 1 && std::string(check) == "orthogonality") continue;
        o.require(seen, name + ": no " + check + " check ran");
      }
    }
  });

  criterion(2, "closed-form hypersurface projectors and their remainder", [](Outcome& o) {
    const std::tuple<int, int, int> cases[] = {{2, 3, 2}, {2, 4, 6}, {3, 1, 0}, {3, 2, 1}, {3, 3, 6},
                                               {3, 3, 7}, {4, 2, 0}, {4, 3, 10}, {5, 2, 1}};
    for (auto [n, d, rank] : cases) {
      const std::string name = "(" + std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(rank) + ")";
      auto set = hypersurface_projectors(n, d, rank);
      const auto& x = set.ring;
      for (int r = 0; r <= n - 1; ++r) {
        if (2 * r == n - 1) continue;
        auto expect = Correspondence::from_classes(hyperplane_power(x, n, d, n - 1 - r), hyperplane_power(x, n, d, r))
                          .scaled(Rational(1, d));
        o.require(set.projectors.count(2 * r) && set.projectors.at(2 * r) == expect,
                  name + ": pi_" + std::to_string(2 * r) + " differs from the closed form");
      }
      o.require(set.remainder_indices == std::set<int>{n - 1}, name + ": remainder index");
      const auto& rem = set.projectors.at(n - 1);
      o.require(compose(rem, rem) == rem, name + ": remainder is not idempotent");
      for (const auto& [i, p] : set.projectors)
        if (i != n - 1)
          o.require(compose(rem, p).is_zero() && compose(p, rem).is_zero(),
                    name + ": remainder not orthogonal to pi_" + std::to_string(i));
      o.require(verify_ck(set).pass(), name + ": verification");
    }
  });

  criterion(3, "product projectors on P1 x P2 agree with the direct construction", [](Outcome& o) {
    auto p1 = projective_space(1);
    auto p2 = projective_space(2);
    auto via = product_projectors(standard_projectors(p1), standard_projectors(p2));
    auto ring = product_space(p1, p2);
    auto direct = algebraic_projectors(ring, ring->top_degree());
    o.require(verify_ck(via).pass(), "product set does not verify");
    o.require(via.projectors.size() == direct.projectors.size(), "different index sets");
    for (const auto& [i, p] : direct.projectors) {
      if (!via.projectors.count(i)) {
        o.require(false, "missing index " + std::to_string(i));
        continue;
      }
      for (std::size_t a = 0; a < ring->size(); ++a) {
        auto e = ClassVector::basis(ring, a);
        auto lhs = act(p, e);
        auto rhs = act(via.projectors.at(i), ClassVector::basis(via.ring, a));
        o.require(lhs.coeffs() == rhs.coeffs(), "pi_" + std::to_string(i) + " acts differently on " + ring->label(a));
      }
    }
  });

  criterion(4, "Pieri multiplication equals the LR tableau oracle", [](Outcome& o) {
    int count = 0;
    for (auto [k, n] : {std::pair{2, 4}, {2, 5}, {3, 6}}) {
      auto parts = partitions_in_box(k, n);
      auto g = grassmannian(k, n);
      for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = 0; b < parts.size(); ++b) {
          ++count;
          auto oracle = testing::lr_product(parts[a], parts[b], k, n);
          o.require(schubert_product(parts[a], parts[b], k, n) == oracle,
                    parts[a].label() + " * " + parts[b].label() + " in G(" + std::to_string(k) + "," +
                        std::to_string(n) + ")");
          auto ring_product = multiply(g, ClassVector::basis(g, a), ClassVector::basis(g, b));
          auto expect = ClassVector::zero(g, ring_product.degree());
          for (const auto& [p, c] : oracle) expect = expect + cls(g, p.label()).scaled(Rational(c));
          o.require(ring_product == expect, "ring product " + parts[a].label() + " * " + parts[b].label());
        }
    }
    o.require(count == 536, "expected 536 products, saw " + std::to_string(count));
  });

  criterion(5, "Gram-Schmidt orthogonalizes idempotent families and fixes orthogonal ones", [](Outcome& o) {
    auto p1 = projective_space(1);
    auto ring = product_space(p1, p1);
    const std::vector<std::vector<Correspondence>> families{
        {block(ring, 2, {{1, 0}, {0, 0}}), block(ring, 2, {{1, 1}, {0, 0}})},
        {block(ring, 2, {{1, 0}, {0, 0}}), block(ring, 2, {{0, 0}, {1, 1}})},
        {block(ring, 2, {{1, 1}, {0, 0}}), block(ring, 2, {{0, 0}, {0, 1}}), block(ring, 2, {{1, 0}, {1, 0}})},
        {block(ring, 2, {{1, 0}, {0, 1}}), block(ring, 2, {{1, 0}, {0, 0}})},
        {block(ring, 2, {{0, 0}, {2, 1}}), block(ring, 2, {{1, 3}, {0, 0}}), block(ring, 2, {{1, 0}, {0, 1}})},
        {block(ring, 2, {{1, 0}, {0, 0}}), block(ring, 2, {{1, 0}, {0, 0}})},
    };
    for (std::size_t f = 0; f < families.size(); ++f) {
      auto out = gram_schmidt_orthogonalize(families[f]);
      ProjectorSet set{ring, {}, {}, false};
      for (std::size_t i = 0; i < out.size(); ++i) set.projectors.emplace(static_cast<int>(i), out[i]);
      o.require(checks_pass(verify_ck(set), {"idempotence", "orthogonality"}),
                "family " + std::to_string(f) + " is not orthogonal after the process");
      o.require(gram_schmidt_orthogonalize(out) == out, "family " + std::to_string(f) + " output is not a fixed point");
    }
    for (auto r : {projective_space(3), grassmannian(2, 4), hypersurface_model(3, 3, 6)}) {
      std::vector<Correspondence> list;
      for (const auto& [i, p] : standard_projectors(r).projectors) list.push_back(p);
      o.require(gram_schmidt_orthogonalize(list) == list, "an orthogonal family moved");
    }
  });

  criterion(6, "equivariant lifts verify, restrict back and stabilize", [](Outcome& o) {
    auto p2 = projective_space(2);
    auto set = standard_projectors(p2);
    for (auto group : {GroupSpec::torus(1), GroupSpec::general_linear(2)}) {
      auto lifted = lift_projectors(set, equivariant_trivial_action(p2, group, 8));
      auto report = verify_lifted(lifted);
      o.require(report.pass(), group.name() + ":\n" + report.text());
      auto back = restrict(lifted);
      for (const auto& [i, p] : set.projectors)
        o.require(back.projectors.count(i) && back.projectors.at(i) == p,
                  group.name() + ": restriction of pi_" + std::to_string(i));
    }
    auto p1 = projective_space(1);
    o.require(stabilization_check(p1, GroupSpec::torus(1), standard_projectors(p1), 4, 6, 10), "P1 torus");
    o.require(stabilization_check(p2, GroupSpec::torus(1), set, 4, 6, 10), "P2 torus");
    o.require(stabilization_check(p2, GroupSpec::general_linear(2), set, 4, 6, 10), "P2 GL(2)");
    o.require(stabilization_check([](int n) { return equivariant_projective_torus({0, 1}, n); }, standard_projectors(p1),
                                  4, 6, 10),
              "P1 with weights (0,1)");
  });

  criterion(7, "bottom-weight restrictions of verified sets verify", [](Outcome& o) {
    auto p2 = projective_space(2);
    for (auto group : {GroupSpec::torus(1), GroupSpec::general_linear(2), GroupSpec::torus(2)}) {
      auto lifted = lift_projectors(standard_projectors(p2), equivariant_trivial_action(p2, group, 8));
      auto image = bottom_weight_restriction(lifted);
      o.require(image.claims_complete && verify_ck(image).pass(), group.name() + " restriction");
    }
    for (const auto& w : std::vector<std::vector<int>>{{0, 1}, {0, 1, 2}}) {
      auto model = equivariant_projective_torus(w, 6);
      auto image = bottom_weight_restriction(lift_projectors(standard_projectors(model.fiber()), model));
      o.require(image.claims_complete && verify_ck(image).pass(), "weighted projective restriction");
    }
    for (auto [n, d, rank] : {std::tuple{3, 3, 6}, {3, 2, 1}, {2, 3, 2}, {4, 3, 10}}) {
      auto full = hypersurface_model(n, d, rank);
      auto set = standard_projectors(full);
      if (!verify_ck(set).pass()) {
        o.require(false, "source set does not verify");
        continue;
      }
      auto image = bottom_weight_restriction(kill_primitive_map(full, hypersurface_model(n, d, 0)), set);
      o.require(image.claims_complete && verify_ck(image).pass(),
                "kill-primitive on (" + std::to_string(n) + "," + std::to_string(d) + ")");
    }
  });

  criterion(8, "closed-form dimension counts", [](Outcome& o) {
    std::vector<int> three{3}, five{5};
    o.require(fano_delta(3, three, 1).value == 0, "fano (3,(3),1)");
    o.require(fano_delta(4, five, 1).value == 0, "fano (4,(5),1)");
    auto flagged = fano_delta(4, three, 1);
    o.require(flagged.value == 1 && !flagged.warnings.empty(), "fano (4,(3),1) warning");
    o.require(rep_variety_dim(2, 2) == 13, "rep (2,2)");
    o.require(rep_variety_dim(1, 3) == 12, "rep (1,3)");
    o.require(barth_range(6, 4) == 2, "barth (6,4)");
    auto printed = run_cli({"formulas", "fano", "--n", "4", "--degrees", "3", "--r", "1"});
    o.require(printed.code == 0 && printed.out.find("warning:") != std::string::npos, "CLI warning");
  });

  criterion(9, "negative controls name the failure and exit 1", [](Outcome& o) {
    fs::path dir = fs::temp_directory_path() / ("ckm_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto file = [&](const char* name) { return (dir / name).string(); };
    const std::string p3 = R"({"kind":"projective_space","n":3})";
    o.require(run_cli({"projectors", "--space", p3, "--out", file("p3.json")}).code == 0, "writing P3 projectors");
    auto doc = Json::parse(slurp(file("p3.json")));

    auto scaled = doc;
    for (auto& p : scaled["projectors"])
      if (p["index"] == 0)
        for (auto& t : p["terms"]) t[2] = "2";
    std::ofstream(file("scaled.json")) << scaled.dump();
    auto r = run_cli({"verify", "--projectors", file("scaled.json"), "--out", file("scaled_report.json")});
    o.require(r.code == 1, "scaled projector exit code " + std::to_string(r.code));
    o.require(report_has_failure(file("scaled_report.json"), "idempotence"), "scaled projector: no idempotence failure");
    o.require(r.out.find("2*h^3 x 1") != std::string::npos, "scaled projector: residual not printed");

    auto missing = doc;
    auto& list = missing["projectors"];
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i]["index"] == 6) list.erase(i);
    std::ofstream(file("missing.json")) << missing.dump();
    r = run_cli({"verify", "--projectors", file("missing.json"), "--out", file("missing_report.json")});
    o.require(r.code == 1, "missing projector exit code " + std::to_string(r.code));
    o.require(report_has_failure(file("missing_report.json"), "completeness"), "missing projector: no completeness failure");

    const std::string p2 = R"({"kind":"projective_space","n":2})";
    o.require(run_cli({"projectors", "--space", p2, "--out", file("p2.json")}).code == 0, "writing P2 projectors");
    const std::string corrupted = R"({"kind":"explicit","dim":2,
      "basis":[{"label":"1","degree":0},{"label":"h","degree":2},{"label":"h^2","degree":4}],
      "products":[["1","1",[["1","1"]]],["1","h",[["h","1"]]],["1","h^2",[["h^2","1"]]],
                  ["h","1",[["h","1"]]],["h","h",[["h^2","1"]]],["h^2","1",[["h^2","1"]]]],
      "integral":[["h^2","2"]]})";
    r = run_cli({"verify", "--projectors", file("p2.json"), "--space", corrupted, "--out", file("corrupt_report.json")});
    o.require(r.code == 1, "corrupted pairing exit code " + std::to_string(r.code));
    o.require(report_has_failure(file("corrupt_report.json"), "graded_action"),
              "corrupted pairing: no graded_action failure");
    fs::remove_all(dir);
  });

  return failures == 0 ? 0 : 1;
}
