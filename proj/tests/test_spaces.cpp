#include <doctest.h>

#include "ckm/schubert.hpp"
#include "ckm/spaces.hpp"
#include "helpers.hpp"
#include "lr_oracle.hpp"

using namespace ckm;
using ckm::testing::cls;
using ckm::testing::error_kind_of;

namespace {

std::vector<std::size_t> ranks(const RingPtr& r) {
  std::vector<std::size_t> out;
  for (int p = 0; p <= r->top_degree(); ++p) out.push_back(r->rank(p));
  return out;
}

// Same degrees, structure constants and integral under the identity map on indices.
bool positionally_isomorphic(const GradedBasisRing& a, const GradedBasisRing& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.degree(i) != b.degree(i) || a.integral(i) != b.integral(i)) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.product(i, j) != b.product(i, j)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("projective spaces") {
  auto pt = projective_space(0);
  CHECK(pt->size() == 1);
  CHECK(pt->integral(0) == 1);
  CHECK(ranks(projective_space(2)) == std::vector<std::size_t>{1, 0, 1, 0, 1});
}

TEST_CASE("grassmannians") {
  auto g = grassmannian(2, 4);
  CHECK(g->size() == 6);
  CHECK(g->rank(4) == 2);
  CHECK(multiply(g, cls(g, "s[1]"), cls(g, "s[2,1]")) == cls(g, "s[2,2]"));
  CHECK(multiply(g, cls(g, "s[2]"), cls(g, "s[2]")) == cls(g, "s[2,2]"));
  CHECK(integrate(g, cls(g, "s[2,2]")) == 1);

  for (int n = 2; n <= 6; ++n) CHECK(positionally_isomorphic(*grassmannian(1, n), *projective_space(n - 1)));
}

TEST_CASE("Pieri multiplication agrees with Littlewood-Richardson tableaux") {
  const std::pair<int, int> cases[] = {{2, 4}, {2, 5}, {3, 6}};
  int products = 0;
  for (auto [k, n] : cases) {
    auto parts = partitions_in_box(k, n);
    for (const auto& a : parts)
      for (const auto& b : parts) {
        CAPTURE(a.label());
        CAPTURE(b.label());
        CHECK(schubert_product(a, b, k, n) == ckm::testing::lr_product(a, b, k, n));
        ++products;
      }
  }
  CHECK(products == 36 + 100 + 400);
  // the empty partition is the unit
  Partition unit;
  Partition l{{2, 1}};
  CHECK(ckm::testing::lr_product(unit, l, 2, 4) == SchubertExpansion{{l, 1}});
}

TEST_CASE("products of spaces") {
  auto p1 = projective_space(1);
  auto pp = product_space(p1, p1);
  CHECK(ranks(pp) == std::vector<std::size_t>{1, 0, 2, 0, 1});
  CHECK(integrate(pp, cls(pp, "(h,h)")) == 1);

  auto x = grassmannian(2, 4);
  auto y = ckm::testing::plane_cubic();
  auto xy = product_space(x, y);
  CHECK(ring_invariant_violations(*xy).empty());
  for (std::size_t a = 0; a < x->size(); ++a)
    for (std::size_t b = 0; b < y->size(); ++b) {
      auto c = cls(xy, "(" + x->label(a) + "," + y->label(b) + ")");
      CHECK(integrate(xy, c) == x->integral(a) * y->integral(b));
    }

  std::vector<RingPtr> three{p1, projective_space(2), p1};
  auto triple = product_space(three);
  CHECK(triple->dim() == 4);
  CHECK(integrate(triple, cls(triple, "(h,h^2,h)")) == 1);
}

TEST_CASE("complete intersection models") {
  auto cubic = hypersurface_model(3, 3, 7);
  CHECK(ranks(cubic) == std::vector<std::size_t>{1, 0, 8, 0, 1});
  CHECK(integrate(cubic, multiply(cubic, cls(cubic, "h"), cls(cubic, "h"))) == 3);
  CHECK(multiply(cubic, cls(cubic, "m1"), cls(cubic, "m1")) == cls(cubic, "pt"));
  CHECK(multiply(cubic, cls(cubic, "m1"), cls(cubic, "h")).is_zero());

  // genus-degree formula: b_1 = (d-1)(d-2)
  for (int d = 1; d <= 4; ++d) {
    int g = (d - 1) * (d - 2) / 2;
    auto curve = hypersurface_model(2, d, 2 * g);
    CHECK(ranks(curve) == std::vector<std::size_t>{1, static_cast<std::size_t>(2 * g), 1});
  }

  for (int n = 2; n <= 6; ++n) {
    auto pn = projective_space(n);
    CHECK(positionally_isomorphic(*ci_model(pn, cls(pn, "h"), 0), *projective_space(n - 1)));
  }
}

TEST_CASE("complete intersection model errors") {
  // the fiber class restricts to zero below the middle
  auto amb = product_space(projective_space(1), projective_space(3));
  CHECK(error_kind_of([&] { ci_model(amb, cls(amb, "(h,1)"), 0); }) == ErrorKind::NonLefschetzRange);
  auto p2 = projective_space(2);
  CHECK(error_kind_of([&] { ci_model(p2, cls(p2, "3*h"), 1); }) == ErrorKind::InvalidSpec);
  Matrix singular(2, 2);
  CHECK(error_kind_of([&] { ci_model(p2, cls(p2, "3*h"), 2, singular); }) == ErrorKind::DegeneratePairing);
}

TEST_CASE("blow-ups") {
  auto p3 = projective_space(3);
  auto p1 = projective_space(1);
  std::vector<ClassVector> line{cls(p3, "h^2"), cls(p3, "h^3")};
  std::vector<ClassVector> chern{cls(p1, "2*h")};
  auto bl = blowup(p3, p1, 2, line, chern);
  CHECK(ranks(bl) == std::vector<std::size_t>{1, 0, 2, 0, 2, 0, 1});
  auto h = cls(bl, "h");
  auto e = cls(bl, "E[1]");
  CHECK(integrate(bl, multiply(bl, h, multiply(bl, e, e))) == -1);
  CHECK(integrate(bl, multiply(bl, e, multiply(bl, e, e))) == -2);

  auto p2 = projective_space(2);
  std::vector<ClassVector> point{cls(p2, "h^2")};
  auto blp = blowup(p2, projective_space(0), 2, point, {});
  CHECK(ranks(blp) == std::vector<std::size_t>{1, 0, 2, 0, 1});
  auto ep = cls(blp, "E[1]");
  CHECK(integrate(blp, multiply(blp, ep, ep)) == -1);

  // points of P^3, codimension 3: b_i(Bl) = b_i(X) + b_{i-2}(Z) + b_{i-4}(Z)
  std::vector<ClassVector> pt3{cls(p3, "h^3")};
  auto bl3 = blowup(p3, projective_space(0), 3, pt3, {});
  CHECK(ranks(bl3) == std::vector<std::size_t>{1, 0, 2, 0, 2, 0, 1});
  CHECK(ring_invariant_violations(*bl3).empty());

  // a divisor adds nothing
  std::vector<ClassVector> divisor{cls(p2, "h"), cls(p2, "h^2")};
  CHECK(*blowup(p2, p1, 1, divisor, {}) == *p2);
}

TEST_CASE("blow-up errors") {
  auto p3 = projective_space(3);
  auto p1 = projective_space(1);
  std::vector<ClassVector> wrong_degree{cls(p3, "h"), cls(p3, "h^3")};
  CHECK(error_kind_of([&] { blowup(p3, p1, 2, wrong_degree, std::vector<ClassVector>{cls(p1, "2*h")}); }) ==
        ErrorKind::MalformedExpression);
  std::vector<ClassVector> too_few{cls(p3, "h^2")};
  CHECK(error_kind_of([&] { blowup(p3, p1, 2, too_few, std::vector<ClassVector>{cls(p1, "2*h")}); }) ==
        ErrorKind::MalformedExpression);
  std::vector<ClassVector> line{cls(p3, "h^2"), cls(p3, "h^3")};
  CHECK(error_kind_of([&] { blowup(p3, projective_space(2), 2, line, {}); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("universal plane curves") {
  CHECK(plane_curve_family(1)->dim() == 3);
  CHECK(plane_curve_family(2)->dim() == 6);
  CHECK(plane_curve_family(3)->dim() == 10);
  auto f = plane_curve_family(2);
  CHECK(ring_invariant_violations(*f).empty());
  // the defining class d*h1 + h2 integrates to the same numbers as on P^2 x P^5
  auto amb = product_space(projective_space(2), projective_space(5));
  auto xi = cls(amb, "2*(h,1) + (1,h)");
  CHECK(integrate(f, cls(f, "pt")) == 1);
  CHECK(xi.degree() == 2);
}

TEST_CASE("closed-form dimension counts") {
  std::vector<int> three{3}, five{5};
  CHECK(fano_delta(3, three, 1).value == 0);
  CHECK(fano_delta(3, three, 1).warnings.empty());
  CHECK(fano_delta(4, five, 1).value == 0);
  auto surface = fano_delta(4, three, 1);
  CHECK(surface.value == 1);
  CHECK_FALSE(surface.warnings.empty());

  CHECK(rep_variety_dim(2, 2) == 13);
  CHECK(rep_variety_dim(1, 3) == 12);
  CHECK(rep_variety_dim(2, 1) == 4);
  CHECK(rep_variety_dim(1, 1) == 2);

  CHECK(barth_range(6, 4) == 2);
  CHECK(barth_range(8, 4) == 0);
  CHECK(barth_range(5, 4) == 3);
}
