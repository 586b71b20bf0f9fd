#pragma once

#include <doctest.h>

#include "ckm/error.hpp"
#include "ckm/expression.hpp"
#include "ckm/spaces.hpp"

namespace ckm::testing {

inline ClassVector cls(const RingPtr& ring, const std::string& expr) { return parse_class(ring, expr); }

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidSpec;
}

inline RingPtr cubic_surface(int primitives = 6) { return hypersurface_model(3, 3, primitives); }
inline RingPtr plane_cubic() { return hypersurface_model(2, 3, 2); }

/// Every ring the constructors can produce at desk scale.
inline std::vector<std::pair<std::string, RingPtr>> corpus() {
  std::vector<std::pair<std::string, RingPtr>> out;
  for (int n = 0; n <= 5; ++n) out.emplace_back("P" + std::to_string(n), projective_space(n));
  out.emplace_back("G(2,4)", grassmannian(2, 4));
  out.emplace_back("G(2,5)", grassmannian(2, 5));
  out.emplace_back("P1xP2", product_space(projective_space(1), projective_space(2)));
  {
    auto p3 = projective_space(3);
    auto p1 = projective_space(1);
    std::vector<ClassVector> push{cls(p3, "h^2"), cls(p3, "h^3")};
    std::vector<ClassVector> chern{cls(p1, "2*h")};
    out.emplace_back("Bl_L P3", blowup(p3, p1, 2, push, chern));
  }
  {
    auto p2 = projective_space(2);
    std::vector<ClassVector> push{cls(p2, "h^2")};
    out.emplace_back("Bl_pt P2", blowup(p2, projective_space(0), 2, push, {}));
  }
  out.emplace_back("plane", hypersurface_model(3, 1, 0));
  out.emplace_back("quadric surface", hypersurface_model(3, 2, 1));
  out.emplace_back("cubic surface", cubic_surface());
  out.emplace_back("quadric threefold", hypersurface_model(4, 2, 0));
  for (int d = 1; d <= 3; ++d) out.emplace_back("plane curve family " + std::to_string(d), plane_curve_family(d));
  return out;
}

}  // namespace ckm::testing

#include "ckm/correspondence.hpp"

namespace ckm::testing {

/// Corr^0 class acting by `block` on degree p and by zero elsewhere.
inline Correspondence block_endomorphism(const RingPtr& ring, int p, const Matrix& block) {
  Matrix a(ring->size(), ring->size());
  auto idx = ring->degree_indices(p);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) a(idx[i], idx[j]) = block(i, j);
  return from_action_matrix(ring, a);
}

inline Matrix matrix_of(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace ckm::testing
