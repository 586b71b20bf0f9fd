#include "oracles.hpp"

#include "ckm/spaces.hpp"

namespace ckm::testing {

Correspondence compose_by_triple_product(const Correspondence& f, const Correspondence& g) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& z = g.target();
  const RingPtr factors[] = {x, y, z};
  auto xyz = product_space(factors);
  const std::size_t ny = y->size(), nz = z->size();
  auto slot = [&](std::size_t a, std::size_t b, std::size_t c) { return (a * ny + b) * nz + c; };
  const std::size_t ux = *x->unit(), uy = *y->unit(), uz = *z->unit();

  std::vector<Rational> pf(xyz->size()), pg(xyz->size());
  for (const auto& t : f.terms()) pf[slot(t.source_index, t.target_index, uz)] += t.coefficient;
  for (const auto& t : g.terms()) pg[slot(ux, t.source_index, t.target_index)] += t.coefficient;
  auto prod = xyz->multiply_dense(pf, pg);

  Matrix out(x->size(), nz);
  for (std::size_t a = 0; a < x->size(); ++a)
    for (std::size_t w = 0; w < ny; ++w) {
      if (is_zero(y->integral(w))) continue;
      Rational sign = (x->degree(a) % 2 != 0 && y->degree(w) % 2 != 0) ? -1 : 1;
      for (std::size_t c = 0; c < nz; ++c) {
        const Rational& v = prod[slot(a, w, c)];
        if (!is_zero(v)) out(a, c) += sign * v * y->integral(w);
      }
    }
  return Correspondence(x, z, f.shift() + g.shift(), std::move(out));
}

ClassVector act_by_product_ring(const Correspondence& gamma, const ClassVector& alpha) {
  const auto& x = gamma.source();
  const auto& y = gamma.target();
  auto xy = product_space(x, y);
  const std::size_t ny = y->size();
  std::vector<Rational> pulled(xy->size());
  auto a = alpha.dense();
  for (std::size_t i = 0; i < x->size(); ++i) pulled[i * ny + *y->unit()] = a[i];
  std::vector<Rational> c(xy->size());
  for (const auto& t : gamma.terms()) c[t.source_index * ny + t.target_index] = t.coefficient;
  auto prod = xy->multiply_dense(pulled, c);
  std::vector<Rational> out(ny);
  for (std::size_t i = 0; i < x->size(); ++i)
    for (std::size_t b = 0; b < ny; ++b) out[b] += prod[i * ny + b] * x->integral(i);
  return ClassVector::from_dense(y, out, alpha.degree() + 2 * gamma.shift());
}

Correspondence random_correspondence(const RingPtr& x, const RingPtr& y, int shift, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Matrix m(x->size(), y->size());
  const int total = 2 * (x->dim() + shift);
  for (std::size_t a = 0; a < x->size(); ++a)
    for (std::size_t b = 0; b < y->size(); ++b)
      if (x->degree(a) + y->degree(b) == total) m(a, b) = coef(rng);
  return Correspondence(x, y, shift, std::move(m));
}

std::map<int, Correspondence> kunneth_components(const RingPtr& ring) {
  std::map<int, Correspondence> out;
  for (int p = 0; p <= 2 * ring->dim(); ++p) {
    if (ring->rank(p) == 0) continue;
    Matrix d(ring->size(), ring->size());
    for (auto i : ring->degree_indices(p)) d(i, i) = 1;
    out.emplace(p, Correspondence(ring, ring, 0, ring->pairing_inverse() * d));
  }
  return out;
}

std::map<std::pair<int, int>, Rational> torus_normal_form(const std::vector<int>& weights, int a, int b,
                                                          int n_trunc) {
  const int m = static_cast<int>(weights.size());
  // relation polynomial prod (h + chi t) as coefficients of t^i h^{m-i}
  std::vector<Rational> rel{Rational(1)};
  for (int chi : weights) {
    std::vector<Rational> next(rel.size() + 1);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      next[i] += rel[i];
      next[i + 1] += rel[i] * chi;
    }
    rel = std::move(next);
  }
  std::map<std::pair<int, int>, Rational> poly{{{0, a + b}, Rational(1)}};
  while (true) {
    auto it = std::find_if(poly.rbegin(), poly.rend(), [&](const auto& kv) { return kv.first.second >= m; });
    if (it == poly.rend()) break;
    auto [key, c] = *it;
    poly.erase(key);
    // t^i h^j = t^i h^{j-m} (h^m - rel) with rel monic in h
    for (int i = 1; i <= m; ++i) {
      if (is_zero(rel[i])) continue;
      poly[{key.first + i, key.second - i}] -= c * rel[i];
    }
  }
  std::map<std::pair<int, int>, Rational> out;
  for (const auto& [k, c] : poly)
    if (!is_zero(c) && 2 * k.first <= n_trunc) out[k] = c;
  return out;
}

}  // namespace ckm::testing
