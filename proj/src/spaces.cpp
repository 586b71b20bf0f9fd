#include "ckm/spaces.hpp"

#include <algorithm>
#include <numeric>

#include "ckm/error.hpp"
#include "ckm/expression.hpp"
#include "ckm/schubert.hpp"

namespace ckm {

bool ProductSpec::operator==(const ProductSpec& rhs) const { return factors == rhs.factors; }

namespace {

int koszul_sign(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorKind::InvalidSpec, message);
}

}  // namespace

// ---------------------------------------------------------------------------
// Projective spaces and Grassmannians

RingPtr projective_space(int n) {
  require(n >= 0, "projective_space: n must be >= 0");
  std::vector<BasisElement> basis;
  for (int j = 0; j <= n; ++j)
    basis.push_back({j == 0 ? "1" : (j == 1 ? "h" : "h^" + std::to_string(j)), 2 * j});
  const std::size_t size = basis.size();
  std::vector<SparseVector> products(size * size);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) products[a * size + b] = {{static_cast<std::size_t>(a + b), Rational(1)}};
  std::vector<Rational> integral(size);
  integral[n] = 1;
  return std::make_shared<const GradedBasisRing>(n, std::move(basis), std::move(products), std::move(integral));
}

RingPtr grassmannian(int k, int n) {
  require(0 < k && k < n, "grassmannian: need 0 < k < n");
  auto parts = partitions_in_box(k, n);
  std::map<Partition, std::size_t> index;
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    index[parts[i]] = i;
    basis.push_back({parts[i].label(), 2 * parts[i].size()});
  }
  const std::size_t size = parts.size();
  std::vector<SparseVector> products(size * size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j) {
      SparseVector v;
      for (const auto& [p, c] : schubert_product(parts[i], parts[j], k, n)) v.emplace_back(index.at(p), Rational(c));
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      products[i * size + j] = v;
      products[j * size + i] = v;
    }
  }
  std::vector<Rational> integral(size);
  integral[size - 1] = 1;  // the full box is emitted last
  return std::make_shared<const GradedBasisRing>(k * (n - k), std::move(basis), std::move(products),
                                                 std::move(integral));
}

// ---------------------------------------------------------------------------
// Products

RingPtr product_space(std::span<const RingPtr> factors) {
  require(!factors.empty(), "product_space: need at least one factor");
  const std::size_t m = factors.size();
  std::vector<std::size_t> radix(m);
  std::size_t total = 1;
  int dim = 0;
  for (std::size_t f = 0; f < m; ++f) {
    radix[f] = factors[f]->size();
    total *= radix[f];
    dim += factors[f]->dim();
  }
  auto digits = [&](std::size_t idx) {
    std::vector<std::size_t> d(m);
    for (std::size_t f = m; f-- > 0;) {
      d[f] = idx % radix[f];
      idx /= radix[f];
    }
    return d;
  };
  auto compose_index = [&](const std::vector<std::size_t>& d) {
    std::size_t idx = 0;
    for (std::size_t f = 0; f < m; ++f) idx = idx * radix[f] + d[f];
    return idx;
  };

  std::vector<BasisElement> basis(total);
  std::vector<std::vector<std::size_t>> all_digits(total);
  for (std::size_t i = 0; i < total; ++i) {
    auto d = digits(i);
    std::string label = "(";
    int degree = 0;
    for (std::size_t f = 0; f < m; ++f) {
      if (f) label += ",";
      label += factors[f]->label(d[f]);
      degree += factors[f]->degree(d[f]);
    }
    basis[i] = {label + ")", degree};
    all_digits[i] = std::move(d);
  }

  std::vector<SparseVector> products(total * total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto& a = all_digits[i];
    for (std::size_t j = 0; j < total; ++j) {
      const auto& b = all_digits[j];
      // (a_1 x ... x a_m)(b_1 x ... x b_m) = sign * (a_1 b_1) x ... x (a_m b_m)
      int sign = 1;
      for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = s + 1; t < m; ++t)
          sign *= koszul_sign(factors[t]->degree(a[t]), factors[s]->degree(b[s]));
      std::vector<std::pair<std::vector<std::size_t>, Rational>> acc{{{}, Rational(sign)}};
      for (std::size_t f = 0; f < m && !acc.empty(); ++f) {
        std::vector<std::pair<std::vector<std::size_t>, Rational>> next;
        for (const auto& [prefix, c] : acc)
          for (const auto& [k, x] : factors[f]->product(a[f], b[f])) {
            auto p = prefix;
            p.push_back(k);
            next.emplace_back(std::move(p), c * x);
          }
        acc = std::move(next);
      }
      SparseVector v;
      for (auto& [d, c] : acc) v.emplace_back(compose_index(d), c);
      products[i * total + j] = std::move(v);
    }
  }

  std::vector<Rational> integral(total);
  for (std::size_t i = 0; i < total; ++i) {
    Rational x = 1;
    for (std::size_t f = 0; f < m && !is_zero(x); ++f) x *= factors[f]->integral(all_digits[i][f]);
    integral[i] = x;
  }
  return std::make_shared<const GradedBasisRing>(dim, std::move(basis), std::move(products), std::move(integral));
}

RingPtr product_space(const RingPtr& x, const RingPtr& y) {
  const RingPtr both[] = {x, y};
  return product_space(both);
}

// ---------------------------------------------------------------------------
// Complete-intersection models

bool is_primitive_placeholder(const std::string& label) {
  if (label.size() < 2 || label[0] != 'm') return false;
  return std::all_of(label.begin() + 1, label.end(), [](char c) { return c >= '0' && c <= '9'; });
}

namespace {

// Structure shared by the trilinear form of a ci_model.
struct CiModelForm {
  enum class Kind { Ambient, Primitive, Upper };
  struct Slot {
    Kind kind;
    std::size_t ref;  // ambient index, primitive index, or ambient index of the dual lower class
    int degree;
  };

  const GradedBasisRing& ambient;
  std::vector<Rational> integral_with_xi;  // integral_A(e_s * xi)
  std::vector<Slot> slots;
  Matrix primitive_pairing;
  std::size_t unit;

  Rational ambient_triple(std::size_t a, std::size_t b, std::size_t c) const {
    Rational s;
    for (const auto& [t, x] : ambient.product(a, b))
      for (const auto& [u, y] : ambient.product(t, c))
        if (!is_zero(integral_with_xi[u])) s += x * y * integral_with_xi[u];
    return s;
  }

  Rational operator()(std::size_t x, std::size_t y, std::size_t z) const {
    const Slot* s[3] = {&slots[x], &slots[y], &slots[z]};
    int uppers = 0, primitives = 0, upper_pos = -1;
    for (int i = 0; i < 3; ++i) {
      if (s[i]->kind == Kind::Upper) ++uppers, upper_pos = i;
      if (s[i]->kind == Kind::Primitive) ++primitives;
    }
    if (uppers > 1) return 0;
    if (uppers == 1) {
      if (primitives > 0) return 0;
      const Slot& u = *s[upper_pos];
      int before = 0;
      for (int i = 0; i < upper_pos; ++i) before += s[i]->degree;
      int sign = koszul_sign(u.degree, before);
      const Slot* rest[2];
      for (int i = 0, k = 0; i < 3; ++i)
        if (i != upper_pos) rest[k++] = s[i];
      int w_degree = rest[0]->degree + rest[1]->degree;
      sign *= koszul_sign(u.degree, w_degree);
      Rational coeff;
      for (const auto& [t, c] : ambient.product(rest[0]->ref, rest[1]->ref))
        if (t == u.ref) coeff += c;
      return sign * coeff;
    }
    if (primitives == 2) {
      const Slot* p[2];
      const Slot* other = nullptr;
      for (int i = 0, k = 0; i < 3; ++i) {
        if (s[i]->kind == Kind::Primitive) p[k++] = s[i];
        else other = s[i];
      }
      if (other->ref != unit) return 0;
      return primitive_pairing(p[0]->ref, p[1]->ref);
    }
    if (primitives > 0) return 0;
    return ambient_triple(s[0]->ref, s[1]->ref, s[2]->ref);
  }
};

}  // namespace

RingPtr ci_model(const RingPtr& ambient, const ClassVector& xi, int middle_rank,
                 const std::optional<Matrix>& middle_pairing) {
  if (!same_ring(ambient, xi.ring())) fail(ErrorKind::RingMismatch, "ci_model: class does not live on the ambient");
  require(xi.degree() % 2 == 0 && xi.degree() >= 2, "ci_model: fundamental class must have positive even degree");
  const int s = xi.degree() / 2;
  require(s <= ambient->dim(), "ci_model: fundamental class degree exceeds the ambient dimension");
  require(middle_rank >= 0, "ci_model: middle_rank must be >= 0");
  require(ambient->unit().has_value(), "ci_model: ambient must have a unit");
  const int d = ambient->dim() - s;

  CiModelForm form{*ambient, std::vector<Rational>(ambient->size()), {}, Matrix(), *ambient->unit()};
  auto xi_dense = xi.dense();
  for (std::size_t e = 0; e < ambient->size(); ++e) {
    std::vector<Rational> unit_e(ambient->size());
    unit_e[e] = 1;
    form.integral_with_xi[e] = ambient->integrate_dense(ambient->multiply_dense(unit_e, xi_dense));
  }
  auto pair_x = [&](std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    Matrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = form.ambient_triple(rows[i], cols[j], form.unit);
    return m;
  };

  std::vector<BasisElement> basis;
  // Below the middle: ambient classes, which must restrict injectively.
  for (int i = 0; i < d; ++i) {
    auto lower = ambient->degree_indices(i);
    auto upper = ambient->degree_indices(2 * d - i);
    if (!lower.empty() && pair_x(lower, upper).rank() != lower.size())
      fail(ErrorKind::NonLefschetzRange,
           "restriction to the complete intersection is not injective in degree " + std::to_string(i));
    for (auto a : lower) {
      basis.push_back(ambient->element(a));
      form.slots.push_back({CiModelForm::Kind::Ambient, a, i});
    }
  }
  // Middle: restricted ambient classes modulo the radical, then primitive placeholders.
  {
    auto mid = ambient->degree_indices(d);
    std::vector<std::size_t> chosen;
    if (!mid.empty()) {
      Matrix gram = pair_x(mid, mid);
      for (auto c : gram.pivot_columns()) chosen.push_back(mid[c]);
    }
    for (auto a : chosen) {
      basis.push_back(ambient->element(a));
      form.slots.push_back({CiModelForm::Kind::Ambient, a, d});
    }
    Matrix pairing(middle_rank, middle_rank);
    if (middle_pairing) {
      require(middle_pairing->rows() == static_cast<std::size_t>(middle_rank) &&
                  middle_pairing->cols() == static_cast<std::size_t>(middle_rank),
              "ci_model: middle_pairing must be middle_rank x middle_rank");
      pairing = *middle_pairing;
      const Rational sym = d % 2 == 0 ? 1 : -1;
      require(pairing.transposed() == pairing.scaled(sym),
              d % 2 == 0 ? "ci_model: middle_pairing must be symmetric" : "ci_model: middle_pairing must be antisymmetric");
      if (middle_rank > 0 && !pairing.inverse())
        fail(ErrorKind::DegeneratePairing, "ci_model: middle_pairing is singular");
    } else if (d % 2 == 0) {
      pairing = Matrix::identity(middle_rank);
    } else {
      require(middle_rank % 2 == 0, "ci_model: odd middle degree needs an even middle_rank");
      for (int k = 0; k + 1 < middle_rank; k += 2) {
        pairing(k, k + 1) = 1;
        pairing(k + 1, k) = -1;
      }
    }
    form.primitive_pairing = std::move(pairing);
    for (int k = 0; k < middle_rank; ++k) {
      basis.push_back({"m" + std::to_string(k + 1), d});
      form.slots.push_back({CiModelForm::Kind::Primitive, static_cast<std::size_t>(k), d});
    }
  }
  // Above the middle: duals of the lower classes.
  for (int i = d - 1; i >= 0; --i) {
    for (auto a : ambient->degree_indices(i)) {
      const std::string& l = ambient->label(a);
      std::string label = (a == form.unit && !ambient->find("pt")) ? "pt" : "dual(" + l + ")";
      basis.push_back({label, 2 * d - i});
      form.slots.push_back({CiModelForm::Kind::Upper, a, 2 * d - i});
    }
  }
  return ring_from_triple_form(d, std::move(basis), std::cref(form), ErrorKind::NonLefschetzRange);
}

// ---------------------------------------------------------------------------
// Blow-ups

namespace {

struct BlowupForm {
  struct Slot {
    bool exceptional;
    std::size_t ref;  // base index, or center index
    int power;        // j for z (x) E^j
    int degree;
  };
  const GradedBasisRing& base;
  const GradedBasisRing& center;
  int codim;
  std::vector<std::vector<Rational>> restriction;  // i^* of each base basis class (dense on the center)
  std::vector<std::vector<Rational>> segre;        // s_0, s_1, ... on the center
  std::vector<Slot> slots;

  // pi_*(e^m) with e = E|_E = -zeta: (-1)^m s_{m - c + 1}.
  std::vector<Rational> push_e_power(int m) const {
    int i = m - codim + 1;
    if (i < 0 || i >= static_cast<int>(segre.size())) return std::vector<Rational>(center.size());
    auto v = segre[i];
    if (m % 2) for (auto& x : v) x = -x;
    return v;
  }

  std::vector<Rational> unit_vec(std::size_t i) const {
    std::vector<Rational> v(center.size());
    v[i] = 1;
    return v;
  }

  Rational operator()(std::size_t x, std::size_t y, std::size_t z) const {
    const Slot* in[3] = {&slots[x], &slots[y], &slots[z]};
    // Stable reorder: base classes first, with Koszul signs.
    std::vector<const Slot*> order;
    int sign = 1;
    for (int i = 0; i < 3; ++i)
      if (!in[i]->exceptional) {
        for (int j = 0; j < i; ++j)
          if (in[j]->exceptional) sign *= koszul_sign(in[j]->degree, in[i]->degree);
        order.push_back(in[i]);
      }
    for (int i = 0; i < 3; ++i)
      if (in[i]->exceptional) order.push_back(in[i]);
    const int n_base = static_cast<int>(std::count_if(order.begin(), order.end(), [](auto* s) { return !s->exceptional; }));

    if (n_base == 3) {
      std::vector<Rational> a(base.size()), b(base.size()), c(base.size());
      a[order[0]->ref] = 1;
      b[order[1]->ref] = 1;
      c[order[2]->ref] = 1;
      return sign * base.integrate_dense(base.multiply_dense(base.multiply_dense(a, b), c));
    }
    if (n_base == 2) return 0;
    std::vector<Rational> acc;
    int m = -1;
    if (n_base == 1) {
      acc = restriction[order[0]->ref];
      m = order[1]->power + order[2]->power - 1;
      acc = center.multiply_dense(acc, unit_vec(order[1]->ref));
      acc = center.multiply_dense(acc, unit_vec(order[2]->ref));
    } else {
      acc = unit_vec(order[0]->ref);
      acc = center.multiply_dense(acc, unit_vec(order[1]->ref));
      acc = center.multiply_dense(acc, unit_vec(order[2]->ref));
      m = order[0]->power + order[1]->power + order[2]->power - 1;
    }
    return sign * center.integrate_dense(center.multiply_dense(acc, push_e_power(m)));
  }
};

}  // namespace

RingPtr blowup(const RingPtr& base, const RingPtr& center, int codim, std::span<const ClassVector> pushforward,
               std::span<const ClassVector> normal_chern) {
  require(codim >= 1, "blowup: codim must be >= 1");
  if (codim == 1) return base;
  require(center->dim() == base->dim() - codim, "blowup: center dimension must be dim(base) - codim");
  if (pushforward.size() != center->size())
    fail(ErrorKind::MalformedExpression, "blowup: need one pushforward class per center basis element");
  if (normal_chern.size() > static_cast<std::size_t>(codim - 1))
    fail(ErrorKind::MalformedExpression, "blowup: normal_chern lists at most codim - 1 classes");
  require(center->unit().has_value(), "blowup: center must have a unit");

  BlowupForm form{*base, *center, codim, {}, {}, {}};
  // i_* as dense vectors on the base
  std::vector<std::vector<Rational>> push(center->size());
  for (std::size_t z = 0; z < center->size(); ++z) {
    if (!same_ring(pushforward[z].ring(), base)) fail(ErrorKind::RingMismatch, "blowup: pushforward not on the base");
    if (!pushforward[z].is_zero() && pushforward[z].degree() != center->degree(z) + 2 * codim)
      fail(ErrorKind::MalformedExpression, "blowup: pushforward of '" + center->label(z) + "' has the wrong degree");
    push[z] = pushforward[z].dense();
  }
  // i^* by duality: integral_Z(i^*x * z) = integral_X(x * i_* z).
  const Matrix& pz_inv = center->pairing_inverse();
  for (std::size_t x = 0; x < base->size(); ++x) {
    std::vector<Rational> ex(base->size());
    ex[x] = 1;
    std::vector<Rational> v(center->size());
    for (std::size_t z = 0; z < center->size(); ++z) v[z] = base->integrate_dense(base->multiply_dense(ex, push[z]));
    form.restriction.push_back(row_times(v, pz_inv));
  }
  // Chern classes of the normal bundle; the top one is the self-intersection i^* i_* 1.
  std::vector<std::vector<Rational>> chern(codim + 1, std::vector<Rational>(center->size()));
  chern[0][*center->unit()] = 1;
  for (std::size_t i = 0; i < normal_chern.size(); ++i) {
    if (!same_ring(normal_chern[i].ring(), center)) fail(ErrorKind::RingMismatch, "blowup: normal class not on center");
    if (!normal_chern[i].is_zero() && normal_chern[i].degree() != 2 * static_cast<int>(i + 1))
      fail(ErrorKind::MalformedExpression, "blowup: normal_chern entries must have degrees 2, 4, ...");
    chern[i + 1] = normal_chern[i].dense();
  }
  {
    std::vector<Rational> top(center->size());
    for (std::size_t x = 0; x < base->size(); ++x)
      if (!is_zero(push[*center->unit()][x]))
        for (std::size_t z = 0; z < center->size(); ++z) top[z] += push[*center->unit()][x] * form.restriction[x][z];
    chern[codim] = top;
  }
  // Segre classes s = c^{-1}.
  form.segre.push_back(chern[0]);
  for (int i = 1; i <= center->dim(); ++i) {
    std::vector<Rational> s(center->size());
    for (int k = 1; k <= std::min(i, codim); ++k) {
      auto t = center->multiply_dense(chern[k], form.segre[i - k]);
      for (std::size_t z = 0; z < center->size(); ++z) s[z] -= t[z];
    }
    form.segre.push_back(std::move(s));
  }

  std::vector<BasisElement> basis;
  for (std::size_t x = 0; x < base->size(); ++x) {
    basis.push_back(base->element(x));
    form.slots.push_back({false, x, 0, base->degree(x)});
  }
  for (int j = 1; j < codim; ++j)
    for (std::size_t z = 0; z < center->size(); ++z) {
      std::string e = j == 1 ? "E" : "E^" + std::to_string(j);
      basis.push_back({e + "[" + center->label(z) + "]", center->degree(z) + 2 * j});
      form.slots.push_back({true, z, j, center->degree(z) + 2 * j});
    }
  return ring_from_triple_form(base->dim(), std::move(basis), std::cref(form), ErrorKind::DegeneratePairing);
}

// ---------------------------------------------------------------------------

RingPtr plane_curve_family(int d, int middle_rank) {
  require(d >= 1, "plane_curve_family: d must be >= 1");
  const int n_linear = d * (d + 3) / 2;
  auto ambient = product_space(projective_space(2), projective_space(n_linear));
  auto xi = parse_class(ambient, std::to_string(d) + "*(h,1) + (1,h)");
  return ci_model(ambient, xi, middle_rank);
}

RingPtr hypersurface_model(int n, int d, int middle_rank) {
  require(n >= 1 && d >= 1, "hypersurface: need n >= 1 and d >= 1");
  auto pn = projective_space(n);
  return ci_model(pn, parse_class(pn, std::to_string(d) + "*h"), middle_rank);
}

RingPtr build(const SpaceSpec& spec) {
  return std::visit(
      [](const auto& s) -> RingPtr {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProjectiveSpaceSpec>) {
          return projective_space(s.n);
        } else if constexpr (std::is_same_v<T, GrassmannianSpec>) {
          return grassmannian(s.k, s.n);
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          std::vector<RingPtr> rings;
          for (const auto& f : s.factors) rings.push_back(build(f));
          return product_space(rings);
        } else if constexpr (std::is_same_v<T, CiModelSpec>) {
          auto amb = build(*s.ambient);
          std::optional<Matrix> pairing;
          if (s.middle_pairing) {
            const auto& rows = *s.middle_pairing;
            Matrix m(rows.size(), rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
              require(rows[i].size() == rows.size(), "ci_model: middle_pairing must be square");
              for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
            }
            pairing = std::move(m);
          }
          return ci_model(amb, parse_class(amb, s.fundamental_class_expr), s.middle_rank, pairing);
        } else if constexpr (std::is_same_v<T, BlowupSpec>) {
          auto base = build(*s.base);
          auto center = build(*s.center);
          std::vector<ClassVector> push, chern;
          for (const auto& e : s.center_pushforward_expr) push.push_back(parse_class(base, e));
          for (const auto& e : s.normal_chern) chern.push_back(parse_class(center, e));
          return blowup(base, center, s.codim, push, chern);
        } else if constexpr (std::is_same_v<T, PlaneCurveFamilySpec>) {
          return plane_curve_family(s.d, s.middle_rank);
        } else if constexpr (std::is_same_v<T, HypersurfaceSpec>) {
          return hypersurface_model(s.n, s.d, s.middle_rank);
        } else {
          require(s.ring != nullptr, "explicit ring is empty");
          return s.ring;
        }
      },
      spec.value);
}

// ---------------------------------------------------------------------------
// Closed-form dimension counts

namespace {

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

FanoDelta fano_delta(int n, std::span<const int> degrees, int r) {
  require(!degrees.empty(), "fano_delta: need at least one degree");
  require(r >= 0 && n >= 1, "fano_delta: need n >= 1 and r >= 0");
  require(std::is_sorted(degrees.begin(), degrees.end()), "fano_delta: degrees must be non-decreasing");
  const long s = static_cast<long>(degrees.size());
  const long d = degrees.back();
  const long expected = static_cast<long>(r + 1) * (n - r) - binomial(d + r, r);
  const long lefschetz = static_cast<long>(n) - 2L * r - s;
  FanoDelta out{std::min(expected, lefschetz), {}};
  if (s > 1)
    out.warnings.push_back("multidegree input: the binomial term uses only the largest degree d_s = " +
                           std::to_string(d) + ", not a sum over all degrees");
  if (lefschetz < expected)
    out.warnings.push_back("delta = " + std::to_string(out.value) + " is the Lefschetz bound n-2r-s and is smaller than "
                           "the expected Fano-scheme dimension (r+1)(n-r)-C(d+r,r) = " + std::to_string(expected) +
                           "; the printed formula disagrees with the classical dimension here");
  return out;
}

long rep_variety_dim(int g, int n) {
  require(g >= 1 && n >= 1, "rep_variety_dim: need g >= 1 and n >= 1");
  const long nn = static_cast<long>(n) * n;
  if (g == 1) return nn + n;
  return (2L * g - 1) * nn + 1;
}

int barth_range(int n, int d) {
  require(d <= n && d >= 0, "barth_range: need 0 <= d <= n");
  return 2 * d - n;
}

}  // namespace ckm
