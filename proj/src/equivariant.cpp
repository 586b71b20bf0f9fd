#include "ckm/equivariant.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "ckm/error.hpp"
#include "ckm/spaces.hpp"

namespace ckm {

std::string GroupSpec::name() const {
  return (kind == Kind::MultiplicativeTorus ? "torus(" : "GL(") + std::to_string(rank) + ")";
}

namespace {

std::string monomial_label(const std::vector<int>& exps, const std::vector<std::string>& names) {
  std::string label;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!label.empty()) label += "*";
    label += names[i];
    if (exps[i] > 1) label += "^" + std::to_string(exps[i]);
  }
  return label.empty() ? "1" : label;
}

void enumerate_monomials(const std::vector<int>& degrees, int budget, std::size_t var, std::vector<int>& exps,
                         std::vector<std::vector<int>>& out) {
  if (var == degrees.size()) {
    out.push_back(exps);
    return;
  }
  for (int e = 0; e * degrees[var] <= budget; ++e) {
    exps[var] = e;
    enumerate_monomials(degrees, budget - e * degrees[var], var + 1, exps, out);
  }
  exps[var] = 0;
}

}  // namespace

RingPtr bg_ring(const GroupSpec& group, int n_trunc) {
  if (n_trunc < 0 || n_trunc % 2 != 0) fail(ErrorKind::InvalidSpec, "bg_ring: truncation N must be even and >= 0");
  if (group.rank < 1) fail(ErrorKind::InvalidSpec, "bg_ring: group rank must be >= 1");
  const int k = group.rank;
  std::vector<int> degrees(k);
  std::vector<std::string> names(k);
  for (int i = 0; i < k; ++i) {
    if (group.kind == GroupSpec::Kind::MultiplicativeTorus) {
      degrees[i] = 2;
      names[i] = k == 1 ? "t" : "t" + std::to_string(i + 1);
    } else {
      degrees[i] = 2 * (i + 1);
      names[i] = "c" + std::to_string(i + 1);
    }
  }
  std::vector<std::vector<int>> monos;
  std::vector<int> exps(k);
  enumerate_monomials(degrees, n_trunc, 0, exps, monos);
  auto degree_of = [&](const std::vector<int>& e) {
    int s = 0;
    for (int i = 0; i < k; ++i) s += e[i] * degrees[i];
    return s;
  };
  std::sort(monos.begin(), monos.end(), [&](const auto& a, const auto& b) {
    int da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db;
    return a > b;
  });
  std::map<std::vector<int>, std::size_t> index;
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    index[monos[i]] = i;
    basis.push_back({monomial_label(monos[i], names), degree_of(monos[i])});
  }
  const std::size_t n = monos.size();
  std::vector<SparseVector> products(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> e(k);
      for (int v = 0; v < k; ++v) e[v] = monos[i][v] + monos[j][v];
      auto it = index.find(e);
      if (it != index.end()) products[i * n + j] = {{it->second, Rational(1)}};
    }
  std::vector<Rational> integral(n);
  if (group.kind == GroupSpec::Kind::MultiplicativeTorus && k == 1) integral[n - 1] = 1;
  return std::make_shared<const GradedBasisRing>(n_trunc / 2, std::move(basis), std::move(products),
                                                 std::move(integral));
}

// ---------------------------------------------------------------------------

BMatrix BMatrix::zero(std::size_t b_size, std::size_t rows, std::size_t cols) {
  return BMatrix{std::vector<Matrix>(b_size, Matrix(rows, cols))};
}

BMatrix BMatrix::constant(std::size_t b_size, const Matrix& m) {
  auto out = zero(b_size, m.rows(), m.cols());
  out.parts[0] = m;
  return out;
}

bool BMatrix::is_zero() const {
  return std::all_of(parts.begin(), parts.end(), [](const Matrix& m) { return m.is_zero(); });
}

BMatrix BMatrix::operator+(const BMatrix& rhs) const {
  BMatrix out = *this;
  for (std::size_t b = 0; b < parts.size(); ++b) out.parts[b] = parts[b] + rhs.parts[b];
  return out;
}

BMatrix BMatrix::operator-(const BMatrix& rhs) const {
  BMatrix out = *this;
  for (std::size_t b = 0; b < parts.size(); ++b) out.parts[b] = parts[b] - rhs.parts[b];
  return out;
}

BMatrix multiply(const GradedBasisRing& b, const BMatrix& lhs, const BMatrix& rhs) {
  auto out = BMatrix::zero(b.size(), lhs.rows(), rhs.cols());
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (lhs.parts[x].is_zero()) continue;
    for (std::size_t y = 0; y < b.size(); ++y) {
      const auto& prod = b.product(x, y);
      if (prod.empty() || rhs.parts[y].is_zero()) continue;
      Matrix m = lhs.parts[x] * rhs.parts[y];
      for (const auto& [z, c] : prod) out.parts[z] = out.parts[z] + m.scaled(c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

void EquivariantModel::finish() {
  const std::size_t n = fiber_->size();
  const std::size_t k = bg_->size();
  pairing_ = BMatrix::zero(k, n, n);
  BMatrix integral_column;
  for (const auto& p : integral_.parts) integral_column.parts.push_back(p.transposed());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // integral(e_a e_b) = sum_l (e_a e_b)_l * integral(e_l), both B-valued
      auto v = multiply(*bg_, fiber_product(a, b), integral_column);
      for (std::size_t beta = 0; beta < k; ++beta) pairing_.parts[beta](a, b) = v.parts[beta](0, 0);
    }
  auto m0_inv = pairing_.parts[0].inverse();
  if (!m0_inv) fail(ErrorKind::DegeneratePairing, "fiber pairing is singular");
  // M_B = M_0 (1 + X) with X nilpotent in B-degree.
  auto nilpotent = pairing_;
  nilpotent.parts[0] = Matrix(n, n);
  auto x = multiply(*bg_, BMatrix::constant(k, *m0_inv), nilpotent);
  auto term = BMatrix::constant(k, Matrix::identity(n));
  auto series = term;
  for (auto& p : x.parts) p = p.scaled(-1);
  while (true) {
    term = multiply(*bg_, x, term);
    if (term.is_zero()) break;
    series = series + term;
  }
  pairing_inverse_ = multiply(*bg_, series, BMatrix::constant(k, *m0_inv));
}

EquivariantModel equivariant_trivial_action(const RingPtr& x, const GroupSpec& group, int n_trunc) {
  EquivariantModel m;
  m.base_ = x;
  m.fiber_ = x;
  m.bg_ = bg_ring(group, n_trunc);
  m.group_ = group;
  m.n_trunc_ = n_trunc;
  const std::size_t n = x->size();
  const std::size_t k = m.bg_->size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto v = BMatrix::zero(k, 1, n);
      for (const auto& [l, c] : x->product(i, j)) v.parts[0](0, l) = c;
      m.products_.push_back(std::move(v));
    }
  m.integral_ = BMatrix::zero(k, 1, n);
  for (std::size_t i = 0; i < n; ++i) m.integral_.parts[0](0, i) = x->integral(i);
  m.finish();
  return m;
}

EquivariantModel equivariant_projective_torus(const std::vector<int>& weights, int n_trunc) {
  if (weights.empty()) fail(ErrorKind::InvalidSpec, "projective torus model needs at least one weight");
  const int m_size = static_cast<int>(weights.size());
  EquivariantModel m;
  m.fiber_ = projective_space(m_size - 1);
  m.base_ = m.fiber_;
  m.group_ = GroupSpec::torus(1);
  m.bg_ = bg_ring(m.group_, n_trunc);
  m.n_trunc_ = n_trunc;
  m.weights_ = weights;
  const std::size_t k = m.bg_->size();
  const std::size_t n = static_cast<std::size_t>(m_size);
  const auto& b = *m.bg_;

  // elementary symmetric functions of the weights
  std::vector<Rational> e(n + 1);
  e[0] = 1;
  for (int w : weights)
    for (std::size_t j = n; j >= 1; --j) e[j] += e[j - 1] * w;
  auto t_power = [&](std::size_t j) -> std::optional<std::size_t> {
    if (j == 0) return *b.unit();
    auto idx = b.find(j == 1 ? "t" : "t^" + std::to_string(j));
    return idx;
  };
  // h^m = -sum_j e_j t^j h^{m-j}
  auto top_relation = BMatrix::zero(k, 1, n);
  for (std::size_t j = 1; j <= n; ++j)
    if (auto tj = t_power(j)) top_relation.parts[*tj](0, n - j) -= e[j];

  // powers[s] = h^s as a B-row over the fiber basis, for s < 2m
  std::vector<BMatrix> powers;
  for (std::size_t s = 0; s < 2 * n; ++s) {
    if (s < n) {
      auto v = BMatrix::zero(k, 1, n);
      v.parts[0](0, s) = 1;
      powers.push_back(std::move(v));
      continue;
    }
    // h * h^{s-1}
    const auto& prev = powers[s - 1];
    auto v = BMatrix::zero(k, 1, n);
    for (std::size_t beta = 0; beta < k; ++beta)
      for (std::size_t l = 0; l < n; ++l) {
        const Rational& c = prev.parts[beta](0, l);
        if (ckm::is_zero(c)) continue;
        if (l + 1 < n) {
          v.parts[beta](0, l + 1) += c;
        } else {
          auto scalar = BMatrix::zero(k, 1, 1);
          scalar.parts[beta](0, 0) = c;
          v = v + multiply(b, scalar, top_relation);
        }
      }
    powers.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.products_.push_back(powers[i + j]);
  m.integral_ = BMatrix::zero(k, 1, n);
  m.integral_.parts[0](0, n - 1) = 1;
  m.finish();
  return m;
}

RingPtr model_ring(const EquivariantModel& model) {
  const auto& f = *model.fiber();
  const auto& b = *model.bg();
  const std::size_t n = f.size();
  const std::size_t k = b.size();
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t beta = 0; beta < k; ++beta)
      basis.push_back({"(" + f.label(i) + "," + b.label(beta) + ")", f.degree(i) + b.degree(beta)});
  std::vector<SparseVector> products(n * k * n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t alpha = 0; alpha < k; ++alpha)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t beta = 0; beta < k; ++beta) {
          std::map<std::size_t, Rational> acc;
          const auto& fp = model.fiber_product(i, j);
          for (const auto& [ab, c1] : b.product(alpha, beta))
            for (std::size_t gamma = 0; gamma < k; ++gamma) {
              if (fp.parts[gamma].is_zero()) continue;
              for (const auto& [g2, c2] : b.product(ab, gamma))
                for (std::size_t l = 0; l < n; ++l)
                  if (!ckm::is_zero(fp.parts[gamma](0, l))) acc[l * k + g2] += c1 * c2 * fp.parts[gamma](0, l);
            }
          SparseVector v;
          for (auto& [idx, c] : acc)
            if (!ckm::is_zero(c)) v.emplace_back(idx, c);
          products[(i * k + alpha) * n * k + j * k + beta] = std::move(v);
        }
  std::vector<Rational> integral(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t beta = 0; beta < k; ++beta) {
      Rational s;
      for (std::size_t gamma = 0; gamma < k; ++gamma) {
        const Rational& c = model.fiber_integral().parts[gamma](0, i);
        if (ckm::is_zero(c)) continue;
        for (const auto& [z, c2] : b.product(gamma, beta)) s += c * c2 * b.integral(z);
      }
      integral[i * k + beta] = s;
    }
  return std::make_shared<const GradedBasisRing>(f.dim() + model.truncation() / 2, std::move(basis),
                                                 std::move(products), std::move(integral));
}

// ---------------------------------------------------------------------------

std::set<int> LiftedProjectorSet::acting_degrees(int index) const {
  if (!remainder_indices.empty() && index == *remainder_indices.begin()) return remainder_indices;
  return {index};
}

BMatrix compose(const EquivariantModel& model, const BMatrix& f, const BMatrix& g) {
  const auto& b = *model.bg();
  return multiply(b, multiply(b, f, model.pairing()), g);
}

BMatrix equivariant_diagonal(const EquivariantModel& model) { return model.pairing_inverse(); }

LiftedProjectorSet lift_projectors(const ProjectorSet& set, const EquivariantModel& model) {
  const auto& fiber = model.fiber();
  if (set.ring->basis() != fiber->basis())
    fail(ErrorKind::UnsupportedAction,
         "lift_projectors: the projector ring does not match the model fiber (only invariant bases are supported)");
  LiftedProjectorSet out{model, {}, set.remainder_indices, set.claims_complete};
  const std::size_t k = model.bg()->size();
  for (const auto& [i, p] : set.projectors) {
    auto action = BMatrix::constant(k, fiber->pairing() * p.coefficients());
    out.projectors.emplace(i, multiply(*model.bg(), model.pairing_inverse(), action));
  }
  return out;
}

namespace {

std::vector<ResidualTerm> residual_of(const EquivariantModel& model, const BMatrix& m, bool is_class) {
  std::vector<ResidualTerm> out;
  const auto& f = *model.fiber();
  const auto& b = *model.bg();
  for (std::size_t beta = 0; beta < m.parts.size(); ++beta)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const Rational& x = m.parts[beta](r, c);
        if (ckm::is_zero(x)) continue;
        if (is_class) out.push_back({{b.label(beta), f.label(c)}, x});
        else out.push_back({{b.label(beta), f.label(r), f.label(c)}, x});
      }
  return out;
}


CheckResult lifted_identity(const EquivariantModel& model, std::string name, std::vector<int> idx, const BMatrix& residual,
                            const std::string& what) {
  CheckResult r{std::move(name), std::move(idx), residual.is_zero(), {}, {}};
  if (!r.pass) {
    r.residual = residual_of(model, residual, false);
    r.detail = what + " fails in truncation N=" + std::to_string(model.truncation()) + "; residual " +
               render(r.residual);
  }
  return r;
}

}  // namespace

VerificationReport verify_lifted(const LiftedProjectorSet& set, unsigned jobs) {
  const auto& model = set.model;
  const auto& bg = *model.bg();
  const std::size_t n = model.fiber()->size();
  const std::size_t k = bg.size();
  std::vector<std::function<CheckResult()>> tasks;
  for (const auto& [i, p] : set.projectors)
    tasks.push_back([&, i = i, p = &p] {
      return lifted_identity(model, "idempotence", {i}, compose(model, *p, *p) - *p, "pi o pi = pi");
    });
  for (const auto& [i, p] : set.projectors)
    for (const auto& [j, q] : set.projectors)
      if (i != j)
        tasks.push_back([&, i = i, j = j, p = &p, q = &q] {
          return lifted_identity(model, "orthogonality", {i, j}, compose(model, *q, *p),
                                 "pi_" + std::to_string(i) + " o pi_" + std::to_string(j) + " = 0");
        });
  if (set.claims_complete)
    tasks.push_back([&] {
      auto total = BMatrix::zero(k, n, n);
      std::vector<int> all;
      for (const auto& [i, p] : set.projectors) {
        total = total + p;
        all.push_back(i);
      }
      return lifted_identity(model, "completeness", all, total - equivariant_diagonal(model), "sum = Delta_G");
    });
  for (const auto& [i, p] : set.projectors)
    tasks.push_back([&, i = i, p = &p] {
      CheckResult r{"graded_action", {i}, true, {}, {}};
      auto degrees = set.acting_degrees(i);
      auto through = multiply(bg, model.pairing(), *p);
      for (std::size_t a = 0; a < n; ++a) {
        auto row = BMatrix::zero(k, 1, n);
        for (std::size_t beta = 0; beta < k; ++beta)
          for (std::size_t c = 0; c < n; ++c) row.parts[beta](0, c) = through.parts[beta](a, c);
        if (degrees.count(model.fiber()->degree(a))) row.parts[0](0, a) -= 1;
        if (row.is_zero()) continue;
        r.pass = false;
        if (r.detail.empty()) {
          r.residual = residual_of(model, row, true);
          r.detail = "act(pi_" + std::to_string(i) + ", " + model.fiber()->label(a) + ") differs by " +
                     render(r.residual);
        }
      }
      return r;
    });

  VerificationReport report;
  report.checks.resize(tasks.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t; (t = next++) < tasks.size();) report.checks[t] = tasks[t]();
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return report;
}

ProjectorSet restrict(const LiftedProjectorSet& set) {
  const auto& ring = set.model.fiber();
  ProjectorSet out{ring, {}, set.remainder_indices, set.claims_complete};
  for (const auto& [i, p] : set.projectors) out.projectors.emplace(i, Correspondence(ring, ring, 0, p.parts[0]));
  return out;
}

bool stabilization_check(const std::function<EquivariantModel(int)>& model_at, const ProjectorSet& set, int max_degree,
                         int n1, int n2) {
  if (max_degree > n1 || n1 > n2)
    fail(ErrorKind::PreconditionViolated, "stabilization_check needs D <= N1 <= N2");
  auto a = lift_projectors(set, model_at(n1));
  auto b = lift_projectors(set, model_at(n2));
  const auto& ba = *a.model.bg();
  const auto& bb = *b.model.bg();
  for (const auto& [i, p] : a.projectors) {
    auto it = b.projectors.find(i);
    if (it == b.projectors.end()) return false;
    for (std::size_t beta = 0; beta < ba.size(); ++beta) {
      if (ba.degree(beta) > max_degree) continue;
      auto other = bb.find(ba.label(beta));
      if (!other || !(p.parts[beta] == it->second.parts[*other])) return false;
    }
    for (std::size_t beta = 0; beta < bb.size(); ++beta)
      if (bb.degree(beta) <= max_degree && !ba.find(bb.label(beta))) return false;
  }
  return a.projectors.size() == b.projectors.size();
}

bool stabilization_check(const RingPtr& x, const GroupSpec& group, const ProjectorSet& set, int max_degree, int n1,
                         int n2) {
  return stabilization_check([&](int n) { return equivariant_trivial_action(x, group, n); }, set, max_degree, n1, n2);
}

// ---------------------------------------------------------------------------

ProjectorSet bottom_weight_restriction(const RingMap& q, const ProjectorSet& set) {
  const auto& src = *q.source;
  const auto& dst = *q.target;
  if (!same_ring(set.ring, q.source)) fail(ErrorKind::RingMismatch, "bottom_weight_restriction: set is not on the source");
  if (q.images.rows() != src.size() || q.images.cols() != dst.size())
    fail(ErrorKind::NotRingMap, "ring map has the wrong shape");
  if (src.dim() != dst.dim())
    fail(ErrorKind::PreconditionViolated, "bottom_weight_restriction: q changes the dimension, images would leave Corr^0");
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = 0; j < dst.size(); ++j)
      if (!ckm::is_zero(q.images(i, j)) && src.degree(i) != dst.degree(j))
        fail(ErrorKind::NotRingMap, "q does not preserve the degree of " + src.label(i));
  if (q.images.rank() != dst.size()) fail(ErrorKind::NotRingMap, "q is not surjective");
  auto row_is_zero = [&](std::size_t i) {
    auto r = q.images.row(i);
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return ckm::is_zero(x); });
  };
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j) {
      if (row_is_zero(i) && row_is_zero(j)) continue;
      std::vector<Rational> prod(src.size());
      for (const auto& [l, c] : src.product(i, j)) prod[l] = c;
      auto lhs = row_times(prod, q.images);
      auto rhs = dst.multiply_dense(q.images.row(i), q.images.row(j));
      if (lhs != rhs)
        fail(ErrorKind::NotRingMap, "q(" + src.label(i) + " * " + src.label(j) + ") != q(" + src.label(i) + ") * q(" +
                                        src.label(j) + ")");
    }
  const Matrix qt = q.images.transposed();
  ProjectorSet out{q.target, {}, set.remainder_indices, false};
  for (const auto& [i, p] : set.projectors)
    out.projectors.emplace(i, Correspondence(q.target, q.target, 0, qt * p.coefficients() * q.images));
  if (set.claims_complete && src.has_poincare_duality() && dst.has_poincare_duality())
    out.claims_complete = qt * src.pairing_inverse() * q.images == dst.pairing_inverse();
  return out;
}

ProjectorSet bottom_weight_restriction(const LiftedProjectorSet& set) { return restrict(set); }

RingMap kill_primitive_map(const RingPtr& source, const RingPtr& target) {
  Matrix images(source->size(), target->size());
  for (std::size_t i = 0; i < source->size(); ++i) {
    const auto& label = source->label(i);
    if (auto j = target->find(label)) images(i, *j) = 1;
    else if (!is_primitive_placeholder(label))
      fail(ErrorKind::NotRingMap, "class '" + label + "' is neither primitive nor present in the target");
  }
  return {source, target, std::move(images)};
}

RingMap equivariant_restriction_map(const EquivariantModel& model, const RingPtr& ring) {
  const std::size_t k = model.bg()->size();
  const auto& fiber = model.fiber();
  Matrix images(ring->size(), fiber->size());
  for (std::size_t i = 0; i < fiber->size(); ++i) images(i * k, i) = 1;
  return {ring, fiber, std::move(images)};
}

RingMap identity_map(const RingPtr& ring) { return {ring, ring, Matrix::identity(ring->size())}; }

}  // namespace ckm
