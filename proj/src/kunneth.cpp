#include "ckm/kunneth.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "ckm/error.hpp"
#include "ckm/spaces.hpp"

namespace ckm {

std::set<int> ProjectorSet::acting_degrees(int index) const {
  if (!remainder_indices.empty() && index == *remainder_indices.begin()) return remainder_indices;
  return {index};
}

Correspondence ProjectorSet::sum() const {
  auto total = Correspondence::zero(ring, ring, 0);
  for (const auto& [i, p] : projectors) total = total + p;
  return total;
}

// ---------------------------------------------------------------------------
// Verification

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<const CheckResult*> VerificationReport::failures() const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks)
    if (!c.pass) out.push_back(&c);
  return out;
}

namespace {

std::string render_indices(const std::vector<int>& indices) {
  std::string s = "[";
  for (std::size_t k = 0; k < indices.size(); ++k) s += (k ? "," : "") + std::to_string(indices[k]);
  return s + "]";
}

std::vector<ResidualTerm> residual_of(const Correspondence& c) {
  std::vector<ResidualTerm> out;
  for (const auto& t : c.terms())
    out.push_back({{c.source()->label(t.source_index), c.target()->label(t.target_index)}, t.coefficient});
  return out;
}

std::vector<ResidualTerm> residual_of(const ClassVector& v) {
  std::vector<ResidualTerm> out;
  auto idx = v.ring()->degree_indices(v.degree());
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (!ckm::is_zero(v.coeffs()[k])) out.push_back({{v.ring()->label(idx[k])}, v.coeffs()[k]});
  return out;
}

CheckResult identity_check(std::string name, std::vector<int> indices, const Correspondence& residual,
                           std::string what) {
  CheckResult r{std::move(name), std::move(indices), residual.is_zero(), {}, {}};
  if (!r.pass) {
    r.residual = residual_of(residual);
    r.detail = what + " fails; residual " + render(r.residual);
  }
  return r;
}

CheckResult graded_action_check(const ProjectorSet& set, int index, const Correspondence& p) {
  CheckResult r{"graded_action", {index}, true, {}, {}};
  const auto degrees = set.acting_degrees(index);
  const auto& ring = set.ring;
  for (std::size_t a = 0; a < ring->size(); ++a) {
    auto alpha = ClassVector::basis(ring, a);
    auto image = act(p, alpha);
    auto expected = degrees.count(ring->degree(a)) ? alpha : ClassVector::zero(ring, alpha.degree());
    auto diff = image - expected;
    if (diff.is_zero()) continue;
    r.pass = false;
    auto terms = residual_of(diff);
    if (r.detail.empty()) {
      r.detail = "act(pi_" + std::to_string(index) + ", " + ring->label(a) + ") differs from the expected class by " +
                 render(terms);
      r.residual = std::move(terms);
    }
  }
  return r;
}

bool well_formed(const ProjectorSet& set, int index, const Correspondence& p, CheckResult& out) {
  if (p.shift() == 0 && same_ring(p.source(), set.ring) && same_ring(p.target(), set.ring)) return true;
  out = CheckResult{"structure", {index}, false, {}, "pi_" + std::to_string(index) + " is not in Corr^0(X,X)"};
  return false;
}

}  // namespace

std::string render(const std::vector<ResidualTerm>& terms) {
  std::string s;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const Rational& c = terms[k].coefficient;
    if (k) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    Rational a = abs(c);
    if (a != 1) s += to_string(a) + "*";
    for (std::size_t l = 0; l < terms[k].labels.size(); ++l) s += (l ? " x " : "") + terms[k].labels[l];
  }
  return terms.empty() ? "0" : s;
}

std::string VerificationReport::text() const {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    if (c.pass) continue;
    ++failed;
    os << "FAIL " << c.check << " " << render_indices(c.indices) << ": " << c.detail << "\n";
  }
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
  for (const auto& c : checks) {
    auto& t = tally[c.check];
    ++t.second;
    if (c.pass) ++t.first;
  }
  for (const auto& [name, t] : tally) os << name << ": " << t.first << "/" << t.second << " pass\n";
  os << (failed == 0 ? "all checks pass" : std::to_string(failed) + " check(s) failed") << "\n";
  return os.str();
}

VerificationReport verify_ck(const ProjectorSet& set, unsigned jobs) {
  std::vector<std::function<CheckResult()>> tasks;
  std::vector<std::pair<int, const Correspondence*>> members;
  VerificationReport report;
  for (const auto& [i, p] : set.projectors) {
    CheckResult bad;
    if (well_formed(set, i, p, bad)) members.emplace_back(i, &p);
    else report.checks.push_back(std::move(bad));
  }
  if (!report.checks.empty()) return report;

  for (const auto& [i, p] : members)
    tasks.push_back([i, p] { return identity_check("idempotence", {i}, compose(*p, *p) - *p, "pi o pi = pi"); });
  for (const auto& [i, p] : members)
    for (const auto& [j, q] : members)
      if (i != j)
        tasks.push_back([i, j, p, q] {
          return identity_check("orthogonality", {i, j}, compose(*q, *p), "pi_" + std::to_string(i) + " o pi_" +
                                                                              std::to_string(j) + " = 0");
        });
  if (set.claims_complete) {
    tasks.push_back([&set] {
      std::vector<int> all;
      for (const auto& [i, p] : set.projectors) all.push_back(i);
      return identity_check("completeness", all, set.sum() - diagonal(set.ring), "sum of projectors = Delta");
    });
  }
  for (const auto& [i, p] : members) tasks.push_back([&set, i, p] { return graded_action_check(set, i, *p); });

  std::vector<CheckResult> results(tasks.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  if (workers == 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) results[k] = tasks[k]();
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k; (k = next++) < tasks.size();) results[k] = tasks[k]();
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  report.checks = std::move(results);
  return report;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

struct Diagonalization {
  Matrix left;   // P
  Matrix right;  // R, with P M R^T diagonal
  std::vector<Rational> diagonal;
};

void swap_rows(Matrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
}

void swap_cols(Matrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
}

void add_row(Matrix& m, std::size_t target, std::size_t source, const Rational& factor) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!ckm::is_zero(m(source, c))) m(target, c) += factor * m(source, c);
}

void add_col(Matrix& m, std::size_t target, std::size_t source, const Rational& factor) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!ckm::is_zero(m(r, source))) m(r, target) += factor * m(r, source);
}

// Elimination by simultaneous row and column operations. In the symmetric case
// every row operation is mirrored on the columns, so P = R (a congruence).
Diagonalization diagonalize(const Matrix& block, bool symmetric) {
  const std::size_t n = block.rows();
  Matrix m = block;
  Matrix p = Matrix::identity(n);
  Matrix r = Matrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<std::pair<std::size_t, std::size_t>> pivot;
    if (symmetric) {
      for (std::size_t i = k; i < n && !pivot; ++i)
        if (!ckm::is_zero(m(i, i))) pivot = {i, i};
      if (!pivot) {
        for (std::size_t i = k; i < n && !pivot; ++i)
          for (std::size_t j = k; j < n && !pivot; ++j)
            if (!ckm::is_zero(m(i, j))) {
              // M_ii = M_jj = 0 here, so adding j to i makes M_ii = 2 M_ij.
              add_row(m, i, j, 1);
              add_col(m, i, j, 1);
              add_row(p, i, j, 1);
              add_row(r, i, j, 1);
              pivot = {i, i};
            }
      }
    } else {
      for (std::size_t i = k; i < n && !pivot; ++i)
        for (std::size_t j = k; j < n && !pivot; ++j)
          if (!ckm::is_zero(m(i, j))) pivot = {i, j};
    }
    if (!pivot) fail(ErrorKind::DegeneratePairing, "pairing block is singular");
    swap_rows(m, k, pivot->first);
    swap_rows(p, k, pivot->first);
    swap_cols(m, k, pivot->second);
    swap_rows(r, k, pivot->second);
    const Rational pivot_value = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (ckm::is_zero(m(i, k))) continue;
      Rational f = -m(i, k) / pivot_value;
      add_row(m, i, k, f);
      add_row(p, i, k, f);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (ckm::is_zero(m(k, j))) continue;
      Rational f = -m(k, j) / pivot_value;
      add_col(m, j, k, f);
      add_row(r, j, k, f);
    }
  }
  Diagonalization out{std::move(p), std::move(r), {}};
  for (std::size_t k = 0; k < n; ++k) out.diagonal.push_back(m(k, k));
  return out;
}

// pi = sum_k (1/M'_kk) D'_k x C'_k for C the degree-q basis and D the
// complementary basis, with the pairing block diagonalized.
Correspondence degree_projector(const RingPtr& ring, int q) {
  const int top = 2 * ring->dim();
  auto c = ring->degree_indices(q);
  auto d = ring->degree_indices(top - q);
  Matrix block = ring->pairing().submatrix(c, d);
  auto diag = diagonalize(block, q == top - q);
  Matrix out(ring->size(), ring->size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    Rational inv = 1 / diag.diagonal[k];
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (ckm::is_zero(diag.right(k, j))) continue;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (!ckm::is_zero(diag.left(k, i))) out(d[j], c[i]) += inv * diag.right(k, j) * diag.left(k, i);
    }
  }
  return Correspondence(ring, ring, 0, std::move(out));
}

bool covers_all_degrees(const RingPtr& ring, const std::set<int>& indices) {
  for (int p = 0; p <= 2 * ring->dim(); ++p)
    if (ring->rank(p) > 0 && !indices.count(p)) return false;
  return true;
}

}  // namespace

ProjectorSet algebraic_projectors(const RingPtr& ring, int cutoff, const std::optional<std::set<int>>& algebraic_degrees) {
  const int d = ring->dim();
  const int top = 2 * d;
  const int m = std::min(cutoff, top);
  for (int i = 1; i <= m; i += 2)
    if (ring->rank(i) > 0)
      fail(ErrorKind::OddRankObstruction,
           "degree " + std::to_string(i) + " has rank " + std::to_string(ring->rank(i)) +
               " but odd cohomology cannot be cut out by the algebraic construction");

  std::vector<int> order;
  std::vector<Correspondence> raw;
  for (int q = 0; q <= std::min(m, d); q += 2) {
    if (algebraic_degrees && !algebraic_degrees->count(q)) continue;
    if (ring->rank(q) == 0) continue;
    auto pi = degree_projector(ring, q);
    if (q < top - q) {
      auto upper = transpose(pi);
      order.push_back(q);
      raw.push_back(std::move(pi));
      order.push_back(top - q);
      raw.push_back(std::move(upper));
    } else {
      order.push_back(q);
      raw.push_back(std::move(pi));
    }
  }
  auto orthogonal = gram_schmidt_orthogonalize(raw);

  ProjectorSet set{ring, {}, {}, false};
  std::set<int> covered;
  for (std::size_t k = 0; k < order.size(); ++k) {
    set.projectors.emplace(order[k], std::move(orthogonal[k]));
    covered.insert(order[k]);
  }
  set.claims_complete = covers_all_degrees(ring, covered);
  return set;
}

ProjectorSet standard_projectors(const RingPtr& ring, std::optional<int> cutoff, bool partial,
                                 const std::optional<std::set<int>>& algebraic_degrees) {
  auto set = algebraic_projectors(ring, cutoff.value_or(ring->dim() - 1), algebraic_degrees);
  if (partial || set.claims_complete) return set;
  std::set<int> rest;
  for (int i = 0; i <= 2 * ring->dim(); ++i)
    if (ring->rank(i) > 0 && !set.projectors.count(i)) rest.insert(i);
  return with_remainder(std::move(set), rest);
}

ProjectorSet hypersurface_projectors(int n, int d, int middle_rank) {
  if (n < 2 || d < 1) fail(ErrorKind::InvalidSpec, "hypersurface_projectors: need n >= 2 and d >= 1");
  auto x = hypersurface_model(n, d, middle_rank);
  const int dim = n - 1;
  // H = restriction of the hyperplane class; on a curve it is d times the point.
  ClassVector h = x->find("h") ? ClassVector::basis(x, x->index_of("h"))
                               : ClassVector::basis(x, x->index_of("pt")).scaled(Rational(d));
  std::vector<ClassVector> powers{ClassVector::basis(x, *x->unit())};
  for (int k = 1; k <= dim; ++k) powers.push_back(multiply(x, powers.back(), h));

  ProjectorSet set{x, {}, {}, false};
  const Rational inv(1, d);
  for (int r = 0; r <= dim; ++r) {
    if (2 * r == dim) continue;
    set.projectors.emplace(2 * r, Correspondence::from_classes(powers[dim - r], powers[r]).scaled(inv));
  }
  return with_remainder(std::move(set), {dim});
}

Correspondence remainder_projector(const RingPtr& ring, const ProjectorSet& partial) {
  ProjectorSet probe = partial;
  probe.claims_complete = false;
  probe.remainder_indices.clear();
  for (const auto& c : verify_ck(probe).checks)
    if (!c.pass && c.check != "graded_action")
      fail(ErrorKind::PreconditionViolated, "remainder needs orthogonal idempotents: " + c.detail);
  return diagonal(ring) - probe.sum();
}

ProjectorSet with_remainder(ProjectorSet set, const std::set<int>& indices) {
  if (indices.empty()) fail(ErrorKind::PreconditionViolated, "remainder needs at least one index");
  for (int i : indices)
    if (set.projectors.count(i)) fail(ErrorKind::PreconditionViolated, "index " + std::to_string(i) + " is taken");
  auto rest = remainder_projector(set.ring, set);
  set.projectors.emplace(*indices.begin(), std::move(rest));
  set.remainder_indices = indices;
  set.claims_complete = true;
  return set;
}

ProjectorSet product_projectors(const ProjectorSet& px, const ProjectorSet& py) {
  if (!px.claims_complete || !py.claims_complete)
    fail(ErrorKind::IncompleteInput, "product_projectors needs complete projector sets on both factors");
  if (px.remainder_indices.size() > 1 || py.remainder_indices.size() > 1)
    fail(ErrorKind::PreconditionViolated, "product_projectors: a remainder spanning several degrees has no single index");
  auto xy = product_space(px.ring, py.ring);
  ProjectorSet out{xy, {}, {}, true};
  for (const auto& [p, f] : px.projectors)
    for (const auto& [q, g] : py.projectors) {
      auto term = exterior_product(f, g, xy, xy);
      auto [it, inserted] = out.projectors.emplace(p + q, term);
      if (!inserted) it->second = it->second + term;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Gram-Schmidt

namespace {

// Projection onto the stable image of f along its stable kernel (row-vector convention).
Matrix fitting_idempotent(const Matrix& f) {
  Matrix power = f;
  std::size_t rank = power.rank();
  while (true) {
    Matrix next = power * f;
    std::size_t r = next.rank();
    if (r == rank) break;
    power = std::move(next);
    rank = r;
  }
  const std::size_t n = f.rows();
  if (rank == 0) return Matrix(n, n);
  Matrix image = power.row_space_basis();
  Matrix kernel = power.left_null_space();
  auto inverse = vstack(image, kernel).inverse();
  if (!inverse) fail(ErrorKind::PreconditionViolated, "Fitting decomposition failed");
  return *inverse * vstack(image, Matrix(kernel.rows(), n));
}

}  // namespace

std::vector<Correspondence> gram_schmidt_orthogonalize(const std::vector<Correspondence>& idempotents) {
  std::vector<Correspondence> out;
  if (idempotents.empty()) return out;
  const RingPtr& ring = idempotents.front().source();
  const std::size_t n = ring->size();
  for (const auto& e : idempotents) {
    if (e.shift() != 0 || !same_ring(e.source(), ring) || !same_ring(e.target(), ring))
      fail(ErrorKind::PreconditionViolated, "gram_schmidt: inputs must lie in Corr^0(X,X) of one ring");
    if (!(compose(e, e) == e)) fail(ErrorKind::NotIdempotent, "gram_schmidt: input is not idempotent");
  }
  Matrix taken(n, n);
  for (const auto& e : idempotents) {
    Matrix q = Matrix::identity(n) - taken;
    Matrix f = q * action_matrix(e) * q;
    Matrix g = (f * f == f) ? f : fitting_idempotent(f);
    taken = taken + g;
    out.push_back(from_action_matrix(ring, g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Motives

MotiveObject::MotiveObject(Correspondence projector, int twist) : projector_(std::move(projector)), twist_(twist) {
  if (projector_.shift() != 0 || !same_ring(projector_.source(), projector_.target()))
    fail(ErrorKind::PreconditionViolated, "a motive needs a projector in Corr^0(X,X)");
  if (!(compose(projector_, projector_) == projector_))
    fail(ErrorKind::NotIdempotent, "motive projector is not idempotent");
}

MotiveObject unit_motive() {
  auto point = projective_space(0);
  return MotiveObject(diagonal(point), 0);
}

MotiveObject tensor(const MotiveObject& m, const MotiveObject& n) {
  auto xy = product_space(m.ring(), n.ring());
  return MotiveObject(exterior_product(m.projector(), n.projector(), xy, xy), m.twist() + n.twist());
}

MotiveObject tate_twist(const MotiveObject& m, int r) { return MotiveObject(m.projector(), m.twist() + r); }

bool is_morphism(const Correspondence& f, const MotiveObject& source, const MotiveObject& target) {
  if (!same_ring(f.source(), source.ring()) || !same_ring(f.target(), target.ring())) return false;
  if (f.shift() != target.twist() - source.twist()) return false;
  return compose(source.projector(), f) == f && compose(f, target.projector()) == f;
}

}  // namespace ckm
