#include "ckm/graded_ring.hpp"

#include <algorithm>
#include <sstream>

#include "ckm/error.hpp"

namespace ckm {

namespace {

int koszul(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

void add_scaled(std::vector<Rational>& acc, const SparseVector& v, const Rational& factor) {
  for (const auto& [k, c] : v) acc[k] += factor * c;
}

}  // namespace

GradedBasisRing::GradedBasisRing(int dim_complex, std::vector<BasisElement> basis,
                                 std::vector<SparseVector> products, std::vector<Rational> integral)
    : dim_(dim_complex), basis_(std::move(basis)), products_(std::move(products)), integral_(std::move(integral)) {
  const std::size_t n = basis_.size();
  if (dim_ < 0) fail(ErrorKind::InvalidRing, "negative dimension");
  if (products_.size() != n * n) fail(ErrorKind::InvalidRing, "structure constant table has wrong size");
  if (integral_.size() != n) fail(ErrorKind::InvalidRing, "integration functional has wrong size");

  by_degree_.assign(2 * dim_ + 1, {});
  position_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = basis_[i];
    if (e.degree < 0 || e.degree > 2 * dim_)
      fail(ErrorKind::InvalidRing, "basis element '" + e.label + "' has degree outside [0, 2d]");
    if (!by_label_.emplace(e.label, i).second) fail(ErrorKind::InvalidRing, "duplicate basis label '" + e.label + "'");
    position_[i] = by_degree_[e.degree].size();
    by_degree_[e.degree].push_back(i);
    if (e.degree % 2 != 0) has_odd_ = true;
    if (!ckm::is_zero(integral_[i]) && e.degree != 2 * dim_)
      fail(ErrorKind::InvalidRing, "integration is nonzero on '" + e.label + "' below the top degree");
  }
  if (by_degree_[0].size() == 1) unit_ = by_degree_[0].front();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& v = products_[i * n + j];
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      SparseVector cleaned;
      for (auto& [k, c] : v) {
        if (k >= n) fail(ErrorKind::InvalidRing, "structure constant refers to a missing basis element");
        if (!cleaned.empty() && cleaned.back().first == k) {
          cleaned.back().second += c;
        } else {
          cleaned.emplace_back(k, c);
        }
      }
      std::erase_if(cleaned, [](const auto& t) { return ckm::is_zero(t.second); });
      for (const auto& [k, c] : cleaned)
        if (basis_[k].degree != basis_[i].degree + basis_[j].degree)
          fail(ErrorKind::InvalidRing, "product " + basis_[i].label + "*" + basis_[j].label + " is not homogeneous");
      v = std::move(cleaned);
    }
  }

  pairing_ = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : product(i, j))
        if (!ckm::is_zero(integral_[k])) pairing_(i, j) += c * integral_[k];
  pairing_inverse_ = pairing_.inverse();
}

std::span<const std::size_t> GradedBasisRing::degree_indices(int p) const {
  if (p < 0 || p > 2 * dim_) return {};
  return by_degree_[p];
}

std::vector<std::size_t> GradedBasisRing::betti() const {
  std::vector<std::size_t> out;
  for (const auto& d : by_degree_) out.push_back(d.size());
  return out;
}

std::optional<std::size_t> GradedBasisRing::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedBasisRing::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  fail(ErrorKind::MalformedExpression, "unknown basis label '" + label + "'");
}

const Matrix& GradedBasisRing::pairing_inverse() const {
  if (!pairing_inverse_) fail(ErrorKind::DegeneratePairing, "Poincare pairing is singular");
  return *pairing_inverse_;
}

std::vector<Rational> GradedBasisRing::multiply_dense(std::span<const Rational> a, std::span<const Rational> b) const {
  std::vector<Rational> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (ckm::is_zero(a[i])) continue;
    for (std::size_t j = 0; j < size(); ++j) {
      if (ckm::is_zero(b[j])) continue;
      add_scaled(out, product(i, j), a[i] * b[j]);
    }
  }
  return out;
}

Rational GradedBasisRing::integrate_dense(std::span<const Rational> a) const {
  Rational s;
  for (std::size_t i = 0; i < size(); ++i)
    if (!ckm::is_zero(a[i]) && !ckm::is_zero(integral_[i])) s += a[i] * integral_[i];
  return s;
}

bool GradedBasisRing::operator==(const GradedBasisRing& rhs) const {
  return dim_ == rhs.dim_ && basis_ == rhs.basis_ && products_ == rhs.products_ && integral_ == rhs.integral_;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------

ClassVector::ClassVector(RingPtr ring, int degree, std::vector<Rational> coeffs)
    : ring_(std::move(ring)), degree_(degree), coeffs_(std::move(coeffs)) {
  if (!ring_) fail(ErrorKind::PreconditionViolated, "class without a ring");
  if (coeffs_.size() != ring_->rank(degree_))
    fail(ErrorKind::PreconditionViolated, "coefficient count does not match the basis of degree " + std::to_string(degree_));
}

ClassVector ClassVector::zero(RingPtr ring, int degree) {
  auto n = ring->rank(degree);
  return ClassVector(std::move(ring), degree, std::vector<Rational>(n));
}

ClassVector ClassVector::basis(RingPtr ring, std::size_t global_index) {
  int p = ring->degree(global_index);
  std::vector<Rational> c(ring->rank(p));
  c[ring->position_in_degree(global_index)] = 1;
  return ClassVector(std::move(ring), p, std::move(c));
}

ClassVector ClassVector::from_dense(RingPtr ring, std::span<const Rational> dense, std::optional<int> degree_hint) {
  std::optional<int> degree = degree_hint;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (ckm::is_zero(dense[i])) continue;
    int p = ring->degree(i);
    if (degree && *degree != p) fail(ErrorKind::MalformedExpression, "class is not homogeneous");
    degree = p;
  }
  int p = degree.value_or(0);
  std::vector<Rational> c(ring->rank(p));
  auto idx = ring->degree_indices(p);
  for (std::size_t k = 0; k < idx.size(); ++k) c[k] = dense[idx[k]];
  return ClassVector(std::move(ring), p, std::move(c));
}

std::vector<Rational> ClassVector::dense() const {
  std::vector<Rational> out(ring_->size());
  auto idx = ring_->degree_indices(degree_);
  for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = coeffs_[k];
  return out;
}

bool ClassVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return ckm::is_zero(c); });
}

ClassVector ClassVector::operator+(const ClassVector& rhs) const {
  if (!same_ring(ring_, rhs.ring_)) fail(ErrorKind::RingMismatch, "adding classes from different rings");
  if (degree_ != rhs.degree_) fail(ErrorKind::PreconditionViolated, "adding classes of different degrees");
  ClassVector out = *this;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out.coeffs_[k] += rhs.coeffs_[k];
  return out;
}

ClassVector ClassVector::operator-(const ClassVector& rhs) const { return *this + rhs.scaled(-1); }

ClassVector ClassVector::scaled(const Rational& c) const {
  ClassVector out = *this;
  for (auto& x : out.coeffs_) x *= c;
  return out;
}

bool ClassVector::operator==(const ClassVector& rhs) const {
  if (!same_ring(ring_, rhs.ring_)) return false;
  if (is_zero() && rhs.is_zero()) return true;
  return degree_ == rhs.degree_ && coeffs_ == rhs.coeffs_;
}

// ---------------------------------------------------------------------------

ClassVector multiply(const RingPtr& ring, const ClassVector& a, const ClassVector& b) {
  if (!same_ring(ring, a.ring()) || !same_ring(ring, b.ring()))
    fail(ErrorKind::RingMismatch, "multiply: classes do not belong to the ring");
  int p = a.degree() + b.degree();
  if (p > ring->top_degree()) return ClassVector::zero(ring, p);
  auto prod = ring->multiply_dense(a.dense(), b.dense());
  return ClassVector::from_dense(ring, prod, p);
}

Rational integrate(const RingPtr& ring, const ClassVector& a) {
  if (!same_ring(ring, a.ring())) fail(ErrorKind::RingMismatch, "integrate: class does not belong to the ring");
  if (a.degree() != ring->top_degree()) return 0;
  return ring->integrate_dense(a.dense());
}

PairingMatrix pairing_matrix(const RingPtr& ring, int p) {
  if (p < 0 || p > ring->top_degree()) fail(ErrorKind::PreconditionViolated, "degree out of range");
  auto rows = ring->degree_indices(p);
  auto cols = ring->degree_indices(ring->top_degree() - p);
  Matrix m = ring->pairing().submatrix(rows, cols);
  if (!m.inverse()) fail(ErrorKind::DegeneratePairing, "pairing in degree " + std::to_string(p) + " is singular");
  return {p, std::move(m)};
}

std::vector<ClassVector> dual_of(const RingPtr& ring, std::span<const ClassVector> classes) {
  if (classes.empty()) return {};
  const int p = classes.front().degree();
  const int q = ring->top_degree() - p;
  auto cols = ring->degree_indices(q);
  if (classes.size() != cols.size())
    fail(ErrorKind::DegeneratePairing, "degree " + std::to_string(p) + " and its complement have different ranks");
  // A(i, j) = integral(c_i * f_j); want W with A W^T = I.
  Matrix a(classes.size(), cols.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].degree() != p) fail(ErrorKind::PreconditionViolated, "dual_of: mixed degrees");
    auto row = row_times(classes[i].dense(), ring->pairing());
    for (std::size_t j = 0; j < cols.size(); ++j) a(i, j) = row[cols[j]];
  }
  auto inv = a.inverse();
  if (!inv) fail(ErrorKind::DegeneratePairing, "pairing in degree " + std::to_string(p) + " is singular");
  std::vector<ClassVector> out;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    std::vector<Rational> c(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) c[j] = (*inv)(j, k);
    out.emplace_back(ring, q, std::move(c));
  }
  return out;
}

std::vector<ClassVector> dual_basis(const RingPtr& ring, int p) {
  std::vector<ClassVector> basis;
  for (auto i : ring->degree_indices(p)) basis.push_back(ClassVector::basis(ring, i));
  if (basis.empty()) {
    if (ring->rank(ring->top_degree() - p) != 0)
      fail(ErrorKind::DegeneratePairing, "degree " + std::to_string(p) + " and its complement have different ranks");
    return {};
  }
  return dual_of(ring, basis);
}

// ---------------------------------------------------------------------------

std::vector<std::string> ring_invariant_violations(const GradedBasisRing& ring, bool require_duality) {
  std::vector<std::string> issues;
  const std::size_t n = ring.size();
  auto lbl = [&](std::size_t i) { return ring.label(i); };

  if (!ring.unit()) {
    issues.push_back("degree 0 is not one-dimensional");
  } else {
    std::size_t u = *ring.unit();
    for (std::size_t i = 0; i < n; ++i) {
      SparseVector expect{{i, Rational(1)}};
      if (ring.product(u, i) != expect || ring.product(i, u) != expect) {
        issues.push_back("unit is not an identity for " + lbl(i));
        break;
      }
    }
  }

  for (std::size_t i = 0; i < n && issues.size() < 20; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      SparseVector ji = ring.product(j, i);
      if (koszul(ring.degree(i), ring.degree(j)) < 0)
        for (auto& t : ji) t.second = -t.second;
      if (ring.product(i, j) != ji) {
        issues.push_back("graded commutativity fails for " + lbl(i) + ", " + lbl(j));
        break;
      }
    }
  }

  for (std::size_t a = 0; a < n && issues.size() < 20; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (ring.degree(a) + ring.degree(b) > ring.top_degree()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (ring.degree(a) + ring.degree(b) + ring.degree(c) > ring.top_degree()) continue;
        std::vector<Rational> left(n), right(n);
        for (const auto& [k, x] : ring.product(a, b)) add_scaled(left, ring.product(k, c), x);
        for (const auto& [k, x] : ring.product(b, c)) add_scaled(right, ring.product(a, k), x);
        if (left != right) {
          issues.push_back("associativity fails for " + lbl(a) + ", " + lbl(b) + ", " + lbl(c));
          goto assoc_done;
        }
      }
    }
  }
assoc_done:

  if (require_duality) {
    for (int p = 0; p <= ring.top_degree(); ++p) {
      auto rows = ring.degree_indices(p);
      auto cols = ring.degree_indices(ring.top_degree() - p);
      if (rows.size() != cols.size() || (!rows.empty() && !ring.pairing().submatrix(rows, cols).inverse()))
        issues.push_back("Poincare pairing degenerates in degree " + std::to_string(p));
    }
  }
  return issues;
}

RingPtr ring_from_triple_form(int dim_complex, std::vector<BasisElement> basis, const TripleForm& form,
                              ErrorKind on_degenerate) {
  const std::size_t n = basis.size();
  const int top = 2 * dim_complex;
  std::vector<std::vector<std::size_t>> by_degree(top + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (basis[i].degree < 0 || basis[i].degree > top)
      fail(ErrorKind::InvalidRing, "basis element '" + basis[i].label + "' has degree outside [0, 2d]");
    by_degree[basis[i].degree].push_back(i);
  }
  if (by_degree[0].size() != 1) fail(ErrorKind::InvalidRing, "degree 0 must be one-dimensional");
  const std::size_t unit = by_degree[0].front();

  // inverse_pairing[p] = (P_p)^{-1} where P_p(j, k) = T(g_j, f_k, 1), g in degree p, f in degree top - p.
  std::vector<Matrix> inverse_pairing(top + 1);
  for (int p = 0; p <= top; ++p) {
    const auto& g = by_degree[p];
    const auto& f = by_degree[top - p];
    if (g.size() != f.size())
      fail(on_degenerate, "degrees " + std::to_string(p) + " and " + std::to_string(top - p) + " have different ranks");
    Matrix m(g.size(), f.size());
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t k = 0; k < f.size(); ++k) m(j, k) = form(g[j], f[k], unit);
    auto inv = m.inverse();
    if (!inv) fail(on_degenerate, "pairing in degree " + std::to_string(p) + " is singular");
    inverse_pairing[p] = std::move(*inv);
  }

  std::vector<SparseVector> products(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int p = basis[i].degree + basis[j].degree;
      if (p > top) continue;
      const auto& g = by_degree[p];
      const auto& f = by_degree[top - p];
      std::vector<Rational> t(f.size());
      bool any = false;
      for (std::size_t k = 0; k < f.size(); ++k) {
        t[k] = form(i, j, f[k]);
        any = any || !ckm::is_zero(t[k]);
      }
      if (!any) continue;
      // x^T P = t^T  =>  x^T = t^T P^{-1}
      auto x = row_times(t, inverse_pairing[p]);
      SparseVector v;
      for (std::size_t m = 0; m < g.size(); ++m)
        if (!ckm::is_zero(x[m])) v.emplace_back(g[m], x[m]);
      products[i * n + j] = std::move(v);
    }
  }
  std::vector<Rational> integral(n);
  for (auto e : by_degree[top]) integral[e] = form(e, unit, unit);
  return std::make_shared<const GradedBasisRing>(dim_complex, std::move(basis), std::move(products), std::move(integral));
}

std::string render_class(const ClassVector& c) {
  std::ostringstream os;
  auto idx = c.ring()->degree_indices(c.degree());
  bool first = true;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const Rational& x = c.coeffs()[k];
    if (ckm::is_zero(x)) continue;
    if (!first) os << (sgn(x) > 0 ? " + " : " - ");
    else if (sgn(x) < 0) os << "-";
    Rational ax = abs(x);
    if (ax != 1) os << to_string(ax) << "*";
    os << c.ring()->label(idx[k]);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace ckm
