#include "ckm/correspondence.hpp"

#include <sstream>

#include "ckm/error.hpp"

namespace ckm {

namespace {

void require_same(const RingPtr& a, const RingPtr& b, const char* what) {
  if (!same_ring(a, b)) fail(ErrorKind::RingMismatch, what);
}

}  // namespace

Correspondence::Correspondence(RingPtr source, RingPtr target, int shift, Matrix coefficients)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift), coeffs_(std::move(coefficients)) {
  if (!source_ || !target_) fail(ErrorKind::PreconditionViolated, "correspondence without rings");
  if (coeffs_.rows() != source_->size() || coeffs_.cols() != target_->size())
    fail(ErrorKind::PreconditionViolated, "correspondence matrix shape does not match the bases");
  const int total = product_degree();
  for (std::size_t a = 0; a < coeffs_.rows(); ++a)
    for (std::size_t b = 0; b < coeffs_.cols(); ++b)
      if (!ckm::is_zero(coeffs_(a, b)) && source_->degree(a) + target_->degree(b) != total)
        fail(ErrorKind::PreconditionViolated, "term " + source_->label(a) + " x " + target_->label(b) +
                                                  " is not of degree " + std::to_string(total));
}

Correspondence Correspondence::zero(RingPtr source, RingPtr target, int shift) {
  Matrix m(source->size(), target->size());
  return Correspondence(std::move(source), std::move(target), shift, std::move(m));
}

Correspondence Correspondence::from_classes(const ClassVector& a, const ClassVector& b) {
  const auto& x = a.ring();
  const auto& y = b.ring();
  const int total = a.degree() + b.degree();
  if (total % 2 != 0) fail(ErrorKind::PreconditionViolated, "exterior product of odd total degree");
  Matrix m(x->size(), y->size());
  auto ia = x->degree_indices(a.degree());
  auto ib = y->degree_indices(b.degree());
  for (std::size_t i = 0; i < ia.size(); ++i)
    for (std::size_t j = 0; j < ib.size(); ++j) m(ia[i], ib[j]) = a.coeffs()[i] * b.coeffs()[j];
  return Correspondence(x, y, total / 2 - x->dim(), std::move(m));
}

std::vector<Correspondence::Term> Correspondence::terms() const {
  std::vector<Term> out;
  for (std::size_t a = 0; a < coeffs_.rows(); ++a)
    for (std::size_t b = 0; b < coeffs_.cols(); ++b)
      if (!ckm::is_zero(coeffs_(a, b))) out.push_back({a, b, coeffs_(a, b)});
  return out;
}

ClassVector Correspondence::as_product_class(const RingPtr& product_ring) const {
  if (product_ring->size() != source_->size() * target_->size())
    fail(ErrorKind::RingMismatch, "product ring does not match the correspondence");
  std::vector<Rational> dense(product_ring->size());
  for (std::size_t a = 0; a < coeffs_.rows(); ++a)
    for (std::size_t b = 0; b < coeffs_.cols(); ++b) dense[a * target_->size() + b] = coeffs_(a, b);
  return ClassVector::from_dense(product_ring, dense, product_degree());
}

Correspondence Correspondence::from_product_class(RingPtr source, RingPtr target, const ClassVector& c) {
  const std::size_t ny = target->size();
  if (c.ring()->size() != source->size() * ny) fail(ErrorKind::RingMismatch, "class is not on the product ring");
  if (c.degree() % 2 != 0) fail(ErrorKind::PreconditionViolated, "correspondence class of odd degree");
  auto dense = c.dense();
  Matrix m(source->size(), ny);
  for (std::size_t i = 0; i < dense.size(); ++i) m(i / ny, i % ny) = dense[i];
  const int shift = c.degree() / 2 - source->dim();
  return Correspondence(std::move(source), std::move(target), shift, std::move(m));
}

Correspondence Correspondence::operator+(const Correspondence& rhs) const {
  require_same(source_, rhs.source_, "adding correspondences with different sources");
  require_same(target_, rhs.target_, "adding correspondences with different targets");
  if (shift_ != rhs.shift_) fail(ErrorKind::RingMismatch, "adding correspondences of different degree");
  return Correspondence(source_, target_, shift_, coeffs_ + rhs.coeffs_);
}

Correspondence Correspondence::operator-(const Correspondence& rhs) const { return *this + rhs.scaled(-1); }

Correspondence Correspondence::scaled(const Rational& c) const {
  return Correspondence(source_, target_, shift_, coeffs_.scaled(c));
}

bool Correspondence::operator==(const Correspondence& rhs) const {
  return shift_ == rhs.shift_ && coeffs_ == rhs.coeffs_ && same_ring(source_, rhs.source_) &&
         same_ring(target_, rhs.target_);
}

// ---------------------------------------------------------------------------

Correspondence diagonal(const RingPtr& ring) { return Correspondence(ring, ring, 0, ring->pairing_inverse()); }

// p_XZ*(p_XY^* f . p_YZ^* g): the Y factors are contracted against the pairing of Y.
// Both pullbacks put their Y class in the middle slot, so no sign appears.
Correspondence compose(const Correspondence& f, const Correspondence& g) {
  require_same(f.target(), g.source(), "compose: target of f is not the source of g");
  Matrix m = f.coefficients() * f.target()->pairing() * g.coefficients();
  return Correspondence(f.source(), g.target(), f.shift() + g.shift(), std::move(m));
}

ClassVector act(const Correspondence& gamma, const ClassVector& alpha) {
  require_same(gamma.source(), alpha.ring(), "act: class does not live on the source");
  auto dense = alpha.dense();
  auto out = row_times(row_times(dense, gamma.source()->pairing()), gamma.coefficients());
  return ClassVector::from_dense(gamma.target(), out, alpha.degree() + 2 * gamma.shift());
}

Correspondence transpose(const Correspondence& f) {
  const auto& y = f.target();
  Matrix t = f.coefficients().transposed();
  for (std::size_t b = 0; b < t.rows(); ++b)
    if (y->degree(b) % 2 != 0)
      for (std::size_t a = 0; a < t.cols(); ++a) t(b, a) = -t(b, a);
  return Correspondence(y, f.source(), f.shift() + f.source()->dim() - y->dim(), std::move(t));
}

Correspondence exterior_product(const Correspondence& f, const Correspondence& g, const RingPtr& source_product,
                                const RingPtr& target_product) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& xp = g.source();
  const auto& yp = g.target();
  if (source_product->size() != x->size() * xp->size() || target_product->size() != y->size() * yp->size())
    fail(ErrorKind::RingMismatch, "exterior_product: product rings do not match the factors");
  Matrix m(source_product->size(), target_product->size());
  for (const auto& s : f.terms())
    for (const auto& t : g.terms()) {
      // (a x b) x (a' x b') = (-1)^{|b||a'|} (a x a') x (b x b')
      Rational c = s.coefficient * t.coefficient;
      if (y->degree(s.target_index) % 2 != 0 && xp->degree(t.source_index) % 2 != 0) c = -c;
      m(s.source_index * xp->size() + t.source_index, s.target_index * yp->size() + t.target_index) = c;
    }
  return Correspondence(source_product, target_product, f.shift() + g.shift(), std::move(m));
}

Matrix action_matrix(const Correspondence& gamma) { return gamma.source()->pairing() * gamma.coefficients(); }

Correspondence from_action_matrix(const RingPtr& ring, const Matrix& action) {
  return Correspondence(ring, ring, 0, ring->pairing_inverse() * action);
}

std::string render(const Correspondence& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    const Rational& c = t.coefficient;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (a != 1) os << to_string(a) << "*";
    os << f.source()->label(t.source_index) << " x " << f.target()->label(t.target_index);
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace ckm
