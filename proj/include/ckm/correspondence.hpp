#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "ckm/graded_ring.hpp"
#include "ckm/matrix.hpp"

namespace ckm {

/// A class in Corr^r(X, Y), stored as its coefficient matrix over the Kunneth
/// basis: entry (a, b) is the coefficient of e_a x e_b, rows indexed by the
/// basis of X and columns by the basis of Y.
///
/// The underlying class lives in degree 2(d_X + r) of X x Y, so only entries
/// with deg a + deg b = 2(d_X + r) may be nonzero.
class Correspondence {
 public:
  struct Term {
    std::size_t source_index;
    std::size_t target_index;
    Rational coefficient;
  };

  Correspondence(RingPtr source, RingPtr target, int shift, Matrix coefficients);

  static Correspondence zero(RingPtr source, RingPtr target, int shift);
  /// a x b for homogeneous classes a on X, b on Y.
  static Correspondence from_classes(const ClassVector& a, const ClassVector& b);

  const RingPtr& source() const noexcept { return source_; }
  const RingPtr& target() const noexcept { return target_; }
  int shift() const noexcept { return shift_; }
  int product_degree() const noexcept { return 2 * (source_->dim() + shift_); }
  const Matrix& coefficients() const noexcept { return coeffs_; }
  const Rational& coefficient(std::size_t a, std::size_t b) const { return coeffs_(a, b); }

  /// Nonzero terms in row-major order.
  std::vector<Term> terms() const;
  bool is_zero() const { return coeffs_.is_zero(); }

  /// The same class viewed on the product ring X x Y (basis "(a,b)", row-major).
  ClassVector as_product_class(const RingPtr& product_ring) const;
  static Correspondence from_product_class(RingPtr source, RingPtr target, const ClassVector& c);

  Correspondence operator+(const Correspondence& rhs) const;
  Correspondence operator-(const Correspondence& rhs) const;
  Correspondence scaled(const Rational& c) const;
  bool operator==(const Correspondence& rhs) const;

 private:
  RingPtr source_;
  RingPtr target_;
  int shift_;
  Matrix coeffs_;
};

Correspondence diagonal(const RingPtr& ring);

/// g o f for f in Corr(X, Y) and g in Corr(Y, Z).
Correspondence compose(const Correspondence& f, const Correspondence& g);

/// p_Y*(p_X^* alpha . gamma), of degree deg alpha + 2r on Y.
ClassVector act(const Correspondence& gamma, const ClassVector& alpha);

/// Swap of the tensor factors with the Koszul sign; lands in Corr^{r + d_X - d_Y}(Y, X).
Correspondence transpose(const Correspondence& f);

/// f x g in Corr(X x X', Y x Y') after regrouping X x Y x X' x Y' as (X x X') x (Y x Y').
/// The product rings are passed so callers can share them.
Correspondence exterior_product(const Correspondence& f, const Correspondence& g, const RingPtr& source_product,
                                const RingPtr& target_product);

/// Matrix of alpha -> act(gamma, alpha) on row vectors over the full bases; for
/// Corr^0(X, X) this turns composition into matrix multiplication.
Matrix action_matrix(const Correspondence& gamma);
Correspondence from_action_matrix(const RingPtr& ring, const Matrix& action);

std::string render(const Correspondence& f);

}  // namespace ckm
