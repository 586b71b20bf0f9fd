#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ckm/error.hpp"
#include "ckm/matrix.hpp"
#include "ckm/rational.hpp"

namespace ckm {

struct BasisElement {
  std::string label;
  int degree = 0;

  bool operator==(const BasisElement&) const = default;
};

/// Sorted (index, coefficient) pairs with nonzero coefficients.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// A finite graded basis with rational structure constants and a top-degree
/// integration functional. Immutable after construction.
///
/// The product of basis elements i and j is stored as a sparse vector over the
/// whole basis; Koszul signs are part of the stored constants. Construction
/// checks shapes and grading but not associativity or duality; use
/// `ring_invariant_violations` for the full audit.
class GradedBasisRing {
 public:
  GradedBasisRing(int dim_complex, std::vector<BasisElement> basis,
                  std::vector<SparseVector> products, std::vector<Rational> integral);

  int dim() const noexcept { return dim_; }
  int top_degree() const noexcept { return 2 * dim_; }
  std::size_t size() const noexcept { return basis_.size(); }

  const BasisElement& element(std::size_t i) const { return basis_[i]; }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  const std::string& label(std::size_t i) const { return basis_[i].label; }
  int degree(std::size_t i) const { return basis_[i].degree; }

  /// Global indices of the basis elements of degree p (empty outside [0, 2d]).
  std::span<const std::size_t> degree_indices(int p) const;
  std::size_t position_in_degree(std::size_t i) const { return position_[i]; }
  std::size_t rank(int p) const { return degree_indices(p).size(); }
  std::vector<std::size_t> betti() const;

  std::optional<std::size_t> find(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;  // throws MalformedExpression

  const SparseVector& product(std::size_t i, std::size_t j) const { return products_[i * size() + j]; }
  const Rational& integral(std::size_t i) const { return integral_[i]; }
  const std::vector<Rational>& integral() const noexcept { return integral_; }

  /// Index of the degree-0 element when degree 0 is one-dimensional.
  std::optional<std::size_t> unit() const noexcept { return unit_; }
  bool has_odd_classes() const noexcept { return has_odd_; }

  /// Full pairing matrix P(a, b) = integral(e_a * e_b).
  const Matrix& pairing() const noexcept { return pairing_; }
  bool has_poincare_duality() const noexcept { return pairing_inverse_.has_value(); }
  /// Throws DegeneratePairing when the pairing is singular.
  const Matrix& pairing_inverse() const;

  /// Dense product of two dense elements.
  std::vector<Rational> multiply_dense(std::span<const Rational> a, std::span<const Rational> b) const;
  Rational integrate_dense(std::span<const Rational> a) const;

  bool operator==(const GradedBasisRing& rhs) const;

 private:
  int dim_;
  std::vector<BasisElement> basis_;
  std::vector<SparseVector> products_;
  std::vector<Rational> integral_;
  std::vector<std::vector<std::size_t>> by_degree_;
  std::vector<std::size_t> position_;
  std::map<std::string, std::size_t> by_label_;
  std::optional<std::size_t> unit_;
  bool has_odd_ = false;
  Matrix pairing_;
  std::optional<Matrix> pairing_inverse_;
};

using RingPtr = std::shared_ptr<const GradedBasisRing>;

/// Structural equality (pointer identity is a fast path).
bool same_ring(const RingPtr& a, const RingPtr& b);

/// A homogeneous class: coefficients indexed by the basis of its degree.
class ClassVector {
 public:
  ClassVector(RingPtr ring, int degree, std::vector<Rational> coeffs);

  static ClassVector zero(RingPtr ring, int degree);
  static ClassVector basis(RingPtr ring, std::size_t global_index);
  /// Throws MalformedExpression when the dense vector is not homogeneous.
  static ClassVector from_dense(RingPtr ring, std::span<const Rational> dense,
                                std::optional<int> degree_hint = std::nullopt);

  const RingPtr& ring() const noexcept { return ring_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  std::vector<Rational> dense() const;
  bool is_zero() const;

  ClassVector operator+(const ClassVector& rhs) const;
  ClassVector operator-(const ClassVector& rhs) const;
  ClassVector scaled(const Rational& c) const;
  bool operator==(const ClassVector& rhs) const;

 private:
  RingPtr ring_;
  int degree_;
  std::vector<Rational> coeffs_;
};

struct PairingMatrix {
  int degree;
  Matrix matrix;  // rows: basis(p), cols: basis(2d - p)
};

ClassVector multiply(const RingPtr& ring, const ClassVector& a, const ClassVector& b);
Rational integrate(const RingPtr& ring, const ClassVector& a);
/// Throws DegeneratePairing when singular.
PairingMatrix pairing_matrix(const RingPtr& ring, int p);
/// Classes e^k of degree 2d - p with integral(e_i * e^k) = delta_ik.
std::vector<ClassVector> dual_basis(const RingPtr& ring, int p);
/// Same as dual_basis but for an arbitrary basis of degree p given as classes.
std::vector<ClassVector> dual_of(const RingPtr& ring, std::span<const ClassVector> classes);

/// Human-readable list of violated ring invariants (empty when the ring is valid).
/// Checks grading, graded commutativity, associativity, unit and Poincare duality.
std::vector<std::string> ring_invariant_violations(const GradedBasisRing& ring, bool require_duality = true);

/// Builds a ring from its trilinear form T(a, b, c) = integral(a * b * c), which
/// is only queried on triples whose degrees sum to 2d. Products are recovered by
/// solving against the pairing in each degree; a singular pairing raises
/// `on_degenerate`.
using TripleForm = std::function<Rational(std::size_t, std::size_t, std::size_t)>;
RingPtr ring_from_triple_form(int dim_complex, std::vector<BasisElement> basis, const TripleForm& form,
                              ErrorKind on_degenerate);

std::string render_class(const ClassVector& c);

}  // namespace ckm
