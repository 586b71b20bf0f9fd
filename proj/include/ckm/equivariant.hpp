#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ckm/kunneth.hpp"

namespace ckm {

struct GroupSpec {
  enum class Kind { MultiplicativeTorus, GeneralLinear };
  Kind kind = Kind::MultiplicativeTorus;
  int rank = 1;  // torus rank, or n for GL(n)

  static GroupSpec torus(int rank) { return {Kind::MultiplicativeTorus, rank}; }
  static GroupSpec general_linear(int n) { return {Kind::GeneralLinear, n}; }
  std::string name() const;
  bool operator==(const GroupSpec&) const = default;
};

/// Truncated polynomial ring on the generators of H^*(BG): degree-2 classes
/// t (or t1..tk) for a torus, Chern classes c1..cn for GL(n). Monomials of
/// degree > N are dropped. Only the rank-1 torus gets a nonzero integral (on t^{N/2}).
RingPtr bg_ring(const GroupSpec& group, int n_trunc);

/// Coefficients over the basis of B = bg_ring: entry beta is the component
/// multiplying b_beta. Every component has the same shape.
struct BMatrix {
  std::vector<Matrix> parts;

  static BMatrix zero(std::size_t b_size, std::size_t rows, std::size_t cols);
  static BMatrix constant(std::size_t b_size, const Matrix& m);  // m (x) 1
  std::size_t rows() const { return parts.front().rows(); }
  std::size_t cols() const { return parts.front().cols(); }
  bool is_zero() const;
  BMatrix operator+(const BMatrix& rhs) const;
  BMatrix operator-(const BMatrix& rhs) const;
  bool operator==(const BMatrix& rhs) const = default;
};

/// Product over B; terms above the truncation vanish because B has no such basis elements.
BMatrix multiply(const GradedBasisRing& b, const BMatrix& lhs, const BMatrix& rhs);

/// A bounded-degree model of H^*_G(X) as a free B-module on a fiber basis that
/// restricts to the basis of X.
class EquivariantModel {
 public:
  const RingPtr& base() const noexcept { return base_; }
  const RingPtr& fiber() const noexcept { return fiber_; }
  const RingPtr& bg() const noexcept { return bg_; }
  const GroupSpec& group() const noexcept { return group_; }
  int truncation() const noexcept { return n_trunc_; }
  const std::optional<std::vector<int>>& weights() const noexcept { return weights_; }

  /// e_i * e_j as a B-combination of fiber classes: parts[beta](0, k).
  const BMatrix& fiber_product(std::size_t i, std::size_t j) const { return products_[i * fiber_->size() + j]; }
  /// The equivariant integral of each fiber class, as a 1 x n B-row per component.
  const BMatrix& fiber_integral() const noexcept { return integral_; }
  /// (M_B)_{ab} = integral(e_a e_b) in B.
  const BMatrix& pairing() const noexcept { return pairing_; }
  const BMatrix& pairing_inverse() const noexcept { return pairing_inverse_; }

  friend EquivariantModel equivariant_trivial_action(const RingPtr& x, const GroupSpec& group, int n_trunc);
  friend EquivariantModel equivariant_projective_torus(const std::vector<int>& weights, int n_trunc);

 private:
  EquivariantModel() = default;
  void finish();

  RingPtr base_;
  RingPtr fiber_;
  RingPtr bg_;
  GroupSpec group_;
  int n_trunc_ = 0;
  std::optional<std::vector<int>> weights_;
  std::vector<BMatrix> products_;
  BMatrix integral_;
  BMatrix pairing_;
  BMatrix pairing_inverse_;
};

EquivariantModel equivariant_trivial_action(const RingPtr& x, const GroupSpec& group, int n_trunc);

/// P^{m-1} with the rank-1 torus acting through the weights chi_1..chi_m:
/// B[h] / prod (h + chi_i t), truncated in B-degree.
EquivariantModel equivariant_projective_torus(const std::vector<int>& weights, int n_trunc);

/// The whole truncated model as a graded ring on "(e,b)" labels.
RingPtr model_ring(const EquivariantModel& model);

struct LiftedProjectorSet {
  EquivariantModel model;
  std::map<int, BMatrix> projectors;
  std::set<int> remainder_indices;
  bool claims_complete = false;

  std::set<int> acting_degrees(int index) const;
};

BMatrix compose(const EquivariantModel& model, const BMatrix& f, const BMatrix& g);
BMatrix equivariant_diagonal(const EquivariantModel& model);

/// Lifts each pi with action matrix A to M_B^{-1} A; for a trivial action this
/// is pi (x) 1. Raises UnsupportedAction when the projector ring is not the
/// model's fiber.
LiftedProjectorSet lift_projectors(const ProjectorSet& set, const EquivariantModel& model);

/// verify_ck over B: the residual labels are (b, x, y) or (b, x).
VerificationReport verify_lifted(const LiftedProjectorSet& set, unsigned jobs = 1);

/// Sends the BG generators to zero.
ProjectorSet restrict(const LiftedProjectorSet& set);

/// True when every lifted coefficient on a B-monomial of degree <= D agrees
/// between the models built for truncations n1 and n2.
bool stabilization_check(const std::function<EquivariantModel(int)>& model_at, const ProjectorSet& set, int max_degree,
                         int n1, int n2);
bool stabilization_check(const RingPtr& x, const GroupSpec& group, const ProjectorSet& set, int max_degree, int n1,
                         int n2);

// ---------------------------------------------------------------------------
// Bottom-weight restriction

/// A degree-preserving linear map of rings; row i is the image of source basis i.
struct RingMap {
  RingPtr source;
  RingPtr target;
  Matrix images;
};

/// Images q x q (pi_i). Raises NotRingMap unless q preserves degrees, is
/// surjective and is multiplicative on every basis pair not killed on both sides.
/// Completeness is kept only when q(Delta_X) = Delta_X'. Both rings must have
/// the same dimension (PreconditionViolated otherwise); truncated models go
/// through the LiftedProjectorSet overload.
ProjectorSet bottom_weight_restriction(const RingMap& q, const ProjectorSet& set);
ProjectorSet bottom_weight_restriction(const LiftedProjectorSet& set);

/// Identity on labels present in `target`, zero on the primitive middle placeholders.
RingMap kill_primitive_map(const RingPtr& source, const RingPtr& target);
/// (e, b) -> e for b = 1 and 0 otherwise.
RingMap equivariant_restriction_map(const EquivariantModel& model, const RingPtr& model_ring);
RingMap identity_map(const RingPtr& ring);

}  // namespace ckm
