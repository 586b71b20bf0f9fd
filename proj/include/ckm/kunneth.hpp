#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ckm/correspondence.hpp"

namespace ckm {

/// An indexed family of degree-0 self-correspondences of one ring.
///
/// The projector stored at the smallest remainder index is Delta minus the
/// rest and is expected to act as the identity on every remainder degree.
struct ProjectorSet {
  RingPtr ring;
  std::map<int, Correspondence> projectors;
  std::set<int> remainder_indices;
  bool claims_complete = false;

  /// Degrees on which the projector stored at `index` should act as the identity.
  std::set<int> acting_degrees(int index) const;
  Correspondence sum() const;
};

struct ResidualTerm {
  std::vector<std::string> labels;
  Rational coefficient;
};

/// "2*h^3 x 1 - h x h^2"; "0" for an empty list.
std::string render(const std::vector<ResidualTerm>& terms);

struct CheckResult {
  std::string check;  // "idempotence", "orthogonality", "completeness", "graded_action"
  std::vector<int> indices;
  bool pass = true;
  std::vector<ResidualTerm> residual;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool pass() const;
  std::vector<const CheckResult*> failures() const;
  std::string text() const;
};

/// Exact check of idempotence, mutual orthogonality, completeness (when
/// claimed) and the graded action on every basis class. `jobs` > 1 spreads the
/// checks over threads; the report order does not depend on it.
VerificationReport verify_ck(const ProjectorSet& set, unsigned jobs = 1);

/// Projectors for the even degrees 2p <= cutoff listed in `algebraic_degrees`
/// (all of them when absent), together with their transposes in degree 2d - 2p.
/// Each comes from a diagonalized pairing block; the list is then passed
/// through gram_schmidt_orthogonalize. Complete when every nonzero degree is covered.
ProjectorSet algebraic_projectors(const RingPtr& ring, int cutoff,
                                  const std::optional<std::set<int>>& algebraic_degrees = std::nullopt);

/// algebraic_projectors (cutoff d - 1 by default) plus one remainder acting on
/// every nonzero degree left uncovered; partial sets keep the algebraic part only.
ProjectorSet standard_projectors(const RingPtr& ring, std::optional<int> cutoff = std::nullopt, bool partial = false,
                                 const std::optional<std::set<int>>& algebraic_degrees = std::nullopt);

/// Closed-form projectors (1/d) H^{n-1-r} x H^r on a degree-d hypersurface in
/// P^n and the remainder in the middle.
ProjectorSet hypersurface_projectors(int n, int d, int middle_rank);

/// Delta minus the sum of `partial`; raises PreconditionViolated unless the
/// members are orthogonal idempotents.
Correspondence remainder_projector(const RingPtr& ring, const ProjectorSet& partial);

/// Adds the remainder of `set` at the given indices and marks it complete.
ProjectorSet with_remainder(ProjectorSet set, const std::set<int>& indices);

/// pi_i = sum_{p+q=i} pi_p x pi_q on X x Y; both inputs must claim completeness.
ProjectorSet product_projectors(const ProjectorSet& px, const ProjectorSet& py);

/// Makes a list of idempotents pairwise orthogonal, keeping the order. Each
/// output is the idempotent part of (Delta - P) o pi o (Delta - P), with P the
/// sum of the earlier outputs; this is (Delta - P) o pi o (Delta - P) itself
/// whenever that is already idempotent.
std::vector<Correspondence> gram_schmidt_orthogonalize(const std::vector<Correspondence>& idempotents);

// ---------------------------------------------------------------------------
// Motives

class MotiveObject {
 public:
  /// Throws NotIdempotent unless p o p = p.
  MotiveObject(Correspondence projector, int twist);

  const RingPtr& ring() const noexcept { return projector_.source(); }
  const Correspondence& projector() const noexcept { return projector_; }
  int twist() const noexcept { return twist_; }
  bool operator==(const MotiveObject& rhs) const = default;

 private:
  Correspondence projector_;
  int twist_;
};

MotiveObject unit_motive();
MotiveObject tensor(const MotiveObject& m, const MotiveObject& n);
MotiveObject tate_twist(const MotiveObject& m, int r);
/// f in Corr^{n-m}(X, Y) with f o p = q o f = f.
bool is_morphism(const Correspondence& f, const MotiveObject& source, const MotiveObject& target);

}  // namespace ckm
