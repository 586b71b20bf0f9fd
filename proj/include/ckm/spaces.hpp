#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ckm/graded_ring.hpp"

namespace ckm {

/// Owning pointer with deep copy and deep comparison, for recursive specs.
template <class T>
class Boxed {
 public:
  Boxed(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Boxed(const Boxed& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Boxed(Boxed&&) noexcept = default;
  Boxed& operator=(const Boxed& other) {
    ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Boxed& operator=(Boxed&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  bool operator==(const Boxed& rhs) const { return *ptr_ == *rhs.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct SpaceSpec;

struct ProjectiveSpaceSpec {
  int n = 0;
  bool operator==(const ProjectiveSpaceSpec&) const = default;
};

struct GrassmannianSpec {
  int k = 1;
  int n = 2;
  bool operator==(const GrassmannianSpec&) const = default;
};

struct ProductSpec {
  std::vector<SpaceSpec> factors;
  bool operator==(const ProductSpec&) const;
};

struct CiModelSpec {
  Boxed<SpaceSpec> ambient;
  std::string fundamental_class_expr;
  int middle_rank = 0;
  std::optional<std::vector<std::vector<Rational>>> middle_pairing;
  bool operator==(const CiModelSpec&) const = default;
};

struct BlowupSpec {
  Boxed<SpaceSpec> base;
  Boxed<SpaceSpec> center;
  int codim = 2;
  /// i_*(z) for each center basis class z, in the center's emission order.
  std::vector<std::string> center_pushforward_expr;
  /// c_1..c_{codim-1} of the normal bundle as classes on the center; c_codim is i^* i_* 1.
  std::vector<std::string> normal_chern;
  bool operator==(const BlowupSpec&) const = default;
};

struct PlaneCurveFamilySpec {
  int d = 1;
  int middle_rank = 0;
  bool operator==(const PlaneCurveFamilySpec&) const = default;
};

/// Shorthand for ci_model(P^n, d*h, middle_rank).
struct HypersurfaceSpec {
  int n = 2;
  int d = 1;
  int middle_rank = 0;
  bool operator==(const HypersurfaceSpec&) const = default;
};

/// A ring given by its full basis, structure constants and integral.
struct ExplicitSpec {
  RingPtr ring;
  bool operator==(const ExplicitSpec& rhs) const { return same_ring(ring, rhs.ring); }
};

struct SpaceSpec {
  std::variant<ProjectiveSpaceSpec, GrassmannianSpec, ProductSpec, CiModelSpec, BlowupSpec, PlaneCurveFamilySpec,
               HypersurfaceSpec, ExplicitSpec>
      value;
  bool operator==(const SpaceSpec&) const = default;
};

RingPtr projective_space(int n);
RingPtr grassmannian(int k, int n);
RingPtr product_space(std::span<const RingPtr> factors);
RingPtr product_space(const RingPtr& x, const RingPtr& y);

/// Lefschetz-truncated model of a complete intersection of class `xi` in `ambient`.
RingPtr ci_model(const RingPtr& ambient, const ClassVector& xi, int middle_rank,
                 const std::optional<Matrix>& middle_pairing = std::nullopt);

/// Blow-up of `base` along a smooth center of codimension `codim`.
RingPtr blowup(const RingPtr& base, const RingPtr& center, int codim, std::span<const ClassVector> pushforward,
               std::span<const ClassVector> normal_chern);

RingPtr plane_curve_family(int d, int middle_rank = 0);
RingPtr hypersurface_model(int n, int d, int middle_rank);

/// Realizes a spec; throws InvalidSpec for out-of-range parameters.
RingPtr build(const SpaceSpec& spec);

/// Labels used by ci_model for primitive middle placeholders ("m1", "m2", ...).
bool is_primitive_placeholder(const std::string& label);

struct FanoDelta {
  long value;
  std::vector<std::string> warnings;
};

FanoDelta fano_delta(int n, std::span<const int> degrees, int r);
long rep_variety_dim(int g, int n);
int barth_range(int n, int d);

}  // namespace ckm
