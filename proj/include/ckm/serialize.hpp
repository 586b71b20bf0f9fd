#pragma once

#include <json.hpp>

#include "ckm/equivariant.hpp"
#include "ckm/kunneth.hpp"
#include "ckm/spaces.hpp"

namespace ckm {

using Json = nlohmann::ordered_json;

// All readers throw Error(InvalidSpec or MalformedExpression) naming the offending field.

SpaceSpec spec_from_json(const Json& j);
Json spec_to_json(const SpaceSpec& spec);

/// Full description of a ring: {"kind":"explicit","dim","basis","products","integral"}.
Json ring_to_json(const GradedBasisRing& ring);
RingPtr ring_from_json(const Json& j);

/// {"source","target","r","terms":[[label_x, label_y, "p/q"], ...]}
Json correspondence_to_json(const Correspondence& f, const SpaceSpec& source, const SpaceSpec& target);
/// Terms only; the rings are supplied by the caller.
Correspondence correspondence_from_terms(const RingPtr& source, const RingPtr& target, int shift, const Json& terms);
Json terms_to_json(const Correspondence& f);

/// {"space","complete","remainder":[...],"projectors":[{"index","terms"}]}
Json projector_set_to_json(const ProjectorSet& set, const SpaceSpec& space);
ProjectorSet projector_set_from_json(const Json& j, const RingPtr& ring);

/// {"checks":[{"check","indices","pass","residual_class"?,"detail"?}],"pass"}
Json report_to_json(const VerificationReport& report);

struct ModelSpec {
  SpaceSpec base;
  GroupSpec group;
  int n_trunc = 0;
  std::optional<std::vector<int>> weights;
};

ModelSpec model_spec_from_json(const Json& j);
Json model_spec_to_json(const ModelSpec& spec);
EquivariantModel build_model(const ModelSpec& spec);
EquivariantModel build_model(const ModelSpec& spec, int n_trunc);

/// {"model", "complete", "remainder", "projectors":[{"index","terms":[[b, x, y, "p/q"]]}]}
Json lifted_set_to_json(const LiftedProjectorSet& set, const ModelSpec& spec);
LiftedProjectorSet lifted_set_from_json(const Json& j);

}  // namespace ckm
