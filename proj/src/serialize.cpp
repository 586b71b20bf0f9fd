#include "ckm/serialize.hpp"

#include "ckm/error.hpp"

namespace ckm {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::InvalidSpec, where + ": " + what);
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) bad(where, std::string("missing field '") + name + "'");
  return *it;
}

int get_int(const Json& j, const char* name, const std::string& where) {
  const auto& v = field(j, name, where);
  if (!v.is_number_integer()) bad(where, std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

int get_int_or(const Json& j, const char* name, int fallback, const std::string& where) {
  if (!j.contains(name)) return fallback;
  return get_int(j, name, where);
}

std::string get_string(const Json& j, const char* name, const std::string& where) {
  const auto& v = field(j, name, where);
  if (!v.is_string()) bad(where, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

bool get_bool(const Json& j, const char* name, const std::string& where) {
  const auto& v = field(j, name, where);
  if (!v.is_boolean()) bad(where, std::string("field '") + name + "' must be true or false");
  return v.get<bool>();
}

const Json& get_array(const Json& j, const char* name, const std::string& where) {
  const auto& v = field(j, name, where);
  if (!v.is_array()) bad(where, std::string("field '") + name + "' must be an array");
  return v;
}

Rational rational_of(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  bad(where, "coefficients must be \"p/q\" strings or integers");
}

std::string label_of(const Json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "labels must be strings");
  return v.get<std::string>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Spaces

SpaceSpec spec_from_json(const Json& j) {
  const std::string kind = get_string(j, "kind", "space spec");
  const std::string where = kind + " spec";
  if (kind == "projective_space") return {ProjectiveSpaceSpec{get_int(j, "n", where)}};
  if (kind == "grassmannian") return {GrassmannianSpec{get_int(j, "k", where), get_int(j, "n", where)}};
  if (kind == "product") {
    ProductSpec p;
    for (const auto& f : get_array(j, "factors", where)) p.factors.push_back(spec_from_json(f));
    return {std::move(p)};
  }
  if (kind == "ci_model") {
    CiModelSpec c{spec_from_json(field(j, "ambient", where)), get_string(j, "fundamental_class_expr", where),
                  get_int_or(j, "middle_rank", 0, where), std::nullopt};
    if (j.contains("middle_pairing") && !j["middle_pairing"].is_null()) {
      std::vector<std::vector<Rational>> rows;
      for (const auto& row : get_array(j, "middle_pairing", where)) {
        if (!row.is_array()) bad(where, "middle_pairing must be a list of rows");
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(rational_of(x, where));
        rows.push_back(std::move(r));
      }
      c.middle_pairing = std::move(rows);
    }
    return {std::move(c)};
  }
  if (kind == "blowup") {
    BlowupSpec b{spec_from_json(field(j, "base", where)), spec_from_json(field(j, "center", where)),
                 get_int(j, "codim", where), {}, {}};
    for (const auto& e : get_array(j, "center_pushforward_expr", where)) b.center_pushforward_expr.push_back(label_of(e, where));
    if (j.contains("normal_chern"))
      for (const auto& e : get_array(j, "normal_chern", where)) b.normal_chern.push_back(label_of(e, where));
    return {std::move(b)};
  }
  if (kind == "plane_curve_family") return {PlaneCurveFamilySpec{get_int(j, "d", where), get_int_or(j, "middle_rank", 0, where)}};
  if (kind == "hypersurface")
    return {HypersurfaceSpec{get_int(j, "n", where), get_int(j, "d", where), get_int_or(j, "middle_rank", 0, where)}};
  if (kind == "explicit") return {ExplicitSpec{ring_from_json(j)}};
  bad("space spec", "unknown kind '" + kind + "'");
}

Json spec_to_json(const SpaceSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json j;
        if constexpr (std::is_same_v<T, ProjectiveSpaceSpec>) {
          j["kind"] = "projective_space";
          j["n"] = s.n;
        } else if constexpr (std::is_same_v<T, GrassmannianSpec>) {
          j["kind"] = "grassmannian";
          j["k"] = s.k;
          j["n"] = s.n;
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          j["kind"] = "product";
          j["factors"] = Json::array();
          for (const auto& f : s.factors) j["factors"].push_back(spec_to_json(f));
        } else if constexpr (std::is_same_v<T, CiModelSpec>) {
          j["kind"] = "ci_model";
          j["ambient"] = spec_to_json(*s.ambient);
          j["fundamental_class_expr"] = s.fundamental_class_expr;
          j["middle_rank"] = s.middle_rank;
          if (s.middle_pairing) {
            Json rows = Json::array();
            for (const auto& row : *s.middle_pairing) {
              Json r = Json::array();
              for (const auto& x : row) r.push_back(to_string(x));
              rows.push_back(std::move(r));
            }
            j["middle_pairing"] = std::move(rows);
          }
        } else if constexpr (std::is_same_v<T, BlowupSpec>) {
          j["kind"] = "blowup";
          j["base"] = spec_to_json(*s.base);
          j["center"] = spec_to_json(*s.center);
          j["codim"] = s.codim;
          j["center_pushforward_expr"] = s.center_pushforward_expr;
          j["normal_chern"] = s.normal_chern;
        } else if constexpr (std::is_same_v<T, PlaneCurveFamilySpec>) {
          j["kind"] = "plane_curve_family";
          j["d"] = s.d;
          j["middle_rank"] = s.middle_rank;
        } else if constexpr (std::is_same_v<T, HypersurfaceSpec>) {
          j["kind"] = "hypersurface";
          j["n"] = s.n;
          j["d"] = s.d;
          j["middle_rank"] = s.middle_rank;
        } else {
          j = ring_to_json(*s.ring);
        }
        return j;
      },
      spec.value);
}

Json ring_to_json(const GradedBasisRing& ring) {
  Json j;
  j["kind"] = "explicit";
  j["dim"] = ring.dim();
  j["basis"] = Json::array();
  for (const auto& e : ring.basis()) j["basis"].push_back({{"label", e.label}, {"degree", e.degree}});
  j["products"] = Json::array();
  for (std::size_t a = 0; a < ring.size(); ++a)
    for (std::size_t b = 0; b < ring.size(); ++b) {
      const auto& p = ring.product(a, b);
      if (p.empty()) continue;
      Json terms = Json::array();
      for (const auto& [c, x] : p) terms.push_back({ring.label(c), to_string(x)});
      j["products"].push_back({ring.label(a), ring.label(b), std::move(terms)});
    }
  j["integral"] = Json::array();
  for (std::size_t a = 0; a < ring.size(); ++a)
    if (!is_zero(ring.integral(a))) j["integral"].push_back({ring.label(a), to_string(ring.integral(a))});
  return j;
}

RingPtr ring_from_json(const Json& j) {
  const std::string where = "explicit ring";
  const int dim = get_int(j, "dim", where);
  std::vector<BasisElement> basis;
  std::map<std::string, std::size_t> index;
  for (const auto& e : get_array(j, "basis", where)) {
    BasisElement b{get_string(e, "label", where + " basis"), get_int(e, "degree", where + " basis")};
    if (!index.emplace(b.label, basis.size()).second) bad(where, "duplicate label '" + b.label + "'");
    basis.push_back(std::move(b));
  }
  auto lookup = [&](const Json& v) {
    auto label = label_of(v, where);
    auto it = index.find(label);
    if (it == index.end()) bad(where, "unknown label '" + label + "'");
    return it->second;
  };
  const std::size_t n = basis.size();
  std::vector<SparseVector> products(n * n);
  for (const auto& entry : get_array(j, "products", where)) {
    if (!entry.is_array() || entry.size() != 3 || !entry[2].is_array())
      bad(where, "products entries must be [label_a, label_b, [[label_c, coef], ...]]");
    auto& slot = products[lookup(entry[0]) * n + lookup(entry[1])];
    for (const auto& t : entry[2]) {
      if (!t.is_array() || t.size() != 2) bad(where, "product terms must be [label, coef]");
      slot.emplace_back(lookup(t[0]), rational_of(t[1], where));
    }
  }
  std::vector<Rational> integral(n);
  for (const auto& t : get_array(j, "integral", where)) {
    if (!t.is_array() || t.size() != 2) bad(where, "integral entries must be [label, coef]");
    integral[lookup(t[0])] = rational_of(t[1], where);
  }
  return std::make_shared<const GradedBasisRing>(dim, std::move(basis), std::move(products), std::move(integral));
}

// ---------------------------------------------------------------------------
// Correspondences and projector sets

Json terms_to_json(const Correspondence& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms())
    terms.push_back({f.source()->label(t.source_index), f.target()->label(t.target_index), to_string(t.coefficient)});
  return terms;
}

Correspondence correspondence_from_terms(const RingPtr& source, const RingPtr& target, int shift, const Json& terms) {
  const std::string where = "correspondence terms";
  if (!terms.is_array()) bad(where, "expected an array");
  Matrix m(source->size(), target->size());
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 3) bad(where, "each term must be [label_x, label_y, coef]");
    m(source->index_of(label_of(t[0], where)), target->index_of(label_of(t[1], where))) += rational_of(t[2], where);
  }
  return Correspondence(source, target, shift, std::move(m));
}

Json correspondence_to_json(const Correspondence& f, const SpaceSpec& source, const SpaceSpec& target) {
  Json j;
  j["source"] = spec_to_json(source);
  j["target"] = spec_to_json(target);
  j["r"] = f.shift();
  j["terms"] = terms_to_json(f);
  return j;
}

Json projector_set_to_json(const ProjectorSet& set, const SpaceSpec& space) {
  Json j;
  j["space"] = spec_to_json(space);
  j["complete"] = set.claims_complete;
  j["remainder"] = Json::array();
  for (int i : set.remainder_indices) j["remainder"].push_back(i);
  j["projectors"] = Json::array();
  for (const auto& [i, p] : set.projectors) j["projectors"].push_back({{"index", i}, {"terms", terms_to_json(p)}});
  return j;
}

ProjectorSet projector_set_from_json(const Json& j, const RingPtr& ring) {
  const std::string where = "projector file";
  ProjectorSet set{ring, {}, {}, get_bool(j, "complete", where)};
  if (j.contains("remainder"))
    for (const auto& i : get_array(j, "remainder", where)) {
      if (!i.is_number_integer()) bad(where, "remainder indices must be integers");
      set.remainder_indices.insert(i.get<int>());
    }
  for (const auto& p : get_array(j, "projectors", where)) {
    const int index = get_int(p, "index", where);
    if (!set.projectors.emplace(index, correspondence_from_terms(ring, ring, 0, field(p, "terms", where))).second)
      bad(where, "duplicate projector index " + std::to_string(index));
  }
  return set;
}

Json report_to_json(const VerificationReport& report) {
  Json j;
  j["checks"] = Json::array();
  for (const auto& c : report.checks) {
    Json e;
    e["check"] = c.check;
    e["indices"] = c.indices;
    e["pass"] = c.pass;
    if (!c.pass) {
      Json res = Json::array();
      for (const auto& t : c.residual) {
        Json term = Json::array();
        for (const auto& l : t.labels) term.push_back(l);
        term.push_back(to_string(t.coefficient));
        res.push_back(std::move(term));
      }
      e["residual_class"] = std::move(res);
      e["detail"] = c.detail;
    }
    j["checks"].push_back(std::move(e));
  }
  j["pass"] = report.pass();
  return j;
}

// ---------------------------------------------------------------------------
// Equivariant models

ModelSpec model_spec_from_json(const Json& j) {
  const std::string where = "equivariant model";
  ModelSpec m{spec_from_json(field(j, "base", where)), {}, get_int(j, "N", where), std::nullopt};
  const auto& g = field(j, "group", where);
  const auto kind = get_string(g, "kind", where + " group");
  if (kind == "multiplicative_torus") m.group = GroupSpec::torus(get_int_or(g, "rank", 1, where + " group"));
  else if (kind == "general_linear") m.group = GroupSpec::general_linear(get_int(g, "n", where + " group"));
  else bad(where, "unknown group kind '" + kind + "'");
  if (j.contains("weights") && !j["weights"].is_null()) {
    std::vector<int> w;
    for (const auto& x : get_array(j, "weights", where)) {
      if (!x.is_number_integer()) bad(where, "weights must be integers");
      w.push_back(x.get<int>());
    }
    m.weights = std::move(w);
  }
  return m;
}

Json model_spec_to_json(const ModelSpec& spec) {
  Json j;
  j["base"] = spec_to_json(spec.base);
  if (spec.group.kind == GroupSpec::Kind::MultiplicativeTorus)
    j["group"] = {{"kind", "multiplicative_torus"}, {"rank", spec.group.rank}};
  else
    j["group"] = {{"kind", "general_linear"}, {"n", spec.group.rank}};
  j["N"] = spec.n_trunc;
  if (spec.weights) j["weights"] = *spec.weights;
  return j;
}

EquivariantModel build_model(const ModelSpec& spec) { return build_model(spec, spec.n_trunc); }

EquivariantModel build_model(const ModelSpec& spec, int n_trunc) {
  auto base = build(spec.base);
  if (!spec.weights) return equivariant_trivial_action(base, spec.group, n_trunc);
  if (!(spec.group == GroupSpec::torus(1)))
    fail(ErrorKind::UnsupportedAction, "weighted actions are modeled for the rank-1 torus only");
  auto model = equivariant_projective_torus(*spec.weights, n_trunc);
  if (base->basis() != model.fiber()->basis())
    fail(ErrorKind::UnsupportedAction, "weights describe an action on P^" + std::to_string(spec.weights->size() - 1) +
                                           " but the base is a different space");
  return model;
}

Json lifted_set_to_json(const LiftedProjectorSet& set, const ModelSpec& spec) {
  Json j;
  j["model"] = model_spec_to_json(spec);
  j["model"]["N"] = set.model.truncation();
  j["complete"] = set.claims_complete;
  j["remainder"] = Json::array();
  for (int i : set.remainder_indices) j["remainder"].push_back(i);
  j["projectors"] = Json::array();
  const auto& b = *set.model.bg();
  const auto& f = *set.model.fiber();
  for (const auto& [i, p] : set.projectors) {
    Json terms = Json::array();
    for (std::size_t beta = 0; beta < p.parts.size(); ++beta)
      for (std::size_t x = 0; x < p.rows(); ++x)
        for (std::size_t y = 0; y < p.cols(); ++y)
          if (!is_zero(p.parts[beta](x, y)))
            terms.push_back({b.label(beta), f.label(x), f.label(y), to_string(p.parts[beta](x, y))});
    j["projectors"].push_back({{"index", i}, {"terms", std::move(terms)}});
  }
  return j;
}

LiftedProjectorSet lifted_set_from_json(const Json& j) {
  const std::string where = "lifted projector file";
  auto spec = model_spec_from_json(field(j, "model", where));
  LiftedProjectorSet set{build_model(spec), {}, {}, get_bool(j, "complete", where)};
  if (j.contains("remainder"))
    for (const auto& i : get_array(j, "remainder", where)) {
      if (!i.is_number_integer()) bad(where, "remainder indices must be integers");
      set.remainder_indices.insert(i.get<int>());
    }
  const auto& b = *set.model.bg();
  const auto& f = *set.model.fiber();
  for (const auto& p : get_array(j, "projectors", where)) {
    const int index = get_int(p, "index", where);
    auto m = BMatrix::zero(b.size(), f.size(), f.size());
    for (const auto& t : get_array(p, "terms", where)) {
      if (!t.is_array() || t.size() != 4) bad(where, "each term must be [label_b, label_x, label_y, coef]");
      m.parts[b.index_of(label_of(t[0], where))](f.index_of(label_of(t[1], where)), f.index_of(label_of(t[2], where))) +=
          rational_of(t[3], where);
    }
    if (!set.projectors.emplace(index, std::move(m)).second)
      bad(where, "duplicate projector index " + std::to_string(index));
  }
  return set;
}

}  // namespace ckm
