#include "ckm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "ckm/expression.hpp"
#include "ckm/serialize.hpp"

namespace ckm::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  Json json;
  std::string origin;
};

// Inline JSON when the argument starts with '{', a file path otherwise.
Loaded load(const std::string& arg, const std::string& option) {
  auto start = arg.find_first_not_of(" \t\r\n");
  std::string text;
  std::string origin;
  if (start != std::string::npos && arg[start] == '{') {
    text = arg;
    origin = option + " (inline)";
  } else {
    std::ifstream in(arg);
    if (!in) throw InputError(option + ": cannot read file '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    origin = "'" + arg + "'";
  }
  try {
    return {Json::parse(text), origin};
  } catch (const Json::parse_error& e) {
    throw InputError(origin + ": invalid JSON: " + e.what());
  }
}

template <class F>
auto in_context(const std::string& origin, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), origin + ": " + e.message());
  } catch (const Json::exception& e) {
    throw InputError(origin + ": " + e.what());
  }
}

void write(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

std::set<int> parse_int_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

GroupSpec parse_group(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (t.rfind(prefix, 0) != 0) return std::nullopt;
    std::string rest = t.substr(prefix.size());
    if (!rest.empty() && (rest[0] == ':' || rest[0] == '(')) rest = rest.substr(1);
    if (!rest.empty() && rest.back() == ')') rest.pop_back();
    if (rest.empty()) return 1;
    try {
      std::size_t used = 0;
      int v = std::stoi(rest, &used);
      if (used == rest.size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw InputError("--group: cannot read the rank in '" + text + "'");
  };
  if (auto k = suffix("torus")) return GroupSpec::torus(*k);
  if (auto n = suffix("gl")) return GroupSpec::general_linear(*n);
  throw InputError("--group: expected torus, torus:K or gl:N, got '" + text + "'");
}

void print_set(std::ostream& out, const ProjectorSet& set) {
  for (const auto& [i, p] : set.projectors) {
    out << "pi_" << i;
    if (!set.remainder_indices.empty() && i == *set.remainder_indices.begin()) {
      out << " (remainder on degrees";
      for (int r : set.remainder_indices) out << " " << r;
      out << ")";
    }
    out << " = " << render(p) << "\n";
  }
  out << (set.claims_complete ? "complete" : "partial") << " set of " << set.projectors.size() << " projectors\n";
}

int report_exit(std::ostream& out, const VerificationReport& report, const std::string& report_path) {
  out << report.text();
  if (!report_path.empty()) write(report_path, report_to_json(report));
  return report.pass() ? 0 : 1;
}

struct Source {
  SpaceSpec spec;
  RingPtr ring;
  ProjectorSet set;
};

// Projectors come from a file, or are built from a space with the standard recipe.
Source projectors_from(const std::string& projectors_arg, const std::string& space_arg) {
  if (!projectors_arg.empty()) {
    auto file = load(projectors_arg, "--projectors");
    return in_context(file.origin, [&] {
      auto spec = space_arg.empty() ? spec_from_json(file.json.at("space")) : spec_from_json(load(space_arg, "--space").json);
      auto ring = build(spec);
      auto set = projector_set_from_json(file.json, ring);
      return Source{std::move(spec), ring, std::move(set)};
    });
  }
  if (space_arg.empty()) throw InputError("either --projectors or --space is required");
  auto file = load(space_arg, "--space");
  return in_context(file.origin, [&] {
    auto spec = spec_from_json(file.json);
    auto ring = build(spec);
    return Source{spec, ring, standard_projectors(ring)};
  });
}

struct CorrespondenceFile {
  SpaceSpec source_spec;
  SpaceSpec target_spec;
  Correspondence value;
};

CorrespondenceFile load_correspondence(const std::string& arg, const std::string& option) {
  auto file = load(arg, option);
  return in_context(file.origin, [&] {
    const auto& j = file.json;
    if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("terms"))
      throw InputError(file.origin + ": a correspondence needs 'source', 'target' and 'terms'");
    auto s = spec_from_json(j["source"]);
    auto t = spec_from_json(j["target"]);
    int r = j.value("r", 0);
    auto f = correspondence_from_terms(build(s), build(t), r, j["terms"]);
    return CorrespondenceFile{std::move(s), std::move(t), std::move(f)};
  });
}

std::optional<SpaceSpec> without_primitives(const SpaceSpec& spec) {
  if (auto c = std::get_if<CiModelSpec>(&spec.value)) {
    CiModelSpec copy = *c;
    copy.middle_rank = 0;
    copy.middle_pairing.reset();
    return SpaceSpec{std::move(copy)};
  }
  if (auto h = std::get_if<HypersurfaceSpec>(&spec.value)) return SpaceSpec{HypersurfaceSpec{h->n, h->d, 0}};
  if (auto p = std::get_if<PlaneCurveFamilySpec>(&spec.value)) return SpaceSpec{PlaneCurveFamilySpec{p->d, 0}};
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chow-Kunneth projector calculus", "ckm"};
  app.require_subcommand(1);
  int code = 0;

  // build
  std::string space, out_path, report_path, projectors_path, lifted_path;
  auto* build_cmd = app.add_subcommand("build", "Construct a space and audit its ring");
  build_cmd->add_option("--space", space, "SpaceSpec (file or inline JSON)")->required();
  build_cmd->add_option("--out", out_path, "Write the explicit ring here");

  auto* diag_cmd = app.add_subcommand("diagonal", "Print the Kunneth expansion of the diagonal");
  diag_cmd->add_option("--space", space, "SpaceSpec")->required();
  diag_cmd->add_option("--out", out_path, "Write the correspondence here");

  std::optional<int> cutoff;
  std::vector<int> degrees;
  bool partial = false, verify = false;
  unsigned jobs = 1;
  auto* proj_cmd = app.add_subcommand("projectors", "Build a Chow-Kunneth projector set");
  proj_cmd->add_option("--space", space, "SpaceSpec")->required();
  proj_cmd->add_option("--cutoff", cutoff, "Largest degree handled by the algebraic construction");
  proj_cmd->add_option("--degrees", degrees, "Algebraic degrees to use")->delimiter(',');
  proj_cmd->add_flag("--partial", partial, "Do not add the remainder projector");
  proj_cmd->add_flag("--verify", verify, "Verify the set");
  proj_cmd->add_option("--out", out_path, "Write the projector file here");
  proj_cmd->add_option("--report", report_path, "Write the verification report here");
  proj_cmd->add_option("--jobs", jobs, "Worker threads for verification")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Verify a projector file");
  verify_cmd->add_option("--projectors", projectors_path, "Projector file")->required();
  verify_cmd->add_option("--space", space, "Override the space recorded in the file");
  verify_cmd->add_option("--out", report_path, "Write the verification report here");
  verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string f_path, g_path, class_expr;
  auto* compose_cmd = app.add_subcommand("compose", "Compose two correspondences (g o f)");
  compose_cmd->add_option("--f", f_path, "First correspondence X -> Y")->required();
  compose_cmd->add_option("--g", g_path, "Second correspondence Y -> Z")->required();
  compose_cmd->add_option("--out", out_path, "Write the result here");

  auto* act_cmd = app.add_subcommand("act", "Apply a correspondence to a class");
  act_cmd->add_option("--corr", f_path, "Correspondence file")->required();
  act_cmd->add_option("--class", class_expr, "Class on the source, e.g. \"2*h\"")->required();

  std::string group_text = "torus";
  int n_trunc = 0, max_degree = 0, n1 = 0, n2 = 0;
  std::vector<int> weights;
  auto* lift_cmd = app.add_subcommand("lift", "Lift projectors to a truncated equivariant model");
  lift_cmd->add_option("--projectors", projectors_path, "Projector file");
  lift_cmd->add_option("--space", space, "Space (standard projectors are used)");
  lift_cmd->add_option("--group", group_text, "torus, torus:K or gl:N");
  lift_cmd->add_option("--N", n_trunc, "Truncation degree")->required();
  lift_cmd->add_option("--weights", weights, "Torus weights on a projective space")->delimiter(',');
  lift_cmd->add_flag("--verify", verify, "Verify the lifted set");
  lift_cmd->add_option("--out", out_path, "Write the lifted set here");
  lift_cmd->add_option("--report", report_path, "Write the verification report here");
  lift_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* stab_cmd = app.add_subcommand("stabilize", "Compare lifts for two truncations");
  stab_cmd->add_option("--projectors", projectors_path, "Projector file");
  stab_cmd->add_option("--space", space, "Space (standard projectors are used)");
  stab_cmd->add_option("--group", group_text, "torus, torus:K or gl:N");
  stab_cmd->add_option("--weights", weights, "Torus weights on a projective space")->delimiter(',');
  stab_cmd->add_option("--D", max_degree, "Compare coefficients up to this degree")->required();
  stab_cmd->add_option("--N1", n1, "Smaller truncation")->required();
  stab_cmd->add_option("--N2", n2, "Larger truncation")->required();

  bool kill_primitive = false;
  auto* restrict_cmd = app.add_subcommand("restrict", "Bottom-weight restriction of a projector set");
  restrict_cmd->add_option("--lifted", lifted_path, "Lifted projector file (restrict along generators -> 0)");
  restrict_cmd->add_option("--projectors", projectors_path, "Projector file");
  restrict_cmd->add_flag("--kill-primitive", kill_primitive, "Restrict by killing the primitive middle classes");
  restrict_cmd->add_flag("--verify", verify, "Verify the image");
  restrict_cmd->add_option("--out", out_path, "Write the image set here");
  restrict_cmd->add_option("--report", report_path, "Write the verification report here");

  auto* formulas_cmd = app.add_subcommand("formulas", "Closed-form dimension counts");
  formulas_cmd->require_subcommand(1);
  int fn = 0, fr = 0, fg = 0, fd = 0;
  std::vector<int> fdegrees;
  auto* fano_cmd = formulas_cmd->add_subcommand("fano", "delta for Fano schemes of r-planes");
  fano_cmd->add_option("--n", fn)->required();
  fano_cmd->add_option("--degrees", fdegrees)->required()->delimiter(',');
  fano_cmd->add_option("--r", fr)->required();
  auto* rep_cmd = formulas_cmd->add_subcommand("rep", "dimension of the representation variety");
  rep_cmd->add_option("--g", fg)->required();
  rep_cmd->add_option("--n", fn)->required();
  auto* barth_cmd = formulas_cmd->add_subcommand("barth", "Barth range 2d - n");
  barth_cmd->add_option("--n", fn)->required();
  barth_cmd->add_option("--d", fd)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (build_cmd->parsed()) {
      auto file = load(space, "--space");
      auto ring = in_context(file.origin, [&] { return build(spec_from_json(file.json)); });
      out << "dim " << ring->dim() << "\nbasis";
      for (const auto& e : ring->basis()) out << " " << e.label << "(" << e.degree << ")";
      out << "\nbetti";
      for (auto b : ring->betti()) out << " " << b;
      out << "\n";
      auto violations = ring_invariant_violations(*ring);
      for (const auto& v : violations) out << "FAIL ring invariant: " << v << "\n";
      if (violations.empty()) out << "ring invariants hold\n";
      if (!out_path.empty()) write(out_path, ring_to_json(*ring));
      code = violations.empty() ? 0 : 1;
    } else if (diag_cmd->parsed()) {
      auto file = load(space, "--space");
      in_context(file.origin, [&] {
        auto spec = spec_from_json(file.json);
        auto delta = diagonal(build(spec));
        out << "Delta = " << render(delta) << "\n";
        if (!out_path.empty()) write(out_path, correspondence_to_json(delta, spec, spec));
        return 0;
      });
    } else if (proj_cmd->parsed()) {
      auto file = load(space, "--space");
      code = in_context(file.origin, [&] {
        auto spec = spec_from_json(file.json);
        auto ring = build(spec);
        std::optional<std::set<int>> algebraic;
        if (!degrees.empty()) algebraic = parse_int_set(degrees);
        auto set = standard_projectors(ring, cutoff, partial, algebraic);
        print_set(out, set);
        if (!out_path.empty()) write(out_path, projector_set_to_json(set, spec));
        return verify ? report_exit(out, verify_ck(set, jobs), report_path) : 0;
      });
    } else if (verify_cmd->parsed()) {
      auto src = projectors_from(projectors_path, space);
      code = report_exit(out, verify_ck(src.set, jobs), report_path);
    } else if (compose_cmd->parsed()) {
      auto f = load_correspondence(f_path, "--f");
      auto g = load_correspondence(g_path, "--g");
      auto h = compose(f.value, g.value);
      out << "g o f = " << render(h) << "\n";
      if (!out_path.empty()) write(out_path, correspondence_to_json(h, f.source_spec, g.target_spec));
    } else if (act_cmd->parsed()) {
      auto f = load_correspondence(f_path, "--corr");
      auto alpha = in_context("--class", [&] { return parse_class(f.value.source(), class_expr); });
      out << render_class(act(f.value, alpha)) << "\n";
    } else if (lift_cmd->parsed() || stab_cmd->parsed()) {
      auto src = projectors_from(projectors_path, space);
      ModelSpec model{src.spec, parse_group(group_text), n_trunc, std::nullopt};
      if (!weights.empty()) model.weights = weights;
      if (lift_cmd->parsed()) {
        auto lifted = lift_projectors(src.set, build_model(model));
        out << "lifted " << lifted.projectors.size() << " projectors to " << model.group.name() << " with N = " << n_trunc
            << "\n";
        if (!out_path.empty()) write(out_path, lifted_set_to_json(lifted, model));
        if (verify) {
          auto report = verify_lifted(lifted, jobs);
          CheckResult back{"restriction", {}, restrict(lifted).projectors == src.set.projectors, {}, {}};
          if (!back.pass) back.detail = "restricting the lift does not return the input projectors";
          report.checks.push_back(back);
          code = report_exit(out, report, report_path);
        }
      } else {
        bool stable = stabilization_check([&](int n) { return build_model(model, n); }, src.set, max_degree, n1, n2);
        out << (stable ? "stable" : "NOT stable") << ": lifted coefficients in degrees <= " << max_degree
            << (stable ? " agree" : " differ") << " for N = " << n1 << " and N = " << n2 << "\n";
        code = stable ? 0 : 1;
      }
    } else if (restrict_cmd->parsed()) {
      ProjectorSet image;
      SpaceSpec target_spec;
      if (!lifted_path.empty()) {
        auto file = load(lifted_path, "--lifted");
        in_context(file.origin, [&] {
          auto lifted = lifted_set_from_json(file.json);
          target_spec = spec_from_json(file.json.at("model").at("base"));
          image = bottom_weight_restriction(lifted);
          return 0;
        });
      } else {
        if (!kill_primitive || projectors_path.empty())
          throw InputError("restrict needs --lifted FILE or --projectors FILE --kill-primitive");
        auto src = projectors_from(projectors_path, "");
        auto reduced = without_primitives(src.spec);
        if (!reduced) throw InputError("--kill-primitive needs a ci_model, hypersurface or plane_curve_family space");
        target_spec = *reduced;
        image = bottom_weight_restriction(kill_primitive_map(src.ring, build(target_spec)), src.set);
      }
      print_set(out, image);
      if (!out_path.empty()) write(out_path, projector_set_to_json(image, target_spec));
      if (verify) code = report_exit(out, verify_ck(image), report_path);
    } else if (formulas_cmd->parsed()) {
      if (fano_cmd->parsed()) {
        auto r = fano_delta(fn, fdegrees, fr);
        out << "δ=" << r.value << "\n";
        for (const auto& w : r.warnings) out << "warning: " << w << "\n";
      } else if (rep_cmd->parsed()) {
        out << "dim=" << rep_variety_dim(fg, fn) << "\n";
      } else {
        out << "m=" << barth_range(fn, fd) << "\n";
      }
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.message() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace ckm::cli
