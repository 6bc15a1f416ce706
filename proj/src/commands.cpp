#include "ruled/commands.hpp"

#include <algorithm>
#include <cmath>

#include "ruled/errors.hpp"
#include "ruled/expr.hpp"

namespace ruled {

using nlohmann::json;

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const DualNumber& d) { return {{"real", d.real}, {"dual", d.dual}}; }

json to_json(const DualVector3& d) { return {{"real", to_json(d.real)}, {"dual", to_json(d.dual)}}; }

json to_json(const RelationCheck& c) {
  json j = {{"id", c.id},         {"lhs", c.lhs},           {"rhs", c.rhs},
            {"residual", c.residual}, {"tolerance", c.tolerance}, {"asserted", c.asserted},
            {"pass", c.pass}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

int exit_code_for(const Error& e) { return is_geometric(e.code()) ? exit_degenerate : exit_input; }

json error_json(const Error& e) {
  json j = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    j["line"] = p->line();
    j["column"] = p->column();
    j["message"] = p->message();
  }
  return {{"error", j}};
}

namespace {

QuadratureSpec spec_of(const RunOptions& o) {
  QuadratureSpec q;
  q.sample_count = o.samples;
  validate(q);
  return q;
}

json environment(const RunOptions& o) {
  return {{"samples", o.samples}, {"tolerance", o.tol}};
}

json invariants_json(const InvariantReport& r) {
  auto director = [](const DirectorInvariants& d) {
    return json{{"dual_angle_of_pitch", to_json(d.dual_angle_of_pitch)},
                {"pitch", d.pitch},
                {"spherical_area", to_json(d.spherical_area)}};
  };
  return {
      {"pitch", r.pitch},
      {"angle_of_pitch",
       {{"forms", r.angle.route_forms},
        {"steiner", to_json(r.angle.route_steiner)},
        {"discrepancy", r.angle.discrepancy}}},
      {"dual_angle_of_pitch", to_json(r.dual_angle_of_pitch)},
      {"pitch_discrepancy", std::abs(r.angle.route_steiner.dual + r.pitch)},
      {"steiner",
       {{"along_q", to_json(r.steiner.along_q)},
        {"along_a", to_json(r.steiner.along_a)},
        {"fixed", to_json(r.steiner.fixed)}}},
      {"pole", to_json(r.pole)},
      {"directors", {{"q", director(r.q)}, {"h", director(r.h)}, {"a", director(r.a)}}},
      {"area_vector_q", to_json(r.area_vector_q)},
  };
}

}  // namespace

CommandResult cmd_invariants(const SurfaceConfig& config, const RunOptions& options) {
  const RuledSurfaceDef s = build_surface(config);
  const QuadratureSpec spec = spec_of(options);
  FrameOptions fo;
  fo.sample_count = options.samples;
  const FrameField frame = moving_frame(s, fo);
  const StrictionCurve striction = striction_curve(s, options.samples);

  double drall_min = INFINITY;
  double drall_max = -INFINITY;
  for (const FrameSample& f : frame.samples) {
    const double d = distribution_parameter(s, f.t);
    drall_min = std::min(drall_min, d);
    drall_max = std::max(drall_max, d);
  }
  const bool sigma_ok = std::all_of(frame.samples.begin(), frame.samples.end(),
                                    [](const FrameSample& f) { return f.sigma_in_range; });

  CommandResult r;
  r.report = {
      {"command", "invariants"},
      {"environment", environment(options)},
      {"surface", {{"closed", s.closed}, {"period", s.period}}},
      {"striction", {{"point_degenerate", striction.point_degenerate}, {"regular", striction.regular}}},
      {"drall", {{"min", drall_min}, {"max", drall_max}}},
      {"developable", std::max(std::abs(drall_min), std::abs(drall_max)) < options.tol},
      {"frame",
       {{"arclength_basis", frame.basis == ArclengthBasis::striction ? "striction" : "spherical"},
        {"sigma_in_range", sigma_ok}}},
  };
  if (s.closed) {
    r.report["invariants"] = invariants_json(compute_invariants(s, spec));
  } else {
    r.report["invariants"] = nullptr;
    r.report["note"] = "surface is not closed; integral invariants need a closed surface";
  }
  return r;
}

OffsetAngle offset_angle_from(const RuledSurfaceDef& s, const RunOptions& options) {
  const Expression theta = Expression::parse(options.theta);
  const Expression theta_star = Expression::parse(options.theta_star);
  const bool varying = theta.depends_on_t() || theta_star.depends_on_t();
  if (options.mode == "mannheim") {
    if (varying) {
      throw Error(ErrorCode::precondition, "mannheim mode takes constant initial values");
    }
    QuadratureSpec q;
    q.sample_count = options.samples;
    return mannheim_angle(s, {theta(0.0), theta_star(0.0)}, q);
  }
  if (options.mode != "constant") {
    throw Error(ErrorCode::precondition, "mode must be 'constant' or 'mannheim'");
  }
  if (!varying) return OffsetAngle::constant({theta(0.0), theta_star(0.0)}, s.period);
  return OffsetAngle::varying(expression_sampler(theta, s.period),
                              expression_sampler(theta_star, s.period));
}

namespace {

json angle_json(const OffsetAngle& a, const RunOptions& o) {
  const char* kind = a.kind() == OffsetAngle::Kind::constant  ? "constant"
                     : a.kind() == OffsetAngle::Kind::varying ? "varying"
                                                              : "mannheim";
  return {{"kind", kind}, {"theta", o.theta}, {"theta_star", o.theta_star},
          {"initial", {{"theta", a.initial().theta}, {"theta_star", a.initial().theta_star}}}};
}

}  // namespace

CommandResult cmd_offset(const SurfaceConfig& config, const RunOptions& options) {
  const RuledSurfaceDef s = build_surface(config);
  const OffsetAngle angle = offset_angle_from(s, options);
  const OffsetResult o = rotate_offset(s, angle);
  const MannheimResidual m = mannheim_residual(o, options.samples);

  json rulings = json::array();
  for (double t : sample_parameters(s, options.samples)) {
    const Line l = dual_to_line(o.q1(t));
    rulings.push_back({{"t", t}, {"direction", to_json(l.direction())}, {"moment", to_json(l.moment())}});
  }
  CommandResult r;
  r.report = {
      {"command", "offset"},
      {"environment", environment(options)},
      {"mode", options.mode},
      {"angle", angle_json(angle, options)},
      {"offset", {{"closed", o.surface.closed}, {"period", o.surface.period}}},
      {"mannheim_condition",
       {{"max_sine_real", m.max_sine_real},
        {"max_sine_dual", m.max_sine_dual},
        {"max_coefficient", m.max_coefficient},
        {"skipped", m.skipped}}},
      {"rulings", rulings},
  };
  if (!options.out.empty()) {
    const Mesh mesh = build_mesh(o.surface, options.grid);
    write_text_file(options.out, to_obj(mesh, "offset"));
    r.report["mesh"] = {{"path", options.out},
                        {"vertices", mesh.vertices.size()},
                        {"quads", mesh.quads.size()},
                        {"striction_points", mesh.striction.size()}};
  } else {
    r.report["mesh"] = nullptr;
  }
  return r;
}

CommandResult cmd_verify(const SurfaceConfig& config, const RunOptions& options) {
  const RuledSurfaceDef s = build_surface(config);
  const QuadratureSpec spec = spec_of(options);
  const OffsetAngle angle = offset_angle_from(s, options);
  const OffsetResult o = rotate_offset(s, angle);
  const bool mannheim = angle.kind() == OffsetAngle::Kind::mannheim;
  const double tol = options.tol;

  std::vector<RelationCheck> checks;
  json skipped = json::array();

  const MannheimResidual m = mannheim_residual(o, options.samples);
  const std::string reported = mannheim ? "" : "offset angle does not follow the Mannheim ODE; reported only";
  checks.push_back(make_check("thm41.mannheim_condition", m.max_sine(), 0.0, tol, mannheim, reported));
  try {
    const PairCheck p = is_mannheim_pair(o, tol, options.samples);
    checks.push_back(make_check("eq25.pair", std::max(p.max_deviation_real, p.max_deviation_dual),
                                0.0, tol, mannheim, reported));
  } catch (const Error& e) {
    skipped.push_back({{"id", "eq25.pair"}, {"reason", e.what()}});
  }

  if (s.closed && o.surface.closed) {
    for (auto& c : dual_pitch_relation(o, tol, spec)) checks.push_back(c);
    for (auto& c : projected_area_relations(o, tol, spec)) checks.push_back(c);
  } else {
    skipped.push_back({{"id", "eq33-eq60"}, {"reason", "surface or offset is not closed"}});
  }

  bool developable_source = false;
  try {
    developable_source = is_developable(s, tol, options.samples) &&
                         striction_curve(s, options.samples).regular;
  } catch (const Error& e) {
    skipped.push_back({{"id", "eq46-eq49"}, {"reason", e.what()}});
  }
  if (developable_source) {
    try {
      const DevelopabilityReport d = developability_condition(o, tol, options.samples);
      const bool offset_flat = d.max_drall_direct < tol;
      checks.push_back(make_check("eq47", d.max_residual, 0.0, tol, offset_flat,
                                  offset_flat ? "" : "offset is not developable; reported only"));
      double formula_gap = 0.0;
      for (const auto& x : d.samples) {
        if (!x.singular) formula_gap = std::max(formula_gap, std::abs(x.drall_formula - x.drall_direct));
      }
      checks.push_back(make_check("eq46", formula_gap, 0.0, tol, mannheim,
                                  mannheim ? "" : "formula assumes the Mannheim condition; reported only"));
      checks.push_back(make_check("eq46-47.equivalence", d.equivalence_holds ? 0.0 : 1.0, 0.0, 0.5, true,
                                  d.singular_branch ? "sin(theta) = 0 branch present" : ""));
      checks.push_back(make_check("developable.offset_drall", d.max_drall_direct, 0.0, tol, false,
                                  "distribution parameter of the offset"));
      const PartnerCheck p = mannheim_partner_check(o, tol, options.samples);
      if (p.applicable) {
        checks.push_back(make_check("thm43.partner", p.coincident ? 0.0 : p.max_sine, 0.0, tol, true,
                                    p.note));
      } else {
        skipped.push_back({{"id", "thm43.partner"}, {"reason", p.note}});
      }
      if (s.closed && o.surface.closed) {
        const OffsetPitchReport op = developable_offset_pitch(o, spec);
        const bool constant = angle.is_constant();
        checks.push_back(make_check("eq49.derived", op.derived, op.direct, tol, constant,
                                    constant ? "" : "varying offset angle; reported only"));
        checks.push_back(make_check("eq49.printed", op.printed, op.direct, tol, false,
                                    "printed integrand; reported only"));
      }
    } catch (const Error& e) {
      skipped.push_back({{"id", "eq46-eq49"}, {"reason", e.what()}});
    }
  }

  json relations = json::array();
  int asserted = 0;
  int failed = 0;
  for (const RelationCheck& c : checks) {
    relations.push_back(to_json(c));
    if (c.asserted) {
      ++asserted;
      if (!c.pass) ++failed;
    }
  }
  json env = environment(options);
  env["mode"] = options.mode;
  CommandResult r;
  r.report = {{"command", "verify"},
              {"environment", env},
              {"angle", angle_json(angle, options)},
              {"relations", relations},
              {"skipped", skipped},
              {"summary", {{"asserted", asserted}, {"failed", failed}, {"pass", failed == 0}}}};
  r.exit_code = failed == 0 ? exit_ok : exit_relation_failure;
  return r;
}

CommandResult cmd_mesh(const SurfaceConfig& config, const RunOptions& options) {
  const RuledSurfaceDef s = build_surface(config);
  const Mesh mesh = build_mesh(s, options.grid);
  const std::string obj = to_obj(mesh);
  CommandResult r;
  if (options.out.empty()) {
    r.text = obj;
    return r;
  }
  write_text_file(options.out, obj);
  r.report = {{"command", "mesh"},
              {"path", options.out},
              {"vertices", mesh.vertices.size()},
              {"quads", mesh.quads.size()},
              {"striction_points", mesh.striction.size()}};
  return r;
}

CommandResult cmd_dualcurve(const SurfaceConfig& config, const RunOptions& options) {
  const RuledSurfaceDef s = build_surface(config);
  const CurveSampler<DualVector3> q = surface_to_dual_curve(s);
  json samples = json::array();
  double unit_residual = 0.0;
  for (double t : sample_parameters(s, options.samples)) {
    const DualVector3 v = q(t);
    const DualNumber n = dv_dot(v, v);
    unit_residual = std::max({unit_residual, std::abs(n.real - 1.0), std::abs(n.dual)});
    samples.push_back({{"t", t}, {"real", to_json(v.real)}, {"dual", to_json(v.dual)}});
  }
  CommandResult r;
  r.report = {{"command", "dualcurve"},
              {"environment", environment(options)},
              {"closed", s.closed},
              {"unit_residual", unit_residual},
              {"samples", samples}};
  return r;
}

}  // namespace ruled
