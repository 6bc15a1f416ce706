#include "ruled/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "ruled/errors.hpp"
#include "ruled/expr.hpp"

namespace ruled {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.17g)", v);
  return buf;
}

RuledSurfaceDef from_text(const std::string& base, const std::string& director,
                          double period = 2.0 * M_PI) {
  return make_ruled_surface(VectorExpression::parse(base).sampler(period),
                            VectorExpression::parse(director).sampler(period), period);
}

using Builder = std::function<RuledSurfaceDef(const Parameters&)>;

struct Recipe {
  CatalogEntry entry;
  Builder build;
};

RuledSurfaceDef frenet_mannheim(const Parameters& p) {
  // Curvature κ0 and τ(s) = −tan(θ0 − κ0 s)/θ*: the tangent developable whose
  // Mannheim offset (θ̄0 = θ0 + εθ*) is developable along the whole curve.
  const double kappa = p.at("kappa");
  const double theta0 = p.at("theta0");
  const double theta_star = p.at("theta_star");
  const double length = p.at("length");
  if (theta_star == 0.0) throw Error(ErrorCode::precondition, "theta_star must be nonzero");
  auto curvature = [kappa](double) { return Jet<double>::constant(kappa); };
  auto torsion = [=](double s) {
    const Jet<double> x = Jet<double>::constant(theta0) - kappa * jet_variable(s);
    const auto [sn, cs] = sincos(x);
    return (-1.0 / theta_star) * (sn / cs);
  };
  const FrenetCurve c = integrate_frenet(curvature, torsion, length);
  return make_ruled_surface(c.position, c.tangent, length, Closure::open);
}

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> all = {
      {{"paper-cone", "cone through (0,1,0) with director (cos t, sin t, 1)", {}},
       [](const Parameters&) { return from_text("(0, 1, 0)", "(cos(t), sin(t), 1)"); }},
      {{"cone", "circular cone with half-angle alpha and apex (x, y, z)",
        {{"alpha", M_PI / 4}, {"x", 0.0}, {"y", 0.0}, {"z", 0.0}}},
       [](const Parameters& p) {
         const std::string a = num(p.at("alpha"));
         return from_text("(" + num(p.at("x")) + ", " + num(p.at("y")) + ", " + num(p.at("z")) + ")",
                          "(sin(" + a + ")*cos(t), sin(" + a + ")*sin(t), cos(" + a + "))");
       }},
      {{"helicoid", "right helicoid with axis z and given pitch", {{"pitch", 1.0}}},
       [](const Parameters& p) {
         return from_text("(0, 0, " + num(p.at("pitch")) + "*t)", "(cos(t), sin(t), 0)");
       }},
      {{"example-helicoid", "helicoid with base (-t cos t, 1 - t sin t, t), director (-sin t, cos t, 0)", {}},
       [](const Parameters&) {
         return from_text("(-t*cos(t), 1 - t*sin(t), t)", "(-sin(t), cos(t), 0)");
       }},
      {{"tangent-developable-of-helix", "tangents of the helix (r cos t, r sin t, c t)",
        {{"radius", 1.0}, {"slope", 0.5}}},
       [](const Parameters& p) {
         const std::string r = num(p.at("radius"));
         const std::string c = num(p.at("slope"));
         return from_text("(" + r + "*cos(t), " + r + "*sin(t), " + c + "*t)",
                          "(-" + r + "*sin(t), " + r + "*cos(t), " + c + ")");
       }},
      {{"latitude-circle-director", "hyperboloid: rulings tilted by alpha along a circle of given radius",
        {{"alpha", 0.3}, {"radius", 1.0}}},
       [](const Parameters& p) {
         const std::string a = num(p.at("alpha"));
         const std::string r = num(p.at("radius"));
         return from_text("(" + r + "*cos(t), " + r + "*sin(t), 0)",
                          "(-sin(" + a + ")*sin(t), sin(" + a + ")*cos(t), cos(" + a + "))");
       }},
      {{"closed-tangent-developable", "tangents of the closed curve (cos t, sin t, a sin 2t)",
        {{"amplitude", 0.3}}},
       [](const Parameters& p) {
         const std::string a = num(p.at("amplitude"));
         return from_text("(cos(t), sin(t), " + a + "*sin(2*t))",
                          "(-sin(t), cos(t), 2*" + a + "*cos(2*t))");
       }},
      {{"closed-skew", "closed non-developable surface without symmetry", {}},
       [](const Parameters&) {
         return from_text(
             "(cos(t) + 0.3*cos(2*t), sin(t) - 0.2*sin(2*t), 0.4*sin(3*t))",
             "(cos(t)*sin(0.8 + 0.3*sin(2*t)), sin(t)*sin(0.8 + 0.3*sin(2*t)), cos(0.8 + 0.3*sin(2*t)))");
       }},
      {{"cylinder", "circular cylinder (constant director)", {{"radius", 1.0}}},
       [](const Parameters& p) {
         const std::string r = num(p.at("radius"));
         return from_text("(" + r + "*cos(t), " + r + "*sin(t), 0)", "(0, 0, 1)");
       }},
      {{"frenet-mannheim",
        "tangent developable of the curve with curvature kappa and torsion -tan(theta0 - kappa s)/theta_star",
        {{"kappa", 1.0}, {"theta0", 1.2}, {"theta_star", 0.5}, {"length", 0.6}}},
       frenet_mannheim},
  };
  return all;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    for (const Recipe& r : recipes()) e.push_back(r.entry);
    return e;
  }();
  return entries;
}

RuledSurfaceDef make_catalog_surface(const std::string& name, const Parameters& params) {
  for (const Recipe& r : recipes()) {
    if (r.entry.name != name) continue;
    Parameters merged = r.entry.defaults;
    for (const auto& [key, value] : params) {
      if (!merged.count(key)) {
        throw Error(ErrorCode::parse, "catalog surface '" + name + "' has no parameter '" + key + "'");
      }
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::parse, "parameter '" + key + "' is not finite");
      }
      merged[key] = value;
    }
    return r.build(merged);
  }
  throw Error(ErrorCode::parse, "unknown catalog surface '" + name + "'");
}

}  // namespace ruled
