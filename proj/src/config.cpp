#include "ruled/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ruled/errors.hpp"
#include "ruled/expr.hpp"

namespace ruled {

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  int value_column = 0;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string_view s, std::size_t* offset = nullptr) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (offset) *offset = b;
  return std::string(s.substr(b, e - b));
}

std::vector<Entry> split_entries(std::string_view text) {
  std::vector<Entry> entries;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    if (!trim(line).empty()) {
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        std::size_t off = 0;
        trim(line, &off);
        throw ParseError("expected 'key = value'", line_no, static_cast<int>(off) + 1);
      }
      Entry e;
      e.key = trim(line.substr(0, eq));
      std::size_t off = 0;
      e.value = trim(line.substr(eq + 1), &off);
      e.line = line_no;
      e.value_column = static_cast<int>(eq + 1 + off) + 1;
      if (e.key.empty()) throw ParseError("missing key before '='", line_no, 1);
      entries.push_back(e);
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return entries;
}

double parse_constant(const Entry& e) {
  const Expression x = Expression::parse(e.value, e.line, e.value_column);
  if (x.depends_on_t()) throw ParseError("value must not depend on t", e.line, e.value_column);
  const double v = x(0.0);
  if (!std::isfinite(v)) throw ParseError("value is not finite", e.line, e.value_column);
  return v;
}

bool parse_bool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ParseError("expected true or false", e.line, e.value_column);
}

void probe(const VectorExpression& v, double period, const std::string& what) {
  constexpr int kProbes = 16;
  for (int i = 0; i <= kProbes; ++i) {
    const double t = period * i / kProbes;
    const Vec3 x = v(t);
    if (!x.allFinite()) {
      throw Error(ErrorCode::parse, what + " evaluates to a non-finite value at t = " + fmt(t));
    }
  }
}

}  // namespace

SurfaceConfig parse_config(std::string_view text) {
  const std::vector<Entry> entries = split_entries(text);
  std::map<std::string, const Entry*> seen;
  std::string kind;
  const Entry* kind_entry = nullptr;
  for (const Entry& e : entries) {
    if (e.key == "sample") continue;
    if (seen.count(e.key)) throw ParseError("duplicate key '" + e.key + "'", e.line, 1);
    seen[e.key] = &e;
    if (e.key == "surface") {
      kind = e.value;
      kind_entry = &e;
    }
  }
  if (kind.empty()) {
    // Infer the kind from the keys present.
    const bool catalog = seen.count("name") > 0;
    const bool expression = seen.count("base") || seen.count("director");
    bool tabulated = false;
    for (const Entry& e : entries) tabulated = tabulated || e.key == "sample";
    if (catalog + expression + tabulated != 1) {
      throw ParseError("document must describe exactly one surface (catalog, expression or tabulated)",
                       entries.empty() ? 1 : entries.front().line, 1);
    }
    kind = catalog ? "catalog" : expression ? "expression" : "tabulated";
  }

  auto reject_other = [&](const std::vector<std::string>& allowed, bool allow_params) {
    for (const Entry& e : entries) {
      if (e.key == "surface") continue;
      bool ok = false;
      for (const std::string& a : allowed) ok = ok || e.key == a;
      if (allow_params && e.key.rfind("param.", 0) == 0) ok = true;
      if (!ok) {
        throw ParseError("key '" + e.key + "' does not belong to a " + kind + " surface", e.line, 1);
      }
    }
  };

  SurfaceConfig config;
  if (kind == "catalog") {
    reject_other({"name"}, true);
    if (!seen.count("name")) throw ParseError("catalog surface needs 'name'", 1, 1);
    CatalogSpec c;
    c.name = seen["name"]->value;
    for (const Entry& e : entries) {
      if (e.key.rfind("param.", 0) == 0) c.params[e.key.substr(6)] = parse_constant(e);
    }
    config.source = c;
    make_catalog_surface(c.name, c.params);  // validates name and parameters
  } else if (kind == "expression") {
    reject_other({"base", "director", "period", "closed"}, false);
    if (!seen.count("base") || !seen.count("director")) {
      throw ParseError("expression surface needs 'base' and 'director'", 1, 1);
    }
    ExpressionSpec x;
    if (seen.count("period")) x.period = parse_constant(*seen["period"]);
    if (seen.count("closed")) {
      const Entry& e = *seen["closed"];
      if (e.value != "auto" && e.value != "true" && e.value != "false") {
        throw ParseError("expected auto, true or false", e.line, e.value_column);
      }
      x.closed = e.value;
    }
    const Entry& b = *seen["base"];
    const Entry& d = *seen["director"];
    x.base = b.value;
    x.director = d.value;
    probe(VectorExpression::parse(b.value, b.line, b.value_column), x.period, "base");
    probe(VectorExpression::parse(d.value, d.line, d.value_column), x.period, "director");
    config.source = x;
  } else if (kind == "tabulated") {
    reject_other({"sample", "period", "periodic"}, false);
    TabulatedSpec tab;
    if (seen.count("period")) tab.period = parse_constant(*seen["period"]);
    if (seen.count("periodic")) tab.periodic = parse_bool(*seen["periodic"]);
    for (const Entry& e : entries) {
      if (e.key != "sample") continue;
      std::istringstream in(e.value);
      double v[6];
      for (double& x : v) {
        if (!(in >> x)) throw ParseError("sample needs six numbers", e.line, e.value_column);
      }
      std::string rest;
      if (in >> rest) throw ParseError("sample needs six numbers", e.line, e.value_column);
      tab.base.emplace_back(v[0], v[1], v[2]);
      tab.director.emplace_back(v[3], v[4], v[5]);
    }
    if (tab.base.size() < 4) throw ParseError("tabulated surface needs at least 4 samples", 1, 1);
    config.source = tab;
  } else {
    throw ParseError("unknown surface kind '" + kind + "'", kind_entry ? kind_entry->line : 1,
                     kind_entry ? kind_entry->value_column : 1);
  }
  return config;
}

std::string serialize_config(const SurfaceConfig& config) {
  std::ostringstream out;
  if (const auto* c = std::get_if<CatalogSpec>(&config.source)) {
    out << "surface = catalog\nname = " << c->name << "\n";
    for (const auto& [k, v] : c->params) out << "param." << k << " = " << fmt(v) << "\n";
  } else if (const auto* x = std::get_if<ExpressionSpec>(&config.source)) {
    out << "surface = expression\nbase = " << x->base << "\ndirector = " << x->director
        << "\nperiod = " << fmt(x->period) << "\nclosed = " << x->closed << "\n";
  } else {
    const auto& tab = std::get<TabulatedSpec>(config.source);
    out << "surface = tabulated\nperiod = " << fmt(tab.period)
        << "\nperiodic = " << (tab.periodic ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < tab.base.size(); ++i) {
      out << "sample =";
      for (int k = 0; k < 3; ++k) out << ' ' << fmt(tab.base[i][k]);
      for (int k = 0; k < 3; ++k) out << ' ' << fmt(tab.director[i][k]);
      out << "\n";
    }
  }
  return out.str();
}

RuledSurfaceDef build_surface(const SurfaceConfig& config) {
  if (const auto* c = std::get_if<CatalogSpec>(&config.source)) {
    return make_catalog_surface(c->name, c->params);
  }
  if (const auto* x = std::get_if<ExpressionSpec>(&config.source)) {
    const Closure closure = x->closed == "true"    ? Closure::closed
                            : x->closed == "false" ? Closure::open
                                                   : Closure::automatic;
    return make_ruled_surface(VectorExpression::parse(x->base).sampler(x->period),
                              VectorExpression::parse(x->director).sampler(x->period), x->period,
                              closure);
  }
  const auto& tab = std::get<TabulatedSpec>(config.source);
  const std::span<const Vec3> base(tab.base);
  const std::span<const Vec3> director(tab.director);
  if (tab.periodic) {
    return make_ruled_surface(interpolate_periodic(base, tab.period),
                              interpolate_periodic(director, tab.period), tab.period,
                              Closure::closed);
  }
  return make_ruled_surface(interpolate_natural(base, tab.period),
                            interpolate_natural(director, tab.period), tab.period, Closure::open);
}

}  // namespace ruled
