// ruledkit: invariants, Mannheim offsets and relation checks for ruled surfaces.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ruled/commands.hpp"
#include "ruled/errors.hpp"

namespace {

struct SourceArgs {
  std::string path;
  std::string catalog;
  std::vector<std::string> params;
};

ruled::SurfaceConfig load_config(const SourceArgs& a) {
  if (!a.catalog.empty()) {
    if (!a.path.empty()) throw ruled::Error(ruled::ErrorCode::precondition, "give a config file or --catalog, not both");
    ruled::CatalogSpec spec{a.catalog, {}};
    for (const std::string& kv : a.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ruled::ParseError("--param expects key=value, got '" + kv + "'", 1, 1);
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size()) {
        throw ruled::ParseError("parameter '" + key + "' is not a number", 1, static_cast<int>(eq) + 2);
      }
      spec.params[key] = v;
    }
    return {spec};
  }
  if (a.path.empty()) throw ruled::Error(ruled::ErrorCode::precondition, "no surface given; pass a config file or --catalog NAME");
  std::ifstream in(a.path);
  if (!in) throw ruled::Error(ruled::ErrorCode::io, "cannot read '" + a.path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ruled::parse_config(ss.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ruled surfaces as dual curves: invariants, Mannheim offsets, relation checks.\n"
               "Angles are radians; theta-star and lengths are in model units."};
  app.require_subcommand(1);

  SourceArgs source;
  ruled::RunOptions options;
  bool list = false;

  auto add_common = [&](CLI::App* sub, bool offset, bool mesh) {
    sub->add_option("config", source.path, "surface config file");
    sub->add_option("--catalog", source.catalog, "use a catalog surface instead of a file");
    sub->add_option("--param", source.params, "catalog parameter key=value (repeatable)");
    sub->add_option("--samples", options.samples, "samples per period")->check(CLI::PositiveNumber);
    sub->add_option("--tol", options.tol, "tolerance for asserted relations")->check(CLI::PositiveNumber);
    if (offset) {
      sub->add_option("--theta", options.theta, "offset angle theta (radians), constant or expression in t");
      sub->add_option("--theta-star", options.theta_star, "offset distance theta* (model units), constant or expression in t");
      sub->add_option("--mode", options.mode, "constant: fixed angle; mannheim: solve the offset-angle ODE from the given start")
          ->check(CLI::IsMember({"constant", "mannheim"}));
    }
    if (mesh) {
      sub->add_option("--out", options.out, "OBJ output path");
      sub->add_option("--vmin", options.grid.vmin, "lower ruling parameter");
      sub->add_option("--vmax", options.grid.vmax, "upper ruling parameter");
      sub->add_option("--nt", options.grid.nt, "grid rows along t");
      sub->add_option("--nv", options.grid.nv, "grid columns along the ruling");
    }
  };

  CLI::App* inv = app.add_subcommand("invariants", "striction, drall, frame, pitch, angle of pitch, Steiner vector");
  add_common(inv, false, false);
  inv->add_flag("--list-catalog", list, "print the catalog and exit");
  CLI::App* off = app.add_subcommand("offset", "build the offset surface and report its rulings");
  add_common(off, true, true);
  CLI::App* ver = app.add_subcommand("verify", "check every applicable relation between a surface and its offset");
  add_common(ver, true, false);
  CLI::App* mesh = app.add_subcommand("mesh", "export a surface patch and its striction line as OBJ");
  add_common(mesh, false, true);
  CLI::App* dual = app.add_subcommand("dualcurve", "sample the dual unit curve of the rulings");
  add_common(dual, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ruled::exit_input;
  }

  if (list) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : ruled::catalog_entries()) j.push_back({{"name", c.name}, {"summary", c.summary}, {"defaults", c.defaults}});
    std::cout << j.dump(2) << '\n';
    return ruled::exit_ok;
  }

  try {
    const ruled::SurfaceConfig config = load_config(source);
    ruled::CommandResult r;
    if (inv->parsed()) r = ruled::cmd_invariants(config, options);
    else if (off->parsed()) r = ruled::cmd_offset(config, options);
    else if (ver->parsed()) r = ruled::cmd_verify(config, options);
    else if (mesh->parsed()) r = ruled::cmd_mesh(config, options);
    else r = ruled::cmd_dualcurve(config, options);
    if (r.text) std::cout << *r.text;
    else std::cout << r.report.dump(2) << '\n';
    return r.exit_code;
  } catch (const ruled::Error& e) {
    std::cout << ruled::error_json(e).dump(2) << '\n';
    std::cerr << "error: " << ruled::error_code_name(e.code()) << ": " << e.what() << '\n';
    return ruled::exit_code_for(e);
  }
}
