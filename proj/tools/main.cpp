// infty_spec: eigenpairs, stability reports and family sweeps from the
// command line.
//
// Exit codes: 0 ok, 1 I/O or internal error, 2 invalid or infeasible input
// (including uncertified eigenfunction families), 3 resolution/connectivity,
// 4 a theorem check failed (verify only).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "expr.hpp"
#include "infspec/eigenfunc.hpp"
#include "infspec/errors.hpp"
#include "infspec/parallel.hpp"
#include "infspec/render.hpp"
#include "infspec/serialize.hpp"
#include "infspec/spectra.hpp"

namespace fs = std::filesystem;
using namespace infspec;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kResolution = 3, kTheorem = 4 };

struct Options {
  std::string domain;
  std::string family;
  std::string spec_file;
  double r = 1.0;
  double h = 0.00390625;
  double eps = 0.0, ell = 0.0, outer = 0.0, apothem = 0.0, match_volume = 0.0;
  std::string k;
  std::string axes;
  std::string ratio = "1+1/k";
  std::string solver = "dijkstra16";
  int stride = 64;
  std::string out = ".";
  std::string formats;
  bool numeric = false;
  bool fraenkel = false;
};

struct Flags {
  CLI::Option *r, *eps, *ell, *outer, *apothem, *match_volume, *k, *axes, *ratio, *h;
};

Flags add_common(CLI::App& cmd, Options& o, bool sweep) {
  Flags f{};
  cmd.set_help_flag("--help", "print this help message and exit");
  if (!sweep) {
    cmd.add_option("--domain", o.domain, "ball, annulus, stadium, regular_polygon (polygon), ellipse");
    cmd.add_option("--spec", o.spec_file, "domain spec JSON file");
  }
  cmd.add_option("--family", o.family, "polygon, ellipse or stadium4 (with --k)");
  f.r = cmd.add_option("--r", o.r, "reference radius")->check(CLI::PositiveNumber);
  f.h = cmd.add_option("--h", o.h, "grid spacing")->check(CLI::PositiveNumber);
  f.eps = cmd.add_option("--eps", o.eps, "stadium cap radius or annulus inner radius");
  f.ell = cmd.add_option("--ell", o.ell, "stadium segment length");
  f.outer = cmd.add_option("--outer", o.outer, "annulus outer radius");
  f.apothem = cmd.add_option("--apothem", o.apothem, "polygon apothem");
  f.k = cmd.add_option("--k", o.k, sweep ? "indices, e.g. 3:64 or 10,20,40,80" : "polygon sides or family index");
  f.axes = cmd.add_option("--axes", o.axes, "ellipse semi-axes, comma separated");
  f.ratio = cmd.add_option("--ratio", o.ratio, "ellipse axis ratio as an expression in k");
  f.match_volume = cmd.add_option("--match-volume", o.match_volume,
                                  "rescale to the volume of the ball of this radius")
                       ->check(CLI::PositiveNumber);
  cmd.add_option("--solver", o.solver, "geodesic solver")
      ->check(CLI::IsMember({"fmm", "dijkstra8", "dijkstra16"}));
  cmd.add_option("--stride", o.stride, "boundary sample stride in the diameter search")->check(CLI::PositiveNumber);
  cmd.add_option("--out", o.out, "output directory");
  cmd.add_option("--formats", o.formats, "comma-separated subset of json,csv,svg");
  return f;
}

GeodesicConfig geodesic_config(const Options& o) {
  GeodesicConfig cfg;
  cfg.boundary_sample_stride = o.stride;
  if (o.solver == "fmm") cfg.solver = GeodesicSolver::FastMarching;
  else if (o.solver == "dijkstra8") cfg.solver = GeodesicSolver::Dijkstra8;
  else cfg.solver = GeodesicSolver::Dijkstra16;
  return cfg;
}

std::string_view solver_name(GeodesicSolver s) {
  switch (s) {
    case GeodesicSolver::FastMarching: return "fmm";
    case GeodesicSolver::Dijkstra8: return "dijkstra8";
    case GeodesicSolver::Dijkstra16: return "dijkstra16";
  }
  return "";
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParameterError("bad number list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

Family make_family(const Options& o) {
  Family fam;
  fam.kind = family_kind_from_string(o.family);
  const tools::Expression ratio(o.ratio);
  fam.ellipse_ratio = [ratio](int k) { return ratio(static_cast<double>(k)); };
  return fam;
}

int single_index(const Options& o) {
  const auto ks = tools::parse_index_list(o.k);
  if (ks.size() != 1) throw ParameterError("--k must be a single integer here");
  return ks.front();
}

// Resolves the domain and the reference radius from the flags.
DomainSpec build_domain(const Options& o, const Flags& f, double& r) {
  const bool matched = f.match_volume->count() > 0;
  if (matched && f.r->count() == 0) r = o.match_volume;
  const double target = matched ? o.match_volume : r;

  const int sources = !o.domain.empty() + !o.family.empty() + !o.spec_file.empty();
  if (sources != 1) throw ParameterError("give exactly one of --domain, --family, --spec");

  if (!o.spec_file.empty()) {
    std::ifstream in(o.spec_file);
    if (!in) throw ParameterError("cannot read spec file '" + o.spec_file + "'");
    Json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError(std::string("spec file is not JSON: ") + e.what());
    }
    return domain_from_json(j);
  }
  if (!o.family.empty()) {
    if (!f.k->count()) throw ParameterError("--family needs --k");
    return family_member(make_family(o), single_index(o), target);
  }

  const DomainKind kind = domain_kind_from_string(o.domain);
  ShapeParams shape;
  switch (kind) {
    case DomainKind::Ball:
      return DomainSpec::ball(target);
    case DomainKind::Stadium:
      if (f.eps->count() && f.ell->count()) {
        if (matched) throw ParameterError("--match-volume fixes one of --eps, --ell; give only one");
        return DomainSpec::stadium(o.eps, o.ell);
      }
      if (f.eps->count()) shape.eps = o.eps;
      else if (f.ell->count()) shape.ell = o.ell;
      else throw ParameterError("stadium needs --eps or --ell");
      return normalize_to_ball_volume(kind, shape, target);
    case DomainKind::Annulus:
      if (!f.eps->count()) throw ParameterError("annulus needs --eps (inner radius)");
      if (f.outer->count() && !matched) return DomainSpec::annulus(o.outer, o.eps);
      shape.eps = o.eps;
      return normalize_to_ball_volume(kind, shape, target);
    case DomainKind::RegularPolygon: {
      if (!f.k->count()) throw ParameterError("regular_polygon needs --k (sides)");
      const int sides = single_index(o);
      if (f.apothem->count() && !matched) return DomainSpec::polygon(sides, o.apothem);
      shape.sides = sides;
      return normalize_to_ball_volume(kind, shape, target);
    }
    case DomainKind::Ellipse: {
      if (f.axes->count()) {
        const auto axes = parse_doubles(o.axes);
        if (!matched) return DomainSpec::ellipse(axes);
        shape.axis_ratios = axes;
      } else if (f.k->count()) {
        shape.axis_ratios = {tools::Expression(o.ratio)(single_index(o)), 1.0};
      } else {
        throw ParameterError("ellipse needs --axes or --k with --ratio");
      }
      shape.dimension = static_cast<int>(shape.axis_ratios.size());
      return normalize_to_ball_volume(kind, shape, target);
    }
  }
  throw ParameterError("unsupported domain");
}

std::set<std::string> parse_formats(const Options& o, const std::string& fallback) {
  const std::string text = o.formats.empty() ? fallback : o.formats;
  std::set<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != "json" && item != "csv" && item != "svg")
      throw ParameterError("unknown format '" + item + "' (json, csv, svg)");
    out.insert(item);
  }
  return out;
}

Json header(std::string_view command, const DomainSpec& spec, double r, double h, const GeodesicConfig& cfg) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"domain", to_json(spec)},
          {"r", r},
          {"h", h},
          {"solver", {{"name", solver_name(cfg.solver)}, {"boundary_sample_stride", cfg.boundary_sample_stride}}}};
}

void emit_json(const Options& o, const std::string& name, const Json& doc) {
  const std::string text = dump(doc) + "\n";
  write_file_atomic(fs::path(o.out) / (name + ".json"), text);
  std::cout << text;
}

bool certified(const DomainSpec& spec) {
  return spec.kind() == DomainKind::Ball || spec.kind() == DomainKind::Stadium;
}

int cmd_compute(const Options& o, const Flags& f) {
  double r = o.r;
  const auto spec = build_domain(o, f, r);
  const auto cfg = geodesic_config(o);
  const auto formats = parse_formats(o, "json");
  const auto raster = rasterize(spec, o.h);

  ReportOptions ro;
  ro.geodesic = cfg;
  ro.fraenkel = true;
  const auto report = stability_report(spec, r, o.h, ro);

  Json doc = header("compute", spec, r, o.h, cfg);
  doc["eigenpair_closed_form"] = to_json(eigenpair_closed_form(spec));
  doc["eigenpair_numeric"] = to_json(eigenpair_numeric(raster, cfg));
  doc["report"] = to_json(report);
  if (formats.count("json")) emit_json(o, "compute", doc);
  if (formats.count("svg"))
    write_file_atomic(fs::path(o.out) / "compute.svg", render_svg(raster, report.sandwich, r));
  if (formats.count("csv")) std::cerr << "note: csv output applies to sweep only\n";
  return kOk;
}

int cmd_verify(const Options& o, const Flags& f) {
  double r = o.r;
  const auto spec = build_domain(o, f, r);
  const auto cfg = geodesic_config(o);
  const auto formats = parse_formats(o, "json,svg");

  ReportOptions ro;
  ro.geodesic = cfg;
  ro.fraenkel = o.fraenkel;
  auto report = stability_report(spec, r, o.h, ro);
  const auto raster = rasterize(spec, o.h);
  if (certified(spec)) {
    const auto u = distance_eigenfunction(raster, spec.kind());
    report.eigenfunction_deviation = sup_deviation(u, aligned_cone(u, r), r).value;
  }

  Json doc = header("verify", spec, r, o.h, cfg);
  doc["report"] = to_json(report);
  if (formats.count("json")) emit_json(o, "verify", doc);
  if (formats.count("svg"))
    write_file_atomic(fs::path(o.out) / "verify.svg", render_svg(raster, report.sandwich, r));
  if (formats.count("csv")) std::cerr << "note: csv output applies to sweep only\n";
  if (!report.flags.theorem_pass()) {
    std::cerr << "theorem check failed:"
              << (report.flags.inner_ball ? "" : " inner_ball")
              << (report.flags.outer_ball ? "" : " outer_ball")
              << (report.flags.symdiff_inner_bound ? "" : " symdiff_inner_bound") << "\n";
    return kTheorem;
  }
  return kOk;
}

int cmd_sweep(const Options& o, const Flags& f) {
  if (o.family.empty()) throw ParameterError("sweep needs --family");
  const Family fam = make_family(o);
  std::vector<int> ks;
  if (f.k->count()) ks = tools::parse_index_list(o.k);
  else if (fam.kind == FamilyKind::Stadium4) ks = {10, 20, 40, 80};
  else if (fam.kind == FamilyKind::Polygon) ks = tools::parse_index_list("3:64");
  else ks = {1, 2, 4, 8, 16, 32, 64};
  const double r = f.match_volume->count() && !f.r->count() ? o.match_volume : o.r;
  const auto cfg = geodesic_config(o);
  const auto formats = parse_formats(o, "json,csv");

  SweepOptions so;
  so.h = o.h;
  so.numeric_deltas = o.numeric;
  so.geodesic = cfg;
  so.fraenkel = o.fraenkel;
  so.eigenfunction = fam.kind == FamilyKind::Stadium4;
  const auto result = sweep(fam, r, ks, so);

  Json doc = to_json(result);
  doc["h"] = o.h;
  if (fam.kind == FamilyKind::Ellipse) doc["ratio"] = o.ratio;
  doc["solver"] = {{"name", solver_name(cfg.solver)}, {"boundary_sample_stride", cfg.boundary_sample_stride}};
  if (formats.count("json")) emit_json(o, "sweep", doc);
  if (formats.count("csv")) write_file_atomic(fs::path(o.out) / "sweep.csv", sweep_csv(result));
  if (formats.count("svg")) std::cerr << "note: svg output applies to compute and verify only\n";
  return kOk;
}

int cmd_eigenfunction(const Options& o, const Flags& f) {
  double r = o.r;
  const auto spec = build_domain(o, f, r);
  const auto formats = parse_formats(o, "json");
  const auto raster = rasterize(spec, o.h);
  const auto u = distance_eigenfunction(raster, spec.kind());
  const auto v = aligned_cone(u, r);
  const auto dev = sup_deviation(u, v, r);

  const fs::path dir(o.out);
  write_field(dir / "u", u.values(), "eigenfunction");
  write_field(dir / "v", cone_field(raster.frame(), raster, v), "cone");
  write_field(dir / "deviation", deviation_field(u, v, r), "abs_difference");

  const auto& fr = raster.frame();
  const auto at = fr.center(dev.argmax);
  Json doc = {{"schema_version", kSchemaVersion},
              {"command", "eigenfunction"},
              {"domain", to_json(spec)},
              {"r", r},
              {"h", o.h},
              {"lambda_D", u.lambda_D},
              {"chebyshev_center", Json::array({fr.center(u.chebyshev)[0], fr.center(u.chebyshev)[1]})},
              {"cone", {{"center", Json::array({v.center[0], v.center[1]})}, {"radius", v.radius}}},
              {"sup_deviation", dev.value},
              {"argmax", Json::array({at[0], at[1]})},
              {"cells", dev.cells},
              {"fields", Json::array({"u", "v", "deviation"})}};
  if (formats.count("json")) emit_json(o, "eigenfunction", doc);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infinity-eigenvalue spectral stability toolkit"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", "infty_spec 1.0");

  Options o;
  auto* compute = app.add_subcommand("compute", "eigenpairs and stability report for one domain");
  auto* verify = app.add_subcommand("verify", "inner/outer ball and measure-bound checks");
  auto* sweep_cmd = app.add_subcommand("sweep", "closed-form and numeric trends along a family");
  auto* eig = app.add_subcommand("eigenfunction", "distance eigenfunction vs the ball cone");
  const Flags fc = add_common(*compute, o, false);
  const Flags fv = add_common(*verify, o, false);
  const Flags fs_ = add_common(*sweep_cmd, o, true);
  const Flags fe = add_common(*eig, o, false);
  verify->add_flag("--fraenkel", o.fraenkel, "also search for the Fraenkel asymmetry");
  sweep_cmd->add_flag("--numeric", o.numeric, "numeric eigenvalues per member (slow)");
  sweep_cmd->add_flag("--fraenkel", o.fraenkel, "Fraenkel asymmetry per member");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    configure_threads_from_env();
    if (*compute) return cmd_compute(o, fc);
    if (*verify) return cmd_verify(o, fv);
    if (*sweep_cmd) return cmd_sweep(o, fs_);
    if (*eig) return cmd_eigenfunction(o, fe);
  } catch (const ResolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResolution;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
