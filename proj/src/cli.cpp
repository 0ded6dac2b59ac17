#include "hadamard/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hadamard/barycenter.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/horosphere.hpp"
#include "hadamard/io.hpp"
#include "hadamard/lipschitz.hpp"

namespace hadamard::cli {

namespace {

struct Artifact {
  std::string text;
  std::string summary;
  int status = kOk;
};

Space load_space(const RunConfig& c) {
  if (!c.space_file.empty()) return io::space_from_json(io::read_json_file(c.space_file));
  if (c.space == "tree") throw InvalidInput("--space tree requires --space-file with the topology");
  return io::space_from_json({{"space", c.space}, {"dim", c.dim}});
}

IdealPoint load_ideal(const RunConfig& c, const Space& space) {
  if (!c.ideal_file.empty()) return io::ideal_from_json(space, io::read_json_file(c.ideal_file));
  std::vector<double> e1(space.dim(), 0.0);
  e1[0] = 1.0;
  return space.ideal_toward(e1);
}

io::Json require_input(const RunConfig& c) {
  if (c.input.empty()) throw InvalidInput("--input is required for " + c.subcommand);
  return io::read_json_file(c.input);
}

std::string describe(const Space& space, const Point& p) {
  if (space.kind() == SpaceKind::tree)
    return space.tree_graph().edge_label(p.pos.edge) + "@" + io::format_number(p.pos.offset);
  std::string s = "[";
  for (std::size_t i = 0; i < p.coords.size(); ++i) s += (i ? ", " : "") + io::format_number(p.coords[i]);
  return s + "]";
}

std::string point_csv(const Space& space, const Point& p) {
  if (space.kind() == SpaceKind::tree)
    return "edge,offset\n" + space.tree_graph().edge_label(p.pos.edge) + "," + io::format_number(p.pos.offset) + "\n";
  std::string head, row;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    head += (i ? ",x" : "x") + std::to_string(i);
    row += (i ? "," : "") + io::format_number(p.coords[i]);
  }
  return head + "\n" + row + "\n";
}

BarycenterOptions barycenter_options(const RunConfig& c) { return {c.tol, c.max_iters, c.max_points}; }

SelectOptions select_options(const RunConfig& c) {
  SelectOptions o;
  o.horizon = c.horizon;
  o.classify_tol = c.classify_tol;
  o.smoothing = c.smoothing;
  o.snap_tol = c.snap_tol;
  o.barycenter = barycenter_options(c);
  return o;
}

std::string scan_summary(const LipschitzReport& r, std::size_t samples) {
  std::string s = "samples " + std::to_string(samples) + " recorded " + std::to_string(r.records.size()) +
                  " max_ratio " + io::format_number(r.max_ratio) + " mean_ratio " +
                  io::format_number(r.mean_ratio) + " failures " + std::to_string(r.failures) + " skipped " +
                  std::to_string(r.skipped);
  if (r.straddle) s += std::string(" straddle ") + (r.straddle->diverging ? "diverging" : "bounded");
  return s;
}

Artifact execute(const RunConfig& c) {
  const Space space = load_space(c);
  const bool csv = c.format == "csv";
  Artifact a;

  if (c.subcommand == "barycenter") {
    const Configuration X = io::configuration_from_json(space, require_input(c));
    const BarycenterResult r = center_of_mass(space, X, barycenter_options(c));
    a.text = csv ? io::trace_csv(r) : io::to_json(space, r).dump(2) + "\n";
    a.summary = "center " + describe(space, r.center) + " iterations " + std::to_string(r.iterations) +
                (r.converged ? " converged" : " not converged");
    a.status = r.converged ? kOk : kNotConverged;
    return a;
  }
  if (c.subcommand == "select" || c.subcommand == "classify") {
    const ConvexBody body = io::body_from_json(space, require_input(c));
    const IdealPoint xi = load_ideal(c, space);
    if (c.subcommand == "select") {
      const Point p = select(space, body, xi, space.basepoint(), select_options(c));
      a.text = csv ? point_csv(space, p) : io::Json{{"point", io::point_to_json(space, p)}}.dump(2) + "\n";
      a.summary = "selected " + describe(space, p);
    } else {
      const ShrinkClass cls = classify_body(space, body, xi, c.horizon, c.classify_tol);
      const io::Json j = io::to_json(cls);
      a.text = csv ? "verdict,max_limit_separation,probe_horizon\n" + j["verdict"].get<std::string>() + "," +
                         io::format_number(cls.max_limit_separation) + "," + io::format_number(cls.probe_horizon) + "\n"
                   : j.dump(2) + "\n";
      a.summary = "verdict " + j["verdict"].get<std::string>() + " max_limit_separation " +
                  io::format_number(cls.max_limit_separation);
    }
    return a;
  }

  ScanParams params{space, 4, 500, 1e-2, 7, 2.0, {}, true, std::nullopt, {}, 1};
  params.n_points = c.points;
  params.samples = c.samples;
  params.epsilon = c.epsilon;
  params.seed = c.seed;
  params.scale = c.scale;
  params.barycenter = barycenter_options(c);
  params.smoothing = c.smoothing;
  params.select = select_options(c);
  params.threads = c.threads;
  LipschitzReport report;
  if (c.subcommand == "scan-shift") {
    report = point_shift_scan(params);
  } else if (c.subcommand == "scan-mass") {
    report = mass_shift_scan(params);
  } else if (c.subcommand == "scan-selector") {
    params.ideal = load_ideal(c, space);
    report = selector_scan(params);
  } else {
    throw InvalidInput("unknown subcommand '" + c.subcommand + "'");
  }
  a.text = csv ? io::report_csv(report) : io::to_json(report).dump(2) + "\n";
  a.summary = scan_summary(report, c.samples);
  return a;
}

void emit(const RunConfig& c, const Artifact& a, std::ostream& out, std::ostream& err) {
  if (c.output.empty()) {
    out << a.text;
    err << a.summary << "\n";
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw InvalidInput(c.output + ": cannot open output file");
  file << a.text;
  if (!file) throw InvalidInput(c.output + ": write failed");
  out << a.summary << "\n";
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("HADAMARD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 7;
}

std::optional<RunConfig> parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                               int& exit_code) {
  RunConfig c;
  c.seed = default_seed();
  CLI::App app{"Barycenters, horosphere selectors and Lipschitz scans in Hadamard spaces", "hadamard"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--space", c.space, "Model space when no --space-file is given")
        ->check(CLI::IsMember({"euclidean", "hyperbolic", "tree"}));
    sub->add_option("--dim", c.dim, "Dimension for euclidean/hyperbolic spaces")->check(CLI::PositiveNumber);
    sub->add_option("--space-file", c.space_file, "JSON space descriptor");
    sub->add_option("--format", c.format, "Artifact format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", c.output, "Artifact path (standard output when omitted)");
    sub->add_option("--tol", c.tol, "Barycenter diameter tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", c.max_iters, "Barycenter iteration budget")->check(CLI::PositiveNumber);
    sub->add_option("--max-points", c.max_points, "Largest configuration accepted by the barycenter");
  };
  auto geometric = [&](CLI::App* sub) {
    sub->add_option("--ideal", c.ideal_file, "JSON ideal point (default: first axis direction / first end)");
    sub->add_option("--horizon", c.horizon, "Largest ray length probed")->check(CLI::PositiveNumber);
    sub->add_option("--classify-tol", c.classify_tol, "Shrinking threshold")->check(CLI::PositiveNumber);
    sub->add_option("--snap-tol", c.snap_tol, "Snap radius around branch vertices")->check(CLI::PositiveNumber);
    sub->add_flag("!--no-smoothing", c.smoothing, "Disable snapping to singular points");
  };
  auto scanning = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--samples", c.samples, "Number of samples")->check(CLI::PositiveNumber);
    sub->add_option("--points", c.points, "Points per configuration or body")->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", c.epsilon, "Perturbation size")->check(CLI::PositiveNumber);
    sub->add_option("--scale", c.scale, "Sampling radius around the basepoint")->check(CLI::PositiveNumber);
    sub->add_option("--threads", c.threads, "Worker threads");
  };

  auto* bary = app.add_subcommand("barycenter", "Iterated center of mass of a weighted configuration");
  common(bary);
  bary->add_option("--input", c.input, "Configuration JSON")->required();
  for (const char* name : {"select", "classify"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "select" ? "Selector f(C) of a convex body"
                                                                        : "Shrinking classification of a body");
    common(sub);
    geometric(sub);
    sub->add_option("--input", c.input, "Body JSON")->required();
  }
  for (const char* name : {"scan-shift", "scan-mass"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "scan-shift" ? "Point-shift Lipschitz scan"
                                                                           : "Mass-change Lipschitz scan");
    common(sub);
    scanning(sub);
  }
  auto* sel = app.add_subcommand("scan-selector", "Selector Lipschitz scan against Hausdorff distance");
  common(sel);
  geometric(sel);
  scanning(sel);

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err) == 0 ? kOk : kInputError;
    return std::nullopt;
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Artifact a = execute(config);
    emit(config, a, out, err);
    return a.status;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  int code = kOk;
  const auto config = parse(args, out, err, code);
  if (!config) return code;
  return run(*config, out, err);
}

}  // namespace hadamard::cli
