#include "hadamard/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hadamard/errors.hpp"

namespace hadamard::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InvalidInput(field + ": " + what);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "expected a finite number");
  return v;
}

std::vector<double> numbers(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::string text(const Json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

std::size_t count(const Json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(field, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

TreePos tree_pos(const MetricTree& tree, const std::string& label, double offset, const std::string& field) {
  const auto found = tree.find_edge(label);
  if (!found) fail(field, "unknown edge '" + label + "'");
  const auto [e, reversed] = *found;
  return {e, reversed ? tree.edge(e).length - offset : offset};
}

// Rethrow space validation failures with the field name attached.
template <typename F>
auto with_field(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const InvalidInput& err) {
    throw InvalidInput(field + ": " + err.what());
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON (") + e.what() + ")");
  }
}

Space space_from_json(const Json& j) {
  const std::string kind = text(require(j, "space", "space"), "space.space");
  if (kind == "euclidean" || kind == "hyperbolic") {
    const Json& d = require(j, "dim", "space");
    const std::size_t dim = count(d, "space.dim");
    if (dim == 0) fail("space.dim", "must be >= 1");
    return kind == "euclidean" ? Space::euclidean(dim) : Space::hyperbolic(dim);
  }
  if (kind != "tree") fail("space.space", "expected one of euclidean, hyperbolic, tree");

  const Json& edges = require(j, "edges", "space");
  if (!edges.is_array() || edges.empty()) fail("space.edges", "expected a nonempty array");
  std::vector<TreeEdgeSpec> specs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string f = "space.edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 3) fail(f, "expected [from, to, length]");
    specs.push_back({text(e[0], f + "[0]"), text(e[1], f + "[1]"), number(e[2], f + "[2]")});
  }
  std::vector<std::string> leaves;
  if (auto it = j.find("ideal_leaves"); it != j.end()) {
    if (!it->is_array()) fail("space.ideal_leaves", "expected an array of vertex names");
    for (std::size_t i = 0; i < it->size(); ++i)
      leaves.push_back(text((*it)[i], "space.ideal_leaves[" + std::to_string(i) + "]"));
  }
  auto tree = with_field("space", [&] { return std::make_shared<const MetricTree>(specs, leaves); });
  std::optional<TreePos> base;
  if (auto it = j.find("basepoint"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) fail("space.basepoint", "expected [edge, offset]");
    base = tree_pos(*tree, text((*it)[0], "space.basepoint[0]"), number((*it)[1], "space.basepoint[1]"),
                    "space.basepoint");
  }
  return with_field("space.basepoint", [&] { return Space::tree(tree, base); });
}

Json space_to_json(const Space& space) {
  if (space.kind() != SpaceKind::tree) return {{"space", space.name()}, {"dim", space.dim()}};
  const MetricTree& t = space.tree_graph();
  Json edges = Json::array();
  for (std::size_t e = 0; e < t.edge_count(); ++e)
    edges.push_back({t.vertex_name(t.edge(e).from), t.vertex_name(t.edge(e).to), t.edge(e).length});
  Json leaves = Json::array();
  for (std::size_t v : t.ideal_leaves()) leaves.push_back(t.vertex_name(v));
  const TreePos& b = space.basepoint().pos;
  return {{"space", "tree"},
          {"edges", edges},
          {"ideal_leaves", leaves},
          {"basepoint", {t.edge_label(b.edge), b.offset}}};
}

Point point_from_json(const Space& space, const Json& j, const std::string& field) {
  Point p;
  if (space.kind() == SpaceKind::tree) {
    const std::string label = text(require(j, "edge", field), field + ".edge");
    const double offset = number(require(j, "offset", field), field + ".offset");
    p.pos = tree_pos(space.tree_graph(), label, offset, field + ".edge");
  } else {
    p.coords = j.is_array() ? numbers(j, field) : numbers(require(j, "coords", field), field + ".coords");
  }
  with_field(field, [&] {
    space.validate(p);
    return 0;
  });
  return space.canonical(std::move(p));
}

Json point_to_json(const Space& space, const Point& p) {
  if (space.kind() == SpaceKind::tree)
    return {{"edge", space.tree_graph().edge_label(p.pos.edge)}, {"offset", p.pos.offset}};
  return {{"coords", p.coords}};
}

Configuration configuration_from_json(const Space& space, const Json& j) {
  const Json& pts = require(j, "points", "configuration");
  if (!pts.is_array() || pts.empty()) fail("points", "expected a nonempty array");
  Configuration X;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string f = "points[" + std::to_string(i) + "]";
    const double mass = pts[i].is_object() && pts[i].contains("mass") ? number(pts[i]["mass"], f + ".mass") : 1.0;
    if (!(mass > 0.0)) fail(f + ".mass", "must be positive");
    X.push_back({point_from_json(space, pts[i], f), mass});
  }
  return X;
}

Json configuration_to_json(const Space& space, const Configuration& X) {
  Json pts = Json::array();
  for (const auto& w : X) {
    Json p = point_to_json(space, w.point);
    p["mass"] = w.mass;
    pts.push_back(std::move(p));
  }
  return {{"points", pts}};
}

ConvexBody body_from_json(const Space& space, const Json& j) {
  const Json& gens = require(j, "generators", "body");
  if (!gens.is_array() || gens.empty()) fail("generators", "expected a nonempty array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < gens.size(); ++i)
    pts.push_back(point_from_json(space, gens[i], "generators[" + std::to_string(i) + "]"));
  return make_body(space, std::move(pts));
}

Json body_to_json(const Space& space, const ConvexBody& body) {
  Json gens = Json::array();
  for (const Point& p : body.generators) gens.push_back(point_to_json(space, p));
  return {{"generators", gens}};
}

IdealPoint ideal_from_json(const Space& space, const Json& j) {
  if (!j.is_object()) fail("ideal", "expected an object");
  IdealPoint xi;
  if (space.kind() == SpaceKind::tree) {
    const std::string name = text(require(j, "end_leaf", "ideal"), "ideal.end_leaf");
    const auto v = space.tree_graph().vertex_index(name);
    if (!v || !space.tree_graph().is_ideal_leaf(*v)) fail("ideal.end_leaf", "'" + name + "' is not a marked ideal leaf");
    xi.end_leaf = *v;
    return xi;
  }
  if (space.kind() == SpaceKind::hyperbolic && j.contains("null_vector")) {
    xi.direction = numbers(j["null_vector"], "ideal.null_vector");
  } else {
    const auto dir = numbers(require(j, "direction", "ideal"), "ideal.direction");
    xi = with_field("ideal.direction", [&] { return space.ideal_toward(dir); });
  }
  with_field("ideal", [&] {
    space.validate(xi, space.basepoint());
    return 0;
  });
  return xi;
}

Json ideal_to_json(const Space& space, const IdealPoint& xi) {
  switch (space.kind()) {
    case SpaceKind::euclidean:
      return {{"direction", xi.direction}};
    case SpaceKind::hyperbolic:
      return {{"null_vector", xi.direction}};
    case SpaceKind::tree:
      return {{"end_leaf", space.tree_graph().vertex_name(xi.end_leaf)}};
  }
  return {};
}

Json to_json(const Space& space, const BarycenterResult& r) {
  return {{"center", point_to_json(space, r.center)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"diameter_trace", r.diameter_trace}};
}

BarycenterResult barycenter_result_from_json(const Space& space, const Json& j) {
  BarycenterResult r;
  r.center = point_from_json(space, require(j, "center", "result"), "center");
  r.iterations = static_cast<int>(count(require(j, "iterations", "result"), "iterations"));
  const Json& conv = require(j, "converged", "result");
  if (!conv.is_boolean()) fail("converged", "expected a boolean");
  r.converged = conv.get<bool>();
  r.diameter_trace = numbers(require(j, "diameter_trace", "result"), "diameter_trace");
  return r;
}

Json to_json(const ShrinkClass& c) {
  return {{"verdict", c.verdict == ShrinkVerdict::shrinking ? "Shrinking" : "NonShrinking"},
          {"max_limit_separation", c.max_limit_separation},
          {"probe_horizon", c.probe_horizon}};
}

ShrinkClass shrink_class_from_json(const Json& j) {
  ShrinkClass c;
  const std::string v = text(require(j, "verdict", "classification"), "verdict");
  if (v == "Shrinking")
    c.verdict = ShrinkVerdict::shrinking;
  else if (v == "NonShrinking")
    c.verdict = ShrinkVerdict::non_shrinking;
  else
    fail("verdict", "expected Shrinking or NonShrinking");
  c.max_limit_separation = number(require(j, "max_limit_separation", "classification"), "max_limit_separation");
  c.probe_horizon = number(require(j, "probe_horizon", "classification"), "probe_horizon");
  return c;
}

Json to_json(const LipschitzReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records)
    records.push_back({{"sample", rec.sample}, {"in_disp", rec.in_disp}, {"out_disp", rec.out_disp}, {"ratio", rec.ratio}});
  Json out = {{"records", records},
              {"summary",
               {{"max_ratio", r.max_ratio},
                {"mean_ratio", r.mean_ratio},
                {"failures", r.failures},
                {"skipped", r.skipped}}}};
  if (r.straddle)
    out["straddle"] = {{"epsilons", r.straddle->epsilons},
                       {"ratios", r.straddle->ratios},
                       {"diverging", r.straddle->diverging}};
  return out;
}

LipschitzReport report_from_json(const Json& j) {
  LipschitzReport r;
  const Json& records = require(j, "records", "report");
  if (!records.is_array()) fail("records", "expected an array");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string f = "records[" + std::to_string(i) + "]";
    const Json& rec = records[i];
    r.records.push_back({count(require(rec, "sample", f), f + ".sample"),
                         number(require(rec, "in_disp", f), f + ".in_disp"),
                         number(require(rec, "out_disp", f), f + ".out_disp"),
                         number(require(rec, "ratio", f), f + ".ratio")});
  }
  const Json& s = require(j, "summary", "report");
  r.max_ratio = number(require(s, "max_ratio", "summary"), "summary.max_ratio");
  r.mean_ratio = number(require(s, "mean_ratio", "summary"), "summary.mean_ratio");
  r.failures = count(require(s, "failures", "summary"), "summary.failures");
  r.skipped = count(require(s, "skipped", "summary"), "summary.skipped");
  if (auto it = j.find("straddle"); it != j.end()) {
    StraddleReport st;
    st.epsilons = numbers(require(*it, "epsilons", "straddle"), "straddle.epsilons");
    st.ratios = numbers(require(*it, "ratios", "straddle"), "straddle.ratios");
    const Json& d = require(*it, "diverging", "straddle");
    if (!d.is_boolean()) fail("straddle.diverging", "expected a boolean");
    st.diverging = d.get<bool>();
    r.straddle = std::move(st);
  }
  return r;
}

std::string trace_csv(const BarycenterResult& r) {
  std::string out = "iter,diameter\n";
  for (std::size_t i = 0; i < r.diameter_trace.size(); ++i)
    out += std::to_string(i) + "," + format_number(r.diameter_trace[i]) + "\n";
  return out;
}

std::string report_csv(const LipschitzReport& r) {
  std::string out = "sample,in_disp,out_disp,ratio\n";
  for (const auto& rec : r.records)
    out += std::to_string(rec.sample) + "," + format_number(rec.in_disp) + "," + format_number(rec.out_disp) +
           "," + format_number(rec.ratio) + "\n";
  return out;
}

}  // namespace hadamard::io
