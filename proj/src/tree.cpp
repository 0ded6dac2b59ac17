#include "hadamard/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Busemann levels closer than this (relative) are treated as the same horosphere.
constexpr double kLevelTie = 1e-12;

// Endpoints through which a path may leave an edge; the leaf of an ideal edge
// sits at infinity and is never a way out.
std::vector<std::size_t> exits(const MetricTree::Edge& e) {
  if (e.ideal) return {e.from};
  return {e.from, e.to};
}

}  // namespace

MetricTree::MetricTree(const std::vector<TreeEdgeSpec>& edges,
                       const std::vector<std::string>& ideal_leaves) {
  if (edges.empty()) throw InvalidInput("tree: at least one edge is required");
  std::map<std::string, std::size_t, std::less<>> index;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = index.try_emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& spec = edges[i];
    if (!(spec.length > 0.0) || !std::isfinite(spec.length))
      throw InvalidInput("tree: edges[" + std::to_string(i) + "] length must be positive and finite");
    const std::size_t a = intern(spec.from);
    const std::size_t b = intern(spec.to);
    if (a == b) throw InvalidInput("tree: edges[" + std::to_string(i) + "] is a loop");
    edges_.push_back({a, b, spec.length, false});
  }
  const std::size_t nv = names_.size();
  if (edges_.size() != nv - 1) throw InvalidInput("tree: topology contains a cycle");

  incident_.assign(nv, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    incident_[edges_[e].from].push_back(e);
    incident_[edges_[e].to].push_back(e);
  }

  for (const auto& name : ideal_leaves) {
    auto it = index.find(name);
    if (it == index.end()) throw InvalidInput("tree: ideal leaf '" + name + "' is not a vertex");
    const std::size_t v = it->second;
    if (incident_[v].size() != 1)
      throw InvalidInput("tree: ideal leaf '" + name + "' does not have degree 1");
    Edge& e = edges_[incident_[v].front()];
    if (e.ideal) throw InvalidInput("tree: edge carries two ideal ends");
    if (e.from == v) std::swap(e.from, e.to);
    e.ideal = true;
    ideal_leaves_.push_back(v);
  }

  // All-pairs distances and first hops by BFS from each vertex.
  dist_.assign(nv * nv, std::numeric_limits<double>::infinity());
  first_edge_.assign(nv * nv, kNone);
  for (std::size_t src = 0; src < nv; ++src) {
    dist_[src * nv + src] = 0.0;
    std::queue<std::size_t> queue;
    queue.push(src);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop();
      for (std::size_t e : incident_[v]) {
        const std::size_t w = other_end(e, v);
        if (std::isfinite(dist_[src * nv + w])) continue;
        dist_[src * nv + w] = dist_[src * nv + v] + edges_[e].length;
        first_edge_[src * nv + w] = v == src ? e : first_edge_[src * nv + v];
        queue.push(w);
      }
    }
  }
  if (std::any_of(dist_.begin(), dist_.end(), [](double d) { return !std::isfinite(d); }))
    throw InvalidInput("tree: topology is not connected");
}

std::optional<std::size_t> MetricTree::vertex_index(std::string_view name) const {
  for (std::size_t v = 0; v < names_.size(); ++v)
    if (names_[v] == name) return v;
  return std::nullopt;
}

std::string MetricTree::edge_label(std::size_t e) const {
  return names_[edges_[e].from] + "-" + names_[edges_[e].to];
}

std::optional<std::pair<std::size_t, bool>> MetricTree::find_edge(std::string_view label) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& a = names_[edges_[e].from];
    const auto& b = names_[edges_[e].to];
    if (label == a + "-" + b) return std::pair{e, false};
    if (label == b + "-" + a) return std::pair{e, true};
  }
  return std::nullopt;
}

bool MetricTree::is_ideal_leaf(std::size_t v) const {
  return std::find(ideal_leaves_.begin(), ideal_leaves_.end(), v) != ideal_leaves_.end();
}

std::size_t MetricTree::leaf_edge(std::size_t leaf) const {
  if (leaf >= names_.size() || !is_ideal_leaf(leaf))
    throw InvalidInput("tree: vertex is not a marked ideal leaf");
  return incident_[leaf].front();
}

std::vector<std::size_t> MetricTree::branch_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < names_.size(); ++v)
    if (incident_[v].size() >= 3) out.push_back(v);
  return out;
}

double MetricTree::min_edge_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) m = std::min(m, e.length);
  return m;
}

bool MetricTree::valid(const TreePos& p) const {
  if (p.edge >= edges_.size() || !std::isfinite(p.offset) || p.offset < 0.0) return false;
  return edges_[p.edge].ideal || p.offset <= edges_[p.edge].length;
}

TreePos MetricTree::vertex_pos(std::size_t v) const {
  const std::size_t e = *std::min_element(incident_[v].begin(), incident_[v].end());
  return {e, edges_[e].from == v ? 0.0 : edges_[e].length};
}

TreePos MetricTree::canonical(TreePos p) const {
  const Edge& e = edges_[p.edge];
  if (p.offset <= 0.0) return vertex_pos(e.from);
  if (!e.ideal && p.offset >= e.length) return vertex_pos(e.to);
  return p;
}

std::optional<std::size_t> MetricTree::vertex_at(const TreePos& p) const {
  const Edge& e = edges_[p.edge];
  if (p.offset == 0.0) return e.from;
  if (p.offset == e.length && !e.ideal) return e.to;
  return std::nullopt;
}

std::size_t MetricTree::other_end(std::size_t e, std::size_t v) const {
  return edges_[e].from == v ? edges_[e].to : edges_[e].from;
}

double MetricTree::to_endpoint(const TreePos& p, std::size_t v) const {
  const Edge& e = edges_[p.edge];
  return v == e.from ? p.offset : std::abs(e.length - p.offset);
}

double MetricTree::distance_to_vertex(const TreePos& p, std::size_t v) const {
  const Edge& e = edges_[p.edge];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : exits(e)) best = std::min(best, to_endpoint(p, a) + vertex_distance(a, v));
  return best;
}

double MetricTree::distance(const TreePos& p, const TreePos& q) const {
  if (p.edge == q.edge) return std::abs(p.offset - q.offset);
  const Edge& ep = edges_[p.edge];
  const Edge& eq = edges_[q.edge];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : exits(ep))
    for (std::size_t b : exits(eq))
      best = std::min(best, to_endpoint(p, a) + vertex_distance(a, b) + to_endpoint(q, b));
  return best;
}

TreePos MetricTree::leave_vertex(std::size_t v, std::size_t e, double s) const {
  return canonical({e, edges_[e].from == v ? s : edges_[e].length - s});
}

TreePos MetricTree::walk(const TreePos& p, const TreePos& q, double s) const {
  if (s <= 0.0) return canonical(p);
  if (p.edge == q.edge) {
    const double span = q.offset - p.offset;
    if (s >= std::abs(span)) return canonical(q);
    return canonical({p.edge, p.offset + std::copysign(s, span)});
  }
  const Edge& ep = edges_[p.edge];
  const Edge& eq = edges_[q.edge];
  std::size_t exit = ep.from, entry = eq.from;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : exits(ep))
    for (std::size_t b : exits(eq)) {
      const double d = to_endpoint(p, a) + vertex_distance(a, b) + to_endpoint(q, b);
      if (d < best) {
        best = d;
        exit = a;
        entry = b;
      }
    }
  if (s >= best) return canonical(q);

  const double first_leg = to_endpoint(p, exit);
  if (s <= first_leg)
    return canonical({p.edge, exit == ep.from ? p.offset - s : p.offset + s});
  s -= first_leg;

  const std::size_t nv = names_.size();
  std::size_t v = exit;
  while (v != entry) {
    const std::size_t e = first_edge_[v * nv + entry];
    if (s <= edges_[e].length) return leave_vertex(v, e, s);
    s -= edges_[e].length;
    v = other_end(e, v);
  }
  const double off = entry == eq.from ? std::min(s, q.offset) : std::max(eq.length - s, q.offset);
  return canonical({q.edge, off});
}

double MetricTree::height(std::size_t leaf, const TreePos& p) const {
  const std::size_t le = leaf_edge(leaf);
  if (p.edge == le) return p.offset;
  return -distance_to_vertex(p, edges_[le].from);
}

TreePos MetricTree::ray(std::size_t leaf, const TreePos& p, double s) const {
  const std::size_t le = leaf_edge(leaf);
  if (p.edge == le) return canonical({le, p.offset + s});
  const double to_anchor = -height(leaf, p);
  if (s < to_anchor) return walk(p, vertex_pos(edges_[le].from), s);
  return canonical({le, s - to_anchor});
}

double MetricTree::ray_separation(std::size_t leaf, const TreePos& x, const TreePos& y,
                                  double s) const {
  // Rays to the same end merge at a confluence point m on the segment [x, y];
  // before both pass m their gap shrinks at rate 2, afterwards it is the
  // (constant) height difference.
  const double hx = height(leaf, x);
  const double hy = height(leaf, y);
  double level_gap = std::abs(hx - hy);
  if (level_gap <= kLevelTie * (1.0 + std::abs(hx) + std::abs(hy))) level_gap = 0.0;
  return std::max(distance(x, y) - 2.0 * s, level_gap);
}

TreePos MetricTree::roam_from(std::size_t v, std::size_t came_by, double remaining,
                              std::mt19937_64& rng) const {
  for (;;) {
    std::vector<std::size_t> options;
    for (std::size_t e : incident_[v])
      if (e != came_by) options.push_back(e);
    if (options.empty() || remaining <= 0.0) return vertex_pos(v);
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const std::size_t e = options[pick(rng)];
    const bool unbounded = edges_[e].ideal && edges_[e].from == v;
    if (unbounded || remaining <= edges_[e].length) return leave_vertex(v, e, remaining);
    remaining -= edges_[e].length;
    came_by = e;
    v = other_end(e, v);
  }
}

TreePos MetricTree::random_step(const TreePos& p, double len, std::mt19937_64& rng) const {
  const TreePos c = canonical(p);
  if (auto v = vertex_at(c)) return roam_from(*v, kNone, len, rng);
  const Edge& e = edges_[c.edge];
  std::bernoulli_distribution forward(0.5);
  if (forward(rng)) {
    if (e.ideal || len < e.length - c.offset) return canonical({c.edge, c.offset + len});
    return roam_from(e.to, c.edge, len - (e.length - c.offset), rng);
  }
  if (len < c.offset) return canonical({c.edge, c.offset - len});
  return roam_from(e.from, c.edge, len - c.offset, rng);
}

TreePos MetricTree::random_pos(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, edges_.size() - 1);
  const std::size_t e = pick(rng);
  std::uniform_real_distribution<double> off(0.0, edges_[e].length);
  return canonical({e, off(rng)});
}

}  // namespace hadamard
