#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hadamard/point.hpp"

namespace hadamard {

struct TreeEdgeSpec {
  std::string from;
  std::string to;
  double length = 0.0;
};

/// A finite weighted tree whose marked leaves are pushed to infinity: the edge
/// incident to a marked leaf is extended to an unbounded ray, so the leaf
/// becomes an end of the tree. Edges are stored oriented so that an ideal edge
/// always runs from its anchor vertex towards the end.
class MetricTree {
 public:
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    double length = 0.0;
    bool ideal = false;
  };

  MetricTree(const std::vector<TreeEdgeSpec>& edges, const std::vector<std::string>& ideal_leaves);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  const std::string& vertex_name(std::size_t v) const { return names_[v]; }
  std::optional<std::size_t> vertex_index(std::string_view name) const;
  std::string edge_label(std::size_t e) const;

  /// Resolve an "A-B" label. `second` is true when the label runs against the
  /// stored orientation, in which case offsets must be mirrored.
  std::optional<std::pair<std::size_t, bool>> find_edge(std::string_view label) const;

  std::size_t degree(std::size_t v) const { return incident_[v].size(); }
  const std::vector<std::size_t>& ideal_leaves() const { return ideal_leaves_; }
  bool is_ideal_leaf(std::size_t v) const;
  std::size_t leaf_edge(std::size_t leaf) const;
  std::vector<std::size_t> branch_vertices() const;
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }
  double min_edge_length() const;

  bool valid(const TreePos& p) const;
  TreePos canonical(TreePos p) const;
  TreePos vertex_pos(std::size_t v) const;
  std::optional<std::size_t> vertex_at(const TreePos& p) const;

  double vertex_distance(std::size_t a, std::size_t b) const { return dist_[a * names_.size() + b]; }
  double distance(const TreePos& p, const TreePos& q) const;
  double distance_to_vertex(const TreePos& p, std::size_t v) const;

  /// Point at arclength s from p along the unique path to q (clamped to q).
  TreePos walk(const TreePos& p, const TreePos& q, double s) const;

  /// Signed position along the line through the end: the offset on the leaf
  /// edge, or minus the distance to the anchor vertex elsewhere.
  double height(std::size_t leaf, const TreePos& p) const;
  TreePos ray(std::size_t leaf, const TreePos& p, double s) const;
  double ray_separation(std::size_t leaf, const TreePos& x, const TreePos& y, double s) const;

  /// Move `len` from p in a uniformly chosen direction, never backtracking and
  /// stopping early only at a finite leaf.
  TreePos random_step(const TreePos& p, double len, std::mt19937_64& rng) const;
  TreePos random_pos(std::mt19937_64& rng) const;

 private:
  double to_endpoint(const TreePos& p, std::size_t v) const;
  std::size_t other_end(std::size_t e, std::size_t v) const;
  TreePos leave_vertex(std::size_t v, std::size_t e, double s) const;
  TreePos roam_from(std::size_t v, std::size_t came_by, double remaining, std::mt19937_64& rng) const;

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> ideal_leaves_;
  std::vector<double> dist_;
  std::vector<std::size_t> first_edge_;  // first edge on the path a -> b
};

}  // namespace hadamard
