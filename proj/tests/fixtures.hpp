#pragma once

#include <memory>
#include <vector>

#include "hadamard/space.hpp"

namespace fixture {

// A-B-C-F with side branches B-D-E, B-H and C-G; E is an end of the tree.
inline std::shared_ptr<const hadamard::MetricTree> branching_tree() {
  return std::make_shared<const hadamard::MetricTree>(
      std::vector<hadamard::TreeEdgeSpec>{{"A", "B", 2.0},
                                          {"B", "C", 3.0},
                                          {"B", "D", 1.5},
                                          {"C", "F", 2.0},
                                          {"C", "G", 1.0},
                                          {"D", "E", 1.0},
                                          {"B", "H", 2.5}},
      std::vector<std::string>{"E"});
}

inline hadamard::Space tree() { return hadamard::Space::tree(branching_tree()); }

inline std::vector<hadamard::Space> all_spaces() {
  return {hadamard::Space::euclidean(3), hadamard::Space::hyperbolic(3), tree()};
}

inline hadamard::IdealPoint default_ideal(const hadamard::Space& s) {
  std::vector<double> e1(s.dim(), 0.0);
  e1[0] = 1.0;
  return s.ideal_toward(e1);
}

}  // namespace fixture
