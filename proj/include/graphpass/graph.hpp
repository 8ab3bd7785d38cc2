#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "graphpass/error.hpp"

namespace graphpass {

using Index = Eigen::Index;

/// Real value per vertex, aligned to the graph's vertex order.
using VertexFunction = Eigen::VectorXd;

struct Neighbor {
  Index index;
  double weight;
};

struct VertexSpec {
  std::string id;
  double mu = 1.0;
};

struct EdgeSpec {
  std::string a;
  std::string b;
  double w = 1.0;
};

/// Marks a finite graph as the ball truncation of an infinite family
/// (the lattice Z^d or the infinite b-ary tree) around `base`.
struct Truncation {
  std::string family;
  std::string base;
  int radius = 0;
};

/// Finite symmetric weighted graph with vertex measure mu.
///
/// Immutable after construction. Vertex ids are opaque strings mapped to
/// dense indices in insertion order; adjacency lists are sorted by
/// neighbour index and hold both directions of every edge.
class WeightedGraph {
 public:
  Index size() const noexcept { return static_cast<Index>(ids_.size()); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(Index i) const { return ids_[static_cast<std::size_t>(i)]; }

  std::optional<Index> find(std::string_view id) const;
  /// Throws Errc::UnknownVertex.
  Index index_of(std::string_view id) const;

  std::span<const Neighbor> neighbors(Index i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }

  const Eigen::VectorXd& measure() const noexcept { return measure_; }
  double mu(Index i) const { return measure_[i]; }
  double mu_min() const noexcept { return mu_min_; }

  /// Sum of edge weights at a vertex.
  double weighted_degree(Index i) const;

  const std::optional<Truncation>& truncation() const noexcept { return truncation_; }

  friend WeightedGraph build_graph(const std::vector<VertexSpec>& vertices,
                                   const std::vector<EdgeSpec>& edges,
                                   std::optional<Truncation> truncation);

 private:
  WeightedGraph() = default;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Index> lookup_;
  std::vector<std::vector<Neighbor>> adjacency_;
  Eigen::VectorXd measure_;
  double mu_min_ = 0.0;
  std::size_t edge_count_ = 0;
  std::optional<Truncation> truncation_;
};

/// Each undirected edge is listed once. Throws NonpositiveWeight,
/// NonpositiveMeasure, UnknownVertex, DuplicateEdge, SelfLoop.
WeightedGraph build_graph(const std::vector<VertexSpec>& vertices,
                          const std::vector<EdgeSpec>& edges,
                          std::optional<Truncation> truncation = std::nullopt);

enum class Family { path, cycle, lattice_ball, tree };

struct FamilySpec {
  Family family = Family::path;
  int n = 0;          // path, cycle
  int dim = 0;        // lattice_ball
  int radius = 0;     // lattice_ball
  int branching = 0;  // tree
  int depth = 0;      // tree
};

/// Constant value, or values drawn uniformly from [lo, hi] with a seeded
/// generator (edges/vertices visited in generation order).
struct Profile {
  double lo = 1.0;
  double hi = 1.0;
  std::uint64_t seed = 0;

  static Profile constant(double v) { return {v, v, 0}; }
  static Profile uniform(double lo, double hi, std::uint64_t seed) { return {lo, hi, seed}; }
  bool is_constant() const noexcept { return lo == hi; }
};

/// Deterministic finite member of a graph family. lattice_ball and tree are
/// recorded as truncations of their infinite families, based at the origin
/// and the root respectively. Throws InvalidFamilyParams.
///
/// Vertex ids: path/cycle "0".."n-1"; lattice "i,j,..." in lexicographic
/// coordinate order; tree "r", "r.0", "r.0.1", ... in breadth-first order.
WeightedGraph generate_graph(const FamilySpec& spec, const Profile& weight = Profile::constant(1.0),
                             const Profile& measure = Profile::constant(1.0));

/// Unweighted hop distance from `base`; -1 for unreachable vertices.
std::vector<int> hop_distances(const WeightedGraph& g, Index base);

}  // namespace graphpass
