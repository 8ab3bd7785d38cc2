#include "graphpass/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <functional>

#include "graphpass/random.hpp"

namespace graphpass {

std::optional<Index> WeightedGraph::find(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Index WeightedGraph::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(Errc::UnknownVertex, "no vertex with id '" + std::string(id) + "'");
}

double WeightedGraph::weighted_degree(Index i) const {
  double d = 0.0;
  for (const Neighbor& n : neighbors(i)) d += n.weight;
  return d;
}

WeightedGraph build_graph(const std::vector<VertexSpec>& vertices,
                          const std::vector<EdgeSpec>& edges,
                          std::optional<Truncation> truncation) {
  WeightedGraph g;
  const auto n = vertices.size();
  g.ids_.reserve(n);
  g.measure_.resize(static_cast<Index>(n));
  g.adjacency_.resize(n);
  g.mu_min_ = n ? std::numeric_limits<double>::infinity() : 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    const VertexSpec& v = vertices[i];
    if (!(v.mu > 0.0) || !std::isfinite(v.mu))
      throw Error(Errc::NonpositiveMeasure, "vertex '" + v.id + "' has measure " + std::to_string(v.mu));
    if (!g.lookup_.emplace(v.id, static_cast<Index>(i)).second)
      throw Error(Errc::InvalidInput, "duplicate vertex id '" + v.id + "'");
    g.ids_.push_back(v.id);
    g.measure_[static_cast<Index>(i)] = v.mu;
    g.mu_min_ = std::min(g.mu_min_, v.mu);
  }

  for (const EdgeSpec& e : edges) {
    const Index a = g.index_of(e.a);
    const Index b = g.index_of(e.b);
    if (a == b) throw Error(Errc::SelfLoop, "self-loop at '" + e.a + "'");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw Error(Errc::NonpositiveWeight,
                  "edge '" + e.a + "'-'" + e.b + "' has weight " + std::to_string(e.w));
    g.adjacency_[static_cast<std::size_t>(a)].push_back({b, e.w});
    g.adjacency_[static_cast<std::size_t>(b)].push_back({a, e.w});
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& adj = g.adjacency_[i];
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& l, const Neighbor& r) { return l.index < r.index; });
    auto dup = std::adjacent_find(adj.begin(), adj.end(), [](const Neighbor& l, const Neighbor& r) {
      return l.index == r.index;
    });
    if (dup != adj.end())
      throw Error(Errc::DuplicateEdge,
                  "edge '" + g.ids_[i] + "'-'" + g.ids_[static_cast<std::size_t>(dup->index)] + "' listed twice");
  }
  g.edge_count_ = edges.size();

  if (truncation) g.index_of(truncation->base);
  g.truncation_ = std::move(truncation);
  return g;
}

namespace {

class ProfileSampler {
 public:
  explicit ProfileSampler(const Profile& p) : profile_(p), rng_(p.seed) {}
  double operator()() {
    return profile_.is_constant() ? profile_.lo : rng_.uniform(profile_.lo, profile_.hi);
  }

 private:
  Profile profile_;
  Rng rng_;
};

void check_profile(const Profile& p, const char* what) {
  if (!(p.lo > 0.0) || p.hi < p.lo || !std::isfinite(p.hi))
    throw Error(Errc::InvalidFamilyParams,
                std::string(what) + " profile must satisfy 0 < lo <= hi");
}

std::string lattice_id(const std::vector<int>& c) {
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(c[k]);
  }
  return s;
}

}  // namespace

WeightedGraph generate_graph(const FamilySpec& spec, const Profile& weight, const Profile& measure) {
  check_profile(weight, "weight");
  check_profile(measure, "measure");

  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> links;
  std::optional<Truncation> truncation;

  switch (spec.family) {
    case Family::path:
    case Family::cycle: {
      const bool cyc = spec.family == Family::cycle;
      if (spec.n < 1 || (cyc && spec.n < 3))
        throw Error(Errc::InvalidFamilyParams,
                    cyc ? "cycle needs n >= 3" : "path needs n >= 1");
      for (int i = 0; i < spec.n; ++i) names.push_back(std::to_string(i));
      for (int i = 0; i + 1 < spec.n; ++i) links.emplace_back(i, i + 1);
      if (cyc) links.emplace_back(0, spec.n - 1);
      break;
    }
    case Family::lattice_ball: {
      if (spec.dim < 1 || spec.radius < 0)
        throw Error(Errc::InvalidFamilyParams, "lattice_ball needs dim >= 1 and radius >= 0");
      std::vector<std::vector<int>> points;
      std::vector<int> c(static_cast<std::size_t>(spec.dim));
      std::function<void(std::size_t, int)> enumerate = [&](std::size_t k, int budget) {
        if (k == c.size()) {
          points.push_back(c);
          return;
        }
        for (int v = -budget; v <= budget; ++v) {
          c[k] = v;
          enumerate(k + 1, budget - std::abs(v));
        }
      };
      enumerate(0, spec.radius);
      std::unordered_map<std::string, std::size_t> where;
      for (std::size_t i = 0; i < points.size(); ++i) {
        names.push_back(lattice_id(points[i]));
        where.emplace(names.back(), i);
      }
      for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t k = 0; k < c.size(); ++k) {
          auto q = points[i];
          ++q[k];
          if (auto it = where.find(lattice_id(q)); it != where.end()) links.emplace_back(i, it->second);
        }
      }
      truncation = Truncation{"lattice_ball", lattice_id(std::vector<int>(c.size(), 0)), spec.radius};
      break;
    }
    case Family::tree: {
      if (spec.branching < 1 || spec.depth < 0)
        throw Error(Errc::InvalidFamilyParams, "tree needs branching >= 1 and depth >= 0");
      names.push_back("r");
      std::size_t level_begin = 0;
      for (int d = 0; d < spec.depth; ++d) {
        const std::size_t level_end = names.size();
        for (std::size_t p = level_begin; p < level_end; ++p) {
          for (int b = 0; b < spec.branching; ++b) {
            names.push_back(names[p] + "." + std::to_string(b));
            links.emplace_back(p, names.size() - 1);
          }
        }
        level_begin = level_end;
      }
      truncation = Truncation{"tree", "r", spec.depth};
      break;
    }
  }

  ProfileSampler mu_draw(measure);
  ProfileSampler w_draw(weight);
  std::vector<VertexSpec> vertices;
  vertices.reserve(names.size());
  for (const auto& name : names) vertices.push_back({name, mu_draw()});
  std::vector<EdgeSpec> edges;
  edges.reserve(links.size());
  for (auto [a, b] : links) edges.push_back({names[a], names[b], w_draw()});
  return build_graph(vertices, edges, std::move(truncation));
}

std::vector<int> hop_distances(const WeightedGraph& g, Index base) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::deque<Index> queue{base};
  dist[static_cast<std::size_t>(base)] = 0;
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop_front();
    for (const Neighbor& n : g.neighbors(x)) {
      auto& d = dist[static_cast<std::size_t>(n.index)];
      if (d < 0) {
        d = dist[static_cast<std::size_t>(x)] + 1;
        queue.push_back(n.index);
      }
    }
  }
  return dist;
}

}  // namespace graphpass
