#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "graphpass/graph.hpp"
#include "graphpass/model.hpp"

namespace graphpass {

/// J(u) = dirichlet + potential - nonlinear - source, where
/// dirichlet = 1/2 int |grad u|^2, potential = 1/2 int h u^2,
/// nonlinear = int F(x, u), source = eps int g u (zero when unperturbed).
struct EnergyBreakdown {
  double dirichlet = 0.0;
  double potential = 0.0;
  double nonlinear = 0.0;
  double source = 0.0;
  double total = 0.0;
};

EnergyBreakdown energy(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& u);

/// Euclidean gradient of the discrete energy:
/// x -> mu(x) (-Lap u + h u - f(x, u) - eps g)(x).
Eigen::VectorXd energy_gradient(const WeightedGraph& g, const Problem& problem,
                                const Eigen::VectorXd& u);

/// x -> (-Lap u + h u - f(x, u) - eps g)(x)
Eigen::VectorXd residual(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& u);

struct RayProbe {
  std::vector<double> t;
  std::vector<double> energy;
  bool diverges = false;
};

/// J(t d) on t_k = t_max k / (n_points - 1). `diverges` is set when the last
/// value is below J(0) - 1 and the final quarter of the grid (at least two
/// points) is strictly decreasing.
/// Throws ZeroDirection, InvalidDirection (negative entries), InvalidGrid.
RayProbe ray_scan(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& direction,
                  double t_max, int n_points);

/// Indicator function of one vertex.
Eigen::VectorXd indicator(const WeightedGraph& g, Index x);

struct RimProbe {
  double radius = 0.0;
  std::vector<double> energy;
  double min_energy = 0.0;
  /// True when the sphere is finite (single vertex) and was enumerated.
  bool exhaustive = false;
  double lambda1 = 0.0;
  /// Small-s constants for the power family: F <= (lambda1 - tau)/2 s^2 on
  /// [0, rho]; rho is NaN for other families.
  double tau = 0.0;
  double rho = 0.0;
  /// tau eps / (16 lambda1) when perturbed, tau radius^2 / (4 lambda1) otherwise.
  double delta = 0.0;
  /// sqrt(eps) when perturbed, NaN otherwise.
  double r_eps = 0.0;
};

/// Samples the sphere ||u||_H = radius with seeded Gaussian directions
/// rescaled in the H-norm, and records J (or J_eps) at each sample.
/// Throws NonpositiveRadius, InvalidSampleCount.
RimProbe rim_probe(const WeightedGraph& g, const Problem& problem, double lambda1, double radius,
                   int n_samples, std::uint64_t seed);

}  // namespace graphpass
