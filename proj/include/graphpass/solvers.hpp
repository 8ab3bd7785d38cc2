#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "graphpass/graph.hpp"
#include "graphpass/model.hpp"

namespace graphpass {

struct SolverConfig {
  /// Sup-norm residual bound for every returned solution.
  double tol = 1e-10;
  /// Nodes of the discretised mountain-pass path, endpoints included.
  int path_nodes = 21;
  /// Iteration cap for path deformation and projected descent.
  int max_iter = 10000;
  int newton_max_iter = 100;
  /// Residual sup-norm at which descent phases hand over to Newton.
  double gtol = 1e-8;
  double armijo = 1e-4;
  /// Minimum sup-norm distance between the two perturbed solutions.
  double distinct_tol = 1e-3;
  /// Deformation stops after this many iterations without the path maximum
  /// decreasing (the discretisation floor has been reached).
  int stall_window = 200;
  std::uint64_t seed = 42;
};

enum class Classification { mountain_pass, local_min, linear, refined, trivial };
std::string_view to_string(Classification c) noexcept;

struct SolveOutcome {
  Eigen::VectorXd solution;
  double energy = 0.0;
  double residual_inf = 0.0;
  int iterations = 0;
  Classification classification = Classification::refined;
  double min_value = 0.0;
  /// Mountain pass: path maximum after every accepted deformation step.
  std::vector<double> max_energy_history;
  /// Linear solve: int g v dmu and ||v||_H^2 (equal for an exact solve).
  double pairing = std::numeric_limits<double>::quiet_NaN();
  double h_norm_sq = std::numeric_limits<double>::quiet_NaN();
};

/// Solves -Lap v + h v = g to sup-norm residual `tol` (conjugate gradients
/// on the H-form). Throws NonpositivePotential, NoConvergence.
SolveOutcome solve_linear(const WeightedGraph& g, const Eigen::VectorXd& h,
                          const Eigen::VectorXd& source, double tol = 1e-10);

/// Damped Newton iteration on the pointwise residual. The full step is
/// halved until the residual sup-norm decreases.
/// Throws NoConvergence, SingularJacobian.
SolveOutcome newton_refine(const WeightedGraph& g, const Problem& problem,
                           const Eigen::VectorXd& u0, double tol = 1e-10, int max_iter = 100);

/// Far endpoint of the mountain-pass path: t d with d the indicator of
/// `anchor` and t the first point found with J(t d) < -1.
/// Throws NoDivergenceDirection.
Eigen::VectorXd far_endpoint(const WeightedGraph& g, const Problem& problem, Index anchor);

/// Vertex used for the far endpoint: the truncation base when the graph
/// declares one, otherwise the first vertex minimising h.
Index mountain_pass_anchor(const WeightedGraph& g, const Problem& problem);

/// Path-deformation min-max search followed by Newton refinement.
/// Throws NoDivergenceDirection, NoConvergence, NonpositiveSolution.
SolveOutcome mountain_pass_solve(const WeightedGraph& g, const Problem& problem,
                                 const SolverConfig& config = {});

/// Minimises J_eps over the H-ball of the given radius by projected
/// gradient descent started along the solution of -Lap v + h v = g.
/// Throws PerturbationRequired, NonpositiveRadius, NonnegativeMinimum,
/// BoundaryContact, NonpositiveSolution.
SolveOutcome ball_minimize(const WeightedGraph& g, const Problem& problem, double radius,
                           const SolverConfig& config = {});

struct PerturbedPair {
  SolveOutcome local_min;      // u0, negative energy
  SolveOutcome mountain_pass;  // uM, positive energy
};

/// Both solutions of the perturbed equation: ball minimiser at radius
/// 2 sqrt(eps) and the mountain-pass solution.
/// Throws PerturbationRequired, NotDistinct and the component errors.
PerturbedPair solve_perturbed_pair(const WeightedGraph& g, const Problem& problem,
                                   const SolverConfig& config = {});

}  // namespace graphpass
