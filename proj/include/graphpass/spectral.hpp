#pragma once

#include <Eigen/Core>

#include "graphpass/graph.hpp"

namespace graphpass {

struct EigenResult {
  double lambda1 = 0.0;
  /// Normalised to integral u^2 dmu = 1; largest-magnitude entry positive.
  Eigen::VectorXd eigenfunction;
  int iterations = 0;
  /// ||Q u - lambda1 M u|| / ||Q u||
  double residual = 0.0;
};

/// Smallest eigenvalue of Q u = lambda M u, where Q is the matrix of
/// ||u||_H^2 and M = diag(mu), by inverse iteration (shift 0) with
/// conjugate-gradient inner solves.
/// Throws NonpositivePotential, NoConvergence.
EigenResult lambda1(const WeightedGraph& g, const Eigen::VectorXd& h, double tol = 1e-10,
                    int max_iter = 10000);

inline constexpr Index kDenseOracleLimit = 2000;

/// Same eigenvalue from a full dense symmetric decomposition of
/// M^{-1/2} Q M^{-1/2}. Throws GraphTooLarge above kDenseOracleLimit vertices.
double lambda1_dense_oracle(const WeightedGraph& g, const Eigen::VectorXd& h);

}  // namespace graphpass
