#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "graphpass/graph.hpp"

namespace graphpass {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Matrix of u -> integral |grad u|^2 dmu, i.e. sum over edges of
/// w_xy (e_x - e_y)(e_x - e_y)^T. Row x of S u equals -mu(x) Lap u(x).
SparseMatrix stiffness_matrix(const WeightedGraph& g);

/// Matrix Q of the quadratic form ||u||_H^2: stiffness + diag(mu h).
SparseMatrix form_matrix(const WeightedGraph& g, const Eigen::VectorXd& h);

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for an SPD matrix. `x` holds
/// the initial guess and receives the solution. Stops once
/// ||b - A x|| <= rel_tol * ||b||.
CgResult conjugate_gradient(const SparseMatrix& a, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                            double rel_tol, int max_iter);

}  // namespace graphpass
