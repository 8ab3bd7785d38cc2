#include "graphpass/linalg.hpp"

#include <cmath>
#include <vector>

#include "graphpass/operators.hpp"

namespace graphpass {

SparseMatrix stiffness_matrix(const WeightedGraph& g) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(g.size()) + 2 * g.edge_count());
  for (Index x = 0; x < g.size(); ++x) {
    double diag = 0.0;
    for (const Neighbor& n : g.neighbors(x)) {
      entries.emplace_back(x, n.index, -n.weight);
      diag += n.weight;
    }
    entries.emplace_back(x, x, diag);
  }
  SparseMatrix s(g.size(), g.size());
  s.setFromTriplets(entries.begin(), entries.end());
  return s;
}

SparseMatrix form_matrix(const WeightedGraph& g, const Eigen::VectorXd& h) {
  require_positive_potential(g, h);
  SparseMatrix q = stiffness_matrix(g);
  for (Index x = 0; x < g.size(); ++x) q.coeffRef(x, x) += g.mu(x) * h(x);
  return q;
}

CgResult conjugate_gradient(const SparseMatrix& a, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                            double rel_tol, int max_iter) {
  CgResult result;
  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    x.setZero();
    result.converged = true;
    return result;
  }
  const Eigen::VectorXd inv_diag = a.diagonal().cwiseInverse();

  Eigen::VectorXd r = b - a * x;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  result.relative_residual = r.norm() / b_norm;

  while (result.relative_residual > rel_tol && result.iterations < max_iter) {
    ++result.iterations;
    const Eigen::VectorXd ap = a * p;
    const double alpha = rz / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    // recompute the true residual now and then to avoid drift
    if (result.iterations % 50 == 0) r = b - a * x;
    result.relative_residual = r.norm() / b_norm;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  result.relative_residual = (b - a * x).norm() / b_norm;
  result.converged = result.relative_residual <= rel_tol;
  return result;
}

}  // namespace graphpass
