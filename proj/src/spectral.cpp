#include "graphpass/spectral.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "graphpass/linalg.hpp"
#include "graphpass/operators.hpp"

namespace graphpass {

namespace {

void normalize(const WeightedGraph& g, Eigen::VectorXd& u) {
  u /= std::sqrt(integrate(g, u.cwiseAbs2()));
}

}  // namespace

EigenResult lambda1(const WeightedGraph& g, const Eigen::VectorXd& h, double tol, int max_iter) {
  const SparseMatrix q = form_matrix(g, h);
  const Eigen::VectorXd& mu = g.measure();
  const Index n = g.size();

  EigenResult result;
  // The ground state does not change sign on a connected component, so the
  // constant vector overlaps it.
  Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
  normalize(g, u);
  Eigen::VectorXd qu = q * u;
  double lambda = u.dot(qu);

  const double inner_tol = std::max(1e-3 * tol, 1e-15);
  const int inner_max = static_cast<int>(std::max<Index>(50, 10 * n));

  for (result.iterations = 0; result.iterations < max_iter; ++result.iterations) {
    result.residual = (qu - lambda * mu.cwiseProduct(u)).norm() / qu.norm();
    if (result.residual <= tol) break;
    // Solve Q w = M u; w = u / lambda is already close.
    Eigen::VectorXd w = u / lambda;
    conjugate_gradient(q, mu.cwiseProduct(u), w, inner_tol, inner_max);
    u = w;
    normalize(g, u);
    qu = q * u;
    lambda = u.dot(qu);
  }
  if (result.residual > tol)
    throw Error(Errc::NoConvergence, "inverse iteration did not reach tol " + std::to_string(tol) +
                                         " in " + std::to_string(max_iter) + " iterations");

  Index arg = 0;
  u.cwiseAbs().maxCoeff(&arg);
  if (u(arg) < 0) u = -u;
  result.lambda1 = lambda;
  result.eigenfunction = std::move(u);
  return result;
}

double lambda1_dense_oracle(const WeightedGraph& g, const Eigen::VectorXd& h) {
  const Index n = g.size();
  if (n > kDenseOracleLimit)
    throw Error(Errc::GraphTooLarge, std::to_string(n) + " vertices exceed the dense oracle limit");
  require_positive_potential(g, h);

  // Assembled directly from the adjacency lists, independent of the sparse path.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Index x = 0; x < n; ++x) {
    a(x, x) += g.mu(x) * h(x);
    for (const Neighbor& nb : g.neighbors(x)) {
      a(x, x) += nb.weight;
      a(x, nb.index) -= nb.weight;
    }
  }
  const Eigen::VectorXd s = g.measure().cwiseSqrt().cwiseInverse();
  a = s.asDiagonal() * a * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace graphpass
