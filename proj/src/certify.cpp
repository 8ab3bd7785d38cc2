#include "graphpass/certify.hpp"

#include <algorithm>
#include <cmath>

#include "graphpass/operators.hpp"
#include "graphpass/spectral.hpp"

namespace graphpass {

double weak_form_defect(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& u,
                        Index y) {
  detail::check_aligned(g, u, "u");
  const double phi_y = 1.0 / g.mu(y);
  auto phi = [&](Index v) { return v == y ? phi_y : 0.0; };

  // Gamma(u, phi) vanishes outside y and its neighbours.
  auto gamma_u_phi = [&](Index x) {
    double acc = 0.0;
    for (const Neighbor& n : g.neighbors(x)) acc += n.weight * (u(n.index) - u(x)) * (phi(n.index) - phi(x));
    return acc / (2.0 * g.mu(x));
  };
  double dirichlet = g.mu(y) * gamma_u_phi(y);
  for (const Neighbor& n : g.neighbors(y)) dirichlet += g.mu(n.index) * gamma_u_phi(n.index);

  const double f = problem.nonlinearity().value(y, u(y));
  const double src = problem.perturbation() ? problem.perturbation()->eps() * problem.perturbation()->g()(y) : 0.0;
  const double local = g.mu(y) * (problem.h()(y) * u(y) - f - src) * phi_y;
  return dirichlet + local;
}

bool embedding_inequalities_hold(const WeightedGraph& g, const Eigen::VectorXd& u) {
  detail::check_aligned(g, u, "u");
  if (u.size() == 0) return true;
  const double sup = u.cwiseAbs().maxCoeff();
  const double l1 = integrate(g, u.cwiseAbs()) / g.mu_min();
  const double l2 = std::sqrt(integrate(g, u.cwiseAbs2()) / g.mu_min());
  const double slack = 1.0 + 1e-12;
  return sup <= l1 * slack && sup <= l2 * slack;
}

SolutionCertificate certify(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& u,
                            const CertifyOptions& options) {
  SolutionCertificate cert;
  const Eigen::VectorXd r = residual(g, problem, u);
  cert.residual_inf = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  cert.residual_l2 = std::sqrt(integrate(g, r.cwiseAbs2()));
  cert.min_value = u.size() ? u.minCoeff() : 0.0;
  cert.positive = cert.min_value > 0.0;
  cert.energy = energy(g, problem, u);
  for (Index y = 0; y < g.size(); ++y)
    cert.weak_form_max = std::max(cert.weak_form_max, std::abs(weak_form_defect(g, problem, u, y)));
  cert.lambda1 = lambda1(g, problem.h(), options.eig_tol, options.eig_max_iter).lambda1;
  const Potential potential = options.potential ? *options.potential : Potential::table(problem.h());
  cert.hypotheses = check_hypotheses(g, potential, problem.nonlinearity(), options.mode, cert.lambda1,
                                     options.hypothesis);
  cert.embedding_check = embedding_inequalities_hold(g, u);
  cert.provenance = options.provenance;
  return cert;
}

}  // namespace graphpass
