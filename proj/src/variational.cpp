#include "graphpass/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphpass/operators.hpp"
#include "graphpass/random.hpp"

namespace graphpass {

EnergyBreakdown energy(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& u) {
  detail::check_aligned(g, u, "u");
  EnergyBreakdown e;
  e.dirichlet = 0.5 * integrate(g, gamma(g, u, u));
  e.potential = 0.5 * integrate(g, problem.h().cwiseProduct(u.cwiseAbs2()));
  e.nonlinear = integrate(g, problem.apply_primitive(u));
  if (problem.perturbation()) e.source = integrate(g, problem.source().cwiseProduct(u));
  e.total = e.dirichlet + e.potential - e.nonlinear - e.source;
  return e;
}

Eigen::VectorXd residual(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& u) {
  detail::check_aligned(g, u, "u");
  Eigen::VectorXd r = -laplacian(g, u) + problem.h().cwiseProduct(u) - problem.apply_f(u);
  if (problem.perturbation()) r -= problem.source();
  return r;
}

Eigen::VectorXd energy_gradient(const WeightedGraph& g, const Problem& problem,
                                const Eigen::VectorXd& u) {
  return g.measure().cwiseProduct(residual(g, problem, u));
}

Eigen::VectorXd indicator(const WeightedGraph& g, Index x) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(g.size());
  e(x) = 1.0;
  return e;
}

RayProbe ray_scan(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& direction,
                  double t_max, int n_points) {
  detail::check_aligned(g, direction, "direction");
  if (n_points < 2 || !(t_max > 0.0) || !std::isfinite(t_max))
    throw Error(Errc::InvalidGrid, "ray scan needs n_points >= 2 and t_max > 0");
  if (direction.minCoeff() < 0.0) throw Error(Errc::InvalidDirection, "direction must be nonnegative");
  if (direction.maxCoeff() == 0.0) throw Error(Errc::ZeroDirection, "direction is identically zero");

  RayProbe probe;
  probe.t.reserve(static_cast<std::size_t>(n_points));
  probe.energy.reserve(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double t = t_max * k / (n_points - 1);
    probe.t.push_back(t);
    probe.energy.push_back(energy(g, problem, t * direction).total);
  }

  const std::size_t n = probe.energy.size();
  const std::size_t tail = std::max<std::size_t>(2, n / 4);
  bool decreasing = true;
  for (std::size_t k = n - tail + 1; k < n; ++k)
    decreasing = decreasing && probe.energy[k] < probe.energy[k - 1];
  probe.diverges = decreasing && probe.energy.back() < probe.energy.front() - 1.0;
  return probe;
}

RimProbe rim_probe(const WeightedGraph& g, const Problem& problem, double lambda1, double radius,
                   int n_samples, std::uint64_t seed) {
  if (!(radius > 0.0)) throw Error(Errc::NonpositiveRadius, "rim probe needs radius > 0");
  if (n_samples < 1) throw Error(Errc::InvalidSampleCount, "rim probe needs at least one sample");

  RimProbe probe;
  probe.radius = radius;
  probe.lambda1 = lambda1;
  probe.tau = 0.5 * lambda1;
  probe.rho = std::numeric_limits<double>::quiet_NaN();
  if (const auto* pw = dynamic_cast<const PowerNonlinearity*>(&problem.nonlinearity())) {
    const double p = pw->exponent();
    probe.rho = std::pow(lambda1 * p / (4.0 * pw->max_coefficient()), 1.0 / (p - 2.0));
  }
  if (const auto& pert = problem.perturbation()) {
    probe.r_eps = std::sqrt(pert->eps());
    probe.delta = probe.tau * pert->eps() / (16.0 * lambda1);
  } else {
    probe.r_eps = std::numeric_limits<double>::quiet_NaN();
    probe.delta = probe.tau * radius * radius / (4.0 * lambda1);
  }

  auto on_sphere = [&](const Eigen::VectorXd& d) {
    return Eigen::VectorXd(radius / norm_h(g, problem.h(), d) * d);
  };

  if (g.size() == 1) {
    probe.exhaustive = true;
    for (double sign : {1.0, -1.0})
      probe.energy.push_back(energy(g, problem, on_sphere(Eigen::VectorXd::Constant(1, sign))).total);
  } else {
    Rng rng(seed);
    Eigen::VectorXd d(g.size());
    probe.energy.reserve(static_cast<std::size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) {
      do {
        for (Index x = 0; x < d.size(); ++x) d(x) = rng.normal();
      } while (d.squaredNorm() == 0.0);
      probe.energy.push_back(energy(g, problem, on_sphere(d)).total);
    }
  }
  probe.min_energy = *std::min_element(probe.energy.begin(), probe.energy.end());
  return probe;
}

}  // namespace graphpass
