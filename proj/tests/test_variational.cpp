#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "graphpass/operators.hpp"
#include "graphpass/variational.hpp"
#include "oracles.hpp"

using namespace graphpass;
using oracle::error_code;

namespace {

WeightedGraph single(double mu = 1.0) { return build_graph({{"a", mu}}, {}); }

Problem power_problem(const WeightedGraph& g, double h, double p = 4.0, double eps = 0.0) {
  auto nl = std::make_shared<PowerNonlinearity>(p, 1.0);
  std::optional<PerturbationSource> pert;
  if (eps > 0.0) pert.emplace(eps, Eigen::VectorXd::Ones(g.size()));
  return Problem(g, Eigen::VectorXd::Constant(g.size(), h), nl, pert);
}

}  // namespace

TEST_CASE("energy examples") {
  const WeightedGraph g = single();
  const Problem p = power_problem(g, 1.0);
  CHECK(energy(g, p, Eigen::VectorXd::Zero(1)).total == 0.0);
  const EnergyBreakdown e = energy(g, p, Eigen::VectorXd::Ones(1));
  CHECK(e.total == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(e.potential == 0.5);
  CHECK(e.nonlinear == 0.25);
  CHECK(e.dirichlet == 0.0);
  const Problem pe = power_problem(g, 1.0, 4.0, 0.1);
  CHECK(energy(g, pe, Eigen::VectorXd::Ones(1)).total == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(energy(g, pe, Eigen::VectorXd::Zero(1)).total == 0.0);
  CHECK(error_code([&] { energy(g, p, Eigen::VectorXd::Ones(2)); }) == Errc::DimensionMismatch);
}

TEST_CASE("gradient and residual examples") {
  const WeightedGraph g = single();
  const Problem p = power_problem(g, 1.0);
  CHECK(energy_gradient(g, p, Eigen::VectorXd::Constant(1, 2.0))(0) == -6.0);
  CHECK(energy_gradient(g, p, Eigen::VectorXd::Zero(1))(0) == 0.0);
  CHECK(residual(g, p, Eigen::VectorXd::Ones(1))(0) == 0.0);
  CHECK(residual(g, p, Eigen::VectorXd::Zero(1))(0) == 0.0);
  const Problem pe = power_problem(g, 1.0, 4.0, 0.1);
  CHECK(std::abs(residual(g, pe, Eigen::VectorXd::Constant(1, 0.10103))(0)) <= 1e-4);
}

TEST_CASE("gradient against finite differences") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 12;
    const auto raw = oracle::random_connected(rng, n, 0.0, 2.0, 0.5, 2.0);
    const WeightedGraph g = raw.build();
    const Eigen::VectorXd h = oracle::random_vector(rng, n, 1.0, 3.0);
    const double p = trial % 2 ? 3.0 : 4.0;
    const Eigen::VectorXd src = oracle::random_vector(rng, n, 0.0, 1.0);
    const Problem prob(g, h, std::make_shared<PowerNonlinearity>(p, 1.0),
                       trial % 4 < 2 ? std::nullopt : std::optional(PerturbationSource(0.3, src)));
    const Eigen::VectorXd u = oracle::random_vector(rng, n, -1.0, 2.0);
    const Eigen::VectorXd grad = energy_gradient(g, prob, u);

    Eigen::VectorXd fd(n);
    for (Index x = 0; x < n; ++x) {
      fd(x) = oracle::central_difference(
          [&](double s) {
            Eigen::VectorXd v = u;
            v(x) += s;
            return energy(g, prob, v).total;
          },
          1e-6);
    }
    CHECK((fd - grad).cwiseAbs().maxCoeff() <= 1e-6 * grad.cwiseAbs().maxCoeff());
    CHECK((grad - g.measure().cwiseProduct(residual(g, prob, u))).cwiseAbs().maxCoeff() <= 1e-14 * grad.cwiseAbs().maxCoeff());

    const Eigen::MatrixXd w = oracle::adjacency(g, raw);
    const double ref = prob.perturbation() ? oracle::power_energy(w, g.measure(), h, p, 1.0, u, 0.3, &src)
                                           : oracle::power_energy(w, g.measure(), h, p, 1.0, u);
    CHECK(energy(g, prob, u).total == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("perturbation lowers the energy") {
  Rng rng(6);
  const int n = 9;
  const WeightedGraph g = oracle::random_connected(rng, n, 0.0, 2.0, 0.5, 2.0).build();
  const Problem p = power_problem(g, 1.5);
  const Problem pe = power_problem(g, 1.5, 4.0, 0.2);
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXd u = oracle::random_vector(rng, n, -0.2, 1.0);
    const double pairing = integrate(g, u);
    if (pairing < 0) continue;
    CHECK(energy(g, pe, u).total <= energy(g, p, u).total);
    CHECK(energy(g, p, u).total - energy(g, pe, u).total == doctest::Approx(0.2 * pairing).epsilon(1e-12));
  }
}

TEST_CASE("ray scan") {
  const WeightedGraph g = single();
  const Problem p = power_problem(g, 1.0);
  const RayProbe r = ray_scan(g, p, Eigen::VectorXd::Ones(1), 3.0, 61);
  CHECK(r.diverges);
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    const double t = r.t[k];
    const double exact = t * t / 2 - t * t * t * t / 4;
    CHECK(std::abs(r.energy[k] - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
    if (t > std::sqrt(2.0) + 1e-12) CHECK(r.energy[k] < 0.0);
  }
  CHECK(!ray_scan(g, p, Eigen::VectorXd::Ones(1), 1.0, 11).diverges);

  CHECK(error_code([&] { ray_scan(g, p, Eigen::VectorXd::Ones(1), 3.0, 1); }) == Errc::InvalidGrid);
  CHECK(error_code([&] { ray_scan(g, p, Eigen::VectorXd::Ones(1), 0.0, 10); }) == Errc::InvalidGrid);
  CHECK(error_code([&] { ray_scan(g, p, Eigen::VectorXd::Zero(1), 3.0, 10); }) == Errc::ZeroDirection);
  CHECK(error_code([&] { ray_scan(g, p, -Eigen::VectorXd::Ones(1), 3.0, 10); }) == Errc::InvalidDirection);
}

TEST_CASE("ray along an indicator on a lattice ball") {
  const WeightedGraph l = generate_graph({Family::lattice_ball, 0, 2, 2}, Profile::uniform(0.5, 2.0, 3),
                                         Profile::uniform(0.5, 2.0, 4));
  const Index x0 = l.index_of("0,0");
  const Eigen::VectorXd h = Eigen::VectorXd::LinSpaced(l.size(), 1.0, 2.0);
  const Problem p(l, h, std::make_shared<PowerNonlinearity>(4.0, 1.0));
  const RayProbe r = ray_scan(l, p, indicator(l, x0), 10.0, 201);
  CHECK(r.diverges);

  // |grad 1_x0|^2 summed over the closed neighbourhood of x0
  double dirichlet = 0.0;
  for (const Neighbor& nb : l.neighbors(x0)) dirichlet += nb.weight;
  const double quad = 0.5 * (dirichlet + l.mu(x0) * h(x0));
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    const double t = r.t[k];
    const double exact = quad * t * t - l.mu(x0) * std::pow(t, 4) / 4;
    CHECK(std::abs(r.energy[k] - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("rim probe") {
  const WeightedGraph g = single();
  const Problem p = power_problem(g, 1.0);
  const double rad = 0.7;
  const RimProbe r = rim_probe(g, p, 1.0, rad, 5, 1);
  CHECK(r.exhaustive);
  REQUIRE(r.energy.size() == 2);
  CHECK(r.energy[0] == doctest::Approx(rad * rad / 2 - std::pow(rad, 4) / 4));
  CHECK(r.energy[1] == doctest::Approx(rad * rad / 2));
  CHECK(r.min_energy > 0.0);
  CHECK(r.tau == 0.5);
  // F(s) <= (lambda1 - tau) s^2 / 2 up to s = rho, with equality at rho
  CHECK(std::pow(r.rho, 4) / 4 == doctest::Approx((1.0 - r.tau) * r.rho * r.rho / 2));

  const Problem pe = power_problem(g, 1.0, 4.0, 0.04);
  const RimProbe re = rim_probe(g, pe, 1.0, 0.2, 1, 1);
  CHECK(re.r_eps == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(re.delta == doctest::Approx(0.5 * 0.04 / 16.0).epsilon(1e-15));
  CHECK(re.min_energy >= re.delta);

  CHECK(error_code([&] { rim_probe(g, p, 1.0, 0.5, 0, 1); }) == Errc::InvalidSampleCount);
  CHECK(error_code([&] { rim_probe(g, p, 1.0, 0.0, 5, 1); }) == Errc::NonpositiveRadius);
}

TEST_CASE("rim samples lie on the sphere and are seeded") {
  const WeightedGraph g = generate_graph({Family::path, 4});
  const Problem p = power_problem(g, 1.0);
  const RimProbe a = rim_probe(g, p, 1.0, 0.3, 100, 77);
  const RimProbe b = rim_probe(g, p, 1.0, 0.3, 100, 77);
  const RimProbe c = rim_probe(g, p, 1.0, 0.3, 100, 78);
  CHECK(a.energy == b.energy);
  CHECK(a.energy != c.energy);
  CHECK(!a.exhaustive);
  // J >= |u|_H^2/2 - int F with F <= |u|_inf^2 |u|^2 / 4, so every sample is above r^2/2 (1 - r^2/2)
  for (double e : a.energy) CHECK(e >= 0.045 * (1 - 0.045));
}
