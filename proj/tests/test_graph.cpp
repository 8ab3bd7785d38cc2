#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "graphpass/graph.hpp"
#include "graphpass/operators.hpp"
#include "oracles.hpp"

using namespace graphpass;
using oracle::error_code;

namespace {

WeightedGraph path2(double w = 1.0, double mu0 = 1.0, double mu1 = 1.0) {
  return build_graph({{"0", mu0}, {"1", mu1}}, {{"0", "1", w}});
}

}  // namespace

TEST_CASE("build_graph") {
  const WeightedGraph g = path2();
  CHECK(g.size() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.mu_min() == 1.0);
  CHECK(g.index_of("1") == 1);
  CHECK(g.neighbors(0).size() == 1);
  CHECK(g.neighbors(1)[0].index == 0);

  CHECK(error_code([] { path2(0.0); }) == Errc::NonpositiveWeight);
  CHECK(error_code([] { path2(1.0, 0.0); }) == Errc::NonpositiveMeasure);
  CHECK(error_code([] { build_graph({{"a", 1}}, {{"a", "b", 1}}); }) == Errc::UnknownVertex);
  CHECK(error_code([] { build_graph({{"a", 1}}, {{"a", "a", 1}}); }) == Errc::SelfLoop);
  CHECK(error_code([] { build_graph({{"a", 1}, {"b", 1}}, {{"a", "b", 1}, {"b", "a", 2}}); }) ==
        Errc::DuplicateEdge);
  CHECK(error_code([] { build_graph({{"a", 1}, {"a", 2}}, {}); }) == Errc::InvalidInput);
}

TEST_CASE("generate_graph families") {
  FamilySpec path{Family::path, 3};
  const WeightedGraph p = generate_graph(path);
  CHECK(p.size() == 3);
  CHECK(p.edge_count() == 2);

  FamilySpec cycle{Family::cycle, 5};
  CHECK(generate_graph(cycle).edge_count() == 5);
  CHECK(error_code([] { generate_graph({Family::cycle, 2}); }) == Errc::InvalidFamilyParams);
  CHECK(error_code([] { generate_graph({Family::path, 0}); }) == Errc::InvalidFamilyParams);

  FamilySpec lattice{Family::lattice_ball, 0, 2, 2};
  const WeightedGraph l = generate_graph(lattice);
  CHECK(l.size() == 13);
  CHECK(l.edge_count() == 16);
  REQUIRE(l.truncation());
  CHECK(l.truncation()->base == "0,0");
  CHECK(l.weighted_degree(l.index_of("0,0")) == 4.0);

  FamilySpec tree0{Family::tree, 0, 0, 0, 2, 0};
  CHECK(generate_graph(tree0).size() == 1);
  FamilySpec tree3{Family::tree, 0, 0, 0, 2, 3};
  const WeightedGraph t = generate_graph(tree3);
  CHECK(t.size() == 15);
  CHECK(t.edge_count() == 14);
  CHECK(t.id(0) == "r");

  const auto d = hop_distances(l, l.index_of("0,0"));
  CHECK(d[static_cast<std::size_t>(l.index_of("1,1"))] == 2);
  CHECK(d[static_cast<std::size_t>(l.index_of("-2,0"))] == 2);
}

TEST_CASE("generate_graph is deterministic under random profiles") {
  FamilySpec spec{Family::lattice_ball, 0, 2, 3};
  const auto a = generate_graph(spec, Profile::uniform(0.5, 2, 7), Profile::uniform(0.5, 2, 8));
  const auto b = generate_graph(spec, Profile::uniform(0.5, 2, 7), Profile::uniform(0.5, 2, 8));
  CHECK(a.ids() == b.ids());
  CHECK(a.measure() == b.measure());
  for (Index x = 0; x < a.size(); ++x)
    for (std::size_t k = 0; k < a.neighbors(x).size(); ++k)
      CHECK(a.neighbors(x)[k].weight == b.neighbors(x)[k].weight);
}

TEST_CASE("laplacian") {
  Eigen::Vector2d u(0, 1);
  const auto d1 = laplacian(path2(), u);
  CHECK(d1(0) == 1.0);
  CHECK(d1(1) == -1.0);
  const auto d2 = laplacian(path2(2.0, 4.0, 1.0), u);
  CHECK(d2(0) == doctest::Approx(0.5));
  CHECK(d2(1) == doctest::Approx(-2.0));

  const WeightedGraph l = generate_graph({Family::lattice_ball, 0, 2, 2});
  CHECK(laplacian(l, Eigen::VectorXd::Constant(l.size(), 3.5)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(error_code([&] { laplacian(l, u); }) == Errc::DimensionMismatch);
}

TEST_CASE("gamma, grad_norm, integrate, norm_h") {
  const WeightedGraph g = path2();
  Eigen::Vector2d u(0, 1);
  const auto gu = gamma(g, u, u);
  CHECK(gu(0) == 0.5);
  CHECK(gu(1) == 0.5);
  CHECK(gamma(g, Eigen::Vector2d(2, 2), Eigen::Vector2d(2, 2)).isZero());
  const auto gn = grad_norm(g, u);
  CHECK(gn(0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(gn(1) == doctest::Approx(1 / std::sqrt(2.0)));

  const WeightedGraph p5 = generate_graph({Family::path, 5});
  CHECK(integrate(p5, Eigen::VectorXd::Ones(5)) == 5.0);
  CHECK(integrate(path2(1, 2, 3), Eigen::Vector2d(1, -1)) == -1.0);
  CHECK(integrate(p5, Eigen::VectorXd::Zero(5)) == 0.0);

  const WeightedGraph one = build_graph({{"a", 1}}, {});
  CHECK(norm_h(one, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)) == 1.0);
  CHECK(norm_h(g, Eigen::Vector2d(1, 1), u) == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm_h(g, Eigen::Vector2d(1, 1), Eigen::Vector2d::Zero()) == 0.0);
  CHECK(error_code([&] { norm_h(g, Eigen::Vector2d(1, 0), u); }) == Errc::NonpositivePotential);
}

TEST_CASE("calculus identities on random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 30);
    const auto raw = oracle::random_connected(rng, n, 0.0, 2.0, 0.5, 2.0);
    const WeightedGraph g = raw.build();
    const Eigen::VectorXd u = oracle::random_vector(rng, n), v = oracle::random_vector(rng, n);
    const Eigen::VectorXd w = oracle::random_vector(rng, n), h = oracle::random_vector(rng, n, 1, 3);
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);

    const Eigen::VectorXd lap = laplacian(g, u);
    const double scale = integrate(g, lap.cwiseAbs());
    CHECK(std::abs(integrate(g, lap)) <= 1e-12 * scale);

    const double lhs = integrate(g, gamma(g, u, v));
    const double rhs = -integrate(g, v.cwiseProduct(lap));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * integrate(g, v.cwiseProduct(lap).cwiseAbs()));

    CHECK((gamma(g, u, v) - gamma(g, v, u)).cwiseAbs().maxCoeff() <= 1e-15);
    const Eigen::VectorXd bil = gamma(g, a * u + b * w, v) - a * gamma(g, u, v) - b * gamma(g, w, v);
    CHECK(bil.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((grad_norm(g, u).cwiseAbs2() - gamma(g, u, u)).cwiseAbs().maxCoeff() <= 1e-14);

    const Eigen::MatrixXd wm = oracle::adjacency(g, raw);
    double form = oracle::dirichlet_integral(wm, u);
    for (Index x = 0; x < n; ++x) form += g.mu(x) * h(x) * u(x) * u(x);
    CHECK(norm_h_squared(g, h, u) == doctest::Approx(form).epsilon(1e-13));
  }
}

TEST_CASE("embedding inequalities") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next() % 20);
    const WeightedGraph g = oracle::random_connected(rng, n, 0.0, 2.0, 0.1, 5.0).build();
    const Eigen::VectorXd u = oracle::random_vector(rng, n, -10, 10);
    const double sup = u.cwiseAbs().maxCoeff();
    CHECK(sup <= integrate(g, u.cwiseAbs()) / g.mu_min() * (1 + 1e-14));
    CHECK(sup <= std::sqrt(integrate(g, u.cwiseAbs2()) / g.mu_min()) * (1 + 1e-14));
  }
}
