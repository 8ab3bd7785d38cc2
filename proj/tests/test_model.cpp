#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "graphpass/model.hpp"
#include "oracles.hpp"

using namespace graphpass;
using oracle::error_code;

TEST_CASE("power nonlinearity values") {
  const PowerNonlinearity f(4.0, 1.0);
  CHECK(f.value(0, 2.0) == 8.0);
  CHECK(f.primitive(0, 2.0) == 4.0);
  CHECK(f.value(0, -1.0) == 0.0);
  CHECK(f.primitive(0, -1.0) == 0.0);
  CHECK(f.value(0, 0.0) == 0.0);
  CHECK(f.derivative(0, 0.0) == 0.0);
  CHECK(f.theta() * f.primitive(0, 1.7) == doctest::Approx(1.7 * f.value(0, 1.7)).epsilon(1e-15));

  const PowerNonlinearity g(3.0, Eigen::Vector3d(1, 2, 3));
  CHECK(g.value(2, 2.0) == 12.0);
  CHECK(g.max_coefficient() == 3.0);
  CHECK(error_code([&] { g.check_size(4); }) == Errc::DimensionMismatch);

  CHECK(error_code([] { PowerNonlinearity(2.0, 1.0); }) == Errc::InvalidExponent);
  CHECK(error_code([] { PowerNonlinearity(1.5, 1.0); }) == Errc::InvalidExponent);
  CHECK(error_code([] { PowerNonlinearity(4.0, 0.0); }) == Errc::InvalidCoefficient);
  CHECK(error_code([] { PowerNonlinearity(4.0, Eigen::Vector2d(1, -1)); }) == Errc::InvalidCoefficient);
}

TEST_CASE("theta F <= s f on a log grid") {
  for (double p : {2.5, 3.0, 4.0, 6.5}) {
    const PowerNonlinearity f(p, 1.3);
    for (int i = 0; i < 1000; ++i) {
      const double s = std::pow(10.0, -6.0 + 12.0 * i / 999.0);
      const double F = f.primitive(0, s);
      CHECK(F > 0.0);
      CHECK(f.theta() * F <= s * f.value(0, s) * (1 + 1e-14));
    }
  }
}

TEST_CASE("primitive matches quadrature of f") {
  for (double p : {2.5, 3.0, 4.0, 5.5}) {
    const PowerNonlinearity f(p, 0.7);
    for (double s : {0.01, 0.5, 1.0, 2.3, 7.0}) {
      const double q = oracle::adaptive_simpson([&](double t) { return f.value(0, t); }, 0.0, s, 1e-13);
      CHECK(std::abs(f.primitive(0, s) - q) <= 1e-9 * std::max(1.0, std::abs(q)));
    }
  }
}

TEST_CASE("small-s ratio margin") {
  const PowerNonlinearity f(4.0, 1.0);
  const double s = 1e-6;
  for (double l1 : {1e-3, 1.0, 10.0}) CHECK(2.0 * f.primitive(0, s) / (s * s) < 1e-6 * l1);
  CHECK(f.small_s_limit() == 0.0);
}

TEST_CASE("perturbation source validation") {
  CHECK(error_code([] { PerturbationSource(0.0, Eigen::Vector2d(1, 1)); }) == Errc::PerturbationRequired);
  CHECK(error_code([] { PerturbationSource(-0.1, Eigen::Vector2d(1, 1)); }) == Errc::InvalidPerturbation);
  CHECK(error_code([] { PerturbationSource(0.1, Eigen::Vector2d(1, -1)); }) == Errc::InvalidPerturbation);
  CHECK(error_code([] { PerturbationSource(0.1, Eigen::Vector2d::Zero()); }) == Errc::InvalidPerturbation);
  CHECK(PerturbationSource(0.1, Eigen::Vector2d(0, 1)).eps() == 0.1);
}

TEST_CASE("problem validation") {
  const WeightedGraph g = build_graph({{"a", 1}, {"b", 1}}, {{"a", "b", 1}});
  auto nl = std::make_shared<PowerNonlinearity>(4.0, 1.0);
  CHECK(error_code([&] { Problem(g, Eigen::Vector2d(1, 0), nl); }) == Errc::NonpositivePotential);
  CHECK(error_code([&] { Problem(g, Eigen::Vector3d(1, 1, 1), nl); }) == Errc::DimensionMismatch);
  CHECK(error_code([&] { Problem(g, Eigen::Vector2d(1, 1), nl, PerturbationSource(0.1, Eigen::Vector3d(1, 1, 1))); }) ==
        Errc::DimensionMismatch);
  const Problem p(g, Eigen::Vector2d(1, 1), nl, PerturbationSource(0.5, Eigen::Vector2d(1, 2)));
  CHECK(p.source() == Eigen::Vector2d(0.5, 1.0));
  CHECK(!p.without_perturbation().perturbation());
  CHECK(p.without_perturbation().source().isZero());
}

TEST_CASE("potential profile") {
  const WeightedGraph l = generate_graph({Family::lattice_ball, 0, 2, 2});
  const Eigen::VectorXd h = Potential::profile({1.0, 1.0, 2.0, "0,0"}).evaluate(l);
  CHECK(h(l.index_of("0,0")) == 1.0);
  CHECK(h(l.index_of("1,0")) == 2.0);
  CHECK(h(l.index_of("1,1")) == 5.0);
  CHECK(h(l.index_of("0,-2")) == 5.0);
  CHECK(error_code([&] { Potential::profile({1.0, 1.0, 2.0, "9,9"}).evaluate(l); }) == Errc::UnknownVertex);
}

TEST_CASE("hypothesis report on path 2") {
  const WeightedGraph g = build_graph({{"0", 1}, {"1", 1}}, {{"0", "1", 1}});
  const PowerNonlinearity f(4.0, 1.0);
  const auto r = check_hypotheses(g, Potential::table(Eigen::Vector2d(1, 1)), f, HypothesisMode::H2, 1.0);
  CHECK(r.h1.verdict == Verdict::holds);
  CHECK(r.h1.witness_value("h0") == 1.0);
  CHECK(r.h2.verdict == Verdict::holds);
  CHECK(r.h2.witness_value("integral_inv_h") == 2.0);
  CHECK(r.h2prime.verdict == Verdict::not_checked);
  CHECK(r.f1.verdict == Verdict::holds);
  CHECK(r.f1.witness_value("A_M") == doctest::Approx(1000.0));
  CHECK(r.f2.verdict == Verdict::holds);
  CHECK(r.f2.witness_value("theta") == 4.0);
  CHECK(r.f2.witness_value("max_ratio") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.f3.verdict == Verdict::holds);
  CHECK(r.f3.witness_value("limsup") == 0.0);
  CHECK(r.f1prime.verdict == Verdict::advisory);
  CHECK(r.f1prime.witness_value("L_exact") == doctest::Approx(300.0));

  CHECK(error_code([&] {
          check_hypotheses(g, Potential::table(Eigen::Vector2d(1, 1)), f, HypothesisMode::H2prime, 1.0);
        }) == Errc::MissingDistanceBase);

  const auto bad = check_hypotheses(g, Potential::table(Eigen::Vector2d(1, -1)), f, HypothesisMode::H2, 1.0);
  CHECK(bad.h1.verdict == Verdict::fails);
}

TEST_CASE("growing potential on a lattice ball") {
  const WeightedGraph l = generate_graph({Family::lattice_ball, 0, 2, 5});
  const PowerNonlinearity f(4.0, 1.0);
  const Potential h = Potential::profile({1.0, 1.0, 2.0, "0,0"});
  const auto r = check_hypotheses(l, h, f, HypothesisMode::H2prime, 1.0);
  CHECK(r.h2prime.verdict == Verdict::advisory);
  CHECK(r.h2prime.witness_value("increasing") == 1.0);
  REQUIRE(r.shells.size() == 6);
  for (std::size_t k = 0; k < r.shells.size(); ++k) {
    CHECK(r.shells[k].radius == static_cast<int>(k));
    CHECK(r.shells[k].min_h == 1.0 + static_cast<double>(k * k));
    CHECK(r.shells[k].count == (k == 0 ? 1u : 4 * k));
  }

  // shell mass of 1/h is about 4r / (1 + r^2): not summable on Z^2
  const auto r2 = check_hypotheses(l, h, f, HypothesisMode::H2, 1.0);
  CHECK(r2.h2.verdict == Verdict::advisory);
  CHECK(r2.h2.witness_value("tail_decay_exponent") < 1.0);
  CHECK(r2.h2.detail.find("non-summable") != std::string::npos);

  const auto r3 = check_hypotheses(l, Potential::profile({1.0, 1.0, 3.0, "0,0"}), f, HypothesisMode::H2, 1.0);
  CHECK(r3.h2.witness_value("tail_decay_exponent") > 1.0);
  CHECK(r3.h2.detail.find("(summable") != std::string::npos);
}
