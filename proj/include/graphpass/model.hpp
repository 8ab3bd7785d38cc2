#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "graphpass/graph.hpp"

namespace graphpass {

/// h(x) = h0 + c * dist(x, base)^alpha, dist the hop distance.
struct PotentialProfile {
  double h0 = 1.0;
  double c = 0.0;
  double alpha = 0.0;
  std::string base;
};

/// Potential h, either tabulated per vertex or given by a distance profile.
///
/// Values are not required to be positive here so that the hypothesis
/// checker can report a failing (H1); Problem enforces positivity.
class Potential {
 public:
  static Potential table(Eigen::VectorXd values);
  static Potential profile(PotentialProfile p);

  Eigen::VectorXd evaluate(const WeightedGraph& g) const;
  bool is_profile() const noexcept { return std::holds_alternative<PotentialProfile>(repr_); }
  const PotentialProfile* as_profile() const { return std::get_if<PotentialProfile>(&repr_); }
  const Eigen::VectorXd* as_table() const { return std::get_if<Eigen::VectorXd>(&repr_); }
  /// Base vertex of a profile, if any.
  std::optional<std::string> base() const;

 private:
  explicit Potential(std::variant<Eigen::VectorXd, PotentialProfile> r) : repr_(std::move(r)) {}
  std::variant<Eigen::VectorXd, PotentialProfile> repr_;
};

/// Nonlinearity f(x, s) with primitive F(x, s) = int_0^s f(x, t) dt.
///
/// Implementations must vanish identically for s <= 0.
class Nonlinearity {
 public:
  virtual ~Nonlinearity() = default;

  virtual std::string family() const = 0;
  virtual double value(Index x, double s) const = 0;
  virtual double primitive(Index x, double s) const = 0;
  /// ds f(x, s); one-sided (from the right) at s = 0.
  virtual double derivative(Index x, double s) const = 0;
  /// Ambrosetti-Rabinowitz constant: theta F <= s f for s > 0.
  virtual double theta() const = 0;
  /// limsup_{s -> 0+} 2 F(x, s) / s^2, maximised over x.
  virtual double small_s_limit() const = 0;
  /// Throws DimensionMismatch if per-vertex data does not fit n vertices.
  virtual void check_size(Index n) const = 0;
};

/// f(x, s) = a(x) s^(p-1) for s > 0, zero otherwise; theta = p.
class PowerNonlinearity final : public Nonlinearity {
 public:
  /// Throws InvalidExponent unless p > 2, InvalidCoefficient unless a > 0.
  PowerNonlinearity(double p, double a);
  PowerNonlinearity(double p, Eigen::VectorXd a);

  std::string family() const override { return "power"; }
  double value(Index x, double s) const override;
  double primitive(Index x, double s) const override;
  double derivative(Index x, double s) const override;
  double theta() const override { return p_; }
  double small_s_limit() const override { return 0.0; }
  void check_size(Index n) const override;

  double exponent() const noexcept { return p_; }
  double coefficient(Index x) const { return a_.size() == 1 ? a_(0) : a_(x); }
  bool uniform_coefficient() const noexcept { return a_.size() == 1; }
  const Eigen::VectorXd& coefficients() const noexcept { return a_; }
  double max_coefficient() const { return a_.maxCoeff(); }
  double min_coefficient() const { return a_.minCoeff(); }

 private:
  double p_;
  Eigen::VectorXd a_;
};

/// Source term eps * g with g >= 0, g not identically zero, eps > 0.
class PerturbationSource {
 public:
  /// Throws PerturbationRequired for eps == 0 and InvalidPerturbation for
  /// eps < 0, a negative entry of g, or g == 0.
  PerturbationSource(double eps, Eigen::VectorXd g);

  double eps() const noexcept { return eps_; }
  const Eigen::VectorXd& g() const noexcept { return g_; }

 private:
  double eps_;
  Eigen::VectorXd g_;
};

/// A problem bound to one graph: -Lap u + h u = f(x, u) [+ eps g].
class Problem {
 public:
  /// Throws DimensionMismatch, NonpositivePotential (h must satisfy (H1)).
  Problem(const WeightedGraph& g, Eigen::VectorXd h, std::shared_ptr<const Nonlinearity> nl,
          std::optional<PerturbationSource> perturbation = std::nullopt);

  const Eigen::VectorXd& h() const noexcept { return h_; }
  const Nonlinearity& nonlinearity() const noexcept { return *nl_; }
  std::shared_ptr<const Nonlinearity> nonlinearity_ptr() const noexcept { return nl_; }
  const std::optional<PerturbationSource>& perturbation() const noexcept { return perturbation_; }

  Problem without_perturbation() const;
  Problem with_perturbation(PerturbationSource p) const;

  /// x -> f(x, u(x))
  Eigen::VectorXd apply_f(const Eigen::VectorXd& u) const;
  /// x -> F(x, u(x))
  Eigen::VectorXd apply_primitive(const Eigen::VectorXd& u) const;
  /// x -> ds f(x, u(x))
  Eigen::VectorXd apply_derivative(const Eigen::VectorXd& u) const;
  /// eps g, or zero when unperturbed.
  Eigen::VectorXd source() const;

 private:
  Problem(Eigen::VectorXd h, std::shared_ptr<const Nonlinearity> nl,
          std::optional<PerturbationSource> p)
      : h_(std::move(h)), nl_(std::move(nl)), perturbation_(std::move(p)) {}

  Eigen::VectorXd h_;
  std::shared_ptr<const Nonlinearity> nl_;
  std::optional<PerturbationSource> perturbation_;
};

// ---------------------------------------------------------------------------
// Hypothesis checks

enum class Verdict { holds, fails, advisory, not_checked };
std::string_view to_string(Verdict v) noexcept;

enum class HypothesisMode { H2, H2prime };

struct HypothesisCheck {
  Verdict verdict = Verdict::not_checked;
  std::string detail;
  std::vector<std::pair<std::string, double>> witness;

  double witness_value(std::string_view key) const;
};

/// Potential statistics on one hop-distance shell around the base vertex.
struct ShellRow {
  int radius = 0;
  std::size_t count = 0;
  double inv_h_mass = 0.0;   // sum over the shell of mu / h
  double tail_mass = 0.0;    // same, summed over this and all outer shells
  double min_h = 0.0;
};

struct HypothesisReport {
  HypothesisCheck h1, h2, h2prime, f1, f1prime, f2, f3;
  std::vector<ShellRow> shells;
  /// (s, 2 F / s^2) samples approaching 0+.
  std::vector<std::pair<double, double>> f3_samples;
};

struct HypothesisOptions {
  double f1_bound = 10.0;        // M in the (F1) bound A_M
  double lipschitz_range = 10.0; // S_max for the (F1') estimate
  int grid_points = 1000;        // log grid for (F2)
};

/// Runs every checker. The hypothesis not selected by `mode` is reported
/// as not_checked. Throws MissingDistanceBase if H2prime is requested and
/// neither the potential nor the graph names a base vertex.
HypothesisReport check_hypotheses(const WeightedGraph& g, const Potential& h,
                                  const Nonlinearity& nl, HypothesisMode mode, double lambda1,
                                  const HypothesisOptions& options = {});

}  // namespace graphpass
