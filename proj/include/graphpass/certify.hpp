#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "graphpass/graph.hpp"
#include "graphpass/model.hpp"
#include "graphpass/variational.hpp"

namespace graphpass {

struct SolutionCertificate {
  double residual_inf = 0.0;
  /// (int residual^2 dmu)^{1/2}
  double residual_l2 = 0.0;
  double min_value = 0.0;
  bool positive = false;
  EnergyBreakdown energy;
  /// max over y of |weak-form defect| against the test function 1_y / mu(y).
  double weak_form_max = 0.0;
  HypothesisReport hypotheses;
  double lambda1 = 0.0;
  /// max|u| <= mu_min^-1 int |u| dmu and max|u| <= mu_min^-1/2 ||u||_2.
  bool embedding_check = false;
  std::vector<std::pair<std::string, std::string>> provenance;
};

struct CertifyOptions {
  /// Used for the hypothesis report; defaults to the problem's h as a table.
  std::optional<Potential> potential;
  HypothesisMode mode = HypothesisMode::H2;
  HypothesisOptions hypothesis;
  double eig_tol = 1e-10;
  int eig_max_iter = 10000;
  std::vector<std::pair<std::string, std::string>> provenance;
};

/// int (Gamma(u, phi) + h u phi - f(x, u) phi - eps g phi) dmu for
/// phi = 1_y / mu(y), summed explicitly over the support of Gamma(u, phi).
double weak_form_defect(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& u,
                        Index y);

/// True when both sup-norm embedding bounds hold for u.
bool embedding_inequalities_hold(const WeightedGraph& g, const Eigen::VectorXd& u);

SolutionCertificate certify(const WeightedGraph& g, const Problem& problem, const Eigen::VectorXd& u,
                            const CertifyOptions& options = {});

}  // namespace graphpass
