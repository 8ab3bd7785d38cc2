#include "graphpass/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseLU>

#include "graphpass/linalg.hpp"
#include "graphpass/operators.hpp"
#include "graphpass/variational.hpp"

namespace graphpass {

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::mountain_pass: return "mountain_pass";
    case Classification::local_min: return "local_min";
    case Classification::linear: return "linear";
    case Classification::refined: return "refined";
    case Classification::trivial: return "trivial";
  }
  return "unknown";
}

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

double sup_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Riesz map of the H inner product: turns Euclidean gradients into
// H-gradients by solving Q d = grad.
class HMetric {
 public:
  HMetric(const WeightedGraph& g, const Eigen::VectorXd& h)
      : q_(form_matrix(g, h)), max_iter_(static_cast<int>(std::max<Index>(100, 20 * g.size()))) {}

  Eigen::VectorXd riesz(const Eigen::VectorXd& grad) const {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(grad.size());
    conjugate_gradient(q_, grad, d, 1e-14, max_iter_);
    return d;
  }

  double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return a.dot(q_ * b); }
  double norm(const Eigen::VectorXd& u) const { return std::sqrt(std::max(0.0, inner(u, u))); }

  const SparseMatrix& form() const { return q_; }

 private:
  SparseMatrix q_;
  int max_iter_;
};

SolveOutcome make_outcome(const WeightedGraph& g, const Problem& problem, Eigen::VectorXd u,
                          Classification c, int iterations) {
  SolveOutcome out;
  out.energy = energy(g, problem, u).total;
  out.residual_inf = sup_norm(residual(g, problem, u));
  out.min_value = u.size() ? u.minCoeff() : 0.0;
  out.iterations = iterations;
  out.classification = c;
  out.solution = std::move(u);
  return out;
}

// Re-places the interior nodes at equal L2(mu) arclength along the polygon.
std::vector<Eigen::VectorXd> respace(const WeightedGraph& g, const std::vector<Eigen::VectorXd>& path) {
  const std::size_t n = path.size();
  std::vector<double> arc(n, 0.0);
  for (std::size_t k = 1; k < n; ++k)
    arc[k] = arc[k - 1] + std::sqrt(integrate(g, (path[k] - path[k - 1]).cwiseAbs2()));
  std::vector<Eigen::VectorXd> out(path);
  if (!(arc.back() > 0.0)) return out;
  std::size_t seg = 1;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double target = arc.back() * static_cast<double>(j) / static_cast<double>(n - 1);
    while (seg + 1 < n && arc[seg] < target) ++seg;
    const double len = arc[seg] - arc[seg - 1];
    const double s = len > 0.0 ? (target - arc[seg - 1]) / len : 0.0;
    out[j] = (1.0 - s) * path[seg - 1] + s * path[seg];
  }
  return out;
}

std::size_t argmax_interior(const std::vector<double>& e) {
  return static_cast<std::size_t>(std::max_element(e.begin() + 1, e.end() - 1) - e.begin());
}

// Golden-section maximisation of J over the polygon piece path[k-1]..path[k+1].
template <typename Energy>
Eigen::VectorXd polish_on_path(const std::vector<Eigen::VectorXd>& path, std::size_t k, Energy&& j) {
  auto point = [&](double s) -> Eigen::VectorXd {
    return s < 0.0 ? Eigen::VectorXd(path[k] + s * (path[k] - path[k - 1]))
                   : Eigen::VectorXd(path[k] + s * (path[k + 1] - path[k]));
  };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = -1.0, b = 1.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double jc = j(point(c)), jd = j(point(d));
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (jc > jd) {
      b = d, d = c, jd = jc;
      c = b - phi * (b - a), jc = j(point(c));
    } else {
      a = c, c = d, jc = jd;
      d = a + phi * (b - a), jd = j(point(d));
    }
  }
  Eigen::VectorXd best = point(0.5 * (a + b));
  return j(best) >= j(path[k]) ? best : path[k];
}

}  // namespace

// ---------------------------------------------------------------------------

SolveOutcome solve_linear(const WeightedGraph& g, const Eigen::VectorXd& h,
                          const Eigen::VectorXd& source, double tol) {
  detail::check_aligned(g, source, "g");
  const SparseMatrix q = form_matrix(g, h);
  const Eigen::VectorXd rhs = g.measure().cwiseProduct(source);
  const int max_iter = static_cast<int>(std::max<Index>(100, 20 * g.size()));

  Eigen::VectorXd v = Eigen::VectorXd::Zero(g.size());
  double rel = 1e-12;
  double res_inf = 0.0;
  int iterations = 0;
  for (int round = 0; round < 6; ++round, rel *= 1e-1) {
    iterations += conjugate_gradient(q, rhs, v, rel, max_iter).iterations;
    res_inf = sup_norm(-laplacian(g, v) + h.cwiseProduct(v) - source);
    if (res_inf <= tol) break;
  }
  if (res_inf > tol)
    throw Error(Errc::NoConvergence, "linear solve stalled at residual " + sci(res_inf));

  SolveOutcome out;
  out.h_norm_sq = norm_h_squared(g, h, v);
  out.pairing = integrate(g, source.cwiseProduct(v));
  out.energy = 0.5 * out.h_norm_sq - out.pairing;
  out.residual_inf = res_inf;
  out.min_value = v.size() ? v.minCoeff() : 0.0;
  out.iterations = iterations;
  out.classification = Classification::linear;
  out.solution = std::move(v);
  return out;
}

SolveOutcome newton_refine(const WeightedGraph& g, const Problem& problem,
                           const Eigen::VectorXd& u0, double tol, int max_iter) {
  detail::check_aligned(g, u0, "u0");
  const SparseMatrix stiffness = stiffness_matrix(g);
  const Eigen::VectorXd& mu = g.measure();

  Eigen::VectorXd u = u0;
  Eigen::VectorXd r = residual(g, problem, u);
  double r_inf = sup_norm(r);
  int it = 0;
  for (; it < max_iter && r_inf > tol; ++it) {
    // Jacobian of mu * residual: S + diag(mu (h - ds f(x, u))).
    SparseMatrix jac = stiffness;
    const Eigen::VectorXd diag = mu.cwiseProduct(problem.h() - problem.apply_derivative(u));
    for (Index x = 0; x < g.size(); ++x) jac.coeffRef(x, x) += diag(x);
    jac.makeCompressed();

    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(jac);
    if (lu.info() != Eigen::Success)
      throw Error(Errc::SingularJacobian, "Jacobian factorisation failed at iteration " + std::to_string(it));
    const Eigen::VectorXd step = lu.solve(-mu.cwiseProduct(r));
    if (lu.info() != Eigen::Success || !step.allFinite())
      throw Error(Errc::SingularJacobian, "Jacobian solve failed at iteration " + std::to_string(it));

    bool accepted = false;
    for (double s = 1.0; s > 1e-12; s *= 0.5) {
      Eigen::VectorXd trial = u + s * step;
      Eigen::VectorXd r_trial = residual(g, problem, trial);
      const double trial_inf = sup_norm(r_trial);
      if (trial_inf < r_inf) {
        u = std::move(trial);
        r = std::move(r_trial);
        r_inf = trial_inf;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw Error(Errc::NoConvergence, "Newton line search stalled at residual " + sci(r_inf));
  }
  if (r_inf > tol)
    throw Error(Errc::NoConvergence, "Newton reached residual " + sci(r_inf) + " after " +
                                         std::to_string(it) + " iterations");
  const auto c = u.cwiseAbs().maxCoeff() == 0.0 ? Classification::trivial : Classification::refined;
  return make_outcome(g, problem, std::move(u), c, it);
}

Index mountain_pass_anchor(const WeightedGraph& g, const Problem& problem) {
  if (const auto& t = g.truncation()) return g.index_of(t->base);
  Index arg = 0;
  problem.h().minCoeff(&arg);
  return arg;
}

Eigen::VectorXd far_endpoint(const WeightedGraph& g, const Problem& problem, Index anchor) {
  const Eigen::VectorXd dir = indicator(g, anchor);
  auto j = [&](double t) { return energy(g, problem, t * dir).total; };

  double lo = 0.0;
  double hi = 1.0;
  while (!(j(hi) < -1.0)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12)
      throw Error(Errc::NoDivergenceDirection,
                  "J stays above -1 along the indicator ray of '" + g.id(anchor) + "'");
  }
  // shrink to the first crossing of -1 within 0.1% relative
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (j(mid) < -1.0 ? hi : lo) = mid;
  }
  return hi * dir;
}

SolveOutcome mountain_pass_solve(const WeightedGraph& g, const Problem& problem,
                                 const SolverConfig& config) {
  if (config.path_nodes < 3) throw Error(Errc::InvalidInput, "mountain pass needs at least 3 path nodes");
  const auto n = static_cast<std::size_t>(config.path_nodes);
  const HMetric metric(g, problem.h());
  const Eigen::VectorXd endpoint = far_endpoint(g, problem, mountain_pass_anchor(g, problem));
  auto j = [&](const Eigen::VectorXd& u) { return energy(g, problem, u).total; };

  std::vector<Eigen::VectorXd> path(n);
  std::vector<double> e(n);
  for (std::size_t k = 0; k < n; ++k) {
    path[k] = (static_cast<double>(k) / static_cast<double>(n - 1)) * endpoint;
    e[k] = j(path[k]);
  }
  std::size_t top = argmax_interior(e);
  if (!(e[top] > std::max(e.front(), e.back())))
    throw Error(Errc::NoConvergence, "no mountain ridge between 0 and the far endpoint");

  std::vector<double> history{e[top]};
  int it = 0;
  int stall = 0;
  for (; it < config.max_iter; ++it) {
    const Eigen::VectorXd grad = energy_gradient(g, problem, path[top]);
    if (sup_norm(grad.cwiseQuotient(g.measure())) <= config.gtol) break;

    // descend transversally: drop the component along the local path tangent
    Eigen::VectorXd dir = metric.riesz(grad);
    const Eigen::VectorXd tangent = path[top + 1] - path[top - 1];
    if (const double tt = metric.inner(tangent, tangent); tt > 0.0) dir -= (metric.inner(dir, tangent) / tt) * tangent;
    const double slope = grad.dot(dir);
    if (!(slope > 0.0)) break;
    bool accepted = false;
    for (double s = 1.0; s > 1e-14; s *= 0.5) {
      Eigen::VectorXd trial = path[top] - s * dir;
      const double e_trial = j(trial);
      if (e_trial <= e[top] - config.armijo * s * slope) {
        path[top] = std::move(trial);
        e[top] = e_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    auto spaced = respace(g, path);
    std::vector<double> e_spaced(n);
    for (std::size_t k = 0; k < n; ++k) e_spaced[k] = j(spaced[k]);
    if (e_spaced[argmax_interior(e_spaced)] <= e[argmax_interior(e)]) {
      path = std::move(spaced);
      e = std::move(e_spaced);
    }

    top = argmax_interior(e);
    const double drop = history.back() - e[top];
    stall = drop > 1e-15 * (1.0 + std::abs(e[top])) ? 0 : stall + 1;
    history.push_back(e[top]);
    if (stall >= config.stall_window) break;
  }

  const double ridge = e[top];
  SolveOutcome out = newton_refine(g, problem, polish_on_path(path, top, j), config.tol, config.newton_max_iter);
  out.iterations += it;
  out.max_energy_history = std::move(history);
  if (out.classification == Classification::trivial || sup_norm(out.solution) <= 1e-6 * sup_norm(path[top]))
    throw Error(Errc::NoConvergence, "Newton refinement collapsed onto the trivial solution");
  if (std::abs(out.energy) <= 1e-8 * std::abs(ridge))
    throw Error(Errc::NoConvergence, "refined critical point has energy " + sci(out.energy) + ", far below the ridge " + sci(ridge));
  if (!(out.min_value > 0.0))
    throw Error(Errc::NonpositiveSolution,
                "mountain-pass critical point has min value " + sci(out.min_value));
  if (!(out.energy > 0.0))
    throw Error(Errc::NoConvergence,
                "refined critical point has nonpositive energy " + sci(out.energy));
  out.classification = Classification::mountain_pass;
  return out;
}

SolveOutcome ball_minimize(const WeightedGraph& g, const Problem& problem, double radius,
                           const SolverConfig& config) {
  if (!problem.perturbation())
    throw Error(Errc::PerturbationRequired, "ball minimisation needs eps > 0 and g");
  if (!(radius > 0.0)) throw Error(Errc::NonpositiveRadius, "ball radius must be positive");

  const HMetric metric(g, problem.h());
  auto j = [&](const Eigen::VectorXd& u) { return energy(g, problem, u).total; };
  auto project = [&](Eigen::VectorXd u) {
    const double nu = metric.norm(u);
    if (nu > radius) u *= radius / nu;
    return u;
  };

  // J_eps decreases at t = 0 along the solution of -Lap v + h v = g.
  const Eigen::VectorXd v =
      solve_linear(g, problem.h(), problem.perturbation()->g(), config.tol).solution;
  Eigen::VectorXd u = (1e-3 * radius / metric.norm(v)) * v;
  double e = j(u);

  int it = 0;
  for (; it < config.max_iter; ++it) {
    const Eigen::VectorXd grad = energy_gradient(g, problem, u);
    const Eigen::VectorXd dir = metric.riesz(grad);
    if (metric.norm(u - project(u - dir)) <= config.gtol) break;
    if (metric.norm(u) < radius && sup_norm(grad.cwiseQuotient(g.measure())) <= config.gtol) break;

    bool accepted = false;
    for (double s = 1.0; s > 1e-14; s *= 0.5) {
      Eigen::VectorXd trial = project(u - s * dir);
      const double e_trial = j(trial);
      if (e_trial <= e - config.armijo * grad.dot(u - trial)) {
        u = std::move(trial);
        e = e_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  if (!(e < 0.0))
    throw Error(Errc::NonnegativeMinimum, "no point of negative energy found in the ball (J = " + sci(e) + ")");
  if (metric.norm(u) >= radius * (1.0 - 1e-6))
    throw Error(Errc::BoundaryContact, "ball minimiser lies on the boundary ||u||_H = " + sci(radius));

  SolveOutcome out = newton_refine(g, problem, u, config.tol, config.newton_max_iter);
  out.iterations += it;
  if (!(out.energy < 0.0))
    throw Error(Errc::NonnegativeMinimum, "refined minimiser has energy " + sci(out.energy));
  if (metric.norm(out.solution) >= radius)
    throw Error(Errc::BoundaryContact, "refined minimiser left the ball");
  if (!(out.min_value > 0.0))
    throw Error(Errc::NonpositiveSolution, "ball minimiser has min value " + sci(out.min_value));
  out.classification = Classification::local_min;
  return out;
}

PerturbedPair solve_perturbed_pair(const WeightedGraph& g, const Problem& problem,
                                   const SolverConfig& config) {
  if (!problem.perturbation())
    throw Error(Errc::PerturbationRequired, "the perturbed pair needs eps > 0 and g");
  const double radius = 2.0 * std::sqrt(problem.perturbation()->eps());

  PerturbedPair pair;
  try {
    pair.local_min = ball_minimize(g, problem, radius, config);
  } catch (const Error& err) {
    if (err.code() != Errc::BoundaryContact) throw;
    throw Error(Errc::NotDistinct,
                std::string("no interior minimiser in the ball, the two-solution branch has collapsed (") +
                    err.what() + ")");
  }
  pair.mountain_pass = mountain_pass_solve(g, problem, config);

  const double gap = sup_norm(pair.mountain_pass.solution - pair.local_min.solution);
  if (!(gap > config.distinct_tol))
    throw Error(Errc::NotDistinct, "solutions differ by " + sci(gap) + " in sup norm");
  if (!(pair.local_min.energy < 0.0 && pair.mountain_pass.energy > 0.0))
    throw Error(Errc::NotDistinct, "energy ordering J(u0) < 0 < J(uM) violated");
  return pair;
}

}  // namespace graphpass
