#include "graphpass/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "graphpass/operators.hpp"

namespace graphpass {

// ---------------------------------------------------------------------------
// Potential

Potential Potential::table(Eigen::VectorXd values) {
  if (!values.allFinite()) throw Error(Errc::InvalidInput, "potential table has non-finite entries");
  return Potential(std::move(values));
}

Potential Potential::profile(PotentialProfile p) {
  if (!(p.h0 > 0.0)) throw Error(Errc::NonpositivePotential, "profile needs h0 > 0");
  if (p.c < 0.0 || p.alpha < 0.0 || !std::isfinite(p.c) || !std::isfinite(p.alpha))
    throw Error(Errc::InvalidInput, "profile needs c >= 0 and alpha >= 0");
  return Potential(std::move(p));
}

std::optional<std::string> Potential::base() const {
  if (const auto* p = as_profile()) return p->base;
  return std::nullopt;
}

Eigen::VectorXd Potential::evaluate(const WeightedGraph& g) const {
  if (const auto* t = as_table()) {
    detail::check_aligned(g, *t, "potential table");
    return *t;
  }
  const auto& p = *as_profile();
  const auto dist = hop_distances(g, g.index_of(p.base));
  Eigen::VectorXd h(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    const int d = dist[static_cast<std::size_t>(x)];
    if (d < 0)
      throw Error(Errc::InvalidInput, "vertex '" + g.id(x) + "' is unreachable from profile base");
    h(x) = p.h0 + p.c * std::pow(static_cast<double>(d), p.alpha);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Power nonlinearity

PowerNonlinearity::PowerNonlinearity(double p, double a)
    : PowerNonlinearity(p, Eigen::VectorXd::Constant(1, a)) {}

PowerNonlinearity::PowerNonlinearity(double p, Eigen::VectorXd a) : p_(p), a_(std::move(a)) {
  if (!(p_ > 2.0) || !std::isfinite(p_))
    throw Error(Errc::InvalidExponent, "power family needs p > 2 (theta = p must exceed 2)");
  if (a_.size() == 0 || !a_.allFinite() || !(a_.minCoeff() > 0.0))
    throw Error(Errc::InvalidCoefficient, "power family needs a(x) >= a0 > 0");
}

double PowerNonlinearity::value(Index x, double s) const {
  return s > 0.0 ? coefficient(x) * std::pow(s, p_ - 1.0) : 0.0;
}

double PowerNonlinearity::primitive(Index x, double s) const {
  return s > 0.0 ? coefficient(x) * std::pow(s, p_) / p_ : 0.0;
}

double PowerNonlinearity::derivative(Index x, double s) const {
  return s > 0.0 ? coefficient(x) * (p_ - 1.0) * std::pow(s, p_ - 2.0) : 0.0;
}

void PowerNonlinearity::check_size(Index n) const {
  if (a_.size() != 1 && a_.size() != n)
    throw Error(Errc::DimensionMismatch, "coefficient table has " + std::to_string(a_.size()) +
                                             " entries, graph has " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Perturbation and problem

PerturbationSource::PerturbationSource(double eps, Eigen::VectorXd g) : eps_(eps), g_(std::move(g)) {
  if (eps_ == 0.0) throw Error(Errc::PerturbationRequired, "perturbation needs eps > 0");
  if (!(eps_ > 0.0) || !std::isfinite(eps_))
    throw Error(Errc::InvalidPerturbation, "perturbation needs eps > 0");
  if (g_.size() == 0 || !g_.allFinite() || g_.minCoeff() < 0.0)
    throw Error(Errc::InvalidPerturbation, "g must be finite and nonnegative");
  if (g_.maxCoeff() <= 0.0) throw Error(Errc::InvalidPerturbation, "g must not vanish identically");
}

Problem::Problem(const WeightedGraph& g, Eigen::VectorXd h, std::shared_ptr<const Nonlinearity> nl,
                 std::optional<PerturbationSource> perturbation)
    : h_(std::move(h)), nl_(std::move(nl)), perturbation_(std::move(perturbation)) {
  if (!nl_) throw Error(Errc::InvalidInput, "problem needs a nonlinearity");
  require_positive_potential(g, h_);
  nl_->check_size(g.size());
  if (perturbation_) detail::check_aligned(g, perturbation_->g(), "g");
}

Problem Problem::without_perturbation() const { return Problem(h_, nl_, std::nullopt); }

Problem Problem::with_perturbation(PerturbationSource p) const {
  if (p.g().size() != h_.size())
    throw Error(Errc::DimensionMismatch, "g is not aligned to the problem");
  return Problem(h_, nl_, std::move(p));
}

Eigen::VectorXd Problem::apply_f(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out(u.size());
  for (Index x = 0; x < u.size(); ++x) out(x) = nl_->value(x, u(x));
  return out;
}

Eigen::VectorXd Problem::apply_primitive(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out(u.size());
  for (Index x = 0; x < u.size(); ++x) out(x) = nl_->primitive(x, u(x));
  return out;
}

Eigen::VectorXd Problem::apply_derivative(const Eigen::VectorXd& u) const {
  Eigen::VectorXd out(u.size());
  for (Index x = 0; x < u.size(); ++x) out(x) = nl_->derivative(x, u(x));
  return out;
}

Eigen::VectorXd Problem::source() const {
  if (!perturbation_) return Eigen::VectorXd::Zero(h_.size());
  return perturbation_->eps() * perturbation_->g();
}

// ---------------------------------------------------------------------------
// Hypothesis checks

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::advisory: return "advisory";
    case Verdict::not_checked: return "not_checked";
  }
  return "unknown";
}

double HypothesisCheck::witness_value(std::string_view key) const {
  for (const auto& [k, v] : witness)
    if (k == key) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Vertices at which the nonlinearity is sampled: one when it does not
// depend on x, all of them otherwise.
Index sample_vertices(const Nonlinearity& nl, Index n) {
  if (const auto* pw = dynamic_cast<const PowerNonlinearity*>(&nl); pw && pw->uniform_coefficient())
    return 1;
  return n;
}

std::vector<ShellRow> shell_table(const WeightedGraph& g, const Eigen::VectorXd& h, Index base) {
  const auto dist = hop_distances(g, base);
  const int max_d = *std::max_element(dist.begin(), dist.end());
  std::vector<ShellRow> rows(static_cast<std::size_t>(std::max(max_d, 0) + 1));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r].radius = static_cast<int>(r);
    rows[r].min_h = std::numeric_limits<double>::infinity();
  }
  for (Index x = 0; x < g.size(); ++x) {
    const int d = dist[static_cast<std::size_t>(x)];
    if (d < 0) continue;
    auto& row = rows[static_cast<std::size_t>(d)];
    ++row.count;
    row.inv_h_mass += g.mu(x) / h(x);
    row.min_h = std::min(row.min_h, h(x));
  }
  double tail = 0.0;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    tail += it->inv_h_mass;
    it->tail_mass = tail;
  }
  return rows;
}

// Least-squares slope of log(mass) against log(radius) over the outer half
// of the shells (radius >= 1). Returns NaN with fewer than two shells.
double tail_decay_exponent(const std::vector<ShellRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  const std::size_t first = std::max<std::size_t>(1, rows.size() / 2);
  for (std::size_t r = first; r < rows.size(); ++r)
    if (rows[r].inv_h_mass > 0.0)
      pts.emplace_back(std::log(static_cast<double>(rows[r].radius)), std::log(rows[r].inv_h_mass));
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  return -sxy / sxx;
}

}  // namespace

HypothesisReport check_hypotheses(const WeightedGraph& g, const Potential& potential,
                                  const Nonlinearity& nl, HypothesisMode mode, double lambda1,
                                  const HypothesisOptions& options) {
  HypothesisReport report;
  const Eigen::VectorXd h = potential.evaluate(g);
  const bool family = g.truncation().has_value();

  std::optional<Index> base;
  if (auto b = potential.base()) base = g.index_of(*b);
  else if (family) base = g.index_of(g.truncation()->base);
  if (mode == HypothesisMode::H2prime && !base)
    throw Error(Errc::MissingDistanceBase, "(H2') needs a base vertex x0");

  // (H1)
  const double h0 = g.size() ? h.minCoeff() : 0.0;
  report.h1.witness = {{"h0", h0}};
  report.h1.verdict = h0 > 0.0 ? Verdict::holds : Verdict::fails;
  report.h1.detail = h0 > 0.0 ? "min h = " + fmt(h0) + " > 0" : "min h = " + fmt(h0) + " <= 0";

  if (base) report.shells = shell_table(g, h, *base);

  if (mode == HypothesisMode::H2) {
    auto& c = report.h2;
    if (!(h0 > 0.0)) {
      c.verdict = Verdict::fails;
      c.detail = "1/h undefined where h <= 0";
    } else {
      const double mass = integrate(g, h.cwiseInverse());
      c.witness = {{"integral_inv_h", mass}};
      if (!family) {
        c.verdict = Verdict::holds;
        c.detail = "finite graph: integral of 1/h = " + fmt(mass);
      } else {
        const double beta = tail_decay_exponent(report.shells);
        c.verdict = Verdict::advisory;
        c.witness.emplace_back("tail_decay_exponent", beta);
        c.witness.emplace_back("outer_shell_mass", report.shells.back().inv_h_mass);
        if (std::isnan(beta))
          c.detail = "declared infinite family: too few shells to extrapolate the tail";
        else if (beta > 1.0)
          c.detail = "declared infinite family: shell mass of 1/h decays like r^-" + fmt(beta) +
                     " (summable trend)";
        else
          c.detail = "declared infinite family: shell mass of 1/h decays like r^-" + fmt(beta) +
                     " (non-summable trend)";
      }
    }
  } else {
    auto& c = report.h2prime;
    bool increasing = true;
    for (std::size_t r = 1; r < report.shells.size(); ++r)
      if (!(report.shells[r].min_h > report.shells[r - 1].min_h)) increasing = false;
    c.witness = {{"increasing", increasing ? 1.0 : 0.0},
                 {"outer_min_h", report.shells.empty() ? h0 : report.shells.back().min_h}};
    if (!family) {
      c.verdict = Verdict::holds;
      c.detail = "finite graph: condition at infinity is vacuous";
    } else {
      c.verdict = Verdict::advisory;
      c.detail = increasing ? "declared infinite family: shell-min h strictly increasing in radius"
                            : "declared infinite family: shell-min h not increasing in radius";
    }
  }

  const Index nx = sample_vertices(nl, g.size());
  const auto* power = dynamic_cast<const PowerNonlinearity*>(&nl);

  // (F1)
  {
    auto& c = report.f1;
    bool zero_at_origin = true;
    for (Index x = 0; x < nx; ++x) zero_at_origin = zero_at_origin && nl.value(x, 0.0) == 0.0;
    const double m = options.f1_bound;
    double a_m = 0.0;
    if (power) {
      a_m = power->max_coefficient() * std::pow(m, power->exponent() - 1.0);
    } else {
      for (Index x = 0; x < nx; ++x)
        for (int i = 0; i <= options.grid_points; ++i)
          a_m = std::max(a_m, nl.value(x, m * i / options.grid_points));
    }
    c.witness = {{"M", m}, {"A_M", a_m}};
    c.verdict = zero_at_origin && std::isfinite(a_m) ? Verdict::holds : Verdict::fails;
    c.detail = zero_at_origin ? "f(x,0) = 0; max over [0,M] of f bounded by A_M = " + fmt(a_m)
                              : "f(x,0) != 0";
    if (power) c.detail += " (continuous power law, symbolic)";
  }

  // (F2)
  {
    auto& c = report.f2;
    const double theta = nl.theta();
    double worst = 0.0;
    bool positive = true;
    for (Index x = 0; x < nx; ++x) {
      for (int i = 0; i < options.grid_points; ++i) {
        const double s = std::pow(10.0, -6.0 + 12.0 * i / (options.grid_points - 1));
        const double F = nl.primitive(x, s);
        positive = positive && F > 0.0;
        worst = std::max(worst, theta * F / (s * nl.value(x, s)));
      }
    }
    c.witness = {{"theta", theta}, {"max_ratio", worst}};
    const bool ok = theta > 2.0 && positive && worst <= 1.0 + 1e-12;
    c.verdict = ok ? Verdict::holds : Verdict::fails;
    c.detail = "max of theta F / (s f) over log grid = " + fmt(worst);
    if (power) c.detail += "; equality theta F = s f holds symbolically for pure powers";
  }

  // (F3)
  {
    auto& c = report.f3;
    for (int k = 1; k <= 8; ++k) {
      const double s = std::pow(10.0, -k);
      double ratio = 0.0;
      for (Index x = 0; x < nx; ++x) ratio = std::max(ratio, 2.0 * nl.primitive(x, s) / (s * s));
      report.f3_samples.emplace_back(s, ratio);
    }
    const double limit = nl.small_s_limit();
    c.witness = {{"limsup", limit}, {"lambda1", lambda1}};
    c.verdict = limit < lambda1 ? Verdict::holds : Verdict::fails;
    c.detail = "limsup 2F/s^2 = " + fmt(limit) + (limit < lambda1 ? " < " : " >= ") +
               "lambda1 = " + fmt(lambda1);
  }

  // (F1')
  {
    auto& c = report.f1prime;
    const double s_max = options.lipschitz_range;
    double lip = 0.0;
    const int n = options.grid_points;
    for (Index x = 0; x < nx; ++x) {
      double prev = nl.value(x, 0.0);
      for (int i = 1; i <= n; ++i) {
        const double s = s_max * i / n;
        const double cur = nl.value(x, s);
        lip = std::max(lip, std::abs(cur - prev) / (s_max / n));
        prev = cur;
      }
    }
    c.witness = {{"S_max", s_max}, {"L_estimate", lip}};
    c.verdict = Verdict::advisory;
    c.detail = "Lipschitz estimate on [0, " + fmt(s_max) + "]: L = " + fmt(lip);
    if (power) {
      const double exact = power->max_coefficient() * (power->exponent() - 1.0) *
                           std::pow(s_max, power->exponent() - 2.0);
      c.witness.emplace_back("L_exact", exact);
      c.detail += "; global Lipschitz bound fails for p > 2 on unbounded ranges";
    }
  }

  return report;
}

}  // namespace graphpass
