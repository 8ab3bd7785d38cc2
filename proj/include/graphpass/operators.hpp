#pragma once

// Discrete calculus on a weighted graph: the mu-Laplacian, the gradient
// form Gamma, gradient length, integration against mu and the H-norm.
//
// All functions accept any Eigen column expression and return a dense
// vector of the same scalar type. Reductions run in vertex order.

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "graphpass/error.hpp"
#include "graphpass/graph.hpp"

namespace graphpass {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename Derived>
void check_aligned(const WeightedGraph& g, const Eigen::MatrixBase<Derived>& u, const char* what) {
  if (u.cols() != 1 || u.rows() != g.size())
    throw Error(Errc::DimensionMismatch, std::string(what) + " has " + std::to_string(u.rows()) +
                                             " entries, graph has " + std::to_string(g.size()) +
                                             " vertices");
}

}  // namespace detail

/// x -> (1/mu(x)) sum_{y~x} w_xy (u(y) - u(x))
template <typename Derived>
VectorX<typename Derived::Scalar> laplacian(const WeightedGraph& g,
                                            const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  detail::check_aligned(g, u, "u");
  VectorX<Scalar> out(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    Scalar acc(0);
    for (const Neighbor& n : g.neighbors(x)) acc += Scalar(n.weight) * (u(n.index) - u(x));
    out(x) = acc / Scalar(g.mu(x));
  }
  return out;
}

/// Gamma(u, v) evaluated at one vertex.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar gamma_at(const WeightedGraph& g, const Eigen::MatrixBase<DerivedU>& u,
                                   const Eigen::MatrixBase<DerivedV>& v, Index x) {
  using Scalar = typename DerivedU::Scalar;
  Scalar acc(0);
  for (const Neighbor& n : g.neighbors(x))
    acc += Scalar(n.weight) * (u(n.index) - u(x)) * (v(n.index) - v(x));
  return acc / (Scalar(2) * Scalar(g.mu(x)));
}

/// x -> (1/(2 mu(x))) sum_{y~x} w_xy (u(y) - u(x)) (v(y) - v(x))
template <typename DerivedU, typename DerivedV>
VectorX<typename DerivedU::Scalar> gamma(const WeightedGraph& g,
                                         const Eigen::MatrixBase<DerivedU>& u,
                                         const Eigen::MatrixBase<DerivedV>& v) {
  detail::check_aligned(g, u, "u");
  detail::check_aligned(g, v, "v");
  VectorX<typename DerivedU::Scalar> out(g.size());
  for (Index x = 0; x < g.size(); ++x) out(x) = gamma_at(g, u, v, x);
  return out;
}

/// |grad u|(x) = sqrt(Gamma(u, u)(x))
template <typename Derived>
VectorX<typename Derived::Scalar> grad_norm(const WeightedGraph& g,
                                            const Eigen::MatrixBase<Derived>& u) {
  return gamma(g, u, u).cwiseSqrt();
}

/// sum_x mu(x) f(x)
template <typename Derived>
typename Derived::Scalar integrate(const WeightedGraph& g, const Eigen::MatrixBase<Derived>& f) {
  using Scalar = typename Derived::Scalar;
  detail::check_aligned(g, f, "integrand");
  Scalar acc(0);
  for (Index x = 0; x < g.size(); ++x) acc += Scalar(g.mu(x)) * f(x);
  return acc;
}

/// Throws NonpositivePotential unless h > 0 everywhere.
template <typename Derived>
void require_positive_potential(const WeightedGraph& g, const Eigen::MatrixBase<Derived>& h) {
  detail::check_aligned(g, h, "h");
  for (Index x = 0; x < g.size(); ++x)
    if (!(h(x) > 0))
      throw Error(Errc::NonpositivePotential, "h(" + g.id(x) + ") is not positive");
}

/// ||u||_H^2 = integral of (|grad u|^2 + h u^2)
template <typename DerivedH, typename DerivedU>
typename DerivedU::Scalar norm_h_squared(const WeightedGraph& g,
                                         const Eigen::MatrixBase<DerivedH>& h,
                                         const Eigen::MatrixBase<DerivedU>& u) {
  using Scalar = typename DerivedU::Scalar;
  require_positive_potential(g, h);
  detail::check_aligned(g, u, "u");
  const VectorX<Scalar> density =
      gamma(g, u, u) + h.template cast<Scalar>().cwiseProduct(u.cwiseAbs2());
  return integrate(g, density);
}

/// H-norm; with h = 1 this is the W^{1,2} norm.
template <typename DerivedH, typename DerivedU>
typename DerivedU::Scalar norm_h(const WeightedGraph& g, const Eigen::MatrixBase<DerivedH>& h,
                                 const Eigen::MatrixBase<DerivedU>& u) {
  using std::sqrt;
  return sqrt(norm_h_squared(g, h, u));
}

}  // namespace graphpass
