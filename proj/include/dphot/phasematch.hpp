#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <variant>

#include "dphot/constants.hpp"
#include "dphot/dispersion.hpp"

namespace dphot {

/// Down-conversion search: a pump photon (omega0, k0 along +z) splits into a
/// signal/idler pair conserving energy exactly and wavevector as closely as
/// the medium permits. Planar geometry with opposed transverse components;
/// the medium is an isotropic scalar-index model, so realistic collinear
/// matching is typically infeasible and the solver reports the mismatch
/// minimum instead.
struct SPDCProblem {
  enum class Geometry { Collinear, PlanarNoncollinear };

  ModePoint pump;
  DispersionModel model;
  Geometry geometry = Geometry::Collinear;
  double omega1_min = 0.0;  // signal search band; both daughters stay in the model band
  double omega1_max = 0.0;

  static SPDCProblem make(const DispersionModel& model, double pump_omega,
                          Geometry geometry) {
    SPDCProblem p{mode_point(model, pump_omega, +1), model, geometry};
    // inset the search band by a few ulps so omega0 - omega1 cannot round to
    // just outside the model band at the endpoints
    const double guard = 1e-13 * pump_omega;
    p.omega1_min = std::max(model.omega_min(), pump_omega - model.omega_max()) + guard;
    p.omega1_max = std::min(model.omega_max(), pump_omega - model.omega_min()) - guard;
    if (!(p.omega1_min < p.omega1_max))
      throw OutOfBand("no signal frequency keeps both daughters inside the validity band");
    return p;
  }
};

/// theta angles are measured from the pump axis; residual is the vector norm
/// of the wavevector mismatch k0 - k1 - k2.
struct MatchSolution {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double residual = 0.0;  // 1/m
};

struct Infeasible {
  double min_mismatch = 0.0;   // 1/m
  double omega1_at_min = 0.0;  // rad/s
};

using MatchResult = std::variant<MatchSolution, Infeasible>;

namespace detail {

/// Splits omega0 into (w1, w2) with w1 + w2 == omega0 exactly in double
/// arithmetic (Sterbenz applies to subtracting the larger part) and w1 within
/// one ulp of the requested omega1.
inline std::pair<double, double> split_pump_energy(double omega0, double omega1) {
  double w1 = omega1;
  double w2 = omega0 - omega1;
  if (w1 >= w2)
    w2 = omega0 - w1;
  else
    w1 = omega0 - w2;
  return {w1, w2};
}

}  // namespace detail

/// |k0 z - k1(theta1) - k2(-theta2)| with |k_i| = n(omega_i) omega_i / c and
/// the transverse components of k1, k2 opposed.
inline double momentum_mismatch(const SPDCProblem& problem, double omega1, double theta1,
                                double theta2) {
  const double omega0 = problem.pump.omega;
  if (!(omega1 > 0.0 && omega1 < omega0))
    throw std::invalid_argument("need 0 < omega1 < pump omega");
  const double omega2 = omega0 - omega1;
  const double k1 = problem.model.n_at(omega1) * omega1 / si::c;
  const double k2 = problem.model.n_at(omega2) * omega2 / si::c;
  const double kz = problem.pump.k - k1 * std::cos(theta1) - k2 * std::cos(theta2);
  const double kx = k1 * std::sin(theta1) - k2 * std::sin(theta2);
  return std::hypot(kz, kx);
}

/// Scans the signal band for a sign change of the scalar mismatch
/// k0 - k1 - k2 and bisects to |mismatch| <= tol. With no sign change the
/// result is Infeasible carrying the minimum |mismatch| found and its
/// location. A medium where the mismatch vanishes identically (vacuum,
/// constant n) returns the degenerate split omega1 = omega0/2 by convention.
inline MatchResult solve_collinear(const SPDCProblem& problem, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const double omega0 = problem.pump.omega;
  auto mismatch = [&](double w1) {
    const double w2 = omega0 - w1;
    return problem.pump.k - problem.model.n_at(w1) * w1 / si::c -
           problem.model.n_at(w2) * w2 / si::c;
  };
  auto solution_at = [&](double w1, double residual) {
    auto [a, b] = detail::split_pump_energy(omega0, w1);
    return MatchSolution{a, b, 0.0, 0.0, std::abs(residual)};
  };

  const double half = 0.5 * omega0;
  if (half > problem.omega1_min && half < problem.omega1_max) {
    const double f_half = mismatch(half);
    if (std::abs(f_half) <= tol) return solution_at(half, f_half);
  }

  const int scan = 512;
  double best_w = problem.omega1_min, best_f = std::abs(mismatch(problem.omega1_min));
  double prev_w = problem.omega1_min, prev_f = mismatch(problem.omega1_min);
  for (int i = 1; i <= scan; ++i) {
    const double w = problem.omega1_min +
                     (problem.omega1_max - problem.omega1_min) * i / scan;
    const double f = mismatch(w);
    if (std::abs(f) < best_f) {
      best_f = std::abs(f);
      best_w = w;
    }
    if ((prev_f < 0.0) != (f < 0.0) || f == 0.0) {
      double lo = prev_w, hi = w, f_lo = prev_f;
      while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = mismatch(mid);
        if (std::abs(f_mid) <= tol) return solution_at(mid, f_mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      const double w_root = 0.5 * (lo + hi);
      const double f_root = mismatch(w_root);
      if (std::abs(f_root) <= tol) return solution_at(w_root, f_root);
      return Infeasible{std::abs(f_root), w_root};
    }
    prev_w = w;
    prev_f = f;
  }
  return Infeasible{best_f, best_w};
}

/// Symmetric degenerate geometry: omega1 = omega2 = omega0/2 and
/// theta1 = theta2 = theta solving cos(theta) = k0 / (2 k1). Infeasible when
/// k0 > 2 k1 (transverse closure impossible).
inline MatchResult solve_noncollinear_degenerate(const SPDCProblem& problem, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const double omega0 = problem.pump.omega;
  const double w1 = 0.5 * omega0;  // exact halving; w1 + w1 == omega0
  if (!problem.model.in_band(w1))
    throw OutOfBand("degenerate frequency omega0/2 outside the validity band");
  const double k1 = problem.model.n_at(w1) * w1 / si::c;
  const double cos_theta = problem.pump.k / (2.0 * k1);
  if (cos_theta > 1.0 && problem.pump.k - 2.0 * k1 > tol)
    return Infeasible{problem.pump.k - 2.0 * k1, w1};
  const double theta = std::acos(std::min(cos_theta, 1.0));
  const double residual = momentum_mismatch(problem, w1, theta, theta);
  if (residual > tol) return Infeasible{residual, w1};
  return MatchSolution{w1, w1, theta, theta, residual};
}

/// Cerenkov emission angle arccos(1/(n beta)) for a charge at speed beta = v/c
/// in a medium of index n; no emission below threshold n beta < 1.
inline std::optional<double> cerenkov_angle(double mode_n, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must be in (0, 1)");
  if (!(mode_n >= 1.0)) throw std::invalid_argument("mode_n must be >= 1");
  const double nb = mode_n * beta;
  if (nb < 1.0) return std::nullopt;
  return std::acos(1.0 / nb);
}

}  // namespace dphot
