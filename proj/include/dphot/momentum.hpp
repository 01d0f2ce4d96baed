#pragma once

#include <cmath>
#include <stdexcept>

#include "dphot/constants.hpp"
#include "dphot/dispersion.hpp"

namespace dphot {

/// Single-photon momenta (signed magnitudes along k-hat) and effective masses
/// at one mode, in the three pictures:
///   p_can       = hbar k
///   p_abraham   = (v_gr v_ph / c^2) hbar k
///   p_minkowski = (v_gr / v_ph) hbar k
/// with m_eff = p / v_gr, which closes to hbar omega / c^2 (Abraham) and
/// n^2 hbar omega / c^2 (Minkowski).
struct MomentumTriple {
  double p_can = 0.0;        // kg m/s
  double p_abraham = 0.0;    // kg m/s
  double p_minkowski = 0.0;  // kg m/s
  double m_eff_abraham = 0.0;    // kg
  double m_eff_minkowski = 0.0;  // kg
  ModePoint mode;
};

inline MomentumTriple momentum_triple(const ModePoint& mode) {
  MomentumTriple t;
  t.mode = mode;
  const double hk = si::hbar * mode.k;
  t.p_can = hk;
  t.p_abraham = (mode.v_gr * mode.v_ph / (si::c * si::c)) * hk;
  t.p_minkowski = (mode.v_gr / mode.v_ph) * hk;
  t.m_eff_abraham = si::hbar * mode.omega / (si::c * si::c);
  t.m_eff_minkowski = mode.n * mode.n * si::hbar * mode.omega / (si::c * si::c);
  return t;
}

enum class EqualityClass { AllEqual, CanEqualsMinkowski, CanEqualsAbraham, AllDistinct };

inline const char* to_string(EqualityClass c) {
  switch (c) {
    case EqualityClass::AllEqual: return "all_equal";
    case EqualityClass::CanEqualsMinkowski: return "can_equals_minkowski";
    case EqualityClass::CanEqualsAbraham: return "can_equals_abraham";
    case EqualityClass::AllDistinct: return "all_distinct";
  }
  return "?";
}

/// Classifies which of the three momenta coincide at this mode. All three are
/// equal only in vacuum; canonical and Minkowski coincide for nondispersive
/// media; canonical and Abraham only in the special case v_gr v_ph = c^2.
inline EqualityClass classify_equalities(const ModePoint& mode, double tol = 1e-9) {
  if (!(tol > 0.0 && tol < 0.1)) throw std::invalid_argument("tol must be in (0, 0.1)");
  if (std::abs(mode.n - 1.0) <= tol && std::abs(mode.n_gr - mode.n) <= tol)
    return EqualityClass::AllEqual;
  if (std::abs(mode.n_gr - mode.n) <= tol * mode.n) return EqualityClass::CanEqualsMinkowski;
  if (std::abs(mode.v_gr * mode.v_ph - si::c * si::c) <= tol * si::c * si::c)
    return EqualityClass::CanEqualsAbraham;
  return EqualityClass::AllDistinct;
}

/// Momentum over energy flux, p_A / (hbar omega v_gr). Equals 1/c^2 for every
/// mode regardless of dispersion.
inline double planck_inertia_ratio(const MomentumTriple& triple) {
  return triple.p_abraham / (si::hbar * triple.mode.omega * triple.mode.v_gr);
}

}  // namespace dphot
