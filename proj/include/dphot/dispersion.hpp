#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dphot/constants.hpp"
#include "dphot/errors.hpp"

namespace dphot {

enum class ModelKind { Constant, Cauchy, Sellmeier, Tabulated };

inline const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Constant: return "constant";
    case ModelKind::Cauchy: return "cauchy";
    case ModelKind::Sellmeier: return "sellmeier";
    case ModelKind::Tabulated: return "tabulated";
  }
  return "?";
}

namespace detail {

/// Fritsch-Carlson monotone cubic slopes for strictly increasing x.
inline std::vector<double> pchip_slopes(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] == 0.0 || delta[i] == 0.0 || (delta[i - 1] > 0) != (delta[i] > 0)) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // One-sided endpoint slopes, clamped to preserve monotonicity.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) {
      s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

inline double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                         const std::vector<double>& d, double xq) {
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  if (i >= x.size() - 1) i = x.size() - 2;
  const double h = x[i + 1] - x[i];
  const double t = (xq - x[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * d[i] +
         (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * h * d[i + 1];
}

}  // namespace detail

/// Refractive-index model n(omega) with a hard validity band. Immutable after
/// construction and safe to share across threads.
///
/// Coefficient conventions (conventional micrometre-based forms):
///   constant   [n]
///   cauchy     [A, B, C, ...]         n = A + B/lam^2 + C/lam^4 + ...,  lam in um
///   sellmeier  [B1, C1, B2, C2, ...]  n^2 = 1 + sum B_i lam^2/(lam^2 - C_i), C_i in um^2
///   tabulated  sampled (omega, n) pairs with monotone-cubic interpolation;
///              no extrapolation outside the table.
class DispersionModel {
 public:
  static DispersionModel constant(double n, double omega_min, double omega_max) {
    DispersionModel m(ModelKind::Constant, {n}, omega_min, omega_max);
    m.validate();
    return m;
  }

  static DispersionModel cauchy(std::vector<double> coefficients, double omega_min,
                                double omega_max) {
    if (coefficients.empty()) throw std::invalid_argument("cauchy: no coefficients");
    DispersionModel m(ModelKind::Cauchy, std::move(coefficients), omega_min, omega_max);
    m.validate();
    return m;
  }

  static DispersionModel sellmeier(std::vector<double> coefficients, double omega_min,
                                   double omega_max) {
    if (coefficients.empty() || coefficients.size() % 2 != 0)
      throw std::invalid_argument("sellmeier: coefficients must be (B,C) pairs");
    DispersionModel m(ModelKind::Sellmeier, std::move(coefficients), omega_min, omega_max);
    // No resonance wavelength may fall inside the band.
    for (std::size_t i = 1; i < m.coeff_.size(); i += 2) {
      if (m.coeff_[i] <= 0.0) continue;
      const double omega_res = si::omega_from_lambda_nm(std::sqrt(m.coeff_[i]) * 1e3);
      if (omega_res >= m.omega_min_ && omega_res <= m.omega_max_)
        throw ModelSingular("sellmeier resonance at " +
                            std::to_string(std::sqrt(m.coeff_[i])) +
                            " um lies inside the validity band");
    }
    m.validate();
    return m;
  }

  /// Builds a tabulated model from (omega, n) samples; the validity band is
  /// the table extent. Samples are sorted; duplicate frequencies are an error.
  static DispersionModel tabulated(std::vector<double> omega, std::vector<double> n) {
    if (omega.size() != n.size() || omega.size() < 4)
      throw std::invalid_argument("tabulated: need >= 4 matching (omega, n) samples");
    std::vector<std::size_t> order(omega.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });
    DispersionModel m(ModelKind::Tabulated, {}, 0.0, 0.0);
    m.tab_omega_.reserve(omega.size());
    m.tab_n_.reserve(omega.size());
    for (std::size_t i : order) {
      if (!m.tab_omega_.empty() && omega[i] <= m.tab_omega_.back())
        throw std::invalid_argument("tabulated: sample frequencies must be strictly increasing");
      m.tab_omega_.push_back(omega[i]);
      m.tab_n_.push_back(n[i]);
    }
    m.tab_slope_ = detail::pchip_slopes(m.tab_omega_, m.tab_n_);
    m.omega_min_ = m.tab_omega_.front();
    m.omega_max_ = m.tab_omega_.back();
    m.validate();
    return m;
  }

  ModelKind kind() const { return kind_; }
  double omega_min() const { return omega_min_; }
  double omega_max() const { return omega_max_; }
  const std::vector<double>& coefficients() const { return coeff_; }
  bool in_band(double omega) const { return omega >= omega_min_ && omega <= omega_max_; }

  double n_at(double omega) const {
    if (!in_band(omega))
      throw OutOfBand("omega " + std::to_string(omega) + " rad/s outside validity band [" +
                      std::to_string(omega_min_) + ", " + std::to_string(omega_max_) + "]");
    double n = 0.0;
    switch (kind_) {
      case ModelKind::Constant:
        n = coeff_[0];
        break;
      case ModelKind::Cauchy: {
        const double inv_l2 = 1.0 / lambda_um_sq(omega);
        double p = 1.0;
        for (double c : coeff_) {
          n += c * p;
          p *= inv_l2;
        }
        break;
      }
      case ModelKind::Sellmeier: {
        const double l2 = lambda_um_sq(omega);
        double n2 = 1.0;
        for (std::size_t i = 0; i + 1 < coeff_.size(); i += 2) {
          const double den = l2 - coeff_[i + 1];
          if (std::abs(den) < 1e-12 * l2)
            throw ModelSingular("sellmeier denominator vanishes at omega " +
                                std::to_string(omega));
          n2 += coeff_[i] * l2 / den;
        }
        if (!(n2 > 0.0)) throw ModelSingular("sellmeier n^2 <= 0 at omega " + std::to_string(omega));
        n = std::sqrt(n2);
        break;
      }
      case ModelKind::Tabulated:
        n = detail::pchip_eval(tab_omega_, tab_n_, tab_slope_, omega);
        break;
    }
    if (!(n > 0.0) || !std::isfinite(n))
      throw ModelSingular("n(omega) not positive and finite at omega " + std::to_string(omega));
    return n;
  }

  double dn_domega_at(double omega) const {
    if (!(omega > omega_min_ && omega < omega_max_))
      throw OutOfBand("dn/domega needs omega strictly inside the validity band");
    switch (kind_) {
      case ModelKind::Constant:
        return 0.0;
      case ModelKind::Cauchy: {
        // n = sum c_i lam^(-2i)  ->  dn/domega = (sum 2 i c_i lam^(-2i)) / omega
        const double inv_l2 = 1.0 / lambda_um_sq(omega);
        double s = 0.0, p = 1.0;
        for (std::size_t i = 1; i < coeff_.size(); ++i) {
          p *= inv_l2;
          s += 2.0 * static_cast<double>(i) * coeff_[i] * p;
        }
        return s / omega;
      }
      case ModelKind::Sellmeier: {
        const double l2 = lambda_um_sq(omega);
        const double n = n_at(omega);
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < coeff_.size(); i += 2) {
          const double den = l2 - coeff_[i + 1];
          s += coeff_[i] * coeff_[i + 1] / (den * den);
        }
        return l2 * s / (n * omega);
      }
      case ModelKind::Tabulated: {
        const double h = 1e-6 * omega;
        if (omega - h < omega_min_ || omega + h > omega_max_)
          throw DerivativeUnavailable("central difference stencil leaves the table at omega " +
                                      std::to_string(omega));
        return (n_at(omega + h) - n_at(omega - h)) / (2.0 * h);
      }
    }
    return 0.0;
  }

 private:
  DispersionModel(ModelKind kind, std::vector<double> coeff, double omega_min,
                  double omega_max)
      : kind_(kind), coeff_(std::move(coeff)), omega_min_(omega_min), omega_max_(omega_max) {}

  static double lambda_um_sq(double omega) {
    const double lam_um = 2.0 * si::pi * si::c / omega * 1e6;
    return lam_um * lam_um;
  }

  void validate() const {
    if (!(omega_min_ > 0.0) || !(omega_max_ > omega_min_))
      throw std::invalid_argument("validity band must satisfy 0 < omega_min < omega_max");
    // n > 0 and finite across the band, checked on a scan grid; per-evaluation
    // checks guard the points in between.
    const int scan = 64;
    for (int i = 0; i <= scan; ++i) {
      const double w = omega_min_ + (omega_max_ - omega_min_) * i / scan;
      (void)n_at(std::min(std::max(w, omega_min_), omega_max_));
    }
  }

  ModelKind kind_;
  std::vector<double> coeff_;
  double omega_min_, omega_max_;
  std::vector<double> tab_omega_, tab_n_, tab_slope_;
};

/// A fully evaluated optical mode at one frequency.
///   k = n omega / c,  v_ph = c/n,  v_gr = c/n_gr,  n_gr = n + omega dn/domega.
struct ModePoint {
  double omega = 0.0;  // rad/s
  double k = 0.0;      // 1/m
  double n = 1.0;
  double n_gr = 1.0;
  double v_ph = si::c;  // m/s
  double v_gr = si::c;  // m/s
  int polarization = +1;  // helicity, +1 or -1
};

inline double eval_n(const DispersionModel& model, double omega) { return model.n_at(omega); }

inline double eval_dn_domega(const DispersionModel& model, double omega) {
  return model.dn_domega_at(omega);
}

/// Builds a ModePoint directly from (n, n_gr), for synthetic modes where no
/// functional model is at hand (e.g. liquids known only through measured
/// indices).
inline ModePoint mode_point_from_indices(double omega, double n, double n_gr,
                                         int helicity) {
  if (helicity != 1 && helicity != -1) throw std::invalid_argument("helicity must be +1 or -1");
  if (!(omega > 0.0) || !(n > 0.0)) throw std::invalid_argument("omega and n must be positive");
  if (!(n_gr > 0.0)) throw NonPositiveGroupIndex("group index must be positive");
  ModePoint m;
  m.omega = omega;
  m.n = n;
  m.n_gr = n_gr;
  m.k = n * omega / si::c;
  m.v_ph = si::c / n;
  m.v_gr = si::c / n_gr;
  m.polarization = helicity;
  return m;
}

inline ModePoint mode_point(const DispersionModel& model, double omega, int helicity) {
  const double n = model.n_at(omega);
  const double dndw = model.dn_domega_at(omega);
  const double n_gr = n + omega * dndw;
  if (!(n_gr > 0.0))
    throw NonPositiveGroupIndex("n + omega dn/domega = " + std::to_string(n_gr) +
                                " at omega " + std::to_string(omega));
  return mode_point_from_indices(omega, n, n_gr, helicity);
}

/// Inverts k = n(omega) omega / c for omega. The dispersion relation must be
/// strictly increasing over the band; the root is bracketed on a 256-point
/// scan and bisected until the residual |n(w)w/c - k| / k <= 1e-12.
inline double invert_dispersion(const DispersionModel& model, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
  if (model.kind() == ModelKind::Constant) {
    const double omega = si::c * k / model.coefficients()[0];
    if (!model.in_band(omega))
      throw OutOfRange("k maps to omega outside the validity band");
    return omega;
  }
  const int scan = 256;
  const double w_lo = model.omega_min(), w_hi = model.omega_max();
  auto k_of = [&](double w) { return model.n_at(w) * w / si::c; };
  double prev_w = w_lo, prev_k = k_of(w_lo);
  if (k < prev_k) throw OutOfRange("k below the band's k-range");
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= scan; ++i) {
    const double w = w_lo + (w_hi - w_lo) * i / scan;
    const double kv = k_of(w);
    if (kv <= prev_k)
      throw NotMonotone("k(omega) non-increasing near omega " + std::to_string(w));
    if (!bracketed && k <= kv) {
      lo = prev_w;
      hi = w;
      bracketed = true;
      // keep scanning: the monotonicity check covers the whole band
    }
    prev_w = w;
    prev_k = kv;
  }
  if (!bracketed) throw OutOfRange("k above the band's k-range");
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (k_of(mid) < k)
      lo = mid;
    else
      hi = mid;
  }
  const double omega = 0.5 * (lo + hi);
  if (std::abs(k_of(omega) / k - 1.0) > 1e-12)
    throw Error("dispersion inversion failed to converge");
  return omega;
}

/// Weak-dispersion figure of merit  delta_omega |dn/domega| / |n(omega0)|.
/// The caller compares against a threshold; kWeakDispersionThreshold is the
/// default.
inline constexpr double kWeakDispersionThreshold = 0.01;

inline double check_weak_dispersion(const DispersionModel& model, double omega0,
                                    double delta_omega) {
  if (!(delta_omega >= 0.0)) throw std::invalid_argument("delta_omega must be >= 0");
  if (!model.in_band(omega0 - delta_omega) || !model.in_band(omega0 + delta_omega))
    throw OutOfBand("band [omega0 +/- delta_omega] leaves the validity band");
  if (model.kind() == ModelKind::Constant) return 0.0;
  return delta_omega * std::abs(model.dn_domega_at(omega0)) / std::abs(model.n_at(omega0));
}

}  // namespace dphot
