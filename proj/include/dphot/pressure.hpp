#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "dphot/constants.hpp"
#include "dphot/errors.hpp"

namespace dphot {

/// One liquid from the Jones-Leslie radiation-pressure experiment: the
/// measured in-liquid/in-air force ratio r_exp with standard deviation sigma,
/// and the liquid's phase and group indices at the 632.8 nm laser line.
struct LiquidRecord {
  std::string name;
  double r_exp = 0.0;
  double sigma = 0.0;
  double n = 1.0;
  double n_gr = 1.0;
};

/// Predicted in-liquid/in-air force ratios for the three momentum
/// assignments: r_can = n, r_m = n^2/n_gr, r_a = 1/n_gr.
struct RatioTriple {
  double r_can = 1.0;
  double r_m = 1.0;
  double r_a = 1.0;
};

inline RatioTriple predict_ratios(double n, double n_gr) {
  if (!(n >= 1.0) || !(n_gr > 0.0))
    throw std::invalid_argument("predict_ratios: need n >= 1 and n_gr > 0");
  return {n, n * n / n_gr, 1.0 / n_gr};
}

/// Force on a perfectly reflective mirror at normal incidence:
/// photon arrival rate P/(hbar omega_L) times momentum transfer 2|p|.
inline double radiation_force(double p_laser, double omega_l, double photon_momentum) {
  if (!(p_laser >= 0.0) || !(omega_l > 0.0))
    throw std::invalid_argument("radiation_force: need p_laser >= 0 and omega_l > 0");
  return p_laser / (si::hbar * omega_l) * 2.0 * std::abs(photon_momentum);
}

struct LiquidScore {
  LiquidRecord record;
  RatioTriple ratios;
  double dev_can = 0.0;  // (r_can - r_exp) / sigma, signed
  double dev_m = 0.0;
  double dev_a = 0.0;
};

struct PressureReport {
  std::vector<LiquidScore> rows;
};

/// Rounds a sigma-deviation to 0.1 sigma for display; full precision is kept
/// in the report itself.
inline double round_sigma_display(double dev) { return std::round(dev * 10.0) / 10.0; }

inline void validate(const LiquidRecord& r) {
  if (!(r.sigma > 0.0) || !(r.r_exp > 0.0) || !(r.n >= 1.0) || !(r.n_gr >= 1.0))
    throw InvalidRecord("liquid record '" + r.name + "' violates sigma>0, r_exp>0, n>=1, n_gr>=1");
}

inline PressureReport score_against_experiment(const std::vector<LiquidRecord>& records) {
  if (records.empty()) throw InvalidRecord("no liquid records");
  PressureReport report;
  report.rows.reserve(records.size());
  for (const auto& rec : records) {
    validate(rec);
    LiquidScore s;
    s.record = rec;
    s.ratios = predict_ratios(rec.n, rec.n_gr);
    s.dev_can = (s.ratios.r_can - rec.r_exp) / rec.sigma;
    s.dev_m = (s.ratios.r_m - rec.r_exp) / rec.sigma;
    s.dev_a = (s.ratios.r_a - rec.r_exp) / rec.sigma;
    report.rows.push_back(std::move(s));
  }
  return report;
}

/// One row of the Jones-Leslie data set (R. V. Jones and B. Leslie,
/// Proc. R. Soc. Lond. A 360, 347 (1978)): measured ratio, its standard
/// deviation, the reference predictions for the three momentum assignments,
/// and the reference deviations in multiples of sigma. dev_a values carry
/// integer precision; the others one decimal.
struct JonesLeslieRow {
  const char* name;
  double r_exp, sigma;
  double r_can, r_m, r_a;
  double dev_can, dev_m, dev_a;
};

inline constexpr std::array<JonesLeslieRow, 7> kJonesLeslieTable{{
    {"methanol", 1.3281, 0.0018, 1.3275, 1.3134, 0.7453, -0.3, -8.2, -324},
    {"acetone", 1.3553, 0.0018, 1.3563, 1.3359, 0.7262, +0.6, -10.8, -350},
    {"ethanol", 1.3594, 0.0022, 1.3606, 1.3437, 0.7259, +0.5, -7.1, -288},
    {"isopropanol", 1.3762, 0.0020, 1.3756, 1.3577, 0.7175, -0.3, -9.3, -329},
    {"CCl4", 1.4614, 0.0021, 1.4581, 1.4313, 0.6732, -1.6, -14.3, -375},
    {"toluene", 1.4898, 0.0018, 1.4921, 1.4528, 0.6525, +1.3, -20.5, -465},
    {"benzene", 1.4970, 0.0021, 1.4974, 1.4518, 0.6475, +0.2, -21.5, -405},
}};

/// Liquid records reconstructed from the data set: n is the reference
/// canonical ratio, n_gr the reciprocal of the reference Abraham ratio (the
/// group index itself is not tabulated).
inline std::vector<LiquidRecord> jones_leslie_records() {
  std::vector<LiquidRecord> recs;
  recs.reserve(kJonesLeslieTable.size());
  for (const auto& row : kJonesLeslieTable)
    recs.push_back({row.name, row.r_exp, row.sigma, row.r_can, 1.0 / row.r_a});
  return recs;
}

}  // namespace dphot
