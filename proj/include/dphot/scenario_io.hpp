#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dphot/fock.hpp"
#include "dphot/model_io.hpp"

namespace dphot {

/// A Fock evaluation scenario: modes, truncation, quantization volume,
/// optional carrier bands, and the number states to evaluate.
///
/// File format (line oriented, '#' comments):
///   model     = bk7                    # alias or path
///   volume_m3 = 1e-6
///   n_max     = 3                      # scalar or [per, mode, list]
///   mode      = 632.8  0 0 1  +1       # lambda_nm  dir_x dir_y dir_z  helicity
///   mode      = 400.0  0 0 1  -1  vacuum   # optional trailing per-mode model
///   band_nm   = [600, 700]             # optional, repeatable
///   state     = 1 0                    # occupation per mode, repeatable
struct ScenarioMode {
  double lambda_nm = 632.8;
  Vec3 direction{0.0, 0.0, 1.0};
  int helicity = +1;
  std::string model_ref;  // empty: use the scenario-level model
};

struct Scenario {
  std::string model_ref = "vacuum";
  double volume = 1.0;
  std::vector<int> n_max{1};
  std::vector<ScenarioMode> modes;
  std::vector<std::pair<double, double>> bands_nm;
  std::vector<std::vector<int>> states;

  FockRegister build() const {
    const DispersionModel base = load_model(model_ref);
    ModeSet set;
    set.volume = volume;
    for (const auto& sm : modes) {
      const double norm = std::sqrt(dot(sm.direction, sm.direction));
      if (!(norm > 0.0)) throw ParseError("mode direction must be nonzero");
      const DispersionModel model = sm.model_ref.empty() ? base : load_model(sm.model_ref);
      FockMode fm;
      fm.point = mode_point(model, si::omega_from_lambda_nm(sm.lambda_nm), sm.helicity);
      fm.khat = {sm.direction[0] / norm, sm.direction[1] / norm, sm.direction[2] / norm};
      set.modes.push_back(fm);
    }
    FockRegister reg(std::move(set), n_max);
    if (!bands_nm.empty()) {
      std::vector<std::pair<double, double>> bands;
      for (const auto& [lo_nm, hi_nm] : bands_nm) bands.push_back(band_from_nm(lo_nm, hi_nm));
      reg.declare_carrier_bands(std::move(bands));
    }
    return reg;
  }
};

inline Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  sc.n_max.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("scenario line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const std::string ctx = "scenario line " + std::to_string(lineno);
    if (key == "model") {
      sc.model_ref = value;
    } else if (key == "volume_m3") {
      sc.volume = detail::parse_number(value, ctx);
    } else if (key == "n_max") {
      sc.n_max.clear();
      for (double v : detail::parse_array(value, ctx)) sc.n_max.push_back(static_cast<int>(v));
    } else if (key == "mode") {
      std::istringstream ss(value);
      ScenarioMode sm;
      if (!(ss >> sm.lambda_nm >> sm.direction[0] >> sm.direction[1] >> sm.direction[2] >>
            sm.helicity))
        throw ParseError(ctx + ": mode needs 'lambda_nm dx dy dz helicity [model]'");
      ss >> sm.model_ref;  // optional per-mode model reference
      sc.modes.push_back(std::move(sm));
    } else if (key == "band_nm") {
      const auto b = detail::parse_array(value, ctx);
      if (b.size() != 2) throw ParseError(ctx + ": band_nm needs two entries");
      sc.bands_nm.emplace_back(b[0], b[1]);
    } else if (key == "state") {
      std::istringstream ss(value);
      std::vector<int> occ;
      int v = 0;
      while (ss >> v) occ.push_back(v);
      if (occ.empty()) throw ParseError(ctx + ": empty state");
      sc.states.push_back(std::move(occ));
    } else {
      throw ParseError(ctx + ": unknown key '" + key + "'");
    }
  }
  if (sc.modes.empty()) throw ParseError("scenario declares no modes");
  if (sc.n_max.empty()) sc.n_max.push_back(1);
  for (auto& occ : sc.states)
    if (occ.size() != sc.modes.size())
      throw ParseError("state occupation count must match the number of modes");
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

}  // namespace dphot
