// dphot: photon momentum, radiation pressure, and wave-packet transport in
// weakly dispersive dielectrics. Subcommands mirror the library modules;
// every subcommand supports text, csv, and json output with SI units in
// headers. Exit codes: 0 success, 1 domain error (out-of-band, infeasible),
// 2 usage or file error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dphot/constants.hpp"
#include "dphot/dispersion.hpp"
#include "dphot/fock.hpp"
#include "dphot/model_io.hpp"
#include "dphot/momentum.hpp"
#include "dphot/phasematch.hpp"
#include "dphot/pressure.hpp"
#include "dphot/scenario_io.hpp"
#include "dphot/wavepacket.hpp"

using json = nlohmann::ordered_json;
using namespace dphot;

namespace {

// 6 significant digits for text, full precision elsewhere
std::string fmt6(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

std::string fmt17(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

struct Output {
  std::string format = "text";  // text | csv | json
  std::string path;             // empty: stdout

  void emit(const std::string& body) const {
    if (path.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file '" + path + "'");
    out << body;
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--output", out.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", out.path, "Write output to a file instead of stdout");
}

/// Wavelength ingestion in nm or um; the um flag overrides and excludes the
/// nm one.
struct WavelengthOpt {
  double nm;
  std::optional<double> um{};

  void add(CLI::App* cmd, const std::string& stem, const std::string& what) {
    auto* nm_opt =
        cmd->add_option("--" + stem + "-nm", nm, what + " in nm")->capture_default_str();
    auto* um_opt = cmd->add_option("--" + stem + "-um", um, what + " in um");
    nm_opt->excludes(um_opt);
    um_opt->excludes(nm_opt);
  }

  double value_nm() const { return um ? *um * 1e3 : nm; }
};

json mode_json(const ModePoint& mp) {
  return json{{"lambda_nm", si::lambda_nm_from_omega(mp.omega)},
              {"omega_rad_s", mp.omega},
              {"k_inv_m", mp.k},
              {"n", mp.n},
              {"n_gr", mp.n_gr},
              {"v_ph_m_s", mp.v_ph},
              {"v_gr_m_s", mp.v_gr},
              {"helicity", mp.polarization}};
}

// ----------------------------------------------------------------- dispersion

int run_dispersion(const std::string& model_ref, double lambda_nm, double delta_omega_rel,
                   const Output& out) {
  const auto model = load_model(model_ref);
  const double omega = si::omega_from_lambda_nm(lambda_nm);
  const auto mp = mode_point(model, omega, +1);
  double weak = std::numeric_limits<double>::quiet_NaN();
  try {
    weak = check_weak_dispersion(model, omega, delta_omega_rel * omega);
  } catch (const Error&) {
    // band too narrow for the requested width; reported as null/blank
  }
  std::ostringstream body;
  if (out.format == "json") {
    json j{{"model", to_string(model.kind())},
           {"band_omega_rad_s", {model.omega_min(), model.omega_max()}},
           {"mode", mode_json(mp)},
           {"dn_domega_s", (mp.n_gr - mp.n) / mp.omega},
           {"delta_omega_rel", delta_omega_rel},
           {"weak_dispersion_ratio", std::isnan(weak) ? json() : json(weak)},
           {"weak_dispersion_threshold", kWeakDispersionThreshold}};
    body << j.dump(2) << "\n";
  } else if (out.format == "csv") {
    body << "lambda_nm,omega_rad_s,k_inv_m,n,n_gr,v_ph_m_s,v_gr_m_s,weak_dispersion_ratio\n"
         << fmt17(lambda_nm) << ',' << fmt17(mp.omega) << ',' << fmt17(mp.k) << ','
         << fmt17(mp.n) << ',' << fmt17(mp.n_gr) << ',' << fmt17(mp.v_ph) << ','
         << fmt17(mp.v_gr) << ',' << (std::isnan(weak) ? "" : fmt17(weak)) << "\n";
  } else {
    body << "model           " << to_string(model.kind()) << "\n"
         << "lambda          " << fmt6(lambda_nm) << " nm\n"
         << "omega           " << fmt6(mp.omega) << " rad/s\n"
         << "n               " << fmt6(mp.n) << "\n"
         << "n_gr            " << fmt6(mp.n_gr) << "\n"
         << "k               " << fmt6(mp.k) << " 1/m\n"
         << "v_ph            " << fmt6(mp.v_ph) << " m/s\n"
         << "v_gr            " << fmt6(mp.v_gr) << " m/s\n";
    if (!std::isnan(weak))
      body << "weak dispersion " << fmt6(weak) << " at delta_omega/omega = "
           << fmt6(delta_omega_rel) << " (threshold " << fmt6(kWeakDispersionThreshold)
           << ")\n";
  }
  out.emit(body.str());
  return 0;
}

// ------------------------------------------------------------------- momentum

int run_momentum(const std::string& model_ref, double lambda_nm, int helicity,
                 std::optional<double> n_opt, std::optional<double> n_gr_opt,
                 const Output& out) {
  const double omega = si::omega_from_lambda_nm(lambda_nm);
  ModePoint mp;
  if (n_opt) {
    mp = mode_point_from_indices(omega, *n_opt, n_gr_opt.value_or(*n_opt), helicity);
  } else {
    mp = mode_point(load_model(model_ref), omega, helicity);
  }
  const auto t = momentum_triple(mp);
  const auto cls = classify_equalities(mp);
  const double planck = planck_inertia_ratio(t);
  std::ostringstream body;
  if (out.format == "json") {
    json j{{"mode", mode_json(mp)},
           {"p_can_kg_m_s", t.p_can},
           {"p_abraham_kg_m_s", t.p_abraham},
           {"p_minkowski_kg_m_s", t.p_minkowski},
           {"m_eff_abraham_kg", t.m_eff_abraham},
           {"m_eff_minkowski_kg", t.m_eff_minkowski},
           {"minkowski_over_abraham", t.p_minkowski / t.p_abraham},
           {"planck_ratio_s2_m2", planck},
           {"planck_ratio_times_c2", planck * si::c * si::c},
           {"equality_class", to_string(cls)}};
    body << j.dump(2) << "\n";
  } else if (out.format == "csv") {
    body << "lambda_nm,n,n_gr,p_can_kg_m_s,p_abraham_kg_m_s,p_minkowski_kg_m_s,"
            "m_eff_abraham_kg,m_eff_minkowski_kg,equality_class\n"
         << fmt17(lambda_nm) << ',' << fmt17(mp.n) << ',' << fmt17(mp.n_gr) << ','
         << fmt17(t.p_can) << ',' << fmt17(t.p_abraham) << ',' << fmt17(t.p_minkowski)
         << ',' << fmt17(t.m_eff_abraham) << ',' << fmt17(t.m_eff_minkowski) << ','
         << to_string(cls) << "\n";
  } else {
    body << "mode: lambda " << fmt6(lambda_nm) << " nm, n " << fmt6(mp.n) << ", n_gr "
         << fmt6(mp.n_gr) << ", helicity " << (mp.polarization > 0 ? "+1" : "-1") << "\n"
         << "p_can           " << fmt6(t.p_can) << " kg m/s\n"
         << "p_abraham       " << fmt6(t.p_abraham) << " kg m/s\n"
         << "p_minkowski     " << fmt6(t.p_minkowski) << " kg m/s\n"
         << "m_eff_abraham   " << fmt6(t.m_eff_abraham) << " kg\n"
         << "m_eff_minkowski " << fmt6(t.m_eff_minkowski) << " kg\n"
         << "p_M/p_A         " << fmt6(t.p_minkowski / t.p_abraham) << "  (n^2 = "
         << fmt6(mp.n * mp.n) << ")\n"
         << "planck ratio    " << fmt6(planck) << " s^2/m^2  (x c^2 = "
         << fmt6(planck * si::c * si::c) << ")\n"
         << "equality class  " << to_string(cls) << "\n";
  }
  out.emit(body.str());
  return 0;
}

// ------------------------------------------------------------------- pressure

int run_pressure_table(const Output& out) {
  const auto report = score_against_experiment(jones_leslie_records());
  std::ostringstream body;
  if (out.format == "json") {
    json rows = json::array();
    for (const auto& s : report.rows) {
      rows.push_back(json{{"name", s.record.name},
                          {"r_exp", s.record.r_exp},
                          {"sigma", s.record.sigma},
                          {"n", s.record.n},
                          {"n_gr", s.record.n_gr},
                          {"r_can", s.ratios.r_can},
                          {"r_minkowski", s.ratios.r_m},
                          {"r_abraham", s.ratios.r_a},
                          {"dev_can_sigma", s.dev_can},
                          {"dev_minkowski_sigma", s.dev_m},
                          {"dev_abraham_sigma", s.dev_a}});
    }
    body << json{{"liquids", rows}}.dump(2) << "\n";
  } else if (out.format == "csv") {
    body << "name,r_exp,sigma,r_can,r_m,r_a,dev_can_sigma,dev_m_sigma,dev_a_sigma\n";
    for (const auto& s : report.rows)
      body << s.record.name << ',' << fmt17(s.record.r_exp) << ',' << fmt17(s.record.sigma)
           << ',' << fmt17(s.ratios.r_can) << ',' << fmt17(s.ratios.r_m) << ','
           << fmt17(s.ratios.r_a) << ',' << fmt17(s.dev_can) << ',' << fmt17(s.dev_m)
           << ',' << fmt17(s.dev_a) << "\n";
  } else {
    body << "radiation-pressure ratios, liquid vs air (deviations in sigma)\n";
    body << std::left << std::setw(13) << "liquid" << std::right << std::setw(9) << "R_exp"
         << std::setw(9) << "sigma" << std::setw(10) << "R_can" << std::setw(8) << "dev"
         << std::setw(10) << "R_M" << std::setw(8) << "dev" << std::setw(10) << "R_A"
         << std::setw(9) << "dev" << "\n";
    for (const auto& s : report.rows) {
      std::ostringstream line;
      line << std::left << std::setw(13) << s.record.name << std::right << std::fixed
           << std::setprecision(4) << std::setw(9) << s.record.r_exp << std::setw(9)
           << s.record.sigma << std::setw(10) << s.ratios.r_can << std::setprecision(1)
           << std::setw(8) << round_sigma_display(s.dev_can) << std::setprecision(4)
           << std::setw(10) << s.ratios.r_m << std::setprecision(1) << std::setw(8)
           << round_sigma_display(s.dev_m) << std::setprecision(4) << std::setw(10)
           << s.ratios.r_a << std::setprecision(1) << std::setw(9)
           << round_sigma_display(s.dev_a);
      body << line.str() << "\n";
    }
  }
  out.emit(body.str());
  return 0;
}

int run_pressure_force(double power_w, double lambda_nm, const std::string& picture,
                       const std::string& model_ref, std::optional<double> n_opt,
                       std::optional<double> n_gr_opt, const Output& out) {
  const double omega = si::omega_from_lambda_nm(lambda_nm);
  ModePoint mp;
  if (n_opt)
    mp = mode_point_from_indices(omega, *n_opt, n_gr_opt.value_or(*n_opt), +1);
  else
    mp = mode_point(load_model(model_ref), omega, +1);
  const auto t = momentum_triple(mp);
  const double p = picture == "abraham"     ? t.p_abraham
                   : picture == "minkowski" ? t.p_minkowski
                                            : t.p_can;
  const double force = radiation_force(power_w, omega, p);
  std::ostringstream body;
  if (out.format == "json") {
    body << json{{"power_w", power_w},
                 {"lambda_nm", lambda_nm},
                 {"picture", picture},
                 {"photon_momentum_kg_m_s", p},
                 {"force_n", force}}
                .dump(2)
         << "\n";
  } else if (out.format == "csv") {
    body << "power_w,lambda_nm,picture,photon_momentum_kg_m_s,force_n\n"
         << fmt17(power_w) << ',' << fmt17(lambda_nm) << ',' << picture << ',' << fmt17(p)
         << ',' << fmt17(force) << "\n";
  } else {
    body << "perfect mirror, normal incidence\n"
         << "laser power     " << fmt6(power_w) << " W\n"
         << "photon momentum " << fmt6(p) << " kg m/s (" << picture << ")\n"
         << "force           " << fmt6(force) << " N\n";
  }
  out.emit(body.str());
  return 0;
}

// ------------------------------------------------------------------ phasematch

int run_phasematch(const std::string& model_ref, double pump_nm, const std::string& geometry,
                   double tol, int scan_points, const Output& out) {
  const auto model = load_model(model_ref);
  const auto geo = geometry == "noncollinear" ? SPDCProblem::Geometry::PlanarNoncollinear
                                              : SPDCProblem::Geometry::Collinear;
  const auto problem = SPDCProblem::make(model, si::omega_from_lambda_nm(pump_nm), geo);

  if (scan_points > 0) {
    std::ostringstream body;
    body << "omega1_rad_s,omega2_rad_s,mismatch_inv_m\n";
    for (int i = 0; i <= scan_points; ++i) {
      const double w1 = problem.omega1_min +
                        (problem.omega1_max - problem.omega1_min) * i / scan_points;
      const double w2 = problem.pump.omega - w1;
      body << fmt17(w1) << ',' << fmt17(w2) << ','
           << fmt17(momentum_mismatch(problem, w1, 0.0, 0.0)) << "\n";
    }
    out.emit(body.str());
    return 0;
  }

  const MatchResult result = geo == SPDCProblem::Geometry::Collinear
                                 ? solve_collinear(problem, tol)
                                 : solve_noncollinear_degenerate(problem, tol);
  std::ostringstream body;
  const bool feasible = std::holds_alternative<MatchSolution>(result);
  if (out.format == "json") {
    json j{{"geometry", geometry}, {"pump_nm", pump_nm}, {"tol_inv_m", tol},
           {"feasible", feasible}};
    if (feasible) {
      const auto& s = std::get<MatchSolution>(result);
      j["omega1_rad_s"] = s.omega1;
      j["omega2_rad_s"] = s.omega2;
      j["lambda1_nm"] = si::lambda_nm_from_omega(s.omega1);
      j["lambda2_nm"] = si::lambda_nm_from_omega(s.omega2);
      j["theta1_rad"] = s.theta1;
      j["theta2_rad"] = s.theta2;
      j["residual_inv_m"] = s.residual;
    } else {
      const auto& inf = std::get<Infeasible>(result);
      j["min_mismatch_inv_m"] = inf.min_mismatch;
      j["omega1_at_min_rad_s"] = inf.omega1_at_min;
    }
    body << j.dump(2) << "\n";
  } else if (out.format == "csv") {
    if (feasible) {
      const auto& s = std::get<MatchSolution>(result);
      body << "feasible,omega1_rad_s,omega2_rad_s,theta1_rad,theta2_rad,residual_inv_m\n"
           << "1," << fmt17(s.omega1) << ',' << fmt17(s.omega2) << ',' << fmt17(s.theta1)
           << ',' << fmt17(s.theta2) << ',' << fmt17(s.residual) << "\n";
    } else {
      const auto& inf = std::get<Infeasible>(result);
      body << "feasible,min_mismatch_inv_m,omega1_at_min_rad_s\n"
           << "0," << fmt17(inf.min_mismatch) << ',' << fmt17(inf.omega1_at_min) << "\n";
    }
  } else {
    if (feasible) {
      const auto& s = std::get<MatchSolution>(result);
      body << "phase matching feasible (" << geometry << ")\n"
           << "omega1   " << fmt6(s.omega1) << " rad/s (" << fmt6(si::lambda_nm_from_omega(s.omega1))
           << " nm)\n"
           << "omega2   " << fmt6(s.omega2) << " rad/s (" << fmt6(si::lambda_nm_from_omega(s.omega2))
           << " nm)\n"
           << "theta1   " << fmt6(s.theta1) << " rad\n"
           << "theta2   " << fmt6(s.theta2) << " rad\n"
           << "residual " << fmt6(s.residual) << " 1/m\n";
    } else {
      const auto& inf = std::get<Infeasible>(result);
      body << "phase matching infeasible (" << geometry << ")\n"
           << "minimum |mismatch| " << fmt6(inf.min_mismatch) << " 1/m at omega1 "
           << fmt6(inf.omega1_at_min) << " rad/s ("
           << fmt6(si::lambda_nm_from_omega(inf.omega1_at_min)) << " nm)\n";
    }
  }
  out.emit(body.str());
  return feasible ? 0 : 1;
}

// ----------------------------------------------------------------------- fock

Scenario default_scenario() {
  Scenario sc;
  sc.model_ref = "bk7";
  sc.volume = 1e-6;
  sc.n_max = {3, 3};
  sc.modes = {{632.8, {0.0, 0.0, 1.0}, +1, ""}, {400.0, {0.0, 0.0, 1.0}, -1, ""}};
  sc.states = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}};
  return sc;
}

int run_fock(const std::string& scenario_path, const Output& out) {
  const Scenario sc = scenario_path.empty() ? default_scenario() : load_scenario(scenario_path);
  const FockRegister reg = sc.build();
  auto states = sc.states;
  if (states.empty()) {
    states.push_back(std::vector<int>(reg.n_modes(), 0));
    for (std::size_t m = 0; m < reg.n_modes(); ++m) {
      std::vector<int> occ(reg.n_modes(), 0);
      occ[m] = 1;
      states.push_back(occ);
    }
  }

  const auto h = hamiltonian(reg);
  const auto p_can = momentum_operator(reg, MomentumPicture::Canonical);
  const auto p_a = momentum_operator(reg, MomentumPicture::Abraham);
  const auto p_m = momentum_operator(reg, MomentumPicture::Minkowski);
  const auto j_spin = spin_angular_momentum(reg);

  auto diag3 = [&](const std::array<OperatorMatrix, 3>& ops, std::size_t idx) {
    const auto i = static_cast<Eigen::Index>(idx);
    return std::array<double, 3>{ops[0].mat(i, i).real(), ops[1].mat(i, i).real(),
                                 ops[2].mat(i, i).real()};
  };

  json jstates = json::array();
  std::ostringstream text;
  text << "register: " << reg.n_modes() << " modes, dim " << reg.dim() << "\n";
  for (std::size_t m = 0; m < reg.n_modes(); ++m) {
    const auto& fm = reg.mode_set().modes[m];
    text << "  mode " << m << ": lambda " << fmt6(si::lambda_nm_from_omega(fm.point.omega))
         << " nm, n " << fmt6(fm.point.n) << ", n_gr " << fmt6(fm.point.n_gr) << ", khat ["
         << fmt6(fm.khat[0]) << ' ' << fmt6(fm.khat[1]) << ' ' << fmt6(fm.khat[2])
         << "], s " << (fm.point.polarization > 0 ? "+1" : "-1") << ", n_max "
         << reg.n_max()[m] << "\n";
  }
  const double dev_can = verify_translation_generator(reg, MomentumPicture::Canonical);
  const double dev_a = verify_translation_generator(reg, MomentumPicture::Abraham);
  const double dev_m = verify_translation_generator(reg, MomentumPicture::Minkowski);
  text << "translation-generator deviation: canonical " << fmt6(dev_can) << ", abraham "
       << fmt6(dev_a) << ", minkowski " << fmt6(dev_m) << "\n";
  text << "state        E [J]          Pz_can        Pz_A          Pz_M          Jz_spin [J s]\n";

  for (const auto& occ : states) {
    const std::size_t idx = reg.index_of(occ);
    const auto i = static_cast<Eigen::Index>(idx);
    const bool allowed = reg.state_allowed(occ);
    const double energy = h.mat(i, i).real();
    const auto pc = diag3(p_can, idx);
    const auto pa = diag3(p_a, idx);
    const auto pm = diag3(p_m, idx);
    const auto js = diag3(j_spin, idx);
    jstates.push_back(json{{"occupations", occ},
                           {"allowed", allowed},
                           {"energy_j", energy},
                           {"p_can_kg_m_s", pc},
                           {"p_abraham_kg_m_s", pa},
                           {"p_minkowski_kg_m_s", pm},
                           {"j_spin_j_s", js}});
    std::ostringstream occs;
    occs << "|";
    for (std::size_t m = 0; m < occ.size(); ++m) occs << occ[m] << (m + 1 < occ.size() ? "," : "");
    occs << ">";
    text << std::left << std::setw(12) << occs.str() << std::right << " " << std::setw(13)
         << fmt6(energy) << "  " << std::setw(12) << fmt6(pc[2]) << "  " << std::setw(12)
         << fmt6(pa[2]) << "  " << std::setw(12) << fmt6(pm[2]) << "  " << std::setw(12)
         << fmt6(js[2]) << (allowed ? "" : "  [out of band]") << "\n";
  }

  std::ostringstream body;
  if (out.format == "json") {
    json jmodes = json::array();
    for (const auto& fm : reg.mode_set().modes) {
      json jm = mode_json(fm.point);
      jm["khat"] = fm.khat;
      jmodes.push_back(jm);
    }
    body << json{{"dim", reg.dim()},
                 {"modes", jmodes},
                 {"translation_generator_deviation",
                  {{"canonical", dev_can}, {"abraham", dev_a}, {"minkowski", dev_m}}},
                 {"states", jstates}}
                .dump(2)
         << "\n";
  } else if (out.format == "csv") {
    body << "occupations,allowed,energy_j,pz_can,pz_abraham,pz_minkowski,jz_spin\n";
    for (const auto& js : jstates) {
      std::string occs;
      for (const auto& v : js["occupations"]) occs += std::to_string(int(v)) + " ";
      if (!occs.empty()) occs.pop_back();
      body << '"' << occs << "\"," << (js["allowed"].get<bool>() ? 1 : 0) << ','
           << fmt17(js["energy_j"].get<double>()) << ','
           << fmt17(js["p_can_kg_m_s"][2].get<double>()) << ','
           << fmt17(js["p_abraham_kg_m_s"][2].get<double>()) << ','
           << fmt17(js["p_minkowski_kg_m_s"][2].get<double>()) << ','
           << fmt17(js["j_spin_j_s"][2].get<double>()) << "\n";
    }
  } else {
    body << text.str();
  }
  out.emit(body.str());
  return 0;
}

// ------------------------------------------------------------------ wavepacket

int run_wavepacket(const std::string& model_ref, double lambda_nm, double delta_k_rel,
                   int grid_n, double domain_m, double area_m2, std::vector<double> times,
                   const std::string& snapshot_prefix, const Output& out) {
  const auto model = load_model(model_ref);
  const auto packet =
      make_gaussian_packet(model, lambda_nm, delta_k_rel, grid_n, domain_m, area_m2);
  const double v_gr_expected = si::c / packet.n_gr[packet.carrier_index];
  if (times.empty()) {
    const double span = 0.25 * domain_m / v_gr_expected;
    times = {0.0, 0.5 * span, span};
  }
  std::sort(times.begin(), times.end());

  std::vector<PacketSnapshot> snaps;
  snaps.reserve(times.size());
  for (double t : times) snaps.push_back(propagate(packet, t));

  if (!snapshot_prefix.empty()) {
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      std::ofstream csv(snapshot_prefix + "_" + std::to_string(i) + ".csv");
      if (!csv) throw ParseError("cannot open snapshot file for writing");
      csv << "z_m,re_a,im_a,abs2_a\n";
      for (std::size_t m = 0; m < snaps[i].field.size(); ++m)
        csv << fmt17(snaps[i].z_at(m)) << ',' << fmt17(snaps[i].field[m].real()) << ','
            << fmt17(snaps[i].field[m].imag()) << ',' << fmt17(std::norm(snaps[i].field[m]))
            << "\n";
    }
  }

  // centroid trajectory, unwrapped across the periodic boundary
  std::vector<double> centroids{snaps.front().centroid};
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    const double d =
        detail::wrap_diff(snaps[i].centroid - snaps[i - 1].centroid, packet.domain_length);
    centroids.push_back(centroids[i - 1] + d);
  }
  const double measured_v =
      snaps.size() > 1 && times.back() > times.front()
          ? (centroids.back() - centroids.front()) / (times.back() - times.front())
          : 0.0;

  const double u_spectral = energy_spectral(packet);
  const double quanta = total_quanta(packet);

  std::ostringstream body;
  if (out.format == "csv") {
    body << "time_s,centroid_m,centroid_unwrapped_m,spread_m,energy_realspace_j\n";
    for (std::size_t i = 0; i < snaps.size(); ++i)
      body << fmt17(times[i]) << ',' << fmt17(snaps[i].centroid) << ','
           << fmt17(centroids[i]) << ',' << fmt17(snaps[i].spread) << ','
           << fmt17(snaps[i].energy) << "\n";
  } else if (out.format == "text") {
    body << "carrier: lambda " << fmt6(si::lambda_nm_from_omega(packet.carrier_omega))
         << " nm, n " << fmt6(packet.carrier_n) << ", n_gr "
         << fmt6(packet.n_gr[packet.carrier_index]) << "\n"
         << "grid: N " << packet.n_samples << ", L " << fmt6(packet.domain_length)
         << " m, dk " << fmt6(packet.dk) << " 1/m\n"
         << "spectral energy " << fmt6(u_spectral) << " J, total quanta " << fmt6(quanta)
         << "\n"
         << "time [s]      centroid [m]  energy_rs [J]\n";
    for (std::size_t i = 0; i < snaps.size(); ++i)
      body << std::left << std::setw(13) << fmt6(times[i]) << " " << std::setw(13)
           << fmt6(centroids[i]) << " " << std::setw(13) << fmt6(snaps[i].energy) << "\n";
    body << "measured centroid velocity " << fmt6(measured_v) << " m/s\n"
         << "expected v_gr(carrier)     " << fmt6(v_gr_expected) << " m/s\n";
  } else {
    json jt = json::array(), jc = json::array(), je = json::array(), js = json::array();
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      jt.push_back(times[i]);
      jc.push_back(centroids[i]);
      je.push_back(snaps[i].energy);
      js.push_back(snaps[i].spread);
    }
    body << json{{"carrier",
                  {{"lambda_nm", si::lambda_nm_from_omega(packet.carrier_omega)},
                   {"omega_rad_s", packet.carrier_omega},
                   {"n", packet.carrier_n},
                   {"n_gr", packet.n_gr[packet.carrier_index]}}},
                 {"grid", {{"n_samples", packet.n_samples},
                           {"domain_m", packet.domain_length},
                           {"dk_inv_m", packet.dk}}},
                 {"times_s", jt},
                 {"centroids_m", jc},
                 {"spreads_m", js},
                 {"energy_spectral_j", u_spectral},
                 {"energies_realspace_j", je},
                 {"total_quanta", quanta},
                 {"measured_velocity_m_s", measured_v},
                 {"expected_v_gr_m_s", v_gr_expected}}
                .dump(2)
         << "\n";
  }
  out.emit(body.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photon momentum and quantized-field bookkeeping in dispersive dielectrics"};
  app.require_subcommand(1);

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "Evaluate a dispersion model at one wavelength");
  std::string disp_model = "bk7";
  WavelengthOpt disp_lambda{632.8};
  double disp_dw_rel = 1e-3;
  Output disp_out;
  disp->add_option("--model", disp_model, "Model alias (vacuum, bk7) or file path")
      ->capture_default_str();
  disp_lambda.add(disp, "lambda", "Vacuum wavelength");
  disp->add_option("--delta-omega-rel", disp_dw_rel,
                   "Relative spectral half-width for the weak-dispersion check")
      ->capture_default_str();
  add_output_flags(disp, disp_out);

  // momentum
  auto* mom = app.add_subcommand("momentum", "Single-photon momenta in the three pictures");
  std::string mom_model = "bk7";
  WavelengthOpt mom_lambda{632.8};
  int mom_helicity = +1;
  std::optional<double> mom_n, mom_ngr;
  Output mom_out;
  mom->add_option("--model", mom_model, "Model alias or file path")->capture_default_str();
  mom_lambda.add(mom, "lambda", "Vacuum wavelength");
  mom->add_option("--helicity", mom_helicity, "Helicity, +1 or -1")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  mom->add_option("--n", mom_n, "Phase index (bypasses --model)");
  mom->add_option("--n-gr", mom_ngr, "Group index (with --n; defaults to n)");
  add_output_flags(mom, mom_out);

  // pressure
  auto* pres = app.add_subcommand("pressure", "Radiation-pressure ratios and forces");
  bool pres_table = false;
  std::optional<double> pres_power;
  WavelengthOpt pres_lambda{632.8};
  std::string pres_picture = "canonical", pres_model = "vacuum";
  std::optional<double> pres_n, pres_ngr;
  Output pres_out;
  pres->add_flag("--reproduce-table", pres_table,
                 "Reproduce the immersed-mirror ratio table with sigma deviations");
  pres->add_option("--power-w", pres_power, "Laser power in W (force calculation)");
  pres_lambda.add(pres, "lambda", "Vacuum wavelength");
  pres->add_option("--picture", pres_picture, "Momentum picture for the force")
      ->check(CLI::IsMember({"canonical", "abraham", "minkowski"}))
      ->capture_default_str();
  pres->add_option("--model", pres_model, "Model alias or file path")->capture_default_str();
  pres->add_option("--n", pres_n, "Phase index (bypasses --model)");
  pres->add_option("--n-gr", pres_ngr, "Group index (with --n; defaults to n)");
  add_output_flags(pres, pres_out);

  // phasematch
  auto* pm = app.add_subcommand("phasematch", "Down-conversion phase-matching solvers");
  std::string pm_model = "bk7", pm_geometry = "collinear";
  WavelengthOpt pm_pump{400.0};
  double pm_tol = 1e-2;
  int pm_scan = 0;
  Output pm_out;
  pm->add_option("--model", pm_model, "Model alias or file path")->capture_default_str();
  pm_pump.add(pm, "pump", "Pump vacuum wavelength");
  pm->add_option("--geometry", pm_geometry, "collinear or noncollinear (degenerate symmetric)")
      ->check(CLI::IsMember({"collinear", "noncollinear"}))
      ->capture_default_str();
  pm->add_option("--tol", pm_tol, "Mismatch tolerance in 1/m")->capture_default_str();
  pm->add_option("--scan", pm_scan,
                 "Emit a mismatch-vs-omega1 CSV with this many intervals instead of solving "
                 "(always CSV)");
  add_output_flags(pm, pm_out);

  // fock
  auto* fock = app.add_subcommand("fock", "Truncated Fock-register eigenvalue tables");
  std::string fock_scenario;
  Output fock_out;
  fock->add_option("--scenario", fock_scenario,
                   "Scenario file (omit for a built-in two-mode demo)");
  add_output_flags(fock, fock_out);

  // wavepacket
  auto* wp = app.add_subcommand("wavepacket", "Spectral wave-packet propagation");
  std::string wp_model = "bk7", wp_prefix;
  WavelengthOpt wp_lambda{632.8};
  double wp_dkrel = 1e-3, wp_domain = 0.05, wp_area = 1.0;
  int wp_n = 4096;
  std::vector<double> wp_times;
  Output wp_out;
  wp->add_option("--model", wp_model, "Model alias or file path")->capture_default_str();
  wp_lambda.add(wp, "lambda", "Carrier vacuum wavelength");
  wp->add_option("--delta-k-rel", wp_dkrel, "Gaussian rms width over carrier wavenumber")
      ->capture_default_str();
  wp->add_option("--grid-n", wp_n, "Spectral samples (power of two)")->capture_default_str();
  wp->add_option("--domain-m", wp_domain, "Periodic domain length in m")->capture_default_str();
  wp->add_option("--area-m2", wp_area, "Transverse area in m^2")->capture_default_str();
  wp->add_option("--times", wp_times, "Sample times in s (default: three spanning L/4)")
      ->delimiter(',');
  wp->add_option("--snapshots", wp_prefix, "Write per-time z-space CSVs with this path prefix");
  add_output_flags(wp, wp_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (disp->parsed())
      return run_dispersion(disp_model, disp_lambda.value_nm(), disp_dw_rel, disp_out);
    if (mom->parsed())
      return run_momentum(mom_model, mom_lambda.value_nm(), mom_helicity, mom_n, mom_ngr,
                          mom_out);
    if (pres->parsed()) {
      if (pres_power)
        return run_pressure_force(*pres_power, pres_lambda.value_nm(), pres_picture,
                                  pres_model, pres_n, pres_ngr, pres_out);
      return run_pressure_table(pres_out);
    }
    if (pm->parsed())
      return run_phasematch(pm_model, pm_pump.value_nm(), pm_geometry, pm_tol, pm_scan, pm_out);
    if (fock->parsed()) return run_fock(fock_scenario, fock_out);
    if (wp->parsed())
      return run_wavepacket(wp_model, wp_lambda.value_nm(), wp_dkrel, wp_n, wp_domain, wp_area,
                            wp_times, wp_prefix, wp_out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
