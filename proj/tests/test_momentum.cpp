#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dphot/model_io.hpp"
#include "dphot/momentum.hpp"

using namespace dphot;
using Catch::Approx;

namespace {

ModePoint random_mode(std::mt19937& rng) {
  std::uniform_real_distribution<double> un(1.0, 2.2);
  std::uniform_real_distribution<double> ug(0.0, 0.6);
  std::uniform_real_distribution<double> uw(8e14, 5e15);
  std::uniform_int_distribution<int> us(0, 1);
  const double n = un(rng);
  return mode_point_from_indices(uw(rng), n, n + ug(rng), us(rng) ? +1 : -1);
}

}  // namespace

TEST_CASE("vacuum mode: all three momenta equal hbar k") {
  const auto mp = mode_point(vacuum_model(), si::omega_from_lambda_nm(632.8), +1);
  const auto t = momentum_triple(mp);
  // oracle: hbar = 1.054571817e-34 J s times k = 2 pi / 632.8 nm = 9.9292e6 1/m
  const double expected = 1.054571817e-34 * 2.0 * si::pi / 632.8e-9;
  CHECK(t.p_can == Approx(expected).epsilon(1e-12));
  CHECK(t.p_can == Approx(1.047e-27).epsilon(2e-4));
  CHECK(t.p_abraham == Approx(t.p_can).epsilon(1e-14));
  CHECK(t.p_minkowski == Approx(t.p_can).epsilon(1e-14));
}

TEST_CASE("nondispersive n = 1.5: closed forms from v_gr = v_ph = c/n") {
  const double w = si::omega_from_lambda_nm(632.8);
  const auto mp = mode_point_from_indices(w, 1.5, 1.5, +1);
  const auto t = momentum_triple(mp);
  CHECK(t.p_can == Approx(1.5 * si::hbar * w / si::c).epsilon(1e-14));
  CHECK(t.p_minkowski == Approx(t.p_can).epsilon(1e-14));
  CHECK(t.p_abraham == Approx(si::hbar * w / (1.5 * si::c)).epsilon(1e-14));
}

TEST_CASE("benzene-like dispersive mode: p_M / p_A = n^2") {
  // n from the canonical ratio column, n_gr from the reciprocal Abraham ratio
  const auto mp = mode_point_from_indices(si::omega_from_lambda_nm(632.8), 1.4974,
                                          1.0 / 0.6475, +1);
  CHECK(mp.n_gr == Approx(1.54440).margin(5e-6));
  const auto t = momentum_triple(mp);
  CHECK(t.p_minkowski / t.p_abraham == Approx(1.4974 * 1.4974).epsilon(1e-13));
  CHECK(t.p_minkowski / t.p_abraham == Approx(2.24221).margin(5e-6));
}

TEST_CASE("algebraic identities over 1000 random modes") {
  std::mt19937 rng(20260810);
  for (int i = 0; i < 1000; ++i) {
    const auto mp = random_mode(rng);
    const auto t = momentum_triple(mp);
    CHECK(t.p_minkowski == Approx(mp.n * mp.n * t.p_abraham).epsilon(1e-12));
    const double vrel = mp.v_gr / si::c;
    CHECK(t.p_abraham * t.p_minkowski ==
          Approx(vrel * vrel * t.p_can * t.p_can).epsilon(1e-12));
    CHECK(planck_inertia_ratio(t) == Approx(1.0 / (si::c * si::c)).epsilon(1e-12));
  }
}

TEST_CASE("planck inertia ratio examples") {
  const double inv_c2 = 1.0 / (si::c * si::c);
  const auto vac = momentum_triple(mode_point(vacuum_model(), si::omega_from_lambda_nm(500.0), +1));
  CHECK(planck_inertia_ratio(vac) == Approx(inv_c2).epsilon(1e-14));

  const auto nd = momentum_triple(
      mode_point_from_indices(si::omega_from_lambda_nm(500.0), 1.5, 1.5, +1));
  CHECK(planck_inertia_ratio(nd) == Approx(inv_c2).epsilon(1e-14));

  const auto bk7 = momentum_triple(mode_point(bk7_model(), si::omega_from_lambda_nm(587.6), +1));
  CHECK(planck_inertia_ratio(bk7) == Approx(inv_c2).epsilon(1e-12));
}

TEST_CASE("abraham effective mass depends only on omega") {
  const double w = si::omega_from_lambda_nm(632.8);
  const auto a = momentum_triple(mode_point_from_indices(w, 1.2, 1.25, +1));
  const auto b = momentum_triple(mode_point_from_indices(w, 1.9, 2.3, -1));
  CHECK(a.m_eff_abraham == b.m_eff_abraham);
  CHECK(a.m_eff_abraham == Approx(si::hbar * w / (si::c * si::c)).epsilon(1e-14));
  // Minkowski carries the extra n^2
  CHECK(b.m_eff_minkowski == Approx(1.9 * 1.9 * b.m_eff_abraham).epsilon(1e-14));
  // effective masses close against p / v_gr
  CHECK(a.m_eff_abraham == Approx(a.p_abraham / a.mode.v_gr).epsilon(1e-13));
  CHECK(a.m_eff_minkowski == Approx(a.p_minkowski / a.mode.v_gr).epsilon(1e-13));
}

TEST_CASE("nondispersive limit: |p_M - p_can| vanishes linearly in omega dn/domega") {
  const double w = si::omega_from_lambda_nm(632.8);
  double prev_gap = -1.0;
  for (int i = 0; i < 6; ++i) {
    const double b_um2 = 0.004 / std::pow(2.0, i);
    const auto m = DispersionModel::cauchy({1.5, b_um2}, si::omega_from_lambda_nm(2000.0),
                                           si::omega_from_lambda_nm(300.0));
    const auto mp = mode_point(m, w, +1);
    const auto t = momentum_triple(mp);
    const double gap = std::abs(t.p_minkowski - t.p_can) / t.p_can;
    const double wdndw = w * eval_dn_domega(m, w);
    // gap = omega dn/domega / n_gr: linear in the dispersion strength
    CHECK(gap == Approx(wdndw / mp.n_gr).epsilon(1e-12));
    if (prev_gap > 0.0) CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("equality classification") {
  const double w = si::omega_from_lambda_nm(632.8);
  CHECK(classify_equalities(mode_point(vacuum_model(), w, +1)) == EqualityClass::AllEqual);
  CHECK(classify_equalities(mode_point_from_indices(w, 1.5, 1.5, +1)) ==
        EqualityClass::CanEqualsMinkowski);
  // dispersive benzene-like mode: all three distinct
  CHECK(classify_equalities(mode_point_from_indices(w, 1.4974, 1.0 / 0.6475, +1)) ==
        EqualityClass::AllDistinct);
  // engineered v_gr v_ph = c^2: n_gr = 1/n
  CHECK(classify_equalities(mode_point_from_indices(w, 1.25, 0.8, +1)) ==
        EqualityClass::CanEqualsAbraham);
  CHECK_THROWS_AS(classify_equalities(mode_point(vacuum_model(), w, +1), 0.5),
                  std::invalid_argument);
}

TEST_CASE("nonmagnetic momentum density: eps0 E x B route equals p_abraham") {
  // with mu = mu0, eps0 E x B = eps0 mu0 E x H = (E x H)/c^2, so the
  // symmetric-tensor momentum differs from the Abraham path by the factor
  // eps0 mu0 c^2, which the constants table makes exactly 1
  const auto mp = mode_point(bk7_model(), si::omega_from_lambda_nm(632.8), +1);
  const auto t = momentum_triple(mp);
  const double p_oh = (si::eps0 * si::mu0 * si::c * si::c) * t.p_abraham;
  CHECK(si::eps0 * si::mu0 * si::c * si::c == 1.0);
  CHECK(p_oh == t.p_abraham);
}
