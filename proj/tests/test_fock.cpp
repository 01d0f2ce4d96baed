#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "dphot/fock.hpp"
#include "dphot/model_io.hpp"
#include "dphot/momentum.hpp"

using namespace dphot;
using Catch::Approx;

namespace {

FockMode make_mode(double lambda_nm, double n, double n_gr, int s, Vec3 dir) {
  return {mode_point_from_indices(si::omega_from_lambda_nm(lambda_nm), n, n_gr, s), dir};
}

FockRegister single_mode_register(int n_max, double n = 1.0, double n_gr = 1.0) {
  return FockRegister({{make_mode(632.8, n, n_gr, +1, {0, 0, 1})}, 1e-6}, {n_max});
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("ladder matrices at n_max = 1") {
  const auto reg = single_mode_register(1);
  const auto a = ladder(reg, 0, LadderKind::Annihilate).mat;
  REQUIRE(a.rows() == 2);
  CHECK(a(0, 0) == std::complex<double>(0, 0));
  CHECK(a(0, 1) == std::complex<double>(1, 0));
  CHECK(a(1, 0) == std::complex<double>(0, 0));
  CHECK(a(1, 1) == std::complex<double>(0, 0));
  const auto ad = ladder(reg, 0, LadderKind::Create).mat;
  CHECK(ad(1, 0) == std::complex<double>(1, 0));
}

TEST_CASE("number operator a^dag a counts quanta up to the truncation") {
  const auto reg = single_mode_register(4);
  const auto a = ladder(reg, 0, LadderKind::Annihilate).mat;
  const Eigen::MatrixXcd num = ladder(reg, 0, LadderKind::Create).mat * a;
  for (int n = 0; n <= 4; ++n) {
    CHECK(num(n, n).real() == Approx(n).margin(1e-14));
    CHECK(std::abs(num(n, n).imag()) < 1e-15);
  }
}

TEST_CASE("[a, a^dag] = I below the truncation ceiling") {
  const int n_max = 3;
  const auto reg = single_mode_register(n_max);
  const auto a = ladder(reg, 0, LadderKind::Annihilate).mat;
  const auto ad = ladder(reg, 0, LadderKind::Create).mat;
  const Eigen::MatrixXcd comm = a * ad - ad * a;
  for (int n = 0; n < n_max; ++n) CHECK(std::abs(comm(n, n) - 1.0) < 1e-14);
  // the deviation is confined to the top state: explicit matrix arithmetic
  // gives a a^dag|3> = 0, a^dag a|3> = 3|3>
  CHECK(comm(n_max, n_max).real() == Approx(-n_max).margin(1e-14));
  for (int i = 0; i <= n_max; ++i)
    for (int j = 0; j <= n_max; ++j)
      if (i != j) CHECK(std::abs(comm(i, j)) < 1e-15);
}

TEST_CASE("hamiltonian eigenvalues add per mode") {
  const double wa = si::omega_from_lambda_nm(632.8), wb = si::omega_from_lambda_nm(400.0);
  ModeSet set{{make_mode(632.8, 1.5, 1.55, +1, {0, 0, 1}),
               make_mode(400.0, 1.52, 1.58, -1, {0, 0, 1})},
              1e-6};
  const FockRegister reg(set, {3, 3});
  const auto h = hamiltonian(reg);
  CHECK(h.hermitian);
  CHECK(h.mat(reg.index_of({0, 0}), reg.index_of({0, 0})).real() == 0.0);
  CHECK(h.mat(reg.index_of({1, 0}), reg.index_of({1, 0})).real() ==
        Approx(si::hbar * wa).epsilon(1e-14));
  const auto idx = reg.index_of({2, 1});
  CHECK(h.mat(idx, idx).real() ==
        Approx(2.0 * si::hbar * wa + si::hbar * wb).epsilon(1e-14));
}

TEST_CASE("momentum operators are diagonal with per-picture weights") {
  const auto reg = single_mode_register(2, 1.5168, 1.5414);
  const auto& mode = reg.mode_set().modes[0];
  const auto pc = momentum_operator(reg, MomentumPicture::Canonical);
  const auto pa = momentum_operator(reg, MomentumPicture::Abraham);
  const auto pm = momentum_operator(reg, MomentumPicture::Minkowski);
  CHECK(pc[2].hermitian);

  const auto vac = reg.index_of({0});
  const auto one = reg.index_of({1});
  for (const auto& p : {&pc, &pa, &pm})
    for (int axis = 0; axis < 3; ++axis)
      CHECK((*p)[axis].mat(vac, vac) == std::complex<double>(0, 0));

  CHECK(pc[2].mat(one, one).real() == Approx(si::hbar * mode.point.k).epsilon(1e-14));
  CHECK(pc[0].mat(one, one).real() == 0.0);
  // Minkowski over Abraham single-photon eigenvalue ratio is n^2
  CHECK(pm[2].mat(one, one).real() / pa[2].mat(one, one).real() ==
        Approx(mode.point.n * mode.point.n).epsilon(1e-12));
}

TEST_CASE("canonical momentum generates translations; kinetic momenta do not") {
  SECTION("single mode, n_max = 3") {
    const auto reg = single_mode_register(3, 1.5, 1.6);
    CHECK(verify_translation_generator(reg) <= 1e-12);
  }
  SECTION("two modes with mixed axes") {
    ModeSet set{{make_mode(632.8, 1.4, 1.45, +1, {1, 0, 0}),
                 make_mode(500.0, 1.5, 1.6, -1, {0, 1, 1})},
                2e-6};
    const FockRegister reg(set, {3, 3});
    CHECK(verify_translation_generator(reg) <= 1e-12);
  }
  SECTION("kinetic pictures deviate by |w - 1| on a dispersive mode") {
    const double n = 1.5168, n_gr = 1.5414;
    const auto reg = single_mode_register(3, n, n_gr);
    const auto& mp = reg.mode_set().modes[0].point;
    const double w_a = mp.v_gr * mp.v_ph / (si::c * si::c);
    const double w_m = mp.v_gr / mp.v_ph;
    CHECK(verify_translation_generator(reg, MomentumPicture::Abraham) ==
          Approx(std::abs(w_a - 1.0)).epsilon(1e-12));
    CHECK(verify_translation_generator(reg, MomentumPicture::Minkowski) ==
          Approx(std::abs(w_m - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("spin angular momentum") {
  SECTION("single photon carries hbar s along khat") {
    const auto reg = single_mode_register(2);
    const auto j = spin_angular_momentum(reg);
    const auto vac = reg.index_of({0}), one = reg.index_of({1});
    CHECK(j[2].mat(vac, vac) == std::complex<double>(0, 0));
    CHECK(j[2].mat(one, one).real() == Approx(si::hbar).epsilon(1e-14));
    CHECK(j[0].mat(one, one).real() == 0.0);
  }
  SECTION("opposite helicities along the same axis cancel") {
    ModeSet set{{make_mode(632.8, 1.0, 1.0, +1, {0, 0, 1}),
                 make_mode(632.8, 1.0, 1.0, -1, {0, 0, 1})},
                1e-6};
    const FockRegister reg(set, {2, 2});
    const auto j = spin_angular_momentum(reg);
    const auto idx = reg.index_of({1, 1});
    CHECK(j[2].mat(idx, idx).real() == Approx(0.0).margin(1e-40));
  }
  SECTION("picture weight scales the spin sum") {
    const auto reg = single_mode_register(2, 1.5, 1.5);
    const auto j_can = spin_angular_momentum(reg);
    const auto j_m = spin_angular_momentum(reg, MomentumPicture::Minkowski);
    const auto one = reg.index_of({1});
    const double w_m = reg.mode_set().modes[0].point.v_gr / reg.mode_set().modes[0].point.v_ph;
    CHECK(j_m[2].mat(one, one).real() ==
          Approx(w_m * j_can[2].mat(one, one).real()).epsilon(1e-13));
  }
}

TEST_CASE("momentum components commute in every picture, and with H") {
  ModeSet set{{make_mode(632.8, 1.3, 1.35, +1, {1, 0, 1}),
               make_mode(450.0, 1.4, 1.5, -1, {0, 1, 1})},
              1e-6};
  const FockRegister reg(set, {2, 2});
  const auto h = hamiltonian(reg);
  for (auto picture : {MomentumPicture::Canonical, MomentumPicture::Abraham,
                       MomentumPicture::Minkowski}) {
    const auto p = momentum_operator(reg, picture);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j)
        CHECK(max_abs(p[i].mat * p[j].mat - p[j].mat * p[i].mat) <=
              1e-14 * max_abs(p[i].mat) * max_abs(p[j].mat));
      CHECK(max_abs(h.mat * p[i].mat - p[i].mat * h.mat) <=
            1e-14 * max_abs(h.mat) * std::max(max_abs(p[i].mat), 1e-300));
    }
  }
}

TEST_CASE("eigenvalue additivity against the single-photon momentum module") {
  ModeSet set{{make_mode(632.8, 1.5168, 1.5414, +1, {0, 0, 1}),
               make_mode(500.0, 1.5214, 1.5550, -1, {1, 0, 0}),
               make_mode(800.0, 1.5108, 1.5330, +1, {0, 1, 0})},
              1e-6};
  const FockRegister reg(set, {2, 2, 2});
  const auto pc = momentum_operator(reg, MomentumPicture::Canonical);
  const auto pa = momentum_operator(reg, MomentumPicture::Abraham);
  const auto pm = momentum_operator(reg, MomentumPicture::Minkowski);

  std::mt19937 rng(123);
  std::uniform_int_distribution<int> uocc(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> occ{uocc(rng), uocc(rng), uocc(rng)};
    const auto idx = reg.index_of(occ);
    for (int axis = 0; axis < 3; ++axis) {
      double want_c = 0.0, want_a = 0.0, want_m = 0.0;
      for (std::size_t m = 0; m < occ.size(); ++m) {
        const auto t = momentum_triple(reg.mode_set().modes[m].point);
        const double dir = reg.mode_set().modes[m].khat[axis];
        want_c += occ[m] * t.p_can * dir;
        want_a += occ[m] * t.p_abraham * dir;
        want_m += occ[m] * t.p_minkowski * dir;
      }
      const double scale = si::hbar * reg.mode_set().modes[0].point.k;
      CHECK(pc[axis].mat(idx, idx).real() == Approx(want_c).margin(1e-12 * scale));
      CHECK(pa[axis].mat(idx, idx).real() == Approx(want_a).margin(1e-12 * scale));
      CHECK(pm[axis].mat(idx, idx).real() == Approx(want_m).margin(1e-12 * scale));
    }
  }
}

TEST_CASE("translation operator acts as a pure phase on number states") {
  ModeSet set{{make_mode(632.8, 1.5, 1.55, +1, {0, 0, 1}),
               make_mode(500.0, 1.4, 1.42, -1, {1, 0, 0})},
              1e-6};
  const FockRegister reg(set, {2, 2});
  const auto pc = momentum_operator(reg, MomentumPicture::Canonical);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ud(-5e-7, 5e-7);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 d{ud(rng), ud(rng), ud(rng)};
    // exp(-i P . d / hbar), exponentiated on the diagonal
    Eigen::VectorXcd u(reg.dim());
    for (std::size_t idx = 0; idx < reg.dim(); ++idx) {
      std::complex<double> phase(0.0, 0.0);
      for (int axis = 0; axis < 3; ++axis)
        phase += pc[axis].mat(idx, idx) * d[axis];
      u(static_cast<Eigen::Index>(idx)) = std::exp(std::complex<double>(0, -1) * phase / si::hbar);
    }
    for (std::size_t idx = 0; idx < reg.dim(); ++idx) {
      const auto occ = reg.occupations(idx);
      double kd = 0.0;
      for (std::size_t m = 0; m < occ.size(); ++m)
        kd += occ[m] * dot(reg.mode_set().modes[m].k_vector(), d);
      const std::complex<double> expected = std::exp(std::complex<double>(0, -kd));
      CHECK(std::abs(u(static_cast<Eigen::Index>(idx)) - expected) < 1e-12);
    }
  }
}

TEST_CASE("hermiticity bookkeeping") {
  const auto reg = single_mode_register(2);
  CHECK_FALSE(ladder(reg, 0, LadderKind::Annihilate).hermitian);
  CHECK(hamiltonian(reg).hermitian);
  Eigen::MatrixXcd bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(OperatorMatrix::make(bad, true), Error);
  CHECK(OperatorMatrix::make(bad, false).hermitian == false);
}

TEST_CASE("register bookkeeping and guards") {
  SECTION("occupation/index round trip") {
    ModeSet set{{make_mode(632.8, 1.0, 1.0, +1, {0, 0, 1}),
                 make_mode(500.0, 1.0, 1.0, -1, {0, 0, 1})},
                1e-6};
    const FockRegister reg(set, {2, 3});
    CHECK(reg.dim() == 12);
    for (std::size_t idx = 0; idx < reg.dim(); ++idx)
      CHECK(reg.index_of(reg.occupations(idx)) == idx);
    CHECK_THROWS_AS(reg.index_of({3, 0}), IndexOutOfRange);
    CHECK_THROWS_AS(ladder(reg, 2, LadderKind::Annihilate), IndexOutOfRange);
  }
  SECTION("dimension cap") {
    CHECK_THROWS_AS(single_mode_register(5000), RegisterTooLarge);
    ModeSet set{{make_mode(632.8, 1.0, 1.0, +1, {0, 0, 1}),
                 make_mode(500.0, 1.0, 1.0, -1, {0, 0, 1})},
                1e-6};
    CHECK_THROWS_AS(FockRegister(set, {99, 99}), RegisterTooLarge);
  }
  SECTION("duplicate (k, s) modes are rejected; distinct helicity is fine") {
    ModeSet dup{{make_mode(632.8, 1.0, 1.0, +1, {0, 0, 1}),
                 make_mode(632.8, 1.0, 1.0, +1, {0, 0, 1})},
                1e-6};
    CHECK_THROWS_AS(FockRegister(dup, {1, 1}), std::invalid_argument);
    ModeSet ok{{make_mode(632.8, 1.0, 1.0, +1, {0, 0, 1}),
                make_mode(632.8, 1.0, 1.0, -1, {0, 0, 1})},
               1e-6};
    CHECK(FockRegister(ok, {1, 1}).dim() == 4);
  }
  SECTION("band-limit flag rejects out-of-band occupation") {
    ModeSet set{{make_mode(632.8, 1.0, 1.0, +1, {0, 0, 1}),
                 make_mode(400.0, 1.0, 1.0, -1, {0, 0, 1})},
                1e-6};
    FockRegister reg(set, {2, 2});
    CHECK(reg.state_allowed({1, 1}));
    const double w0 = si::omega_from_lambda_nm(632.8);
    reg.declare_carrier_bands({{0.99 * w0, 1.01 * w0}});
    CHECK(reg.state_allowed({0, 0}));
    CHECK(reg.state_allowed({2, 0}));
    CHECK_FALSE(reg.state_allowed({0, 1}));
    CHECK_FALSE(reg.state_allowed({1, 1}));
  }
}
