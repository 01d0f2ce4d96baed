// Compares the canonical, Abraham, and Minkowski single-photon momenta in
// BK7 glass across the visible band.

#include <cstdio>

#include "dphot/model_io.hpp"
#include "dphot/momentum.hpp"

int main() {
  using namespace dphot;
  const auto bk7 = bk7_model();
  std::printf("%10s %10s %10s %14s %14s %14s\n", "lambda/nm", "n", "n_gr", "p_can", "p_A",
              "p_M");
  for (double lambda_nm = 400.0; lambda_nm <= 800.0; lambda_nm += 50.0) {
    const auto mp = mode_point(bk7, si::omega_from_lambda_nm(lambda_nm), +1);
    const auto t = momentum_triple(mp);
    std::printf("%10.1f %10.5f %10.5f %14.6e %14.6e %14.6e\n", lambda_nm, mp.n, mp.n_gr,
                t.p_can, t.p_abraham, t.p_minkowski);
  }
  return 0;
}
