// Propagates a narrowband single-quantum packet through BK7 and prints the
// centroid trajectory against the group-velocity prediction.

#include <cstdio>

#include "dphot/model_io.hpp"
#include "dphot/wavepacket.hpp"

int main() {
  using namespace dphot;
  const auto bk7 = bk7_model();
  const auto packet = make_gaussian_packet(bk7, 632.8, 1e-3, 4096, 0.05);
  const double v_gr = si::c / packet.n_gr[packet.carrier_index];

  std::printf("carrier n_gr %.6f, v_gr %.6e m/s\n", packet.n_gr[packet.carrier_index], v_gr);
  std::printf("spectral energy %.6e J (total quanta %.6f)\n", energy_spectral(packet),
              total_quanta(packet));
  std::printf("%12s %14s %14s\n", "t/s", "moved/m", "v_gr*t/m");
  const auto origin = propagate(packet, 0.0).centroid;
  for (int i = 0; i <= 4; ++i) {
    const double t = i * 1.2e-11;
    const auto snap = propagate(packet, t);
    const double moved = detail::wrap_diff(snap.centroid - origin, packet.domain_length);
    std::printf("%12.3e %14.6e %14.6e\n", t, moved, v_gr * t);
  }
  return 0;
}
