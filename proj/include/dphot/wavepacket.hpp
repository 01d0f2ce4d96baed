#pragma once

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "dphot/constants.hpp"
#include "dphot/dispersion.hpp"
#include "dphot/errors.hpp"

namespace dphot {

/// Classical 1D spectral wave packet on a periodic domain of length L.
///
/// Conventions:
///   grid      k_j = k_lo + j dk,  dk = 2 pi / L,  j = 0..N-1, N a power of
///             two; the carrier k0 is snapped to a grid multiple of dk so the
///             field is exactly L-periodic.
///   field     A(z, t) = (1/L) sum_j A_j exp(i (k_j z - omega_j t)) evaluated
///             on z_m = m L / N; A_j are samples of the continuum 1D spectral
///             density (units V s), so sums over j carry the measure dk/(2pi)
///             = 1/L.
///   3D        volume integrals reduce to transverse_area times the 1D line
///             integral.
///
/// Per-sample kinematics omega_j, n_j, n_gr_j are cached at construction by
/// inverting the dispersion relation, so propagation and energy bookkeeping
/// never re-enter the model.
struct SpectralPacket {
  int n_samples = 0;
  double domain_length = 0.0;  // L, m
  double k_lo = 0.0;           // 1/m
  double dk = 0.0;             // 1/m
  std::vector<std::complex<double>> amplitude{};  // A_j, V s
  int polarization = +1;
  double transverse_area = 1.0;  // m^2
  double band_k_lo = 0.0, band_k_hi = 0.0;  // declared quasimonochromatic band
  DispersionModel model;

  std::vector<double> omega{};   // rad/s per sample
  std::vector<double> n_of_k{};  // phase index per sample
  std::vector<double> n_gr{};    // group index per sample

  double carrier_omega = 0.0;
  double carrier_n = 1.0;
  double carrier_dndw = 0.0;
  std::size_t carrier_index = 0;

  double k_at(std::size_t j) const { return k_lo + static_cast<double>(j) * dk; }
  double z_at(std::size_t m) const {
    return domain_length * static_cast<double>(m) / n_samples;
  }

  void scale_amplitudes(double factor) {
    for (auto& a : amplitude) a *= factor;
  }
};

/// Field and bookkeeping at one instant. The z grid is the periodic domain
/// z_m = m L / N matching the packet's k grid.
struct PacketSnapshot {
  int n_samples = 0;
  double domain_length = 0.0;
  std::vector<std::complex<double>> field;  // A(z_m, t), V s / m
  double time = 0.0;
  double centroid = 0.0;  // m, in [0, L)
  double spread = 0.0;    // m, rms about the centroid with wrapped distances
  double energy = 0.0;    // J, real-space bookkeeping

  double z_at(std::size_t m) const {
    return domain_length * static_cast<double>(m) / n_samples;
  }
};

namespace detail {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

inline double wrap_into(double x, double period) {
  return x - period * std::floor(x / period);
}

/// Signed wrapped difference in (-period/2, period/2].
inline double wrap_diff(double x, double period) {
  return x - period * std::round(x / period);
}

inline std::vector<std::complex<double>> spectrum_at_time(const SpectralPacket& p,
                                                          double t) {
  std::vector<std::complex<double>> b(p.amplitude.size());
  for (std::size_t j = 0; j < b.size(); ++j)
    b[j] = p.amplitude[j] * std::polar(1.0, -p.omega[j] * t);
  return b;
}

/// (1/L) sum_j b_j exp(i k_j z_m) for all m, via an inverse DFT plus the
/// carrier phase from the grid offset k_lo.
inline std::vector<std::complex<double>> synthesize(const SpectralPacket& p,
                                                    std::vector<std::complex<double>> b) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> out;
  fft.inv(out, b);  // (1/N) sum_j b_j exp(+2 pi i j m / N)
  const double scale = p.n_samples / p.domain_length;
  for (std::size_t m = 0; m < out.size(); ++m)
    out[m] = out[m] * scale * std::polar(1.0, p.k_lo * p.z_at(m));
  return out;
}

struct Moments {
  double centroid = 0.0;
  double spread = 0.0;
  double total = 0.0;
};

/// First circular moment of |field|^2 (immune to wrap-around) plus the rms
/// spread about it using wrapped distances.
inline Moments circular_moments(const std::vector<std::complex<double>>& field,
                                double length) {
  Moments mo;
  std::complex<double> first(0.0, 0.0);
  const double n = static_cast<double>(field.size());
  for (std::size_t m = 0; m < field.size(); ++m) {
    const double w = std::norm(field[m]);
    mo.total += w;
    first += w * std::polar(1.0, 2.0 * si::pi * static_cast<double>(m) / n);
  }
  if (mo.total <= 0.0) return mo;
  mo.centroid = wrap_into(std::arg(first) / (2.0 * si::pi) * length, length);
  double var = 0.0;
  for (std::size_t m = 0; m < field.size(); ++m) {
    const double d = wrap_diff(length * static_cast<double>(m) / n - mo.centroid, length);
    var += std::norm(field[m]) * d * d;
  }
  mo.spread = std::sqrt(var / mo.total);
  return mo;
}

}  // namespace detail

/// Total field energy from the spectrum (the per-k group-index form):
///   U = 2 eps0 (S/L) sum_j omega_j^2 n_j n_gr_j |A_j|^2.
/// Exactly invariant under propagation since only phases evolve. The optional
/// time argument applies the propagation phases before summing, which changes
/// nothing beyond rounding.
inline double energy_spectral(const SpectralPacket& packet, double time = 0.0) {
  double u = 0.0;
  for (std::size_t j = 0; j < packet.amplitude.size(); ++j) {
    const double a2 =
        std::norm(packet.amplitude[j] * std::polar(1.0, -packet.omega[j] * time));
    u += packet.omega[j] * packet.omega[j] * packet.n_of_k[j] * packet.n_gr[j] * a2;
  }
  return 2.0 * si::eps0 * packet.transverse_area / packet.domain_length * u;
}

/// Mean quanta per spectral bin, N_j = (S/L) |alpha_j|^2 with the amplitude
/// rescaling |alpha|^2 = 2 eps0 n omega n_gr |A|^2 / hbar. By construction
/// sum_j hbar omega_j N_j equals energy_spectral.
inline std::vector<double> normalize_to_quanta(const SpectralPacket& packet) {
  std::vector<double> quanta(packet.amplitude.size());
  const double prefactor = 2.0 * si::eps0 * packet.transverse_area /
                           (packet.domain_length * si::hbar);
  for (std::size_t j = 0; j < quanta.size(); ++j)
    quanta[j] = prefactor * packet.n_of_k[j] * packet.omega[j] * packet.n_gr[j] *
                std::norm(packet.amplitude[j]);
  return quanta;
}

inline double total_quanta(const SpectralPacket& packet) {
  double s = 0.0;
  for (double q : normalize_to_quanta(packet)) s += q;
  return s;
}

/// Real-space energy bookkeeping at the snapshot's instant: E = -dA/dt and
/// B = dA/dz are formed spectrally (exact derivatives), period averaging uses
/// the analytic-signal envelope (<X^2> = 2 |X+|^2), and the electric term
/// carries d(omega eps)/domega frozen at the carrier:
///   U = S dz sum_m [ eps0 (n0^2 + 2 n0 w0 dn/dw) |E+|^2 + |B+|^2 / mu0 ].
inline double energy_realspace(const PacketSnapshot& snapshot, const SpectralPacket& packet) {
  auto b = detail::spectrum_at_time(packet, snapshot.time);
  std::vector<std::complex<double>> e_spec(b.size()), b_spec(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    e_spec[j] = std::complex<double>(0.0, packet.omega[j]) * b[j];
    b_spec[j] = std::complex<double>(0.0, packet.k_at(j)) * b[j];
  }
  const auto e_field = detail::synthesize(packet, std::move(e_spec));
  const auto b_field = detail::synthesize(packet, std::move(b_spec));
  double e2 = 0.0, b2 = 0.0;
  for (std::size_t m = 0; m < e_field.size(); ++m) {
    e2 += std::norm(e_field[m]);
    b2 += std::norm(b_field[m]);
  }
  const double d_omega_eps =
      si::eps0 * (packet.carrier_n * packet.carrier_n +
                  2.0 * packet.carrier_n * packet.carrier_omega * packet.carrier_dndw);
  const double dz = packet.domain_length / packet.n_samples;
  return packet.transverse_area * dz * (d_omega_eps * e2 + b2 / si::mu0);
}

/// Evolves every spectral sample by exp(-i omega_j t) and synthesizes the
/// z-space field. Spectral magnitudes are untouched (unitary evolution).
inline PacketSnapshot propagate(const SpectralPacket& packet, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("propagation time must be >= 0");
  PacketSnapshot snap;
  snap.n_samples = packet.n_samples;
  snap.domain_length = packet.domain_length;
  snap.time = t;
  snap.field = detail::synthesize(packet, detail::spectrum_at_time(packet, t));
  const auto mo = detail::circular_moments(snap.field, packet.domain_length);
  snap.centroid = mo.centroid;
  snap.spread = mo.spread;
  snap.energy = energy_realspace(snap, packet);
  return snap;
}

/// Intensity-centroid velocity between two instants, with the displacement
/// unwrapped across the periodic boundary. Packets must stay localized: the
/// rms spread may not exceed L/8 at either instant, which also keeps them
/// clear of wrap-around. The two instants must be close enough that the
/// centroid moves less than half the domain.
inline double centroid_velocity(const SpectralPacket& packet, double t1, double t2) {
  if (!(t2 > t1)) throw std::invalid_argument("need t2 > t1");
  const auto s1 = propagate(packet, t1);
  const auto s2 = propagate(packet, t2);
  const double limit = packet.domain_length / 8.0;
  if (!(s1.spread < limit) || !(s2.spread < limit))
    throw Delocalized("packet spread exceeds L/8 during centroid tracking");
  const double d = detail::wrap_diff(s2.centroid - s1.centroid, packet.domain_length);
  return d / (t2 - t1);
}

/// Builds a Gaussian packet |A(k)| = exp(-(k - k0)^2 / (2 sigma^2)) with
/// sigma = delta_k_rel * k0, scaled to unit total quanta. The declared
/// quasimonochromatic band is k0 +/- 6 sigma; construction fails with
/// BandViolation if the grid leaves the model's k-range or the spectrum is
/// not concentrated in the declared band (outside fraction > 1e-6).
inline SpectralPacket make_gaussian_packet(const DispersionModel& model, double lambda0_nm,
                                           double delta_k_rel, int n_samples,
                                           double domain_length,
                                           double transverse_area = 1.0) {
  if (!detail::is_power_of_two(n_samples))
    throw std::invalid_argument("n_samples must be a power of two");
  if (!(delta_k_rel > 0.0) || !(domain_length > 0.0) || !(transverse_area > 0.0))
    throw std::invalid_argument("delta_k_rel, domain_length, transverse_area must be positive");

  SpectralPacket p{.model = model};
  p.n_samples = n_samples;
  p.domain_length = domain_length;
  p.dk = 2.0 * si::pi / domain_length;
  p.transverse_area = transverse_area;

  const double omega_c = si::omega_from_lambda_nm(lambda0_nm);
  const double k_target = model.n_at(omega_c) * omega_c / si::c;
  const double k0 = std::round(k_target / p.dk) * p.dk;  // snap carrier to the grid
  p.carrier_index = static_cast<std::size_t>(n_samples / 2);
  p.k_lo = k0 - static_cast<double>(n_samples / 2) * p.dk;

  const double sigma = delta_k_rel * k0;
  p.band_k_lo = k0 - 6.0 * sigma;
  p.band_k_hi = k0 + 6.0 * sigma;
  if (p.band_k_lo <= p.k_lo || p.band_k_hi >= p.k_at(static_cast<std::size_t>(n_samples - 1)))
    throw BandViolation("declared band k0 +/- 6 sigma does not fit the spectral grid");

  p.amplitude.resize(n_samples);
  p.omega.resize(n_samples);
  p.n_of_k.resize(n_samples);
  p.n_gr.resize(n_samples);
  for (int j = 0; j < n_samples; ++j) {
    const double k = p.k_at(static_cast<std::size_t>(j));
    if (!(k > 0.0)) throw BandViolation("spectral grid reaches non-positive wavenumbers");
    double w = 0.0;
    try {
      w = invert_dispersion(model, k);
      const double n = model.n_at(w);
      p.n_of_k[j] = n;
      p.n_gr[j] = n + w * model.dn_domega_at(w);
    } catch (const OutOfRange&) {
      throw BandViolation("spectral tail leaves the model validity band");
    } catch (const OutOfBand&) {
      throw BandViolation("spectral tail leaves the model validity band");
    } catch (const DerivativeUnavailable&) {
      throw BandViolation("spectral tail reaches the edge of the tabulated model");
    }
    if (!(p.n_gr[j] > 0.0))
      throw NonPositiveGroupIndex("group index non-positive inside the spectral grid");
    p.omega[j] = w;
    const double x = (k - k0) / sigma;
    p.amplitude[j] = std::exp(-0.5 * x * x);
  }
  p.carrier_omega = p.omega[p.carrier_index];
  p.carrier_n = p.n_of_k[p.carrier_index];
  p.carrier_dndw = (p.n_gr[p.carrier_index] - p.carrier_n) / p.carrier_omega;
  p.polarization = +1;

  // Quasimonochromatic concentration check on the declared band.
  double inside = 0.0, total = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const double w2 = std::norm(p.amplitude[j]);
    total += w2;
    const double k = p.k_at(static_cast<std::size_t>(j));
    if (k >= p.band_k_lo && k <= p.band_k_hi) inside += w2;
  }
  if (!(total > 0.0) || (total - inside) / total > 1e-6)
    throw BandViolation("power spectrum not concentrated in the declared band");

  const double quanta = total_quanta(p);
  p.scale_amplitudes(1.0 / std::sqrt(quanta));
  return p;
}

/// rms spectral width in omega, weighted by the power spectrum; feeds the
/// weak-dispersion check.
inline double rms_delta_omega(const SpectralPacket& packet) {
  double total = 0.0, mean = 0.0;
  for (std::size_t j = 0; j < packet.amplitude.size(); ++j) {
    const double w2 = std::norm(packet.amplitude[j]);
    total += w2;
    mean += w2 * packet.omega[j];
  }
  mean /= total;
  double var = 0.0;
  for (std::size_t j = 0; j < packet.amplitude.size(); ++j)
    var += std::norm(packet.amplitude[j]) * (packet.omega[j] - mean) * (packet.omega[j] - mean);
  return std::sqrt(var / total);
}

}  // namespace dphot
