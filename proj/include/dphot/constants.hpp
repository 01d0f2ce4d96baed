#pragma once

namespace dphot::si {

/// Speed of light in vacuum, m/s (exact).
inline constexpr double c = 299792458.0;
/// Reduced Planck constant, J*s (CODATA 2018, exact via h = 6.62607015e-34).
inline constexpr double hbar = 1.054571817e-34;
/// Vacuum permittivity, F/m (CODATA 2018).
inline constexpr double eps0 = 8.8541878128e-12;
/// Vacuum permeability, H/m. Derived as 1/(eps0 c^2) so that eps0*mu0*c^2 == 1
/// holds to machine precision in energy identities.
inline constexpr double mu0 = 1.0 / (eps0 * c * c);

inline constexpr double pi = 3.14159265358979323846;

/// Angular frequency (rad/s) of a vacuum wavelength given in nm.
inline constexpr double omega_from_lambda_nm(double lambda_nm) {
  return 2.0 * pi * c / (lambda_nm * 1e-9);
}

/// Vacuum wavelength in nm of an angular frequency in rad/s.
inline constexpr double lambda_nm_from_omega(double omega) {
  return 2.0 * pi * c / omega * 1e9;
}

}  // namespace dphot::si
