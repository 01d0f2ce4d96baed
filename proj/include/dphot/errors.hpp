#pragma once

#include <stdexcept>
#include <string>

namespace dphot {

/// Base class for all domain errors raised by this library. Usage errors
/// (bad arguments that violate documented preconditions) throw
/// std::invalid_argument instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Frequency outside a model's validity band, or a wavenumber outside the
/// band's k-range.
struct OutOfBand : Error {
  using Error::Error;
};

/// A dispersion model is singular or unphysical at the requested point
/// (vanishing Sellmeier denominator, non-positive n^2, resonance inside the
/// declared band).
struct ModelSingular : Error {
  using Error::Error;
};

/// dn/domega cannot be formed, e.g. at the endpoints of a tabulated model
/// where the central difference stencil leaves the table.
struct DerivativeUnavailable : Error {
  using Error::Error;
};

/// n + omega dn/domega <= 0: the model violates the transparent-medium
/// assumption at this frequency.
struct NonPositiveGroupIndex : Error {
  using Error::Error;
};

/// k(omega) was found non-monotone on the inversion scan grid.
struct NotMonotone : Error {
  using Error::Error;
};

/// Requested wavenumber lies outside the k-range spanned by the band.
struct OutOfRange : Error {
  using Error::Error;
};

/// A spectral packet's grid or tails leave the model validity band, or the
/// quasimonochromatic concentration check fails.
struct BandViolation : Error {
  using Error::Error;
};

/// A packet is not localized well enough for centroid tracking on the
/// periodic domain.
struct Delocalized : Error {
  using Error::Error;
};

/// Mode index outside a Fock register's mode list.
struct IndexOutOfRange : Error {
  using Error::Error;
};

/// A liquid record fails its validity constraints.
struct InvalidRecord : Error {
  using Error::Error;
};

/// A Fock register would exceed the configured dimension cap.
struct RegisterTooLarge : Error {
  using Error::Error;
};

/// Malformed model, table, or scenario file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace dphot
