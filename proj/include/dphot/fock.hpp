#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dphot/constants.hpp"
#include "dphot/dispersion.hpp"
#include "dphot/errors.hpp"

namespace dphot {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// A discrete optical mode: kinematics plus propagation direction (unit
/// vector along k).
struct FockMode {
  ModePoint point;
  Vec3 khat{0.0, 0.0, 1.0};

  std::array<double, 3> k_vector() const {
    return {point.k * khat[0], point.k * khat[1], point.k * khat[2]};
  }
};

/// Discretized mode set under box normalization: continuum operators with
/// (2pi)^3 delta^3 commutators are mapped to per-mode operators with
/// Kronecker commutators via the quantization volume.
struct ModeSet {
  std::vector<FockMode> modes;
  double volume = 1.0;  // m^3
};

inline constexpr std::size_t kDefaultFockDimCap = 4096;

/// A finite set of modes with per-mode truncated number spaces. The basis is
/// the tensor product of per-mode number states, last mode fastest. Operators
/// built from a register are immutable dense matrices on this basis.
class FockRegister {
 public:
  FockRegister(ModeSet mode_set, std::vector<int> n_max,
               std::size_t dim_cap = kDefaultFockDimCap)
      : set_(std::move(mode_set)), n_max_(std::move(n_max)) {
    const std::size_t m = set_.modes.size();
    if (m == 0) throw std::invalid_argument("mode set is empty");
    if (n_max_.size() == 1 && m > 1) n_max_.resize(m, n_max_[0]);
    if (n_max_.size() != m) throw std::invalid_argument("n_max size must match mode count");
    if (!(set_.volume > 0.0)) throw std::invalid_argument("quantization volume must be positive");
    for (int nm : n_max_)
      if (nm < 1) throw std::invalid_argument("per-mode truncation must be >= 1");
    for (auto& mode : set_.modes) {
      const double norm = std::sqrt(dot(mode.khat, mode.khat));
      if (!(norm > 0.0)) throw std::invalid_argument("mode direction must be nonzero");
      for (double& c : mode.khat) c /= norm;
    }
    for (std::size_t a = 0; a < m; ++a) {
      const auto ka = set_.modes[a].k_vector();
      for (std::size_t b = a + 1; b < m; ++b) {
        const auto kb = set_.modes[b].k_vector();
        const double scale = std::max(set_.modes[a].point.k, set_.modes[b].point.k);
        const bool same_k = std::abs(ka[0] - kb[0]) <= 1e-12 * scale &&
                            std::abs(ka[1] - kb[1]) <= 1e-12 * scale &&
                            std::abs(ka[2] - kb[2]) <= 1e-12 * scale;
        if (same_k && set_.modes[a].point.polarization == set_.modes[b].point.polarization)
          throw std::invalid_argument("duplicate (k, s) mode");
      }
    }
    stride_.assign(m, 1);
    dim_ = 1;
    for (std::size_t i = m; i-- > 0;) {
      stride_[i] = dim_;
      const std::size_t levels = static_cast<std::size_t>(n_max_[i]) + 1;
      if (dim_ > dim_cap / levels + 1) throw RegisterTooLarge("register dimension exceeds cap");
      dim_ *= levels;
    }
    if (dim_ > dim_cap) throw RegisterTooLarge("register dimension exceeds cap");
  }

  const ModeSet& mode_set() const { return set_; }
  const std::vector<int>& n_max() const { return n_max_; }
  std::size_t n_modes() const { return set_.modes.size(); }
  std::size_t dim() const { return dim_; }

  std::vector<int> occupations(std::size_t index) const {
    std::vector<int> occ(n_modes());
    for (std::size_t m = 0; m < occ.size(); ++m) {
      occ[m] = static_cast<int>(index / stride_[m]);
      index %= stride_[m];
    }
    return occ;
  }

  std::size_t index_of(const std::vector<int>& occ) const {
    if (occ.size() != n_modes()) throw std::invalid_argument("occupation length mismatch");
    std::size_t idx = 0;
    for (std::size_t m = 0; m < occ.size(); ++m) {
      if (occ[m] < 0 || occ[m] > n_max_[m])
        throw IndexOutOfRange("occupation exceeds per-mode truncation");
      idx += static_cast<std::size_t>(occ[m]) * stride_[m];
    }
    return idx;
  }

  /// Declares carrier bands (omega intervals). With bands declared, states
  /// occupying modes outside every band are rejected by state_allowed; this
  /// is the band-limit validation standing in for the quasimonochromatic
  /// subspace restriction.
  void declare_carrier_bands(std::vector<std::pair<double, double>> bands) {
    bands_ = std::move(bands);
  }

  bool state_allowed(const std::vector<int>& occ) const {
    if (!bands_) return true;
    for (std::size_t m = 0; m < occ.size() && m < n_modes(); ++m) {
      if (occ[m] == 0) continue;
      const double w = set_.modes[m].point.omega;
      bool inside = false;
      for (const auto& [lo, hi] : *bands_) inside = inside || (w >= lo && w <= hi);
      if (!inside) return false;
    }
    return true;
  }

 private:
  ModeSet set_;
  std::vector<int> n_max_;
  std::vector<std::size_t> stride_;
  std::size_t dim_ = 0;
  std::optional<std::vector<std::pair<double, double>>> bands_;
};

/// Dense complex matrix on a register's basis. The hermitian flag is verified
/// numerically when claimed.
struct OperatorMatrix {
  Eigen::MatrixXcd mat;
  bool hermitian = false;

  static OperatorMatrix make(Eigen::MatrixXcd m, bool expect_hermitian) {
    if (expect_hermitian) {
      const double scale = m.cwiseAbs().maxCoeff();
      const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
      if (scale > 0.0 && dev > 1e-12 * scale)
        throw Error("matrix fails the hermiticity check");
    }
    return {std::move(m), expect_hermitian};
  }
};

enum class LadderKind { Annihilate, Create };

/// Truncated ladder operator on the full register basis:
/// a|..,n,..> = sqrt(n)|..,n-1,..>. The discrete convention absorbs the
/// continuum (2pi)^3 delta^3 normalization into the quantization volume, so
/// [a_m, a_m'^dag] = delta_mm' on states below the truncation ceiling.
inline OperatorMatrix ladder(const FockRegister& reg, std::size_t mode_index,
                             LadderKind kind) {
  if (mode_index >= reg.n_modes()) throw IndexOutOfRange("mode index out of range");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(reg.dim(), reg.dim());
  for (std::size_t idx = 0; idx < reg.dim(); ++idx) {
    auto occ = reg.occupations(idx);
    const int n = occ[mode_index];
    if (n == 0) continue;
    occ[mode_index] = n - 1;
    a(static_cast<Eigen::Index>(reg.index_of(occ)), static_cast<Eigen::Index>(idx)) =
        std::sqrt(static_cast<double>(n));
  }
  if (kind == LadderKind::Create) a = a.adjoint().eval();
  return {std::move(a), false};
}

namespace detail {

template <typename PerState>
OperatorMatrix diagonal_operator(const FockRegister& reg, PerState&& value) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(reg.dim(), reg.dim());
  for (std::size_t idx = 0; idx < reg.dim(); ++idx)
    m(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) =
        value(reg.occupations(idx));
  return OperatorMatrix::make(std::move(m), true);
}

}  // namespace detail

/// H = sum_m hbar omega_m a_m^dag a_m, diagonal in the number basis.
inline OperatorMatrix hamiltonian(const FockRegister& reg) {
  return detail::diagonal_operator(reg, [&](const std::vector<int>& occ) {
    double e = 0.0;
    for (std::size_t m = 0; m < occ.size(); ++m)
      e += si::hbar * reg.mode_set().modes[m].point.omega * occ[m];
    return e;
  });
}

enum class MomentumPicture { Canonical, Abraham, Minkowski };

inline const char* to_string(MomentumPicture p) {
  switch (p) {
    case MomentumPicture::Canonical: return "canonical";
    case MomentumPicture::Abraham: return "abraham";
    case MomentumPicture::Minkowski: return "minkowski";
  }
  return "?";
}

/// Per-mode weight w_m multiplying hbar k_m in each picture.
inline double picture_weight(const ModePoint& p, MomentumPicture picture) {
  switch (picture) {
    case MomentumPicture::Canonical: return 1.0;
    case MomentumPicture::Abraham: return p.v_gr * p.v_ph / (si::c * si::c);
    case MomentumPicture::Minkowski: return p.v_gr / p.v_ph;
  }
  return 1.0;
}

/// P = sum_m w_m hbar k_m a_m^dag a_m, one diagonal operator per Cartesian
/// axis.
inline std::array<OperatorMatrix, 3> momentum_operator(const FockRegister& reg,
                                                       MomentumPicture picture) {
  std::array<OperatorMatrix, 3> out;
  for (int axis = 0; axis < 3; ++axis) {
    out[axis] = detail::diagonal_operator(reg, [&](const std::vector<int>& occ) {
      double p = 0.0;
      for (std::size_t m = 0; m < occ.size(); ++m) {
        const auto& mode = reg.mode_set().modes[m];
        p += picture_weight(mode.point, picture) * si::hbar * mode.k_vector()[axis] * occ[m];
      }
      return p;
    });
  }
  return out;
}

/// Checks the translation-generator property [a_m, P] = hbar k_m a_m against
/// the momentum operator of the chosen picture. Returns the maximum over
/// modes and axes of
///   ||[a_m, P_i] - hbar k_mi a_m||_max / (hbar |k_m| ||a_m||_max).
/// For the canonical picture this is limited only by rounding; for Abraham or
/// Minkowski it equals |w_m - 1| scaled by the direction cosine, showing that
/// the kinetic momenta do not generate translations.
inline double verify_translation_generator(const FockRegister& reg,
                                           MomentumPicture picture = MomentumPicture::Canonical) {
  const auto p_ops = momentum_operator(reg, picture);
  double worst = 0.0;
  for (std::size_t m = 0; m < reg.n_modes(); ++m) {
    const auto a = ladder(reg, m, LadderKind::Annihilate).mat;
    const double a_scale = a.cwiseAbs().maxCoeff();
    const auto& mode = reg.mode_set().modes[m];
    const auto kv = mode.k_vector();
    for (int axis = 0; axis < 3; ++axis) {
      const Eigen::MatrixXcd commutator = a * p_ops[axis].mat - p_ops[axis].mat * a;
      const Eigen::MatrixXcd expected = si::hbar * kv[axis] * a;
      const double dev = (commutator - expected).cwiseAbs().maxCoeff() /
                         (si::hbar * mode.point.k * a_scale);
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

/// Helicity (spin) part of the angular momentum,
/// J_i = sum_m hbar s_m khat_mi a_m^dag a_m. The orbital k-derivative term has
/// no discrete-mode realization and is not included. The optional picture
/// applies the kinetic-momentum weight w_m to the spin sum; this mirrors the
/// weighting of the kinetic angular-momentum integrands but is an
/// extrapolation beyond the spin term's own definition.
inline std::array<OperatorMatrix, 3> spin_angular_momentum(
    const FockRegister& reg,
    std::optional<MomentumPicture> picture = std::nullopt) {
  std::array<OperatorMatrix, 3> out;
  for (int axis = 0; axis < 3; ++axis) {
    out[axis] = detail::diagonal_operator(reg, [&](const std::vector<int>& occ) {
      double j = 0.0;
      for (std::size_t m = 0; m < occ.size(); ++m) {
        const auto& mode = reg.mode_set().modes[m];
        const double w = picture ? picture_weight(mode.point, *picture) : 1.0;
        j += w * si::hbar * mode.point.polarization * mode.khat[axis] * occ[m];
      }
      return j;
    });
  }
  return out;
}

}  // namespace dphot
