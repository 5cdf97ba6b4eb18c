#pragma once

#include <Eigen/Core>

#include "fermispec/types.hpp"

// Finite-temperature Thomas-Fermi lineshape. Per excited line, the intensity
// at detuning u from the recoil-shifted center is
//
//   I(u) ~ pref * integral_0^inf y^2 ln{1 + exp[beta mu - y^2
//                                   - p (u + m_ex T y^2)^2]} dy
//
// with p = 1/(4 alpha^2 T) and m_ex = 1 - (Omega_ex/Omega_g)^2. The analytic
// prefactor 2 / (pi alpha beta^{5/2} lambda_y lambda_z) already satisfies the
// sum rule; spectra are nevertheless normalized numerically so the frequency
// integral equals N * sum |d_ex|^2, and the raw-to-sum-rule ratio is kept in
// the metadata. Anisotropic traps are supported for equal trap frequencies
// only (the 1/(lambda_y lambda_z) factor).

namespace fermispec::ftemp {

/// m_ex = 1 - omega_ratio^2 (< 1 for any valid ratio).
double mex_from_ratio(double omega_ratio);

struct FiniteTParams {
  long n_atoms = 0;
  double temperature = 0.0;   // hbar*Omega_g units, > 0
  double beta = 0.0;          // 1 / temperature
  double beta_mu = 0.0;
  double fermi_energy = 0.0;
  double alpha = 0.0;
  double p = 0.0;             // Doppler curvature 1 / (4 alpha^2 T)
  double m_ex = 0.0;
  double recoil_shift = 0.0;  // alpha^2
  double aniso_factor = 1.0;  // 1 / (lambda_y lambda_z)
  double prefactor = 0.0;     // raw amplitude per unit dipole_sq
  double y_cut = 0.0;         // quadrature cut where the integrand is ~e^-40

  // frequency bounds outside which the raw shape is negligible
  double support_lo = 0.0;
  double support_hi = 0.0;

  double raw_integral = 0.0;  // integral of the raw shape per unit dipole_sq
  double norm = 1.0;          // n_atoms / raw_integral
};

/// Precomputes quadrature parameters, support bounds and the numerical
/// normalization for the given state. Throws DomainError for T <= 0 and
/// CapabilityError for anisotropic traps with unequal frequencies.
FiniteTParams make_finite_t_params(const TrapSpec& trap,
                                   const LightSpec& light,
                                   const GasState& gas);

/// Raw (prefactor-included, unnormalized) shape per unit dipole_sq at
/// detuning u from the recoil-shifted line center.
double lineshape_finite_T_raw(double u, const FiniteTParams& params);

/// Sum-rule normalized intensity at absolute detuning omega, summed over the
/// excited lines.
double lineshape_finite_T(double omega, const FiniteTParams& params,
                          const LightSpec& light, const GasState& gas);

/// Maps lineshape_finite_T over the grid and records the state in meta.
Spectrum spectrum_finite_T(const Eigen::ArrayXd& grid, const TrapSpec& trap,
                           const LightSpec& light, const GasState& gas);

/// Grid spanning the 1e-6 intensity contour of all excited lines (padded),
/// found by scanning the raw shape.
Eigen::ArrayXd default_grid_finite_T(const TrapSpec& trap,
                                     const LightSpec& light,
                                     const GasState& gas, long points = 2001);

}  // namespace fermispec::ftemp
