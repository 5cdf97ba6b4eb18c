#pragma once

#include <Eigen/Core>

#include "fermispec/types.hpp"

// Semiclassical (phase-space) treatment at T = 0: Fermi-Dirac phase-space
// density, the isotropic momentum distribution, the closed-form Doppler
// lineshape (16N / 5 pi W) (1 - z^2)^(5/2), and an independent numerical
// marginalization that cross-checks it.
//
// Wave vectors are measured in inverse oscillator lengths, so the Fermi edge
// sits at k_fermi = sqrt(2 E_F) and a photon kick transfers kappa = sqrt(2)
// alpha. The support half-width of the T = 0 spectrum is then
// W = kappa k_fermi = 2 alpha sqrt(E_F); half_width_alt = W / 2 is the
// alternative (half-support) width convention, reported alongside.

namespace fermispec::tf {

struct TfZeroTParams {
  long n_atoms = 0;
  double alpha = 0.0;
  double lambda_y = 1.0;
  double lambda_z = 1.0;
  double fermi_energy = 0.0;
  double k_fermi = 0.0;         // sqrt(2 E_F)
  double half_width = 0.0;      // W = 2 alpha sqrt(E_F), support half-width
  double half_width_alt = 0.0;  // W / 2, alternative convention
  double recoil_shift = 0.0;    // alpha^2, detuning of the peak from omega_0
};

TfZeroTParams make_tf_params(const TrapSpec& trap, const LightSpec& light,
                             long n_atoms);

/// Fermi edge wave vector sqrt(2 E_F) in inverse oscillator lengths.
double fermi_wavevector(double fermi_energy);

/// Spectral support half-width 2 alpha sqrt(E_F) in Omega_g units.
double support_half_width(double alpha, double fermi_energy);

/// Phase-space occupation (2 pi)^-3 fd(H(r, k); mu, T) at position r
/// (oscillator lengths) and wave vector k (inverse oscillator lengths).
double phase_space_density(const Eigen::Vector3d& r, const Eigen::Vector3d& k,
                           double mu, double temperature,
                           const TrapSpec& trap);

/// Isotropic T = 0 momentum distribution (8N / pi^2 K_F^3)(1 - k^2/K_F^2)^{3/2}
/// per d^3k, zero beyond the Fermi edge.
double momentum_distribution_T0(double k_mag, long n_atoms, double k_fermi);

/// Closed-form T = 0 lineshape on the grid, one (1 - z^2)^{5/2} profile per
/// excited line centered at omega_0 + alpha^2 with support half-width W;
/// integrates to N * sum |d_ex|^2. Requires omega_ratio == 1.
Spectrum tf_lineshape_T0(const Eigen::ArrayXd& grid, const TrapSpec& trap,
                         const LightSpec& light, long n_atoms);

/// Independent check of the closed form: numerically marginalizes the T = 0
/// momentum distribution over transverse wave vectors at each grid point.
/// Normalized to n_atoms * dipole_sq_total; center at omega_offset + alpha^2.
Spectrum doppler_marginal_oracle(const Eigen::ArrayXd& grid, long n_atoms,
                                 double k_fermi, double alpha,
                                 double dipole_sq_total = 1.0,
                                 double omega_offset = 0.0);

/// Default grid of the T = 0 route: 2001 points spanning the recoil-shifted
/// center +- 1.2 W (extended across all excited-line offsets).
Eigen::ArrayXd default_grid_T0(const TrapSpec& trap, const LightSpec& light,
                               long n_atoms, long points = 2001);

}  // namespace fermispec::tf
