#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fermispec/types.hpp"

// Independent brute-force validators. Nothing here is used by the production
// code paths; these exist so that tests can compare against transparent,
// slow, high-precision references.
//
//  * fc_direct_sum evaluates the recoil-weight j-sum verbatim: the sum is
//    carried in exact integer/rational arithmetic (the double input alpha is
//    treated as an exact dyadic rational), and only the final exp(-alpha^2)
//    and division are floating point, correct to the requested digits.
//  * enumerate_states lists oscillator levels by brute force.
//  * mc_detuning_samples rejection-samples the Fermi-Dirac phase-space
//    density with a seeded generator and reproducible draw order.

namespace fermispec::oracles {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

/// Direct evaluation of the sideband weight
///   n!(n+m)! e^{-a^2} (a^2)^{2n+m} [sum_j (-a^-2)^j / (j!(n-j)!(n+m-j)!)]^2
/// with j up to min(n, n+m). Result is correct to at least precision_digits
/// significant decimal digits (>= 30 required).
BigFloat fc_direct_sum(long n, long m, double alpha, int precision_digits);

struct OscState {
  long n_x = 0;
  long n_y = 0;
  long n_z = 0;
  double energy = 0.0;  // n_x + lambda_y n_y + lambda_z n_z
};

/// All oscillator states with n_x + lambda_y n_y + lambda_z n_z <= bound,
/// sorted by energy (1e-9 tie tolerance) then lexicographically.
std::vector<OscState> enumerate_states(double bound, double lambda_y,
                                       double lambda_z);

struct McConfig {
  long samples = 1000000;
  std::uint64_t seed = 1;
  double envelope_bound = 1.0 / (8.0 * M_PI * M_PI * M_PI);

  void validate() const;
};

struct McSamples {
  std::vector<double> detunings;  // in draw order
  long proposals = 0;
  double acceptance_rate = 0.0;
  std::uint64_t seed = 0;
};

/// Draws transition detunings from the phase-space density by rejection
/// sampling uniform proposals from the ellipsoid H_g(r, k) <= mu + 20 T
/// (momentum extent K_F sqrt(1 + 20 T / E_F) for a degenerate gas).
/// Deterministic for a given seed. Throws EnvelopeError if the acceptance
/// rate falls below 1e-4.
McSamples mc_detuning_samples(const TrapSpec& trap, const LightSpec& light,
                              const GasState& gas, const McConfig& mc);

/// Histograms the detuning samples onto the grid (bins are the midpoints
/// between grid nodes) and normalizes to N * sum |d_ex|^2.
Spectrum mc_phase_space_spectrum(const TrapSpec& trap, const LightSpec& light,
                                 const GasState& gas, const McConfig& mc,
                                 const Eigen::ArrayXd& grid);

/// Phase-space volume of the sampling box; acceptance_rate * volume *
/// envelope_bound estimates N.
double mc_box_volume(const TrapSpec& trap, const GasState& gas);

/// Kolmogorov-Smirnov distance between the empirical CDF of the samples and
/// the CDF of the (unnormalized) model density on its grid.
double ks_distance(std::vector<double> samples, const Eigen::ArrayXd& grid,
                   const Eigen::ArrayXd& density);

}  // namespace fermispec::oracles
