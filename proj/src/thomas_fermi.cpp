#include "fermispec/thomas_fermi.hpp"

#include <cmath>

#include "fermispec/fermi_gas.hpp"
#include "fermispec/numerics.hpp"

namespace fermispec::tf {

double fermi_wavevector(double fermi_energy) {
  if (!(fermi_energy > 0.0))
    throw DomainError("fermi_wavevector: fermi_energy must be > 0");
  return std::sqrt(2.0 * fermi_energy);
}

double support_half_width(double alpha, double fermi_energy) {
  if (!(alpha > 0.0))
    throw DomainError("support_half_width: alpha must be > 0");
  return 2.0 * alpha * std::sqrt(fermi_energy);
}

TfZeroTParams make_tf_params(const TrapSpec& trap, const LightSpec& light,
                             long n_atoms) {
  trap.validate();
  light.validate();
  TfZeroTParams params;
  params.n_atoms = n_atoms;
  params.alpha = light.alpha;
  params.lambda_y = trap.lambda_y;
  params.lambda_z = trap.lambda_z;
  params.fermi_energy =
      core::fermi_energy(n_atoms, trap.lambda_y, trap.lambda_z);
  params.k_fermi = fermi_wavevector(params.fermi_energy);
  params.half_width = support_half_width(light.alpha, params.fermi_energy);
  params.half_width_alt = 0.5 * params.half_width;
  params.recoil_shift = light.alpha * light.alpha;
  return params;
}

double phase_space_density(const Eigen::Vector3d& r, const Eigen::Vector3d& k,
                           double mu, double temperature,
                           const TrapSpec& trap) {
  const double potential =
      0.5 * (r.x() * r.x() +
             trap.lambda_y * trap.lambda_y * r.y() * r.y() +
             trap.lambda_z * trap.lambda_z * r.z() * r.z());
  const double energy = 0.5 * k.squaredNorm() + potential;
  constexpr double cell = 1.0 / (8.0 * M_PI * M_PI * M_PI);
  return cell * core::fd_occupation(energy, mu, temperature);
}

double momentum_distribution_T0(double k_mag, long n_atoms, double k_fermi) {
  if (k_mag < 0.0)
    throw DomainError("momentum_distribution_T0: k_mag must be >= 0");
  if (!(k_fermi > 0.0))
    throw DomainError("momentum_distribution_T0: k_fermi must be > 0");
  if (k_mag >= k_fermi) return 0.0;
  const double u = 1.0 - (k_mag * k_mag) / (k_fermi * k_fermi);
  return 8.0 * static_cast<double>(n_atoms) /
         (M_PI * M_PI * k_fermi * k_fermi * k_fermi) * u * std::sqrt(u);
}

Spectrum tf_lineshape_T0(const Eigen::ArrayXd& grid, const TrapSpec& trap,
                         const LightSpec& light, long n_atoms) {
  validate_grid(grid);
  if (std::fabs(trap.omega_ratio - 1.0) > 1e-12)
    throw CapabilityError(
        "tf_lineshape_T0: closed form requires omega_ratio == 1; use the "
        "finite-temperature route for unequal trap frequencies");
  const TfZeroTParams params = make_tf_params(trap, light, n_atoms);
  const double w = params.half_width;
  const double peak_scale =
      16.0 * static_cast<double>(n_atoms) / (5.0 * M_PI * w);

  Spectrum spectrum;
  spectrum.grid = grid;
  spectrum.intensity = Eigen::ArrayXd::Zero(grid.size());
  for (const LightSpec::Line& line : light.lines) {
    const double center = line.omega_0 + params.recoil_shift;
    Eigen::ArrayXd z = (grid - center) / w;
    Eigen::ArrayXd profile =
        (1.0 - z.square()).max(0.0);
    spectrum.intensity +=
        (line.dipole_sq * peak_scale) * profile.pow(2.5);
  }
  spectrum.meta.set_int("n_atoms", n_atoms);
  spectrum.meta.set_num("alpha", light.alpha);
  spectrum.meta.set_num("fermi_energy", params.fermi_energy);
  spectrum.meta.set_num("k_fermi", params.k_fermi);
  spectrum.meta.set_num("support_half_width", w);
  spectrum.meta.set_num("half_width_alt", params.half_width_alt);
  spectrum.meta.set_num("recoil_shift", params.recoil_shift);
  spectrum.meta.set("normalization", "sum_rule");
  spectrum.meta.set_num("total_weight",
                        static_cast<double>(n_atoms) *
                            light.total_dipole_sq());
  return spectrum;
}

Spectrum doppler_marginal_oracle(const Eigen::ArrayXd& grid, long n_atoms,
                                 double k_fermi, double alpha,
                                 double dipole_sq_total, double omega_offset) {
  validate_grid(grid);
  if (!(alpha > 0.0))
    throw DomainError("doppler_marginal_oracle: alpha must be > 0");
  if (!(k_fermi > 0.0))
    throw DomainError("doppler_marginal_oracle: k_fermi must be > 0");

  const double kappa = std::sqrt(2.0) * alpha;  // photon kick
  const double center = omega_offset + alpha * alpha;

  Spectrum spectrum;
  spectrum.grid = grid;
  spectrum.intensity = Eigen::ArrayXd::Zero(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double kx = (grid[i] - center) / kappa;
    if (std::fabs(kx) >= k_fermi) continue;
    // integral over transverse wave vectors, with u = k_perp^2
    const double u_max = k_fermi * k_fermi - kx * kx;
    const double marginal =
        M_PI *
        num::integrate(
            [&](double u) {
              return momentum_distribution_T0(std::sqrt(kx * kx + u), n_atoms,
                                              k_fermi);
            },
            0.0, u_max, 1e-10, 0.0);
    spectrum.intensity[i] = dipole_sq_total * marginal / kappa;
  }
  spectrum.meta.set_int("n_atoms", n_atoms);
  spectrum.meta.set_num("k_fermi", k_fermi);
  spectrum.meta.set_num("alpha", alpha);
  spectrum.meta.set_num("support_half_width", kappa * k_fermi);
  spectrum.meta.set("normalization", "sum_rule");
  spectrum.meta.set_num("total_weight",
                        static_cast<double>(n_atoms) * dipole_sq_total);
  return spectrum;
}

Eigen::ArrayXd default_grid_T0(const TrapSpec& trap, const LightSpec& light,
                               long n_atoms, long points) {
  const TfZeroTParams params = make_tf_params(trap, light, n_atoms);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const LightSpec::Line& line : light.lines) {
    const double center = line.omega_0 + params.recoil_shift;
    lo = std::min(lo, center - 1.2 * params.half_width);
    hi = std::max(hi, center + 1.2 * params.half_width);
  }
  return Eigen::ArrayXd::LinSpaced(points, lo, hi);
}

}  // namespace fermispec::tf
