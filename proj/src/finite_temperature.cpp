#include "fermispec/finite_temperature.hpp"

#include <algorithm>
#include <cmath>

#include "fermispec/numerics.hpp"

namespace fermispec::ftemp {

namespace {

constexpr double kLogCut = 45.0;       // ln-argument floor e^-45
constexpr double kContour = 1e-6;      // plot-support intensity contour

double raw_shape(double u, double beta_mu, double p, double mex_t,
                 double y_cut, double prefactor) {
  const double body = num::integrate(
      [&](double y) {
        const double y2 = y * y;
        const double shift = u + mex_t * y2;
        return y2 * num::log1pexp(beta_mu - y2 - p * shift * shift);
      },
      0.0, y_cut, 1e-8, 0.0);
  return prefactor * body;
}

}  // namespace

double mex_from_ratio(double omega_ratio) {
  if (!(omega_ratio > 0.0))
    throw DomainError("mex_from_ratio: omega_ratio must be > 0");
  return 1.0 - omega_ratio * omega_ratio;
}

FiniteTParams make_finite_t_params(const TrapSpec& trap,
                                   const LightSpec& light,
                                   const GasState& gas) {
  trap.validate();
  light.validate();
  if (!(gas.temperature > 0.0))
    throw DomainError(
        "finite_temperature: requires T > 0 (use the T = 0 closed form)");
  const double m_ex = mex_from_ratio(trap.omega_ratio);
  const bool anisotropic =
      std::fabs(trap.lambda_y - 1.0) > 1e-12 ||
      std::fabs(trap.lambda_z - 1.0) > 1e-12;
  if (anisotropic && std::fabs(m_ex) > 1e-12)
    throw CapabilityError(
        "finite_temperature: anisotropic traps are supported only for "
        "omega_ratio == 1");

  FiniteTParams params;
  params.n_atoms = gas.n_atoms;
  params.temperature = gas.temperature;
  params.beta = 1.0 / gas.temperature;
  params.beta_mu = gas.chemical_potential * params.beta;
  params.fermi_energy = gas.fermi_energy;
  params.alpha = light.alpha;
  params.p = params.beta / (4.0 * light.alpha * light.alpha);
  params.m_ex = m_ex;
  params.recoil_shift = light.alpha * light.alpha;
  params.aniso_factor = 1.0 / (trap.lambda_y * trap.lambda_z);
  params.prefactor = 2.0 * params.aniso_factor /
                     (M_PI * light.alpha * std::pow(params.beta, 2.5));
  params.y_cut = std::sqrt(std::max(params.beta_mu, 0.0) + kLogCut);

  // Widest detuning range with non-negligible intensity: the Doppler factor
  // allows |u + m_ex T y^2| <= s, and the trap-frequency change sweeps the
  // center by m_ex T y^2 over [0, y_cut^2].
  const double s = std::sqrt((std::max(params.beta_mu, 0.0) + kLogCut) /
                             params.p);
  const double sweep = std::fabs(m_ex) * gas.temperature * params.y_cut *
                       params.y_cut;
  double lo = -s - (m_ex > 0.0 ? sweep : 0.0);
  double hi = s + (m_ex < 0.0 ? sweep : 0.0);
  const double pad = 0.02 * (hi - lo) + 1.0;
  lo -= pad;
  hi += pad;

  const double mex_t = m_ex * gas.temperature;
  params.raw_integral = num::integrate(
      [&](double u) {
        return raw_shape(u, params.beta_mu, params.p, mex_t, params.y_cut,
                         params.prefactor);
      },
      lo, hi, 1e-9, 0.0);
  if (!(params.raw_integral > 0.0))
    throw NumericalError("finite_temperature: vanishing raw integral");
  params.norm = static_cast<double>(gas.n_atoms) / params.raw_integral;

  // Trim the plot support to the 1e-6 contour of the raw shape.
  const int probes = 512;
  double peak = 0.0;
  Eigen::ArrayXd u_probe = Eigen::ArrayXd::LinSpaced(probes, lo, hi);
  Eigen::ArrayXd i_probe(probes);
  for (int i = 0; i < probes; ++i) {
    i_probe[i] = raw_shape(u_probe[i], params.beta_mu, params.p, mex_t,
                           params.y_cut, params.prefactor);
    peak = std::max(peak, i_probe[i]);
  }
  int first = 0;
  while (first < probes - 1 && i_probe[first] < kContour * peak) ++first;
  int last = probes - 1;
  while (last > 0 && i_probe[last] < kContour * peak) --last;
  const double trim_pad =
      0.05 * (u_probe[last] - u_probe[first]) + 1e-12;
  params.support_lo = u_probe[std::max(first - 1, 0)] - trim_pad;
  params.support_hi = u_probe[std::min(last + 1, probes - 1)] + trim_pad;
  return params;
}

double lineshape_finite_T_raw(double u, const FiniteTParams& params) {
  return raw_shape(u, params.beta_mu, params.p,
                   params.m_ex * params.temperature, params.y_cut,
                   params.prefactor);
}

double lineshape_finite_T(double omega, const FiniteTParams& params,
                          const LightSpec& light, const GasState& gas) {
  if (!(gas.temperature > 0.0))
    throw DomainError("lineshape_finite_T: requires T > 0");
  double intensity = 0.0;
  for (const LightSpec::Line& line : light.lines) {
    const double u = omega - line.omega_0 - params.recoil_shift;
    intensity +=
        line.dipole_sq * params.norm * lineshape_finite_T_raw(u, params);
  }
  return intensity;
}

Spectrum spectrum_finite_T(const Eigen::ArrayXd& grid, const TrapSpec& trap,
                           const LightSpec& light, const GasState& gas) {
  validate_grid(grid);
  const FiniteTParams params = make_finite_t_params(trap, light, gas);

  Spectrum spectrum;
  spectrum.grid = grid;
  spectrum.intensity = Eigen::ArrayXd::Zero(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    spectrum.intensity[i] =
        lineshape_finite_T(grid[i], params, light, gas);

  spectrum.meta.set_int("n_atoms", gas.n_atoms);
  spectrum.meta.set_num("alpha", light.alpha);
  spectrum.meta.set_num("temperature", gas.temperature);
  spectrum.meta.set_num("fermi_energy", gas.fermi_energy);
  spectrum.meta.set_num("chemical_potential", gas.chemical_potential);
  spectrum.meta.set_num("beta_mu", params.beta_mu);
  spectrum.meta.set_num("m_ex", params.m_ex);
  spectrum.meta.set_num("doppler_curvature_p", params.p);
  spectrum.meta.set_num("recoil_shift", params.recoil_shift);
  spectrum.meta.set_num("aniso_factor", params.aniso_factor);
  spectrum.meta.set_num("norm_constant", params.norm);
  spectrum.meta.set_num("raw_sum_rule_ratio",
                        params.raw_integral /
                            static_cast<double>(gas.n_atoms));
  spectrum.meta.set("normalization", "sum_rule");
  spectrum.meta.set_num("total_weight",
                        static_cast<double>(gas.n_atoms) *
                            light.total_dipole_sq());
  return spectrum;
}

Eigen::ArrayXd default_grid_finite_T(const TrapSpec& trap,
                                     const LightSpec& light,
                                     const GasState& gas, long points) {
  const FiniteTParams params = make_finite_t_params(trap, light, gas);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const LightSpec::Line& line : light.lines) {
    const double center = line.omega_0 + params.recoil_shift;
    lo = std::min(lo, center + params.support_lo);
    hi = std::max(hi, center + params.support_hi);
  }
  return Eigen::ArrayXd::LinSpaced(points, lo, hi);
}

}  // namespace fermispec::ftemp
