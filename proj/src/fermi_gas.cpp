#include "fermispec/fermi_gas.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "fermispec/numerics.hpp"

namespace fermispec::core {

namespace {

void check_geometry(long n_atoms, double lambda_y, double lambda_z) {
  if (n_atoms < 1) throw DomainError("fermi gas: n_atoms must be >= 1");
  if (!(lambda_y > 0.0) || !(lambda_z > 0.0))
    throw DomainError("fermi gas: anisotropies must be > 0");
}

}  // namespace

double fermi_energy(long n_atoms, double lambda_y, double lambda_z) {
  check_geometry(n_atoms, lambda_y, lambda_z);
  return std::cbrt(6.0 * lambda_y * lambda_z *
                   static_cast<double>(n_atoms));
}

double fd_occupation(double energy, double mu, double temperature) {
  if (temperature < 0.0)
    throw DomainError("fd_occupation: temperature must be >= 0");
  if (temperature == 0.0) {
    if (energy < mu) return 1.0;
    if (energy > mu) return 0.0;
    return 0.5;
  }
  const double x = (energy - mu) / temperature;
  if (x >= 0.0) {
    const double e = std::exp(-x);  // underflows to 0 for large x
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double tf_atom_count(double mu, double temperature, double lambda_y,
                     double lambda_z) {
  if (!(lambda_y > 0.0) || !(lambda_z > 0.0))
    throw DomainError("tf_atom_count: anisotropies must be > 0");
  if (temperature < 0.0)
    throw DomainError("tf_atom_count: temperature must be >= 0");
  const double norm = 2.0 * lambda_y * lambda_z;
  if (temperature == 0.0) {
    const double top = std::max(mu, 0.0);
    return top * top * top / (3.0 * norm);
  }
  const double t = temperature;
  const double cut = std::max(mu, 0.0) + 40.0 * t;
  const double body = num::integrate(
      [mu, t](double e) { return e * e * fd_occupation(e, mu, t); }, 0.0, cut,
      1e-12, 0.0);
  // Boltzmann tail beyond the cut, integrated in closed form.
  const double tail = std::exp((mu - cut) / t) * t *
                      (cut * cut + 2.0 * cut * t + 2.0 * t * t);
  return (body + tail) / norm;
}

double chemical_potential(long n_atoms, double temperature, double lambda_y,
                          double lambda_z) {
  check_geometry(n_atoms, lambda_y, lambda_z);
  if (temperature < 0.0)
    throw DomainError("chemical_potential: temperature must be >= 0");
  const double ef = fermi_energy(n_atoms, lambda_y, lambda_z);
  if (temperature == 0.0) return ef;

  const double target = static_cast<double>(n_atoms);
  auto excess = [&](double mu) {
    return tf_atom_count(mu, temperature, lambda_y, lambda_z) - target;
  };

  // The count is strictly increasing in mu; mu = E_F always overshoots at
  // T > 0 and mu = -50 T undershoots for any physical degeneracy.
  double lo = -50.0 * temperature;
  double hi = ef;
  int guard = 0;
  while (excess(lo) >= 0.0) {
    lo -= 10.0 * temperature + ef;
    if (++guard > 60)
      throw NumericalError("chemical_potential: failed to bracket (low)");
  }
  guard = 0;
  while (excess(hi) <= 0.0) {
    hi += ef + 10.0 * temperature;
    if (++guard > 60)
      throw NumericalError("chemical_potential: failed to bracket (high)");
  }
  const double scale =
      std::max({ef, std::fabs(lo), std::fabs(hi), temperature});
  return num::find_root(excess, lo, hi, 1e-10 * scale);
}

double sommerfeld_mu(long n_atoms, double temperature, double lambda_y,
                     double lambda_z) {
  check_geometry(n_atoms, lambda_y, lambda_z);
  if (temperature < 0.0)
    throw DomainError("sommerfeld_mu: temperature must be >= 0");
  const double ef = fermi_energy(n_atoms, lambda_y, lambda_z);
  if (temperature == 0.0) return ef;
  const double beta_ef = ef / temperature;
  if (beta_ef <= 1.0)
    std::cerr << "fermispec: warning: sommerfeld_mu called with E_F/T = "
              << beta_ef << " <= 1 (expansion unreliable)\n";
  const double x = 1.0 / beta_ef;
  return ef * (1.0 - (M_PI * M_PI / 3.0) * x * x);
}

GasState make_gas_state(const TrapSpec& trap, long n_atoms,
                        double temperature) {
  trap.validate();
  GasState gas;
  gas.n_atoms = n_atoms;
  gas.temperature = temperature;
  gas.fermi_energy = fermi_energy(n_atoms, trap.lambda_y, trap.lambda_z);
  gas.chemical_potential =
      chemical_potential(n_atoms, temperature, trap.lambda_y, trap.lambda_z);
  return gas;
}

}  // namespace fermispec::core
