#pragma once

#include "fermispec/types.hpp"

// Fermi statistics of the ideal trapped gas: Fermi energy, Fermi-Dirac
// occupation and the chemical potential mu(N, T) for the semiclassical
// density of states g(e) = e^2 / (2 lambda_y lambda_z).

namespace fermispec::core {

/// Fermi energy (6 lambda_y lambda_z N)^(1/3) in hbar*Omega_g units.
double fermi_energy(long n_atoms, double lambda_y, double lambda_z);

/// Fermi-Dirac occupation 1 / (exp((energy - mu)/T) + 1).
/// At T = 0 this is the step function, with value 1/2 exactly at energy = mu.
double fd_occupation(double energy, double mu, double temperature);

/// Number of atoms held by the continuum density of states at (mu, T):
/// integral of g(e) fd_occupation(e, mu, T) over e >= 0.
double tf_atom_count(double mu, double temperature, double lambda_y,
                     double lambda_z);

/// Chemical potential solving tf_atom_count(mu, T) = N, bracketed and solved
/// to 1e-10 relative. Returns the Fermi energy exactly at T = 0.
double chemical_potential(long n_atoms, double temperature, double lambda_y,
                          double lambda_z);

/// Low-temperature expansion mu = E_F (1 - (pi^2/3) (T/E_F)^2). Warns on
/// stderr when the gas is not degenerate (E_F/T <= 1).
double sommerfeld_mu(long n_atoms, double temperature, double lambda_y,
                     double lambda_z);

/// Builds the full thermodynamic state (E_F and mu) for the trap geometry.
/// temperature is in hbar*Omega_g units.
GasState make_gas_state(const TrapSpec& trap, long n_atoms,
                        double temperature);

}  // namespace fermispec::core
