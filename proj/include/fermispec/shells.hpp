#pragma once

#include "fermispec/types.hpp"

// Zero-temperature shell filling of the anisotropic oscillator spectrum
// n_x + lambda_y n_y + lambda_z n_z. Shells are the distinct values of that
// linear form, merged with an absolute tie tolerance of 1e-9.

namespace fermispec::exact {

/// Tie tolerance for grouping oscillator levels into shells.
inline constexpr double kShellTie = 1e-9;

struct ShellFilling {
  double n_fermi = 0.0;            // level value of the topmost occupied shell
  double top_shell_fraction = 1.0; // uniform occupancy of that shell
  long states_below = 0;           // states strictly below the top shell
  long states_at = 0;              // degeneracy of the top shell
};

/// Fills N atoms into the oscillator shells; n_fermi is the smallest level
/// value whose cumulative state count reaches N. top_shell_fraction is 1 for
/// closed shells. Cost grows with the total number of enumerated states.
ShellFilling fermi_number(long n_atoms, double lambda_y, double lambda_z);

/// Number of (n_y, n_z) pairs with lambda_y n_y + lambda_z n_z <= n_fermi -
/// n_x; zero when n_x exceeds n_fermi. For lambda_y = lambda_z = lambda this
/// equals ([q]+1)([q]+2)/2 with q = (n_fermi - n_x)/lambda.
long degeneracy_Kx(long n_x, double n_fermi, double lambda_y, double lambda_z);

/// Same count restricted to pairs strictly below the top shell.
long degeneracy_Kx_below(long n_x, double n_fermi, double lambda_y,
                         double lambda_z);

/// Number of (n_y, n_z) pairs with lambda_y n_y + lambda_z n_z <= bound
/// (within the tie tolerance); the building block of the counts above.
long count_pairs_within(double bound, double lambda_y, double lambda_z);

}  // namespace fermispec::exact
