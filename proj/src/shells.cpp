#include "fermispec/shells.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fermispec/fermi_gas.hpp"

namespace fermispec::exact {

namespace {

long count_states_within(double bound, double lambda_y, double lambda_z) {
  long total = 0;
  const long nx_max = static_cast<long>(std::floor(bound + kShellTie));
  for (long nx = 0; nx <= nx_max; ++nx)
    total += count_pairs_within(bound - static_cast<double>(nx), lambda_y,
                                lambda_z);
  return total;
}

void collect_levels(double bound, double lambda_y, double lambda_z,
                    std::vector<double>& levels) {
  levels.clear();
  const long nx_max = static_cast<long>(std::floor(bound + kShellTie));
  for (long nx = 0; nx <= nx_max; ++nx) {
    const double rx = bound - static_cast<double>(nx);
    const long ny_max =
        static_cast<long>(std::floor((rx + kShellTie) / lambda_y));
    for (long ny = 0; ny <= ny_max; ++ny) {
      const double ry = rx - lambda_y * static_cast<double>(ny);
      if (ry < -kShellTie) continue;
      const long nz_max =
          static_cast<long>(std::floor((ry + kShellTie) / lambda_z));
      for (long nz = 0; nz <= nz_max; ++nz)
        levels.push_back(static_cast<double>(nx) +
                         lambda_y * static_cast<double>(ny) +
                         lambda_z * static_cast<double>(nz));
    }
  }
}

}  // namespace

long count_pairs_within(double bound, double lambda_y, double lambda_z) {
  if (!(lambda_y > 0.0) || !(lambda_z > 0.0))
    throw DomainError("count_pairs_within: anisotropies must be > 0");
  if (bound < -kShellTie) return 0;
  // tolerance applied on the level-value scale throughout:
  // count pairs with lambda_y n_y + lambda_z n_z <= bound + tie
  long total = 0;
  const long ny_max =
      static_cast<long>(std::floor((bound + kShellTie) / lambda_y));
  for (long ny = 0; ny <= ny_max; ++ny) {
    const double rem = bound - lambda_y * static_cast<double>(ny);
    if (rem < -kShellTie) continue;
    total += static_cast<long>(std::floor((rem + kShellTie) / lambda_z)) + 1;
  }
  return total;
}

long degeneracy_Kx(long n_x, double n_fermi, double lambda_y,
                   double lambda_z) {
  if (n_x < 0) throw DomainError("degeneracy_Kx: n_x must be >= 0");
  return count_pairs_within(n_fermi - static_cast<double>(n_x), lambda_y,
                            lambda_z);
}

long degeneracy_Kx_below(long n_x, double n_fermi, double lambda_y,
                         double lambda_z) {
  if (n_x < 0) throw DomainError("degeneracy_Kx_below: n_x must be >= 0");
  return count_pairs_within(
      n_fermi - static_cast<double>(n_x) - 2.0 * kShellTie, lambda_y,
      lambda_z);
}

ShellFilling fermi_number(long n_atoms, double lambda_y, double lambda_z) {
  if (n_atoms < 1) throw DomainError("fermi_number: n_atoms must be >= 1");
  if (!(lambda_y > 0.0) || !(lambda_z > 0.0))
    throw DomainError("fermi_number: anisotropies must be > 0");

  // Grow the enumeration bound until it holds at least N states.
  double bound =
      core::fermi_energy(n_atoms, lambda_y, lambda_z) +
      std::max({1.0, lambda_y, lambda_z}) + 2.0;
  while (count_states_within(bound, lambda_y, lambda_z) < n_atoms)
    bound = bound * 1.3 + 1.0;

  std::vector<double> levels;
  collect_levels(bound, lambda_y, lambda_z, levels);
  std::sort(levels.begin(), levels.end());

  long cumulative = 0;
  size_t i = 0;
  while (i < levels.size()) {
    const double value = levels[i];
    size_t j = i;
    while (j < levels.size() && levels[j] - value <= kShellTie) ++j;
    const long shell_size = static_cast<long>(j - i);
    if (cumulative + shell_size >= n_atoms) {
      ShellFilling fill;
      fill.n_fermi = value;
      fill.states_below = cumulative;
      fill.states_at = shell_size;
      fill.top_shell_fraction =
          static_cast<double>(n_atoms - cumulative) /
          static_cast<double>(shell_size);
      return fill;
    }
    cumulative += shell_size;
    i = j;
  }
  throw NumericalError("fermi_number: enumeration bound too small");
}

}  // namespace fermispec::exact
