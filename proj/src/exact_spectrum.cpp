#include "fermispec/exact_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <vector>

#include "fermispec/franck_condon.hpp"
#include "fermispec/shells.hpp"

namespace fermispec::exact {

namespace {

constexpr double kTruncationTarget = 1e-6;

double gaussian_kernel_mass(double lo, double hi, double pos, double width) {
  const double inv = 1.0 / (width * std::sqrt(2.0));
  return 0.5 * (std::erf((hi - pos) * inv) - std::erf((lo - pos) * inv));
}

double lorentzian_kernel_mass(double lo, double hi, double pos, double width) {
  return (std::atan((hi - pos) / width) - std::atan((lo - pos) / width)) /
         M_PI;
}

}  // namespace

const char* kernel_name(Kernel kernel) {
  return kernel == Kernel::gaussian ? "gaussian" : "lorentzian";
}

Kernel kernel_from_name(const std::string& name) {
  if (name == "gaussian") return Kernel::gaussian;
  if (name == "lorentzian") return Kernel::lorentzian;
  throw DomainError("unknown kernel: " + name);
}

LineList exact_line_list(const TrapSpec& trap, const LightSpec& light,
                         long n_atoms, long m_max) {
  trap.validate();
  light.validate();
  if (n_atoms < 1)
    throw DomainError("exact_line_list: n_atoms must be >= 1");
  if (std::fabs(trap.omega_ratio - 1.0) > 1e-12)
    throw CapabilityError(
        "exact_line_list: supports omega_ratio == 1 only; use the "
        "Thomas-Fermi route for unequal trap frequencies");

  const double alpha = light.alpha;
  const double alpha_sq = alpha * alpha;
  const ShellFilling fill =
      fermi_number(n_atoms, trap.lambda_y, trap.lambda_z);
  const long nx_max = static_cast<long>(std::floor(fill.n_fermi + kShellTie));

  // Occupancy-weighted axial degeneracy: interior shells full, top shell
  // filled uniformly at top_shell_fraction.
  std::vector<double> occupancy(static_cast<size_t>(nx_max) + 1, 0.0);
  double occupancy_sum = 0.0;
  for (long nx = 0; nx <= nx_max; ++nx) {
    const long k_total =
        degeneracy_Kx(nx, fill.n_fermi, trap.lambda_y, trap.lambda_z);
    const long k_below =
        degeneracy_Kx_below(nx, fill.n_fermi, trap.lambda_y, trap.lambda_z);
    occupancy[static_cast<size_t>(nx)] =
        static_cast<double>(k_below) +
        fill.top_shell_fraction * static_cast<double>(k_total - k_below);
    occupancy_sum += occupancy[static_cast<size_t>(nx)];
  }
  if (std::fabs(occupancy_sum - static_cast<double>(n_atoms)) >
      1e-6 * static_cast<double>(n_atoms))
    throw NumericalError("exact_line_list: shell occupancy does not sum to N");

  const long cap = static_cast<long>(
      std::ceil(4.0 * alpha_sq + 10.0 * alpha + fill.n_fermi));
  long limit = m_max;
  bool adaptive = false;
  if (limit < 0) {
    adaptive = true;
    limit = std::min(cap, static_cast<long>(std::ceil(
                              alpha_sq + 10.0 * std::sqrt(alpha_sq + 1.0) +
                              fill.n_fermi)) +
                              20);
  }

  // base_weight[m + nx_max]: occupancy-weighted recoil weight of sideband m.
  std::vector<double> base_weight(static_cast<size_t>(nx_max + limit) + 1,
                                  0.0);
  std::vector<double> captured(static_cast<size_t>(nx_max) + 1, 0.0);
  auto accumulate = [&](long m_lo, long m_hi) {
    for (long nx = 0; nx <= nx_max; ++nx) {
      const double occ = occupancy[static_cast<size_t>(nx)];
      if (occ == 0.0) continue;
      for (long m = std::max(m_lo, -nx); m <= m_hi; ++m) {
        const double fc = franck_condon_factor(nx, m, alpha);
        captured[static_cast<size_t>(nx)] += fc;
        base_weight[static_cast<size_t>(m + nx_max)] += occ * fc;
      }
    }
  };

  accumulate(-nx_max, limit);
  auto truncated_mass = [&] {
    double mass = 0.0;
    for (long nx = 0; nx <= nx_max; ++nx)
      mass += occupancy[static_cast<size_t>(nx)] *
              std::max(0.0, 1.0 - captured[static_cast<size_t>(nx)]);
    return mass;
  };
  while (adaptive &&
         truncated_mass() > kTruncationTarget * static_cast<double>(n_atoms) &&
         limit < cap) {
    const long next = std::min(cap, limit + 64);
    base_weight.resize(static_cast<size_t>(nx_max + next) + 1, 0.0);
    accumulate(limit + 1, next);
    limit = next;
  }

  LineList list;
  list.m_max = limit;
  const double tail = truncated_mass();
  for (const LightSpec::Line& line : light.lines) {
    for (long m = -nx_max; m <= limit; ++m) {
      const double weight =
          line.dipole_sq * base_weight[static_cast<size_t>(m + nx_max)];
      list.lines.push_back(
          {m, line.omega_0 + static_cast<double>(m), weight});
      list.total_weight += weight;
    }
    list.truncated_weight += line.dipole_sq * tail;
  }
  return list;
}

Eigen::ArrayXd default_line_grid(const LineList& lines, double width,
                                 long max_points) {
  if (!(width > 0.0)) throw DomainError("default_line_grid: width must be > 0");
  if (lines.lines.empty())
    throw DomainError("default_line_grid: empty line list");
  const double lo = lines.min_detuning() - 6.0 * width;
  const double hi = lines.max_detuning() + 6.0 * width;
  const long points = std::clamp<long>(
      static_cast<long>(std::ceil((hi - lo) / (0.25 * width))) + 1, 801,
      max_points);
  return Eigen::ArrayXd::LinSpaced(points, lo, hi);
}

Spectrum broaden(const LineList& lines, Kernel kernel, double width,
                 const Eigen::ArrayXd& grid) {
  if (!(width > 0.0)) throw DomainError("broaden: width must be > 0");
  validate_grid(grid);

  Spectrum spectrum;
  spectrum.grid = grid;
  spectrum.intensity = Eigen::ArrayXd::Zero(grid.size());
  spectrum.meta.set("kernel", kernel_name(kernel));
  spectrum.meta.set_num("kernel_width", width);
  spectrum.meta.set_num("total_line_weight", lines.total_weight);
  spectrum.meta.set_num("truncated_line_weight", lines.truncated_weight);

  if (lines.lines.empty()) {
    spectrum.meta.set("warning", "empty line list");
    std::cerr << "fermispec: warning: broadening an empty line list\n";
    return spectrum;
  }

  const double lo = grid[0];
  const double hi = grid[grid.size() - 1];
  double clipped = 0.0;
  for (const LineList::Line& line : lines.lines) {
    const double mass = kernel == Kernel::gaussian
                            ? gaussian_kernel_mass(lo, hi, line.detuning, width)
                            : lorentzian_kernel_mass(lo, hi, line.detuning,
                                                     width);
    clipped += line.weight * (1.0 - mass);
  }
  if (clipped > 1e-12 * std::max(lines.total_weight, 1e-300))
    spectrum.meta.set_num("clipped_weight", clipped);
  if (lines.min_detuning() - 6.0 * width < lo ||
      lines.max_detuning() + 6.0 * width > hi)
    std::cerr << "fermispec: warning: grid does not cover all lines +- 6 "
                 "kernel widths; clipped weight "
              << clipped << "\n";

  if (kernel == Kernel::gaussian) {
    const double norm = 1.0 / (width * std::sqrt(2.0 * M_PI));
    const double inv2w2 = 1.0 / (2.0 * width * width);
    for (const LineList::Line& line : lines.lines) {
      if (line.weight == 0.0) continue;
      spectrum.intensity +=
          (line.weight * norm) *
          (-(grid - line.detuning).square() * inv2w2).exp();
    }
  } else {
    const double norm = width / M_PI;
    for (const LineList::Line& line : lines.lines) {
      if (line.weight == 0.0) continue;
      spectrum.intensity +=
          (line.weight * norm) /
          ((grid - line.detuning).square() + width * width);
    }
  }
  return spectrum;
}

}  // namespace fermispec::exact
