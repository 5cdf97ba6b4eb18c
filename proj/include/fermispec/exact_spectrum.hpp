#pragma once

#include <Eigen/Core>

#include "fermispec/types.hpp"

// Discrete zero-temperature absorption line list: every occupied axial level
// n_x contributes sidebands m >= -n_x with weight K_x * FC(n_x, m, alpha),
// scaled per excited electronic state by |d_ex|^2 and offset by its
// transition frequency. Delta lines can be smoothed onto a grid with a
// unit-normalized kernel.

namespace fermispec::exact {

enum class Kernel { gaussian, lorentzian };

const char* kernel_name(Kernel kernel);
Kernel kernel_from_name(const std::string& name);

/// Builds the T = 0 line list. Requires omega_ratio == 1 (unequal trap
/// frequencies are handled by the Thomas-Fermi route) and throws
/// CapabilityError otherwise. With m_max < 0 the sideband cutoff is chosen
/// adaptively so the dropped weight stays below 1e-6 of the total, with a
/// safety cap of 4 alpha^2 + 10 alpha + n_F.
LineList exact_line_list(const TrapSpec& trap, const LightSpec& light,
                         long n_atoms, long m_max = -1);

/// Smooths delta lines onto the grid: intensity(w) = sum of weights times a
/// unit-normalized kernel of the given width. Warns (and records the clipped
/// weight in meta) when the grid does not cover all lines +- 6 widths.
Spectrum broaden(const LineList& lines, Kernel kernel, double width,
                 const Eigen::ArrayXd& grid);

/// Grid covering all lines +- 6 kernel widths, with spacing fine enough to
/// resolve the kernel (at most width/4, within the point budget).
Eigen::ArrayXd default_line_grid(const LineList& lines, double width,
                                 long max_points = 32001);

}  // namespace fermispec::exact
