#include <doctest.h>

#include <cmath>

#include "fermispec/fermi_gas.hpp"
#include "fermispec/numerics.hpp"
#include "fermispec/thomas_fermi.hpp"
#include "fermispec/types.hpp"

using namespace fermispec;

namespace {

TrapSpec make_trap(double ly, double lz) {
  TrapSpec trap;
  trap.lambda_y = ly;
  trap.lambda_z = lz;
  return trap;
}

LightSpec make_light(double alpha) {
  LightSpec light;
  light.alpha = alpha;
  light.lines = {LightSpec::Line{0.0, 1.0}};
  return light;
}

// least-squares slope of y against x
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_SUITE("thomas_fermi") {

TEST_CASE("phase-space density limits") {
  const TrapSpec trap = make_trap(2.0, 5.0);
  constexpr double cell = 1.0 / (8.0 * M_PI * M_PI * M_PI);
  const double ef = core::fermi_energy(100, 2.0, 5.0);
  // deep interior of the Fermi sea at T = 0
  CHECK(tf::phase_space_density({0, 0, 0}, {0, 0, 0}, ef, 0.0, trap) ==
        doctest::Approx(cell));
  // exactly on the Fermi surface at T > 0: half filling
  const Eigen::Vector3d k(std::sqrt(2.0 * ef), 0.0, 0.0);
  CHECK(tf::phase_space_density({0, 0, 0}, k, ef, 0.3, trap) ==
        doctest::Approx(0.5 * cell));
  // outside the T = 0 Fermi surface
  CHECK(tf::phase_space_density({0, 0, 0}, 1.01 * k, ef, 0.0, trap) == 0.0);
}

TEST_CASE("anisotropy enters the density through scaled coordinates") {
  const TrapSpec trap = make_trap(4.0, 9.0);
  const TrapSpec iso = make_trap(1.0, 1.0);
  const double mu = 30.0;
  for (double y : {0.1, 0.9, 2.7}) {
    const double direct = tf::phase_space_density(
        {0.0, y, 0.0}, {1.0, 2.0, 0.5}, mu, 0.7, trap);
    const double mapped = tf::phase_space_density(
        {4.0 * y, 0.0, 0.0}, {1.0, 2.0, 0.5}, mu, 0.7, iso);
    CHECK(direct == doctest::Approx(mapped).epsilon(1e-14));
  }
}

TEST_CASE("phase-space integral recovers N") {
  // reduce the 6D integral over the scaled position and momentum radii
  struct Case {
    long n;
    double ly, lz, t_frac;
  };
  for (const Case& c : {Case{100, 1.0, 1.0, 0.3}, Case{500, 2.0, 3.0, 0.1}}) {
    const TrapSpec trap = make_trap(c.ly, c.lz);
    const double ef = core::fermi_energy(c.n, c.ly, c.lz);
    const double t = c.t_frac * ef;
    const double mu = core::chemical_potential(c.n, t, c.ly, c.lz);
    const double top = std::sqrt(2.0 * (std::max(mu, 0.0) + 40.0 * t));
    const double jac = 16.0 * M_PI * M_PI / (c.ly * c.lz);
    const double integral = num::integrate(
        [&](double r) {
          return r * r * num::integrate(
                             [&](double k) {
                               return k * k *
                                      tf::phase_space_density(
                                          {r, 0.0, 0.0}, {k, 0.0, 0.0}, mu, t,
                                          trap);
                             },
                             0.0, top, 1e-9, 0.0);
        },
        0.0, top, 1e-8, 0.0);
    CHECK(jac * integral ==
          doctest::Approx(static_cast<double>(c.n)).epsilon(1e-4));
  }
}

TEST_CASE("momentum distribution: edge, prefactor, normalization") {
  const long n = 5000;
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const double kf = tf::fermi_wavevector(ef);
  CHECK(kf == doctest::Approx(std::sqrt(2.0 * ef)).epsilon(1e-15));
  CHECK(tf::momentum_distribution_T0(0.0, n, kf) ==
        doctest::Approx(8.0 * static_cast<double>(n) /
                        (M_PI * M_PI * kf * kf * kf)));
  CHECK(tf::momentum_distribution_T0(kf, n, kf) == 0.0);
  CHECK(tf::momentum_distribution_T0(2.0 * kf, n, kf) == 0.0);

  const double total = num::integrate(
      [&](double k) {
        return 4.0 * M_PI * k * k * tf::momentum_distribution_T0(k, n, kf);
      },
      0.0, kf, 1e-12, 0.0);
  CHECK(total == doctest::Approx(static_cast<double>(n)).epsilon(1e-8));
}

TEST_CASE("momentum distribution is isotropic for anisotropic traps") {
  // marginalize the T = 0 phase-space density over position numerically and
  // compare against the closed form, for two different anisotropies
  const long n = 200;
  for (auto [ly, lz] : {std::pair{1.0, 1.0}, std::pair{4.0, 9.0}}) {
    const TrapSpec trap = make_trap(ly, lz);
    const double ef = core::fermi_energy(n, ly, lz);
    const double kf = std::sqrt(2.0 * ef);
    for (double frac : {0.0, 0.35, 0.8}) {
      const double k = frac * kf;
      const double r_top = std::sqrt(2.0 * ef);
      const double marginal =
          4.0 * M_PI / (ly * lz) *
          num::integrate(
              [&](double r) {
                return r * r *
                       tf::phase_space_density({r, 0.0, 0.0},
                                               {0.0, k, 0.0}, ef, 0.0, trap);
              },
              0.0, r_top, 1e-10, 0.0);
      CHECK(marginal ==
            doctest::Approx(tf::momentum_distribution_T0(k, n, kf))
                .epsilon(1e-6));
    }
  }
}

TEST_CASE("closed-form lineshape: peak, edge, sum rule") {
  const long n = 35;
  const TrapSpec trap = make_trap(1.0, 1.0);
  const LightSpec light = make_light(9.0);
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const double w = tf::support_half_width(9.0, ef);
  const double center = 81.0;

  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(
      4001, center - 1.5 * w, center + 1.5 * w);
  const Spectrum s = tf::tf_lineshape_T0(grid, trap, light, n);

  CHECK(num::linear_interp(s.grid, s.intensity, center) ==
        doctest::Approx(16.0 * n / (5.0 * M_PI * w)).epsilon(1e-6));
  CHECK(num::linear_interp(s.grid, s.intensity, center + w) ==
        doctest::Approx(0.0));
  CHECK(num::linear_interp(s.grid, s.intensity, center - 1.2 * w) == 0.0);
  CHECK(num::trapezoid(s.grid, s.intensity) ==
        doctest::Approx(static_cast<double>(n)).epsilon(1e-4));
  CHECK(s.meta.num("support_half_width") == doctest::Approx(w));
  CHECK(s.meta.num("half_width_alt") == doctest::Approx(0.5 * w));
}

TEST_CASE("lineshape depends on anisotropy only through the product") {
  const long n = 128;
  const LightSpec light = make_light(4.0);
  const Eigen::ArrayXd grid =
      tf::default_grid_T0(make_trap(2.0, 8.0), light, n);
  const Spectrum a = tf::tf_lineshape_T0(grid, make_trap(2.0, 8.0), light, n);
  const Spectrum b = tf::tf_lineshape_T0(grid, make_trap(8.0, 2.0), light, n);
  const Spectrum c = tf::tf_lineshape_T0(grid, make_trap(4.0, 4.0), light, n);
  CHECK((a.intensity - b.intensity).abs().maxCoeff() == 0.0);
  CHECK((a.intensity - c.intensity).abs().maxCoeff() <=
        1e-12 * a.intensity.maxCoeff());
}

TEST_CASE("support width grows with trap hardness and atom number") {
  const double ef_soft = core::fermi_energy(1000, 1.0, 1.0);
  const double ef_hard = core::fermi_energy(1000, 5.0, 5.0);
  CHECK(tf::support_half_width(9.0, ef_hard) >
        tf::support_half_width(9.0, ef_soft));
  const double ef_more = core::fermi_energy(2000, 1.0, 1.0);
  CHECK(tf::support_half_width(9.0, ef_more) >
        tf::support_half_width(9.0, ef_soft));
  // strict monotonicity along a lambda ladder
  double previous = 0.0;
  for (double lambda : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double w = tf::support_half_width(
        9.0, core::fermi_energy(1000, lambda, lambda));
    CHECK(w > previous);
    previous = w;
  }
}

TEST_CASE("unequal trap frequencies are routed away") {
  TrapSpec trap = make_trap(1.0, 1.0);
  trap.omega_ratio = 0.8;
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(101, 0.0, 200.0);
  CHECK_THROWS_AS(tf::tf_lineshape_T0(grid, trap, make_light(9.0), 100),
                  CapabilityError);
}

TEST_CASE("marginal oracle agrees with the closed form") {
  const long n = 35;
  const TrapSpec trap = make_trap(1.0, 1.0);
  const LightSpec light = make_light(9.0);
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const double kf = std::sqrt(2.0 * ef);
  const Eigen::ArrayXd grid = tf::default_grid_T0(trap, light, n, 801);

  const Spectrum oracle = tf::doppler_marginal_oracle(grid, n, kf, 9.0);
  const Spectrum closed = tf::tf_lineshape_T0(grid, trap, light, n);

  const double peak_o = oracle.intensity.maxCoeff();
  const double peak_c = closed.intensity.maxCoeff();
  const double sup_norm =
      (oracle.intensity / peak_o - closed.intensity / peak_c)
          .abs()
          .maxCoeff();
  CHECK(sup_norm <= 1e-6);
  CHECK(num::trapezoid(oracle.grid, oracle.intensity) ==
        doctest::Approx(static_cast<double>(n)).epsilon(1e-4));
}

TEST_CASE("marginal oracle support and symmetry") {
  const long n = 100;
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const double kf = std::sqrt(2.0 * ef);
  const double alpha = 5.0;
  const double w = tf::support_half_width(alpha, ef);
  const double center = alpha * alpha;
  // symmetric grid around the recoil-shifted center
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(
      1001, center - 1.5 * w, center + 1.5 * w);
  const Spectrum s = tf::doppler_marginal_oracle(grid, n, kf, alpha);

  // support edge: zero outside the half-width, positive just inside
  CHECK(num::linear_interp(s.grid, s.intensity, center + 1.01 * w) == 0.0);
  CHECK(num::linear_interp(s.grid, s.intensity, center - 1.01 * w) == 0.0);
  CHECK(num::linear_interp(s.grid, s.intensity, center + 0.95 * w) > 0.0);

  // even in the detuning measured from the center
  const Eigen::Index size = s.size();
  for (Eigen::Index i = 0; i < size / 2; ++i)
    CHECK(s.intensity[i] ==
          doctest::Approx(s.intensity[size - 1 - i]).epsilon(1e-9));
}

TEST_CASE("log-log slope of the lineshape is 5/2") {
  const long n = 1000;
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const double kf = std::sqrt(2.0 * ef);
  const double alpha = 9.0;
  const double w = tf::support_half_width(alpha, ef);
  const double center = alpha * alpha;

  std::vector<double> log_base, log_intensity;
  Eigen::ArrayXd zs = Eigen::ArrayXd::LinSpaced(33, 0.1, 0.9);
  Eigen::ArrayXd grid(zs.size());
  for (Eigen::Index i = 0; i < zs.size(); ++i) grid[i] = center + zs[i] * w;
  const Spectrum s = tf::doppler_marginal_oracle(grid, n, kf, alpha);
  const double peak = 16.0 * n / (5.0 * M_PI * w);
  for (Eigen::Index i = 0; i < zs.size(); ++i) {
    log_base.push_back(std::log(1.0 - zs[i] * zs[i]));
    log_intensity.push_back(std::log(s.intensity[i] / peak));
  }
  CHECK(fit_slope(log_base, log_intensity) ==
        doctest::Approx(2.5).epsilon(4e-4));
}

}  // TEST_SUITE
