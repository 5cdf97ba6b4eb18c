// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fermispec/config.hpp"
#include "fermispec/exact_spectrum.hpp"
#include "fermispec/fermi_gas.hpp"
#include "fermispec/finite_temperature.hpp"
#include "fermispec/franck_condon.hpp"
#include "fermispec/numerics.hpp"
#include "fermispec/oracles.hpp"
#include "fermispec/scenarios.hpp"
#include "fermispec/thomas_fermi.hpp"
#include "fermispec/types.hpp"

using namespace fermispec;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (condition) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int g_failures = 0;

void criterion(int id, const std::string& title,
               const std::function<void(Check&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Check check;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.note(std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!check.ok) ++g_failures;
  std::printf("criterion %2d [%s] (%7.2f s) %s%s%s\n", id,
              check.ok ? "PASS" : "FAIL", seconds, title.c_str(),
              check.detail.empty() ? "" : " -- ", check.detail.c_str());
  std::fflush(stdout);
}

TrapSpec make_trap(double lambda = 1.0, double ratio = 1.0) {
  TrapSpec trap;
  trap.lambda_y = lambda;
  trap.lambda_z = lambda;
  trap.omega_ratio = ratio;
  return trap;
}

LightSpec make_light(double alpha) {
  LightSpec light;
  light.alpha = alpha;
  light.lines = {LightSpec::Line{0.0, 1.0}};
  return light;
}

struct Moments {
  double mean, variance, excess_kurtosis, fwhm, peak_position;
};

Moments moments_of(const Spectrum& s) {
  const double mass = num::trapezoid(s.grid, s.intensity);
  const double mean =
      num::trapezoid(s.grid, (s.grid * s.intensity).eval()) / mass;
  Eigen::ArrayXd centered = s.grid - mean;
  const double var =
      num::trapezoid(s.grid, (centered.square() * s.intensity).eval()) / mass;
  const double m4 =
      num::trapezoid(s.grid, (centered.pow(4) * s.intensity).eval()) / mass;

  Eigen::Index peak_at = 0;
  const double peak = s.intensity.maxCoeff(&peak_at);
  double lo = s.grid[0], hi = s.grid[s.size() - 1];
  for (Eigen::Index i = peak_at; i >= 1; --i)
    if (s.intensity[i - 1] < 0.5 * peak) {
      const double t = (0.5 * peak - s.intensity[i - 1]) /
                       (s.intensity[i] - s.intensity[i - 1]);
      lo = s.grid[i - 1] + t * (s.grid[i] - s.grid[i - 1]);
      break;
    }
  for (Eigen::Index i = peak_at; i + 1 < s.size(); ++i)
    if (s.intensity[i + 1] < 0.5 * peak) {
      const double t = (s.intensity[i] - 0.5 * peak) /
                       (s.intensity[i] - s.intensity[i + 1]);
      hi = s.grid[i] + t * (s.grid[i + 1] - s.grid[i]);
      break;
    }
  return {mean, var, m4 / (var * var) - 3.0, hi - lo, s.grid[peak_at]};
}

std::string fmt(double value) { return format_double(value); }

// ---------------------------------------------------------------------------

void c1_sum_rule_presets(Check& check) {
  struct Preset {
    const char* name;
    long n;
    double lambda, alpha;
  };
  const std::vector<Preset> presets = {
      {"fig1 lambda=1", 20, 1.0, 8.0},  {"fig1 lambda=5", 20, 5.0, 8.0},
      {"fig1 lambda=20", 20, 20.0, 8.0}, {"fig2", 35, 1.0, 9.0},
      {"fig3", 196, 5.0, 9.0}};
  for (const Preset& p : presets) {
    const auto start = std::chrono::steady_clock::now();
    const LineList list = exact::exact_line_list(
        make_trap(p.lambda), make_light(p.alpha), p.n);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const double rel =
        std::fabs(list.total_weight - static_cast<double>(p.n)) /
        static_cast<double>(p.n);
    check.expect(rel <= 1e-6, std::string(p.name) + " sum-rule error " +
                                  fmt(rel));
    check.expect(elapsed <= 10.0,
                 std::string(p.name) + " runtime " + fmt(elapsed) + " s");
  }
}

void c2_fc_oracle_equivalence(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  long worst_n = 0, worst_m = 0;
  double worst_alpha = 0.0;
  for (double alpha : {1.0, 8.0, 9.0})
    for (long n = 0; n <= 40; ++n)
      for (long m = -n; m <= 80; ++m) {
        const double stable = exact::franck_condon_factor(n, m, alpha);
        const double direct =
            static_cast<double>(oracles::fc_direct_sum(n, m, alpha, 30));
        if (direct == 0.0) {
          check.expect(stable == 0.0, "zero mismatch");
          continue;
        }
        const double rel = std::fabs(stable - direct) / direct;
        if (rel > worst) {
          worst = rel;
          worst_n = n;
          worst_m = m;
          worst_alpha = alpha;
        }
      }
  check.expect(worst <= 1e-10,
               "worst rel err " + fmt(worst) + " at n=" +
                   std::to_string(worst_n) + " m=" + std::to_string(worst_m) +
                   " alpha=" + fmt(worst_alpha));
  check.note("max deviation " + fmt(worst));
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.expect(elapsed <= 60.0, "runtime " + fmt(elapsed) + " s");
}

void c3_fc_unitarity(Check& check) {
  for (long n : {0L, 5L, 20L, 40L})
    for (double alpha : {1.0, 9.0}) {
      const long m_hi =
          static_cast<long>(4.0 * alpha * alpha + 10.0 * alpha) + n + 60;
      double sum = 0.0;
      for (long m = -n; m <= m_hi; ++m)
        sum += exact::franck_condon_factor(n, m, alpha);
      check.expect(std::fabs(sum - 1.0) <= 1e-9,
                   "n=" + std::to_string(n) + " alpha=" + fmt(alpha) +
                       " sum=" + fmt(sum));
    }
}

void c4_tf_zero_shape(Check& check) {
  const long n = 35;
  const double alpha = 9.0;
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const double kf = std::sqrt(2.0 * ef);
  const double w = tf::support_half_width(alpha, ef);
  const double center = alpha * alpha;

  const Eigen::ArrayXd grid = tf::default_grid_T0(
      make_trap(), make_light(alpha), n, 2001);
  const Spectrum oracle = tf::doppler_marginal_oracle(grid, n, kf, alpha);
  const Spectrum closed =
      tf::tf_lineshape_T0(grid, make_trap(), make_light(alpha), n);
  const double sup =
      (oracle.intensity / oracle.intensity.maxCoeff() -
       closed.intensity / closed.intensity.maxCoeff())
          .abs()
          .maxCoeff();
  check.expect(sup <= 1e-6, "sup-norm " + fmt(sup));

  // slope of log I against log(1 - z^2) on the oracle
  Eigen::ArrayXd zs = Eigen::ArrayXd::LinSpaced(41, 0.1, 0.9);
  Eigen::ArrayXd slope_grid(zs.size());
  for (Eigen::Index i = 0; i < zs.size(); ++i)
    slope_grid[i] = center + zs[i] * w;
  const Spectrum on_z =
      tf::doppler_marginal_oracle(slope_grid, n, kf, alpha);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double count = static_cast<double>(zs.size());
  for (Eigen::Index i = 0; i < zs.size(); ++i) {
    const double x = std::log(1.0 - zs[i] * zs[i]);
    const double y = std::log(on_z.intensity[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  check.expect(std::fabs(slope - 2.5) <= 1e-3, "slope " + fmt(slope));
  check.note("slope " + fmt(slope));
}

void c5_fig2_reproduction(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  const auto scenarios = cli::preset_scenarios("fig2");
  const cli::ScenarioResult result = cli::run_scenario(scenarios[0].second);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.expect(elapsed <= 10.0, "runtime " + fmt(elapsed) + " s");

  const Spectrum* exact_s = nullptr;
  const Spectrum* tf_s = nullptr;
  for (const auto& named : result.spectra) {
    if (named.name == "exact") exact_s = &named.spectrum;
    if (named.name == "tf") tf_s = &named.spectrum;
  }
  if (exact_s == nullptr || tf_s == nullptr) {
    check.expect(false, "compare route did not emit exact+tf spectra");
    return;
  }
  const double w = exact_s->meta.num("support_half_width");
  const double center = 81.0;
  const Eigen::ArrayXd exact_n =
      exact_s->intensity / exact_s->intensity.maxCoeff();
  const Eigen::ArrayXd tf_n = tf_s->intensity / tf_s->intensity.maxCoeff();
  double central_sup = 0.0;
  for (Eigen::Index i = 0; i < exact_s->size(); ++i)
    if (std::fabs(exact_s->grid[i] - center) <= 0.8 * w)
      central_sup =
          std::max(central_sup, std::fabs(exact_n[i] - tf_n[i]));
  check.expect(central_sup <= 0.05,
               "central deviation " + fmt(central_sup) + " of peak");
  check.note("central deviation " + fmt(central_sup));
}

void c6_fig1_oscillations(Check& check) {
  auto envelope_maxima = [](double lambda) {
    const LineList list = exact::exact_line_list(
        make_trap(lambda), make_light(8.0), 20);
    std::map<long, double> weights;
    for (const auto& line : list.lines) weights[line.m] += line.weight;
    std::vector<double> values;
    double peak = 0.0;
    for (const auto& [m, weight] : weights) {
      values.push_back(weight);
      peak = std::max(peak, weight);
    }
    int maxima = 0;
    for (size_t i = 1; i + 1 < values.size(); ++i)
      if (values[i] > values[i - 1] && values[i] > values[i + 1] &&
          values[i] > 0.01 * peak)
        ++maxima;
    return maxima;
  };
  const int aniso = envelope_maxima(20.0);
  const int iso = envelope_maxima(1.0);
  check.expect(aniso >= 3, "lambda=20 maxima " + std::to_string(aniso));
  check.expect(iso <= 1, "lambda=1 maxima " + std::to_string(iso));
  check.note("maxima: lambda=20 -> " + std::to_string(aniso) +
             ", lambda=1 -> " + std::to_string(iso));
}

void c7_finite_t_cold_limit(Check& check) {
  const long n = 10667;
  const TrapSpec trap = make_trap();
  const LightSpec light = make_light(9.0);
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const GasState gas = core::make_gas_state(trap, n, 0.001 * ef);
  const Eigen::ArrayXd grid = tf::default_grid_T0(trap, light, n, 1501);
  const Spectrum cold = ftemp::spectrum_finite_T(grid, trap, light, gas);
  const Spectrum closed = tf::tf_lineshape_T0(grid, trap, light, n);
  const double sup = ((cold.intensity - closed.intensity).abs() /
                      closed.intensity.maxCoeff())
                         .maxCoeff();
  check.expect(sup <= 0.005, "sup-norm " + fmt(sup) + " of peak");
  check.note("sup-norm " + fmt(sup));
}

void c8_classical_gaussian(Check& check) {
  const long n = 1000;
  const double alpha = 9.0;
  const TrapSpec trap = make_trap();
  const LightSpec light = make_light(alpha);
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const double t = ef / 0.1;  // beta E_F = 0.1
  const GasState gas = core::make_gas_state(trap, n, t);
  const Spectrum s = ftemp::spectrum_finite_T(
      ftemp::default_grid_finite_T(trap, light, gas, 4001), trap, light, gas);
  const Moments m = moments_of(s);
  const double doppler_variance = 2.0 * alpha * alpha * t;
  check.expect(std::fabs(m.variance / doppler_variance - 1.0) <= 0.02,
               "variance ratio " + fmt(m.variance / doppler_variance));
  check.expect(std::fabs(m.excess_kurtosis) <= 0.05,
               "excess kurtosis " + fmt(m.excess_kurtosis));
  check.note("variance ratio " + fmt(m.variance / doppler_variance) +
             ", kurtosis " + fmt(m.excess_kurtosis));
}

void c9_fig4_monotonic_broadening(Check& check) {
  const long n = 10667;
  const TrapSpec trap = make_trap();
  const LightSpec light = make_light(9.0);
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  double previous = 0.0;
  double kurtosis_at_quarter = 0.0;
  for (double frac : {0.1, 0.25, 0.5}) {
    const GasState gas = core::make_gas_state(trap, n, frac * ef);
    const Spectrum s = ftemp::spectrum_finite_T(
        ftemp::default_grid_finite_T(trap, light, gas, 2001), trap, light,
        gas);
    const Moments m = moments_of(s);
    check.expect(m.fwhm > previous,
                 "FWHM not increasing at T=" + fmt(frac) + " E_F");
    if (frac == 0.25) kurtosis_at_quarter = m.excess_kurtosis;
    previous = m.fwhm;
  }
  check.expect(std::fabs(kurtosis_at_quarter) > 0.2,
               "kurtosis at 0.25 E_F " + fmt(kurtosis_at_quarter));
  check.note("kurtosis at 0.25 E_F " + fmt(kurtosis_at_quarter));
}

void c10_fig5_shifts(Check& check) {
  const long n = 10667;
  const LightSpec light = make_light(9.0);
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  const double t = 0.25 * ef;
  auto run = [&](double ratio) {
    const TrapSpec trap = make_trap(1.0, ratio);
    const GasState gas = core::make_gas_state(trap, n, t);
    return moments_of(ftemp::spectrum_finite_T(
        ftemp::default_grid_finite_T(trap, light, gas, 3001), trap, light,
        gas));
  };
  const Moments stiff = run(1.2);
  const Moments equal = run(1.0);
  const Moments soft = run(0.8);
  check.expect(stiff.peak_position > equal.peak_position,
               "peak(1.2) <= peak(1.0)");
  check.expect(equal.peak_position > soft.peak_position,
               "peak(1.0) <= peak(0.8)");
  check.expect(stiff.variance > equal.variance,
               "second moment not larger at ratio 1.2");
  check.note("peaks " + fmt(soft.peak_position) + " < " +
             fmt(equal.peak_position) + " < " + fmt(stiff.peak_position));
}

void c11_monte_carlo_cross_check(Check& check) {
  const auto start = std::chrono::steady_clock::now();
  const long n = 10667;
  const double alpha = 9.0;
  const LightSpec light = make_light(alpha);
  const double ef = core::fermi_energy(n, 1.0, 1.0);
  oracles::McConfig mc;
  mc.samples = 1000000;
  mc.seed = 20260808;

  struct Setup {
    const char* name;
    double t_frac;
    double m_ex;
  };
  for (const Setup& setup :
       {Setup{"T=0", 0.0, 0.0}, Setup{"0.25EF mex=0", 0.25, 0.0},
        Setup{"0.25EF mex=+0.36", 0.25, 0.36},
        Setup{"0.25EF mex=-0.36", 0.25, -0.36}}) {
    const double ratio = std::sqrt(1.0 - setup.m_ex);
    const TrapSpec trap = make_trap(1.0, ratio);
    const GasState gas =
        core::make_gas_state(trap, n, setup.t_frac * ef);
    Spectrum model;
    if (setup.t_frac == 0.0) {
      const Eigen::ArrayXd grid = tf::default_grid_T0(trap, light, n, 6001);
      model = tf::tf_lineshape_T0(grid, trap, light, n);
    } else {
      const Eigen::ArrayXd grid =
          ftemp::default_grid_finite_T(trap, light, gas, 6001);
      model = ftemp::spectrum_finite_T(grid, trap, light, gas);
    }
    const auto samples = oracles::mc_detuning_samples(trap, light, gas, mc);
    const double d =
        oracles::ks_distance(samples.detunings, model.grid, model.intensity);
    check.expect(d <= 0.01,
                 std::string(setup.name) + " KS distance " + fmt(d));
    check.note(std::string(setup.name) + " KS " + fmt(d));
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.expect(elapsed <= 120.0, "runtime " + fmt(elapsed) + " s");
}

void c12_chemical_potential(Check& check) {
  const long n = 2000;
  const double ef = core::fermi_energy(n, 1.0, 1.0);

  // degenerate: root solve against the low-temperature expansion
  const double t_cold = ef / 10.0;
  const double mu_cold = core::chemical_potential(n, t_cold, 1.0, 1.0);
  const double sommerfeld = core::sommerfeld_mu(n, t_cold, 1.0, 1.0);
  check.expect(std::fabs(mu_cold / sommerfeld - 1.0) <= 0.005,
               "Sommerfeld mismatch " + fmt(mu_cold / sommerfeld - 1.0));

  // non-degenerate: against the classical closed form
  const double t_hot = ef / 0.1;
  const double mu_hot = core::chemical_potential(n, t_hot, 1.0, 1.0);
  const double classical = t_hot * std::log(0.1 * 0.1 * 0.1 / 6.0);
  check.expect(std::fabs(mu_hot / classical - 1.0) <= 0.01,
               "classical mismatch " + fmt(mu_hot / classical - 1.0));

  // N recovery everywhere
  for (double beta_ef : {0.1, 0.5, 2.0, 5.0, 10.0, 100.0}) {
    const double t = ef / beta_ef;
    const double mu = core::chemical_potential(n, t, 1.0, 1.0);
    const double recovered = core::tf_atom_count(mu, t, 1.0, 1.0);
    check.expect(
        std::fabs(recovered / static_cast<double>(n) - 1.0) <= 1e-8,
        "N recovery at beta E_F = " + fmt(beta_ef) + ": " + fmt(recovered));
  }
}

void c13_recoil_shift(Check& check) {
  const long n = 500;
  const double alpha = 9.0;
  const double recoil = alpha * alpha;
  const TrapSpec trap = make_trap();
  const LightSpec light = make_light(alpha);
  const double ef = core::fermi_energy(n, 1.0, 1.0);

  {
    const Eigen::ArrayXd grid = tf::default_grid_T0(trap, light, n, 2001);
    const Spectrum s = tf::tf_lineshape_T0(grid, trap, light, n);
    Eigen::Index peak_at = 0;
    s.intensity.maxCoeff(&peak_at);
    const double step = grid[1] - grid[0];
    check.expect(std::fabs(grid[peak_at] - recoil) <= step,
                 "T=0 peak at " + fmt(grid[peak_at]));
  }
  for (double frac : {0.1, 0.25, 1.0, 10.0}) {
    const GasState gas = core::make_gas_state(trap, n, frac * ef);
    const Eigen::ArrayXd grid =
        ftemp::default_grid_finite_T(trap, light, gas, 2001);
    const Spectrum s = ftemp::spectrum_finite_T(grid, trap, light, gas);
    Eigen::Index peak_at = 0;
    s.intensity.maxCoeff(&peak_at);
    const double step = grid[1] - grid[0];
    check.expect(std::fabs(grid[peak_at] - recoil) <= step,
                 "T=" + fmt(frac) + " E_F peak at " + fmt(grid[peak_at]));
  }
}

}  // namespace

int main() {
  std::printf("fermispec acceptance suite\n");
  criterion(1, "exact-route sum rule on the figure presets",
            c1_sum_rule_presets);
  criterion(2, "stable recoil weights match the 30-digit direct sum",
            c2_fc_oracle_equivalence);
  criterion(3, "recoil weight unitarity", c3_fc_unitarity);
  criterion(4, "T=0 lineshape matches the transverse-momentum marginal",
            c4_tf_zero_shape);
  criterion(5, "exact vs Thomas-Fermi agreement (N=35, alpha=9)",
            c5_fig2_reproduction);
  criterion(6, "envelope oscillations appear only for anisotropic traps",
            c6_fig1_oscillations);
  criterion(7, "finite-T quadrature reaches the T=0 closed form",
            c7_finite_t_cold_limit);
  criterion(8, "non-degenerate limit is Gaussian with the Doppler variance",
            c8_classical_gaussian);
  criterion(9,
            "lineshape broadens with T and stays non-Gaussian when degenerate",
            c9_fig4_monotonic_broadening);
  criterion(10, "trap-frequency ratio shifts the peak and widens the line",
            c10_fig5_shifts);
  criterion(11, "seeded Monte Carlo matches quadrature and closed forms",
            c11_monte_carlo_cross_check);
  criterion(12, "chemical potential solver against both limits",
            c12_chemical_potential);
  criterion(13, "peak sits at the recoil shift for equal trap frequencies",
            c13_recoil_shift);
  std::printf("%d of 13 criteria failed\n", g_failures);
  return g_failures;
}
