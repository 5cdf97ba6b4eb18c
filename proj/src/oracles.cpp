#include "fermispec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "fermispec/fermi_gas.hpp"
#include "fermispec/finite_temperature.hpp"
#include "fermispec/numerics.hpp"

namespace fermispec::oracles {

namespace {

using boost::multiprecision::cpp_int;

// Exact dyadic decomposition alpha^2 = p / q (q a power of two).
void exact_alpha_squared(double alpha, cpp_int& p, cpp_int& q) {
  int exp2 = 0;
  const double fraction = std::frexp(alpha, &exp2);
  auto mantissa = static_cast<std::int64_t>(std::ldexp(fraction, 53));
  exp2 -= 53;
  while (mantissa % 2 == 0 && mantissa != 0) {
    mantissa /= 2;
    ++exp2;
  }
  const cpp_int m2 = cpp_int(mantissa) * mantissa;
  const int etot = 2 * exp2;
  if (etot >= 0) {
    p = m2 << etot;
    q = 1;
  } else {
    p = m2;
    q = cpp_int(1) << (-etot);
  }
}

BigFloat round_to_digits(const BigFloat& value, int digits) {
  if (value == 0) return value;
  return BigFloat(value.str(digits, std::ios_base::scientific));
}

// 53-bit uniform in [0, 1); the draw order below is part of the
// reproducibility contract, so the mapping is spelled out rather than
// delegated to std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// uniform in (0, 1], safe under log
double uniform01_open(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// standard normal pair (Box-Muller, explicit for reproducibility)
void normal_pair(std::mt19937_64& rng, double& a, double& b) {
  const double radius = std::sqrt(-2.0 * std::log(uniform01_open(rng)));
  const double angle = 2.0 * M_PI * uniform01(rng);
  a = radius * std::cos(angle);
  b = radius * std::sin(angle);
}

// Energy cut of the sampling ellipsoid H_g <= mu + 20 T; in the rescaled
// coordinates (x, lambda_y y, lambda_z z, k) this is a 6-ball of radius
// sqrt(2 cut), whose momentum extent is K_F sqrt(1 + 20 T / E_F) for a
// degenerate gas.
double sampling_energy_cut(const GasState& gas) {
  const double cut = gas.chemical_potential + 20.0 * gas.temperature;
  if (!(cut > 0.0))
    throw DomainError(
        "mc sampler: chemical potential too negative for the sampling box "
        "(gas far outside the supported degeneracy range)");
  return cut;
}

}  // namespace

BigFloat fc_direct_sum(long n, long m, double alpha, int precision_digits) {
  if (n < 0) throw DomainError("fc_direct_sum: n must be >= 0");
  if (n + m < 0)
    throw DomainError("fc_direct_sum: final state n + m must be >= 0");
  if (!(alpha > 0.0)) throw DomainError("fc_direct_sum: alpha must be > 0");
  if (precision_digits < 30)
    throw DomainError("fc_direct_sum: precision_digits must be >= 30");

  cpp_int p, q;
  exact_alpha_squared(alpha, p, q);

  const long jmax = std::min(n, n + m);

  const long fact_top = std::max(n, n + m);
  std::vector<cpp_int> fact(static_cast<size_t>(fact_top) + 1);
  fact[0] = 1;
  for (long i = 1; i <= fact_top; ++i)
    fact[static_cast<size_t>(i)] = fact[static_cast<size_t>(i - 1)] * i;

  // S * p^jmax * n! * (n+m)! = sum_j (-1)^j q^j p^(jmax-j) C(n,j) ff(n+m,j)
  // with ff the falling factorial.
  cpp_int numerator = 0;
  cpp_int binom = 1;    // C(n, j)
  cpp_int falling = 1;  // (n+m)! / (n+m-j)!
  cpp_int q_pow = 1;
  std::vector<cpp_int> p_pows(static_cast<size_t>(jmax) + 1);
  p_pows[0] = 1;
  for (long j = 1; j <= jmax; ++j)
    p_pows[static_cast<size_t>(j)] = p_pows[static_cast<size_t>(j - 1)] * p;
  for (long j = 0; j <= jmax; ++j) {
    const cpp_int term =
        q_pow * p_pows[static_cast<size_t>(jmax - j)] * binom * falling;
    numerator += (j % 2 == 0) ? term : -term;
    if (j < jmax) {
      binom = binom * (n - j) / (j + 1);
      falling *= (n + m - j);
      q_pow *= q;
    }
  }

  // weight = numerator^2 * p^|m| / (q^(2n+m) n! (n+m)!) * exp(-alpha^2)
  const cpp_int a =
      numerator * numerator * boost::multiprecision::pow(p, std::labs(m));
  const cpp_int b =
      boost::multiprecision::pow(q, static_cast<unsigned>(2 * n + m)) *
      fact[static_cast<size_t>(n)] * fact[static_cast<size_t>(n + m)];

  const BigFloat x = BigFloat(p) / BigFloat(q);
  const BigFloat value =
      BigFloat(a) / BigFloat(b) * boost::multiprecision::exp(-x);
  return round_to_digits(value, precision_digits);
}

std::vector<OscState> enumerate_states(double bound, double lambda_y,
                                       double lambda_z) {
  if (bound < 0.0)
    throw DomainError("enumerate_states: bound must be >= 0");
  if (!(lambda_y > 0.0) || !(lambda_z > 0.0))
    throw DomainError("enumerate_states: anisotropies must be > 0");
  constexpr double tie = 1e-9;

  std::vector<OscState> states;
  const long nx_max = static_cast<long>(std::floor(bound + tie));
  for (long nx = 0; nx <= nx_max; ++nx) {
    const double rx = bound - static_cast<double>(nx);
    const long ny_max = static_cast<long>(std::floor((rx + tie) / lambda_y));
    for (long ny = 0; ny <= ny_max; ++ny) {
      const double ry = rx - lambda_y * static_cast<double>(ny);
      if (ry < -tie) continue;
      const long nz_max = static_cast<long>(std::floor((ry + tie) / lambda_z));
      for (long nz = 0; nz <= nz_max; ++nz) {
        OscState s;
        s.n_x = nx;
        s.n_y = ny;
        s.n_z = nz;
        s.energy = static_cast<double>(nx) +
                   lambda_y * static_cast<double>(ny) +
                   lambda_z * static_cast<double>(nz);
        states.push_back(s);
      }
    }
  }
  std::sort(states.begin(), states.end(),
            [](const OscState& a, const OscState& b) {
              if (std::fabs(a.energy - b.energy) > tie)
                return a.energy < b.energy;
              if (a.n_x != b.n_x) return a.n_x < b.n_x;
              if (a.n_y != b.n_y) return a.n_y < b.n_y;
              return a.n_z < b.n_z;
            });
  return states;
}

void McConfig::validate() const {
  if (samples < 1) throw DomainError("McConfig: samples must be >= 1");
  constexpr double cell = 1.0 / (8.0 * M_PI * M_PI * M_PI);
  if (envelope_bound < cell * (1.0 - 1e-12))
    throw DomainError(
        "McConfig: envelope_bound must be >= the phase-space cell density "
        "(2 pi)^-3");
}

McSamples mc_detuning_samples(const TrapSpec& trap, const LightSpec& light,
                              const GasState& gas, const McConfig& mc) {
  trap.validate();
  light.validate();
  mc.validate();
  const double total_dipole = light.total_dipole_sq();
  if (!(total_dipole > 0.0))
    throw DomainError("mc sampler: all dipole weights are zero");

  const double cut = sampling_energy_cut(gas);
  const double mu = gas.chemical_potential;
  const double t = gas.temperature;
  const double m_ex = ftemp::mex_from_ratio(trap.omega_ratio);
  const double kappa = std::sqrt(2.0) * light.alpha;
  const double recoil = light.alpha * light.alpha;
  constexpr double cell = 1.0 / (8.0 * M_PI * M_PI * M_PI);
  const double accept_scale = cell / mc.envelope_bound;

  std::mt19937_64 rng(mc.seed);
  McSamples out;
  out.seed = mc.seed;
  out.detunings.reserve(static_cast<size_t>(mc.samples));

  long accepted = 0;
  long proposals = 0;
  while (accepted < mc.samples) {
    ++proposals;
    // For a uniform draw from the 6-ball the radial variable u = (r/R)^6 is
    // uniform, so H = cut * u^(1/3); accept on the energy alone and draw
    // the direction only for accepted samples.
    const double u_radial = uniform01(rng);
    const double energy = cut * std::cbrt(u_radial);
    const double prob = accept_scale * core::fd_occupation(energy, mu, t);
    if (uniform01(rng) >= prob) {
      if (proposals >= 100000 && proposals % 65536 == 0 &&
          static_cast<double>(accepted) / static_cast<double>(proposals) <
              1e-4)
        throw EnvelopeError(
            "mc sampler: acceptance rate below 1e-4; shrink the sampling "
            "box or envelope");
      continue;
    }

    double g[6];
    double norm_sq = 0.0;
    do {
      normal_pair(rng, g[0], g[1]);
      normal_pair(rng, g[2], g[3]);
      normal_pair(rng, g[4], g[5]);
      norm_sq = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3] +
                g[4] * g[4] + g[5] * g[5];
    } while (norm_sq == 0.0);
    // |v|^2 / 2 = energy for the full 6-vector
    const double scale = std::sqrt(2.0 * energy / norm_sq);
    const double potential =
        0.5 * scale * scale * (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    const double k_x = scale * g[3];

    double offset = light.lines.front().omega_0;
    if (light.lines.size() > 1) {
      double pick = uniform01(rng) * total_dipole;
      for (const LightSpec::Line& line : light.lines) {
        pick -= line.dipole_sq;
        if (pick <= 0.0) {
          offset = line.omega_0;
          break;
        }
      }
    }
    out.detunings.push_back(offset + recoil - m_ex * potential +
                            kappa * k_x);
    ++accepted;
  }
  out.proposals = proposals;
  out.acceptance_rate =
      static_cast<double>(accepted) / static_cast<double>(proposals);
  return out;
}

double mc_box_volume(const TrapSpec& trap, const GasState& gas) {
  const double radius_sq = 2.0 * sampling_energy_cut(gas);
  const double pi3 = M_PI * M_PI * M_PI;
  return pi3 * radius_sq * radius_sq * radius_sq /
         (6.0 * trap.lambda_y * trap.lambda_z);
}

Spectrum mc_phase_space_spectrum(const TrapSpec& trap, const LightSpec& light,
                                 const GasState& gas, const McConfig& mc,
                                 const Eigen::ArrayXd& grid) {
  validate_grid(grid);
  const McSamples samples = mc_detuning_samples(trap, light, gas, mc);

  // bin edges halfway between grid nodes
  const Eigen::Index n = grid.size();
  Eigen::ArrayXd edges(n + 1);
  edges[0] = grid[0] - 0.5 * (grid[1] - grid[0]);
  for (Eigen::Index i = 1; i < n; ++i) edges[i] = 0.5 * (grid[i - 1] + grid[i]);
  edges[n] = grid[n - 1] + 0.5 * (grid[n - 1] - grid[n - 2]);

  std::vector<long> counts(static_cast<size_t>(n), 0);
  long clipped = 0;
  for (double detuning : samples.detunings) {
    if (detuning < edges[0] || detuning >= edges[n]) {
      ++clipped;
      continue;
    }
    const double* begin = edges.data();
    const auto bin = static_cast<Eigen::Index>(
        std::upper_bound(begin, begin + n + 1, detuning) - begin - 1);
    ++counts[static_cast<size_t>(bin)];
  }

  const double total_weight =
      static_cast<double>(gas.n_atoms) * light.total_dipole_sq();
  const double per_sample =
      total_weight / static_cast<double>(samples.detunings.size());

  Spectrum spectrum;
  spectrum.grid = grid;
  spectrum.intensity = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    spectrum.intensity[i] = per_sample *
                            static_cast<double>(counts[static_cast<size_t>(i)]) /
                            (edges[i + 1] - edges[i]);

  spectrum.meta.set_int("seed", static_cast<long long>(samples.seed));
  spectrum.meta.set_int("samples",
                        static_cast<long long>(samples.detunings.size()));
  spectrum.meta.set_int("proposals", samples.proposals);
  spectrum.meta.set_num("acceptance_rate", samples.acceptance_rate);
  spectrum.meta.set_num("envelope_bound", mc.envelope_bound);
  spectrum.meta.set_int("clipped_samples", clipped);
  spectrum.meta.set("normalization", "sum_rule");
  spectrum.meta.set_num("total_weight", total_weight);
  return spectrum;
}

double ks_distance(std::vector<double> samples, const Eigen::ArrayXd& grid,
                   const Eigen::ArrayXd& density) {
  if (samples.empty()) throw DomainError("ks_distance: no samples");
  Eigen::ArrayXd cdf = num::cumulative_trapezoid(grid, density);
  const double total = cdf[cdf.size() - 1];
  if (!(total > 0.0)) throw DomainError("ks_distance: model has zero mass");
  cdf /= total;

  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double model = num::linear_interp(grid, cdf, samples[i]);
    const double hi = static_cast<double>(i + 1) / n;
    const double lo = static_cast<double>(i) / n;
    d = std::max({d, std::fabs(hi - model), std::fabs(model - lo)});
  }
  return d;
}

}  // namespace fermispec::oracles
