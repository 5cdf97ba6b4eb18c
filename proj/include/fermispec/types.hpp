#pragma once

#include <Eigen/Core>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Core domain types and the error hierarchy.
//
// All physics is done in dimensionless trap units: hbar = M = Omega_g = 1.
// Energies are measured in hbar*Omega_g, detunings in Omega_g, positions in
// the ground-trap oscillator length and wave vectors in its inverse.

namespace fermispec {

// ---------------------------------------------------------------------------
// Errors

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument values (precondition violation).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Valid input that asks for an unsupported combination of features.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to converge or lost its bracket.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Monte Carlo rejection envelope is unusably tight for the requested state.
class EnvelopeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Configuration parse/validation failure; carries the offending field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// ---------------------------------------------------------------------------
// Formatting

/// Shortest decimal form that round-trips a double exactly (17 significant
/// digits); used for file output and metadata.
std::string format_double(double value);

// ---------------------------------------------------------------------------
// Physical specifications

/// Harmonic trap geometry and dynamics. omega_g is the frequency unit and is
/// 1 in dimensionless mode; lambda_y/lambda_z are the frequency anisotropies
/// and omega_ratio = Omega_ex / Omega_g.
struct TrapSpec {
  double omega_g = 1.0;
  double lambda_y = 1.0;
  double lambda_z = 1.0;
  double omega_ratio = 1.0;

  void validate() const;
};

/// Light-atom coupling: Lamb-Dicke parameter alpha and one entry per excited
/// electronic state (transition-frequency offset in Omega_g units, squared
/// dipole weight in arbitrary units).
struct LightSpec {
  struct Line {
    double omega_0 = 0.0;
    double dipole_sq = 1.0;
  };

  double alpha = 1.0;
  std::vector<Line> lines = {Line{}};

  void validate() const;
  double total_dipole_sq() const;
};

/// Thermodynamic state of the trapped gas, energies in hbar*Omega_g.
struct GasState {
  long n_atoms = 0;
  double temperature = 0.0;
  double fermi_energy = 0.0;
  double chemical_potential = 0.0;

  double beta_mu() const;        // mu / T (infinite at T = 0)
  double beta_fermi() const;     // E_F / T (degeneracy parameter)
};

// ---------------------------------------------------------------------------
// Spectral data

/// Discrete absorption lines: integer sideband index m, absolute detuning in
/// Omega_g units and a non-negative weight.
struct LineList {
  struct Line {
    long m = 0;
    double detuning = 0.0;
    double weight = 0.0;
  };

  std::vector<Line> lines;
  double total_weight = 0.0;      // sum of stored weights
  double truncated_weight = 0.0;  // weight dropped by the sideband cutoff
  long m_max = 0;                 // largest sideband index kept

  double min_detuning() const;
  double max_detuning() const;
};

/// Key/value metadata attached to a spectrum. Stored sorted so that
/// serialization is deterministic.
struct SpectrumMeta {
  std::map<std::string, std::string> entries;

  void set(const std::string& key, const std::string& value);
  void set_num(const std::string& key, double value);
  void set_int(const std::string& key, long long value);
  bool has(const std::string& key) const;
  const std::string& at(const std::string& key) const;
  double num(const std::string& key) const;
};

/// Sampled spectrum: strictly increasing detuning grid (Omega_g units) and
/// intensities, plus a normalization/metadata record.
struct Spectrum {
  Eigen::ArrayXd grid;
  Eigen::ArrayXd intensity;
  SpectrumMeta meta;

  Eigen::Index size() const { return grid.size(); }
};

/// Throws DomainError unless the grid is strictly increasing (size >= 2).
void validate_grid(const Eigen::ArrayXd& grid);

}  // namespace fermispec
