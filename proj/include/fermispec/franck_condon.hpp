#pragma once

#include "fermispec/types.hpp"

// Squared recoil matrix elements |<n+m| exp(i kappa x) |n>|^2 of the 1D
// harmonic oscillator ("Franck-Condon factors"). Evaluated through a
// division-free associated-Laguerre recurrence carried in compensated
// double-double arithmetic with running binary-exponent tracking, and a
// log-domain prefactor; stable for n <= 100, |m| <= 400, alpha^2 <= 200.

namespace fermispec::exact {

/// Recoil weight for the sideband transition n -> n + m at Lamb-Dicke
/// parameter alpha. Symmetric under (n, m) -> (n + m, -m). Throws
/// DomainError for n < 0, n + m < 0 or alpha <= 0.
double franck_condon_factor(long n, long m, double alpha);

}  // namespace fermispec::exact
