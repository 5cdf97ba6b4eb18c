#include "fermispec/franck_condon.hpp"

#include <cmath>

#include "fermispec/numerics.hpp"

namespace fermispec::exact {

namespace {

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms),
// enough for the three-term recurrence below.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_renorm(double s, double e) {
  const double hi = s + e;
  return {hi, e - (hi - s)};
}

inline DD dd_add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  return quick_renorm(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_mul_d(const DD& a, double b) {
  const double p = a.hi * b;
  const double err = std::fma(a.hi, b, -p);
  return quick_renorm(p, err + a.lo * b);
}

inline DD dd_scale(const DD& a, double pow2) {
  return {a.hi * pow2, a.lo * pow2};  // exact for powers of two
}

}  // namespace

double franck_condon_factor(long n, long m, double alpha) {
  if (n < 0) throw DomainError("franck_condon_factor: n must be >= 0");
  if (n + m < 0)
    throw DomainError("franck_condon_factor: final state n + m must be >= 0");
  if (!(alpha > 0.0))
    throw DomainError("franck_condon_factor: alpha must be > 0");

  // |<n+m|D|n>| = |<n|D^dagger|n+m>|: reduce to m >= 0.
  if (m < 0) {
    n += m;
    m = -m;
  }

  const double x = alpha * alpha;

  // Scaled polynomial P_k = k! L_k^{(m)}(x) satisfies the division-free
  // recurrence P_{k+1} = (2k+1+m-x) P_k - k (k+m) P_{k-1}.
  DD prev{1.0, 0.0};                    // P_0
  DD curr{1.0 + static_cast<double>(m) - x, 0.0};  // P_1
  long exponent = 0;
  if (n == 0) curr = prev;
  for (long k = 1; k < n; ++k) {
    const double a = static_cast<double>(2 * k + 1 + m) - x;
    const double b = -static_cast<double>(k) * static_cast<double>(k + m);
    DD next = dd_add(dd_mul_d(curr, a), dd_mul_d(prev, b));
    prev = curr;
    curr = next;
    const double mag = std::fabs(curr.hi);
    if (mag > 0x1p+500) {
      curr = dd_scale(curr, 0x1p-512);
      prev = dd_scale(prev, 0x1p-512);
      exponent += 512;
    } else if (mag > 0.0 && mag < 0x1p-500) {
      curr = dd_scale(curr, 0x1p+512);
      prev = dd_scale(prev, 0x1p+512);
      exponent -= 512;
    }
  }

  const long double abs_poly =
      std::fabs(static_cast<long double>(curr.hi) +
                static_cast<long double>(curr.lo));
  if (abs_poly == 0.0L) return 0.0;

  // ln FC = -x + m ln x - ln n! - ln (n+m)! + 2 (ln |P_n| + exponent ln 2)
  const long double ln2 = 0.693147180559945309417232121458L;
  const long double log_fc =
      -static_cast<long double>(x) +
      static_cast<long double>(m) * std::log(static_cast<long double>(x)) -
      num::log_factorial_l(n) - num::log_factorial_l(n + m) +
      2.0L * (std::log(abs_poly) + static_cast<long double>(exponent) * ln2);
  return static_cast<double>(std::exp(log_fc));
}

}  // namespace fermispec::exact
