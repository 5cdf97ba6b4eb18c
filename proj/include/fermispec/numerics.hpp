#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include <Eigen/Core>

#include "fermispec/types.hpp"

// Small self-contained numerical kernels: adaptive Gauss-Kronrod quadrature,
// Brent root bracketing, trapezoid sums and stable scalar helpers.

namespace fermispec::num {

// ---------------------------------------------------------------------------
// Stable scalar helpers

/// log(1 + exp(x)) without overflow on either side.
inline double log1pexp(double x) {
  if (x > 36.0) return x + std::exp(-x);
  if (x < -708.0) return 0.0;
  return std::log1p(std::exp(x));
}

/// log(n!) for n >= 0, cached for small n.
double log_factorial(long n);

/// log(n!) in extended precision (long double).
long double log_factorial_l(long n);

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15 pair

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
QuadResult gauss_kronrod_15(F&& f, double a, double b) {
  // Kronrod abscissae (positive half) and weights; Gauss-7 weights embedded.
  static const double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.0};
  static const double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static const double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double halflen = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = halflen * xgk[i];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += wgk[i] * fsum;
    if (i % 2 == 1) gauss += wg[i / 2] * fsum;
  }
  kronrod *= halflen;
  gauss *= halflen;
  return {kronrod, std::fabs(kronrod - gauss)};
}

namespace detail {
struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& other) const { return error < other.error; }
};
}  // namespace detail

/// Adaptive quadrature of f over [a, b]. Splits the worst interval until the
/// summed error estimate satisfies max(abs_tol, rel_tol * |I|); falls back to
/// uniform doubling refinement if the subdivision budget runs out.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 0.0, int max_intervals = 4000) {
  if (!(b > a)) {
    if (b == a) return 0.0;
    throw DomainError("integrate: inverted interval");
  }

  std::priority_queue<detail::Interval> queue;
  QuadResult first = gauss_kronrod_15(f, a, b);
  queue.push({a, b, first.value, first.error});
  double total = first.value;
  double total_err = first.error;

  int n = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::fabs(total)) &&
         n < max_intervals) {
    detail::Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval at floating-point resolution; accept as is
      queue.push({worst.a, worst.b, worst.value, 0.0});
      total_err -= worst.error;
      continue;
    }
    QuadResult left = gauss_kronrod_15(f, worst.a, mid);
    QuadResult right = gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error});
    queue.push({mid, worst.b, right.value, right.error});
    ++n;
  }
  if (total_err <= std::max(abs_tol, rel_tol * std::fabs(total))) return total;

  // Doubling-refinement fallback: composite rule on uniform panels.
  double previous = total;
  for (int k = 6; k <= 14; ++k) {
    const long panels = 1L << k;
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (long i = 0; i < panels; ++i)
      sum += gauss_kronrod_15(f, a + i * h, a + (i + 1) * h).value;
    if (std::fabs(sum - previous) <=
        std::max(abs_tol, rel_tol * std::fabs(sum)))
      return sum;
    previous = sum;
  }
  throw NumericalError("integrate: failed to reach requested tolerance");
}

// ---------------------------------------------------------------------------
// Root finding

/// Brent's method on [a, b]; requires a sign change. x_tol is absolute.
template <class F>
double find_root(F&& f, double a, double b, double x_tol, int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw NumericalError("find_root: endpoints do not bracket a root");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() *
                           std::fabs(b) +
                       0.5 * x_tol;
    const double mid = 0.5 * (c - b);
    if (std::fabs(mid) <= tol || fb == 0.0) return b;

    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      // inverse quadratic / secant step
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * mid * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * mid * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * mid * q - std::fabs(tol * q),
                             std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = mid;
        e = d;
      }
    } else {
      d = mid;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol) ? d : (mid > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw NumericalError("find_root: iteration limit exceeded");
}

// ---------------------------------------------------------------------------
// Grid helpers

/// Trapezoidal integral of y over the (strictly increasing) grid x.
double trapezoid(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y);

/// Cumulative trapezoid; element i integrates up to x[i] (element 0 is 0).
Eigen::ArrayXd cumulative_trapezoid(const Eigen::ArrayXd& x,
                                    const Eigen::ArrayXd& y);

/// Piecewise-linear interpolation of (x, y) at xq; clamps outside the range.
double linear_interp(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                     double xq);

}  // namespace fermispec::num
