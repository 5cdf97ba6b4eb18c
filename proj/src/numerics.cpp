#include "fermispec/numerics.hpp"

#include <array>
#include <cmath>

namespace fermispec::num {

namespace {

constexpr long kFactCacheSize = 1024;

const std::array<double, kFactCacheSize>& factorial_cache() {
  static const std::array<double, kFactCacheSize> cache = [] {
    std::array<double, kFactCacheSize> table{};
    for (long i = 0; i < kFactCacheSize; ++i)
      table[static_cast<size_t>(i)] = std::lgamma(static_cast<double>(i) + 1.0);
    return table;
  }();
  return cache;
}

const std::array<long double, kFactCacheSize>& factorial_cache_l() {
  static const std::array<long double, kFactCacheSize> cache = [] {
    std::array<long double, kFactCacheSize> table{};
    table[0] = 0.0L;
    for (long i = 1; i < kFactCacheSize; ++i)
      table[static_cast<size_t>(i)] =
          table[static_cast<size_t>(i - 1)] + std::log(static_cast<long double>(i));
    return table;
  }();
  return cache;
}

}  // namespace

double log_factorial(long n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < kFactCacheSize) return factorial_cache()[static_cast<size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

long double log_factorial_l(long n) {
  if (n < 0) throw DomainError("log_factorial_l: negative argument");
  if (n < kFactCacheSize) return factorial_cache_l()[static_cast<size_t>(n)];
  return std::lgammal(static_cast<long double>(n) + 1.0L);
}

double trapezoid(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("trapezoid: mismatched or too-short arrays");
  const Eigen::Index n = x.size();
  return (0.5 * (x.tail(n - 1) - x.head(n - 1)) *
          (y.tail(n - 1) + y.head(n - 1)))
      .sum();
}

Eigen::ArrayXd cumulative_trapezoid(const Eigen::ArrayXd& x,
                                    const Eigen::ArrayXd& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("cumulative_trapezoid: mismatched or too-short arrays");
  Eigen::ArrayXd out(x.size());
  out[0] = 0.0;
  for (Eigen::Index i = 1; i < x.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

double linear_interp(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                     double xq) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("linear_interp: mismatched or too-short arrays");
  if (xq <= x[0]) return y[0];
  const Eigen::Index n = x.size();
  if (xq >= x[n - 1]) return y[n - 1];
  Eigen::Index lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    (x[mid] <= xq ? lo : hi) = mid;
  }
  const double t = (xq - x[lo]) / (x[lo + 1] - x[lo]);
  return y[lo] + t * (y[lo + 1] - y[lo]);
}

}  // namespace fermispec::num
