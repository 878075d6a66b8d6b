#include "volproj/bounds.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "volproj/errors.hpp"
#include "volproj/gamma.hpp"

namespace volproj {

namespace {

void require_sd(int s, int d) {
  if (s < 1 || s > d) throw std::invalid_argument("need 1 <= s <= d");
}

void require_instance(int n, int d, int k) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (d < 3) throw std::invalid_argument("need d >= 3");
  if (k < 1 || k > n - 1) throw std::invalid_argument("need 1 <= k <= n-1");
}

double chi_cdf(std::int64_t dof, double t) {
  return regularized_lower_incomplete_gamma(0.5 * static_cast<double>(dof), 0.5 * t);
}

double chi_sf(std::int64_t dof, double t) {
  return regularized_upper_incomplete_gamma(0.5 * static_cast<double>(dof), 0.5 * t);
}

}  // namespace

std::int64_t t_param(int s, int d) {
  require_sd(s, d);
  return static_cast<std::int64_t>(s) * (d - s + 1);
}

std::int64_t l_param(int s, int d) {
  return t_param(s, d) + static_cast<std::int64_t>(s - 1) * (s - 2) / 2;
}

double contraction_tail_bound(int s, int d, double a) {
  require_sd(s, d);
  if (d < 3) throw std::invalid_argument("contraction_tail_bound: need d >= 3");
  if (!(a > 0.0)) throw std::domain_error("contraction_tail_bound: need a > 0");
  const double t = static_cast<double>(t_param(s, d));
  if (t <= 2.0) throw std::domain_error("contraction_tail_bound: need t > 2");
  // (e s a^2)^(t/2) / (t (t-2)^((t-1)/2))
  const double log_value = 0.5 * t * (1.0 + std::log(s * a * a)) - std::log(t) -
                           0.5 * (t - 1.0) * std::log(t - 2.0);
  return std::exp(log_value);
}

double expansion_tail_bound(int s, int d, double b) {
  require_sd(s, d);
  const double l = static_cast<double>(l_param(s, d));
  const double sb2 = s * b * b;
  if (!(sb2 > 2.0 * l + 4.0))
    throw std::domain_error("expansion_tail_bound: only valid for s b^2 > 2l+4");
  if (l <= 2.0) throw std::domain_error("expansion_tail_bound: need l > 2");
  // e^(-(s b^2 - l)/2) (s b^2)^(l/2+1) / (l-2)^((l-1)/2)
  const double log_value = -0.5 * (sb2 - l) + (0.5 * l + 1.0) * std::log(sb2) -
                           0.5 * (l - 1.0) * std::log(l - 2.0);
  return std::exp(log_value);
}

double exponent_h(int d, double x) {
  if (d < 1) throw std::invalid_argument("exponent_h: need d >= 1");
  if (!(x >= 1.0 && x <= static_cast<double>(d)))
    throw std::domain_error("exponent_h: need 1 <= x <= d");
  return (x + 1.0) / (x * (d - x + 1.0));
}

double distance_distortion_bound(double n, int d, double c) {
  if (!(n >= 2.0)) throw std::invalid_argument("distance_distortion_bound: need n >= 2");
  if (d < 3) throw std::invalid_argument("distance_distortion_bound: need d >= 3");
  if (!(c > 0.0)) throw std::invalid_argument("distance_distortion_bound: need c > 0");
  return c * std::pow(n, 2.0 / d) * std::sqrt(std::log(n) / d);
}

double volume_distortion_bound(double n, int d, double c) {
  if (!(n >= 16.0))
    throw std::domain_error("volume_distortion_bound: need n >= 16 so log log n > 0");
  if (d < 3) throw std::invalid_argument("volume_distortion_bound: need d >= 3");
  if (!(c > 0.0)) throw std::invalid_argument("volume_distortion_bound: need c > 0");
  return c * std::pow(n, 2.0 / d) * std::sqrt(std::log(n) * std::log(std::log(n)));
}

double log_binomial(int n, int m) {
  if (m < 0 || m > n) return -std::numeric_limits<double>::infinity();
  return log_gamma(n + 1.0) - log_gamma(m + 1.0) - log_gamma(n - m + 1.0);
}

double distance_union_bound_value(int n, int d, double a, double b) {
  require_instance(n, d, 1);
  if (!(a >= 0.0) || !(b >= 0.0))
    throw std::invalid_argument("distance_union_bound_value: need a, b >= 0");
  const double mass = chi_cdf(d, a * a) + chi_sf(d, b * b);
  if (mass <= 0.0) return 0.0;
  return std::exp(log_binomial(n, 2) + std::log(mass));
}

double volume_union_bound_value(int n, int d, int k, double a, double b) {
  require_instance(n, d, k);
  if (!(a >= 0.0) || !(b >= 0.0))
    throw std::invalid_argument("volume_union_bound_value: need a, b >= 0");
  if (k > d / 2)
    std::cerr << "volproj: warning: k=" << k << " exceeds floor(d/2)=" << d / 2
              << "; union bound evaluated outside the guaranteed range\n";
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double mass = chi_cdf(t_param(i, d), i * a * a) + chi_sf(l_param(i, d), i * b * b);
    if (mass > 0.0) sum += std::exp(log_binomial(n, i + 1) + std::log(mass));
  }
  return sum;
}

std::optional<Certificate> distance_union_bound_feasible(int n, int d, double a, double b) {
  if (!(a > 0.0 && a < b)) return std::nullopt;
  const double value = distance_union_bound_value(n, d, a, b);
  if (!(value < 1.0)) return std::nullopt;
  return Certificate{BoundParams{n, d, 1, a, b}, value, BoundMode::distance};
}

std::optional<Certificate> volume_union_bound_feasible(int n, int d, int k, double a, double b) {
  if (!(a > 0.0 && a < b)) return std::nullopt;
  if (k > d / 2) {
    std::cerr << "volproj: warning: certificate refused for k=" << k << " > floor(d/2)="
              << d / 2 << "\n";
    return std::nullopt;
  }
  const double value = volume_union_bound_value(n, d, k, a, b);
  if (!(value < 1.0)) return std::nullopt;
  return Certificate{BoundParams{n, d, k, a, b}, value, BoundMode::volume};
}

namespace {

// One side of the union bound as a function of its threshold.
double contraction_side(int n, int d, int k, BoundMode mode, double a) {
  if (mode == BoundMode::distance) {
    const double p = chi_cdf(d, a * a);
    return p > 0.0 ? std::exp(log_binomial(n, 2) + std::log(p)) : 0.0;
  }
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double p = chi_cdf(t_param(i, d), i * a * a);
    if (p > 0.0) sum += std::exp(log_binomial(n, i + 1) + std::log(p));
  }
  return sum;
}

double expansion_side(int n, int d, int k, BoundMode mode, double b) {
  if (mode == BoundMode::distance) {
    const double q = chi_sf(d, b * b);
    return q > 0.0 ? std::exp(log_binomial(n, 2) + std::log(q)) : 0.0;
  }
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double q = chi_sf(l_param(i, d), i * b * b);
    if (q > 0.0) sum += std::exp(log_binomial(n, i + 1) + std::log(q));
  }
  return sum;
}

constexpr double kSearchRelTol = 1e-3;
constexpr double kExpansionCeiling = 1e3;

}  // namespace

ThresholdSearch search_thresholds(int n, int d, int k, BoundMode mode, double split) {
  require_instance(n, d, k);
  if (!(split > 0.0 && split < 1.0))
    throw std::invalid_argument("search_thresholds: split must be in (0,1)");
  if (mode == BoundMode::volume && k > d / 2)
    throw std::invalid_argument("search_thresholds: volume certificates need k <= floor(d/2)");

  const double sqrt_d = std::sqrt(static_cast<double>(d));

  // Largest a in (0, sqrt(d)] with contraction mass < split. The mass is
  // continuous and increasing in a, so bisect between a feasible lower end
  // and an infeasible upper end.
  double a_star;
  if (contraction_side(n, d, k, mode, sqrt_d) < split) {
    a_star = sqrt_d;
  } else {
    double lo = sqrt_d;
    int halvings = 0;
    do {
      lo *= 0.5;
      if (++halvings > 600) throw InfeasibleError("no feasible contraction threshold");
    } while (!(contraction_side(n, d, k, mode, lo) < split));
    double hi = lo * 2.0;
    while ((hi - lo) > kSearchRelTol * hi) {
      const double mid = 0.5 * (lo + hi);
      (contraction_side(n, d, k, mode, mid) < split ? lo : hi) = mid;
    }
    a_star = lo;
  }

  // Smallest b in [sqrt(d), 1e3] with expansion mass < 1 - split; mass is
  // decreasing in b.
  const double expansion_budget = 1.0 - split;
  double b_star;
  if (expansion_side(n, d, k, mode, sqrt_d) < expansion_budget) {
    b_star = sqrt_d;
  } else {
    if (!(expansion_side(n, d, k, mode, kExpansionCeiling) < expansion_budget))
      throw InfeasibleError("no feasible expansion threshold below 1e3");
    double lo = sqrt_d, hi = kExpansionCeiling;
    while ((hi - lo) > kSearchRelTol * hi) {
      const double mid = 0.5 * (lo + hi);
      (expansion_side(n, d, k, mode, mid) < expansion_budget ? hi : lo) = mid;
    }
    b_star = hi;
  }

  if (!(a_star < b_star))
    throw InfeasibleError("threshold search collapsed: a >= b");

  const double failure = mode == BoundMode::distance
                             ? distance_union_bound_value(n, d, a_star, b_star)
                             : volume_union_bound_value(n, d, k, a_star, b_star);

  ThresholdSearch result;
  result.params = BoundParams{n, d, mode == BoundMode::distance ? 1 : k, a_star, b_star};
  result.failure_bound = failure;
  result.mode = mode;
  const double ratio = b_star / a_star;
  if (mode == BoundMode::distance) {
    result.implied_constant = ratio / distance_distortion_bound(n, d, 1.0);
  } else if (n >= 16) {
    result.implied_constant = ratio / volume_distortion_bound(n, d, 1.0);
  }
  return result;
}

}  // namespace volproj
