#pragma once

#include <cstdint>
#include <optional>

namespace volproj {

enum class BoundMode { distance, volume };

// Contraction threshold a and expansion threshold b for an (n, d) instance,
// with k the largest simplex dimension considered (|S| = k+1).
struct BoundParams {
  int n = 2;
  int d = 3;
  int k = 1;
  double a = 0.0;
  double b = 0.0;
};

// A numerically verified union bound: with probability at least
// 1 - failure_bound a random Gaussian map keeps every tracked ratio in [a, b].
struct Certificate {
  BoundParams params;
  double failure_bound = 1.0;  // < 1 by construction
  BoundMode mode = BoundMode::distance;
};

// Sandwich degrees of freedom for s chi-square factors at dimension d.
std::int64_t t_param(int s, int d);  // s(d-s+1)
std::int64_t l_param(int s, int d);  // t + (s-1)(s-2)/2

// Closed-form tail bounds on the normalized volume ratio of one fixed subset
// of size s+1. Both dominate the exact chi-square CDF values on their domains
// and may exceed 1.
double contraction_tail_bound(int s, int d, double a);  // >= Pr[chi2_t <= s a^2], t > 2
double expansion_tail_bound(int s, int d, double b);    // >= Pr[chi2_l >= s b^2], s b^2 > 2l+4

// h_d(x) = (x+1) / (x (d-x+1)) on [1, d]; its maximum over [1, d/2] is 2/d,
// which is what caps usable subset sizes at floor(d/2).
double exponent_h(int d, double x);

// c n^(2/d) sqrt(log n / d), natural logs.
double distance_distortion_bound(double n, int d, double c);
// c n^(2/d) sqrt(log n log log n), natural logs; needs n >= 16.
double volume_distortion_bound(double n, int d, double c);

double log_binomial(int n, int m);

// C(n,2) (Pr[chi2_d <= a^2] + Pr[chi2_d >= b^2]), exact CDFs.
double distance_union_bound_value(int n, int d, double a, double b);
// sum_{i=1..k} C(n,i+1) (Pr[chi2_{t_i} <= i a^2] + Pr[chi2_{l_i} >= i b^2]).
// Warns to stderr and still evaluates when k > floor(d/2).
double volume_union_bound_value(int n, int d, int k, double a, double b);

// Certificate when the union-bound value is < 1 and 0 < a < b, none
// otherwise. The volume form additionally refuses k > floor(d/2) (the
// guarantee does not extend past the cap).
std::optional<Certificate> distance_union_bound_feasible(int n, int d, double a, double b);
std::optional<Certificate> volume_union_bound_feasible(int n, int d, int k, double a, double b);

struct ThresholdSearch {
  BoundParams params;
  double failure_bound = 1.0;
  BoundMode mode = BoundMode::distance;
  // (b/a) divided by the matching closed-form bound at c = 1; empty when the
  // formula is undefined (volume bound needs n >= 16).
  std::optional<double> implied_constant;
};

// Binary search for the largest a and smallest b (each to 1e-3 relative) such
// that each side of the union bound stays below its budget; the contraction
// side gets `split` and the expansion side 1 - split. a is searched in
// (0, sqrt(d)], b in [sqrt(d), 1e3]. Throws InfeasibleError when no pair
// exists in that box.
ThresholdSearch search_thresholds(int n, int d, int k, BoundMode mode, double split = 0.5);

}  // namespace volproj
