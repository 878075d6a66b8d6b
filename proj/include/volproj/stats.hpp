#pragma once

#include <functional>
#include <vector>

#include "volproj/distortion.hpp"
#include "volproj/linalg.hpp"
#include "volproj/parallel.hpp"
#include "volproj/randgen.hpp"

namespace volproj {

class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);  // sorts; must be nonempty

  // F(x) = (#samples <= x) / m
  double operator()(double x) const;
  [[nodiscard]] const std::vector<double>& samples() const { return samples_; }
  [[nodiscard]] int m() const { return static_cast<int>(samples_.size()); }

 private:
  std::vector<double> samples_;
};

// Sup distance between the empirical CDF of samples and cdf, both one-sided
// gaps at every sample point.
double ks_one_sample(const std::vector<double>& samples,
                     const std::function<double(double)>& cdf);

// Sup distance between two empirical CDFs.
double ks_two_sample(const std::vector<double>& s1, const std::vector<double>& s2);

// Two-sided critical values: c(alpha)/sqrt(m) with c = sqrt(ln(2/alpha)/2),
// i.e. 1.36/sqrt(m) at 5% and 1.63/sqrt(m) at 1%; the two-sample statistic is
// compared against c(alpha) after scaling by sqrt(m1 m2 / (m1 + m2)).
double ks_one_sample_critical(int m, double alpha);
double ks_two_sample_critical(int m1, int m2, double alpha);

// Default additive slack for CDF-dominance checks: 3 sqrt(ln(2/delta)/(2m)).
double dkw_epsilon(int m, double delta = 0.01);

// reps draws of (vol(f(S))/vol(S))^2 for the fixed subset S (N x m columns)
// under independent Gaussian maps into R^d. Errors if S is degenerate.
std::vector<double> sample_squared_volume_ratios(const Eigen::MatrixXd& subset_points, int d,
                                                 int reps, RandomSeed seed,
                                                 const ExecPolicy& exec = {});

struct StabilityResult {
  double ks_ab = 0.0;         // ratio^2 law of P_a's subset vs P_b's subset
  double ks_a_product = 0.0;  // P_a's ratios vs the chi-square product law
  int reps = 0;
  std::vector<int> subset_a;  // the fixed subsets that were measured
  std::vector<int> subset_b;
};

// Checks that the squared volume ratio law under a Gaussian map does not
// depend on the point set: one fixed nondegenerate subset of the given size
// is taken from each set, ratio^2 is sampled reps times per set, and both KS
// statistics are returned.
StabilityResult verify_stability(const PointSet& a, const PointSet& b, int d, int subset_size,
                                 int reps, RandomSeed seed, const ExecPolicy& exec = {});

struct OrderingReport {
  double max_violation = 0.0;
  int m = 0;
  double epsilon = 0.0;
  bool pass = false;  // max_violation <= epsilon
};

// Empirical check of the chi-square sandwich around s (prod chi2_{d-i+1})^(1/s):
// at every sample point the exact CDF with l dof must not exceed the
// empirical CDF by more than epsilon, and the exact CDF with t dof must not
// fall below it by more than epsilon.
OrderingReport verify_gordon(int d, int s, int reps, double epsilon, RandomSeed seed,
                             const ExecPolicy& exec = {});

}  // namespace volproj
