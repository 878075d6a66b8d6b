#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "volproj/distortion.hpp"
#include "volproj/errors.hpp"
#include "volproj/randgen.hpp"
#include "volproj/stats.hpp"

using namespace volproj;

namespace {

PointSet gaussian_points(int dim, int n, RandomSeed seed) {
  return PointSet(gaussian_matrix(dim, n, seed).matrix);
}

LinearMap identity_map(int n) {
  return LinearMap{Eigen::MatrixXd::Identity(n, n), 1.0};
}

bool reports_equal(const DistortionReport& a, const DistortionReport& b) {
  if (a.overall_min != b.overall_min || a.overall_max != b.overall_max ||
      a.distortion != b.distortion || a.sampled != b.sampled)
    return false;
  if (a.per_size.size() != b.per_size.size()) return false;
  for (const auto& [m, sa] : a.per_size) {
    const auto it = b.per_size.find(m);
    if (it == b.per_size.end()) return false;
    const SizeStats& sb = it->second;
    if (sa.min_ratio != sb.min_ratio || sa.max_ratio != sb.max_ratio ||
        sa.evaluated != sb.evaluated || sa.degenerate != sb.degenerate)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("normalized_volume_ratio on explicit maps") {
  const PointSet P = gaussian_points(5, 4, RandomSeed{10, 0});

  auto r = normalized_volume_ratio(identity_map(5), P.coords());
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(1.0).epsilon(1e-12));

  LinearMap doubling{2.0 * Eigen::MatrixXd::Identity(5, 5), 1.0};
  r = normalized_volume_ratio(doubling, P.coords());
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(2.0).epsilon(1e-12));

  // Same thing expressed through the scale field.
  LinearMap scaled{Eigen::MatrixXd::Identity(5, 5), 2.0};
  r = normalized_volume_ratio(scaled, P.coords());
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(2.0).epsilon(1e-12));

  // Pairs reduce to the distance ratio.
  const LinearMap f = gaussian_matrix(3, 5, RandomSeed{11, 0});
  const Eigen::MatrixXd pair = P.coords().leftCols(2);
  const double manual = (f.matrix * (pair.col(1) - pair.col(0))).norm() /
                        (pair.col(1) - pair.col(0)).norm();
  r = normalized_volume_ratio(f, pair);
  REQUIRE(r.has_value());
  CHECK(*r == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("normalized_volume_ratio edge cases") {
  Eigen::MatrixXd dup(3, 2);
  dup << 1, 1,
         2, 2,
         3, 3;
  CHECK_FALSE(normalized_volume_ratio(identity_map(3), dup).has_value());

  const PointSet P = gaussian_points(3, 3, RandomSeed{12, 0});
  LinearMap zero{Eigen::MatrixXd::Zero(2, 3), 1.0};
  const auto collapsed = normalized_volume_ratio(zero, P.coords());
  REQUIRE(collapsed.has_value());
  CHECK(*collapsed == 0.0);

  LinearMap mismatched{Eigen::MatrixXd::Identity(4, 4), 1.0};
  CHECK_THROWS_AS(normalized_volume_ratio(mismatched, P.coords()), std::invalid_argument);
}

TEST_CASE("distortion_report counts subsets exhaustively") {
  const PointSet P = gaussian_points(6, 4, RandomSeed{20, 0});
  const auto rep = distortion_report(identity_map(6), P, 2, SubsetStrategy{}, RandomSeed{1, 0});
  REQUIRE(rep.per_size.size() == 2);
  CHECK(rep.per_size.at(2).evaluated == 6);
  CHECK(rep.per_size.at(3).evaluated == 4);
  CHECK(rep.per_size.at(2).degenerate == 0);
  CHECK_FALSE(rep.sampled);
  CHECK(rep.overall_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.overall_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.distortion == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.distortion >= 1.0 - 1e-12);
}

TEST_CASE("distortion_report sampling plans") {
  const PointSet P = gaussian_points(8, 40, RandomSeed{21, 0});
  const LinearMap f = gaussian_matrix(6, 8, RandomSeed{22, 0});

  SubsetStrategy sampled;
  sampled.mode = SubsetMode::sampled;
  sampled.sample_count = 100;
  const auto rep = distortion_report(f, P, 3, sampled, RandomSeed{2, 0});
  CHECK(rep.sampled);
  for (int m = 2; m <= 4; ++m) CHECK(rep.per_size.at(m).evaluated == 100);

  // Exhaustive over the cap degrades to sampling per size.
  SubsetStrategy capped;
  capped.mode = SubsetMode::exhaustive;
  capped.enumeration_cap = 1000;
  capped.sample_count = 500;
  const auto deg = distortion_report(f, P, 3, capped, RandomSeed{3, 0});
  CHECK(deg.sampled);
  CHECK(deg.per_size.at(2).evaluated == 500);   // C(40,2) = 780 > 500, sampled
  CHECK(deg.per_size.at(3).evaluated == 500);
  CHECK(deg.per_size.at(4).evaluated == 500);

  // Sizes whose population is below sample_count stay enumerated.
  SubsetStrategy partial = sampled;
  partial.sample_count = 1000;
  const auto mix = distortion_report(f, P, 2, partial, RandomSeed{4, 0});
  CHECK(mix.per_size.at(2).evaluated == 780);   // C(40,2) enumerated
  CHECK(mix.per_size.at(3).evaluated == 1000);  // C(40,3) = 9880 sampled
  CHECK(mix.sampled);
}

TEST_CASE("distortion_report is deterministic across seeds and workers") {
  const PointSet P = gaussian_points(8, 30, RandomSeed{30, 0});
  const LinearMap f = gaussian_matrix(5, 8, RandomSeed{31, 0});
  SubsetStrategy strategy;
  strategy.mode = SubsetMode::sampled;
  strategy.sample_count = 400;

  const auto a = distortion_report(f, P, 3, strategy, RandomSeed{5, 0}, ExecPolicy{1});
  const auto b = distortion_report(f, P, 3, strategy, RandomSeed{5, 0}, ExecPolicy{1});
  const auto c = distortion_report(f, P, 3, strategy, RandomSeed{5, 0}, ExecPolicy{4});
  CHECK(reports_equal(a, b));
  CHECK(reports_equal(a, c));

  const auto other = distortion_report(f, P, 3, strategy, RandomSeed{6, 0});
  CHECK(other.per_size.at(4).evaluated == 400);  // different draw, same shape
}

TEST_CASE("distortion is invariant under map rescaling") {
  const PointSet P = gaussian_points(10, 14, RandomSeed{40, 0});
  LinearMap f = gaussian_matrix(6, 10, RandomSeed{41, 0});
  const auto base = distortion_report(f, P, 3, SubsetStrategy{}, RandomSeed{7, 0});
  f.scale = 17.0;
  const auto scaled = distortion_report(f, P, 3, SubsetStrategy{}, RandomSeed{7, 0});
  CHECK(scaled.distortion == doctest::Approx(base.distortion).epsilon(1e-9));
  CHECK(scaled.overall_max == doctest::Approx(17.0 * base.overall_max).epsilon(1e-9));
}

TEST_CASE("distance_distortion equals the k=1 report exactly") {
  const PointSet P = gaussian_points(9, 12, RandomSeed{50, 0});
  const LinearMap f = gaussian_matrix(5, 9, RandomSeed{51, 0});
  const double dd = distance_distortion(f, P);
  const auto rep = distortion_report(f, P, 1, SubsetStrategy{}, RandomSeed{8, 0});
  CHECK(dd == rep.distortion);
  CHECK(dd >= 1.0);
}

TEST_CASE("distance_distortion rejects coincident points") {
  Eigen::MatrixXd pts(2, 4);
  pts << 0, 1, 0, 2,
         0, 1, 0, 3;
  const LinearMap f = gaussian_matrix(2, 2, RandomSeed{52, 0});
  CHECK_THROWS_AS(distance_distortion(f, PointSet(pts)), DegenerateInputError);
}

TEST_CASE("larger k never shrinks the distortion") {
  const PointSet P = gaussian_points(9, 11, RandomSeed{60, 0});
  const LinearMap f = gaussian_matrix(7, 9, RandomSeed{61, 0});
  double prev = 1.0;
  for (int k = 1; k <= 3; ++k) {
    const auto rep = distortion_report(f, P, k, SubsetStrategy{}, RandomSeed{9, 0});
    CHECK(rep.distortion >= prev - 1e-12);
    prev = rep.distortion;
  }
}

TEST_CASE("degenerate source subsets are counted, not scored") {
  Eigen::MatrixXd pts(3, 4);
  pts << 0, 1, 0, 0,
         0, 0, 1, 0,
         0, 0, 0, 0;  // fourth point duplicates the first
  const LinearMap f = gaussian_matrix(3, 3, RandomSeed{70, 0});
  const auto rep = distortion_report(f, PointSet(pts), 1, SubsetStrategy{}, RandomSeed{10, 0});
  CHECK(rep.per_size.at(2).evaluated == 6);
  CHECK(rep.per_size.at(2).degenerate == 1);
  CHECK(std::isfinite(rep.distortion));
}

TEST_CASE("distortion distribution is invariant under source rotations") {
  const int n_seeds = 500;
  const PointSet P = gaussian_points(8, 12, RandomSeed{80, 0});
  const Eigen::MatrixXd Q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian_matrix(8, 8, RandomSeed{81, 0}).matrix)
          .householderQ();
  const PointSet rotated(Q * P.coords());

  std::vector<double> base_max, rot_max;
  base_max.reserve(n_seeds);
  rot_max.reserve(n_seeds);
  const RandomSeed bank_a{900, 0};
  const RandomSeed bank_b{901, 0};
  for (int i = 0; i < n_seeds; ++i) {
    const LinearMap fa = gaussian_matrix(6, 8, bank_a.derived(static_cast<std::uint64_t>(i)));
    const LinearMap fb = gaussian_matrix(6, 8, bank_b.derived(static_cast<std::uint64_t>(i)));
    base_max.push_back(
        distortion_report(fa, P, 3, SubsetStrategy{}, RandomSeed{11, 0}).overall_max);
    rot_max.push_back(
        distortion_report(fb, rotated, 3, SubsetStrategy{}, RandomSeed{11, 0}).overall_max);
  }
  CHECK(ks_two_sample(base_max, rot_max) < 0.05);
}

TEST_CASE("embed rescales so the minimum ratio is exactly one") {
  const PointSet P = gaussian_points(10, 14, RandomSeed{90, 0});
  const auto res = embed(P, 6, 3, 1, std::nullopt, SubsetStrategy{}, RandomSeed{12, 0});
  CHECK(res.trials_used == 1);
  CHECK(res.report.overall_min == 1.0);
  CHECK(res.report.distortion == res.report.overall_max);
  CHECK(res.map.scale > 0.0);
  CHECK(res.map.matrix.rows() == 6);
  CHECK(res.map.matrix.cols() == 10);

  // The returned map really achieves the reported ratios.
  const auto rep = distortion_report(res.map, P, 3, SubsetStrategy{}, RandomSeed{12, 0});
  CHECK(rep.overall_min == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.distortion == doctest::Approx(res.report.distortion).epsilon(1e-9));
}

TEST_CASE("embed keeps the best trial and honors the target") {
  const PointSet P = gaussian_points(12, 16, RandomSeed{100, 0});
  const auto one = embed(P, 7, 2, 1, std::nullopt, SubsetStrategy{}, RandomSeed{13, 0});
  const auto five = embed(P, 7, 2, 5, std::nullopt, SubsetStrategy{}, RandomSeed{13, 0});
  CHECK(five.trials_used == 5);
  CHECK(five.report.distortion <= one.report.distortion + 1e-12);

  // A trivially satisfiable target stops after the first trial.
  const auto eager = embed(P, 7, 2, 5, 1e12, SubsetStrategy{}, RandomSeed{13, 0});
  CHECK(eager.trials_used == 1);

  // An unreachable target uses the full budget.
  const auto strict = embed(P, 7, 2, 4, 1.0, SubsetStrategy{}, RandomSeed{13, 0});
  CHECK(strict.trials_used == 4);
}

TEST_CASE("embed is deterministic for every worker count") {
  const PointSet P = gaussian_points(9, 20, RandomSeed{110, 0});
  SubsetStrategy strategy;
  strategy.mode = SubsetMode::sampled;
  strategy.sample_count = 300;
  const auto w1 = embed(P, 5, 2, 3, std::nullopt, strategy, RandomSeed{14, 0}, ExecPolicy{1});
  const auto w4 = embed(P, 5, 2, 3, std::nullopt, strategy, RandomSeed{14, 0}, ExecPolicy{4});
  CHECK(w1.map.matrix == w4.map.matrix);
  CHECK(w1.map.scale == w4.map.scale);
  CHECK(reports_equal(w1.report, w4.report));
  CHECK(w1.trials_used == w4.trials_used);
}

TEST_CASE("embed rejects inputs without usable subsets") {
  Eigen::MatrixXd dup(3, 2);
  dup << 1, 1,
         2, 2,
         3, 3;
  CHECK_THROWS_AS(embed(PointSet(dup), 3, 1, 2, std::nullopt, SubsetStrategy{}, RandomSeed{15, 0}),
                  DegenerateInputError);
}

TEST_CASE("embed reports collapse when the target dimension is too small") {
  // Size-4 subsets span 3 dimensions; mapping into R^2 kills every one.
  const PointSet P = gaussian_points(4, 6, RandomSeed{120, 0});
  CHECK_THROWS_AS(embed(P, 2, 3, 2, std::nullopt, SubsetStrategy{}, RandomSeed{16, 0}),
                  DegenerateInputError);
}

TEST_CASE("embed argument validation") {
  const PointSet P = gaussian_points(4, 6, RandomSeed{130, 0});
  CHECK_THROWS_AS(embed(P, 0, 1, 1, std::nullopt, SubsetStrategy{}, RandomSeed{17, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(embed(P, 3, 0, 1, std::nullopt, SubsetStrategy{}, RandomSeed{17, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(embed(P, 3, 6, 1, std::nullopt, SubsetStrategy{}, RandomSeed{17, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(embed(P, 3, 1, 0, std::nullopt, SubsetStrategy{}, RandomSeed{17, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(embed(P, 3, 1, 1, -2.0, SubsetStrategy{}, RandomSeed{17, 0}),
                  std::invalid_argument);
}
