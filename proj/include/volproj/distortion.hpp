#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "volproj/linalg.hpp"
#include "volproj/parallel.hpp"
#include "volproj/randgen.hpp"

namespace volproj {

enum class SubsetMode { exhaustive, sampled };

struct SubsetStrategy {
  // exhaustive degrades to sampling when the total subset count over all
  // requested sizes exceeds enumeration_cap.
  SubsetMode mode = SubsetMode::exhaustive;
  int sample_count = 10000;  // subsets per size when sampling
  std::uint64_t enumeration_cap = 1000000;
};

struct SizeStats {
  double min_ratio = 0.0;  // NaN when every evaluated subset was degenerate
  double max_ratio = 0.0;
  std::uint64_t evaluated = 0;
  std::uint64_t degenerate = 0;
};

struct DistortionReport {
  std::map<int, SizeStats> per_size;  // keyed by subset size |S| in [2, k+1]
  double overall_min = 0.0;
  double overall_max = 0.0;
  double distortion = 0.0;  // overall_max / overall_min
  SubsetStrategy strategy;
  bool sampled = false;  // true when any size was sampled rather than enumerated
  RandomSeed seed;
};

// (vol(f(S)) / vol(S))^(1/(|S|-1)) for one subset given as an N x |S| matrix.
// Empty when the source volume is degenerate (no distortion information);
// 0.0 when only the image volume is (total contraction).
std::optional<double> normalized_volume_ratio(const LinearMap& f,
                                              const Eigen::MatrixXd& subset_points,
                                              double rank_tol = kDefaultRankTol);

// Min/max normalized volume ratio over subsets of each size 2..k+1.
// Deterministic given (seed, strategy) for every worker count.
DistortionReport distortion_report(const LinearMap& f, const PointSet& P, int k,
                                   const SubsetStrategy& strategy, RandomSeed seed,
                                   const ExecPolicy& exec = {});

// Max over min pairwise distance ratio, all C(n,2) pairs, always exhaustive.
// Duplicate points are an error.
double distance_distortion(const LinearMap& f, const PointSet& P, const ExecPolicy& exec = {});

struct EmbedResult {
  LinearMap map;
  DistortionReport report;  // of map, i.e. after the rescale
  int trials_used = 0;
};

// Draws Gaussian maps into R^d until one meets target_distortion (or returns
// the best of max_trials), rescaled so the minimum normalized ratio is
// exactly 1. Throws DegenerateInputError when no subset of any requested size
// spans positive volume.
EmbedResult embed(const PointSet& P, int d, int k, int max_trials,
                  std::optional<double> target_distortion, const SubsetStrategy& strategy,
                  RandomSeed seed, const ExecPolicy& exec = {});

}  // namespace volproj
