#include "volproj/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "volproj/errors.hpp"
#include "volproj/subsets.hpp"

namespace volproj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kCountMax = std::numeric_limits<std::uint64_t>::max();

struct SizePlan {
  int m = 2;                 // subset size
  bool enumerated = true;    // walk all C(n, m) combinations in rank order
  std::uint64_t total = 0;   // subsets evaluated for this size
  std::vector<int> indices;  // flat total*m point indices when !enumerated
};

struct EvalPlan {
  std::vector<SizePlan> sizes;  // one entry per subset size 2..k+1
  bool any_sampled = false;
};

// Min/max of log normalized ratios for one subset size; kept in log scale so
// rescaling a map is an exact shift.
struct LogStats {
  double min_log = kInf;
  double max_log = -kInf;
  std::uint64_t evaluated = 0;
  std::uint64_t degenerate = 0;
};

void merge(LogStats& into, const LogStats& from) {
  into.min_log = std::min(into.min_log, from.min_log);
  into.max_log = std::max(into.max_log, from.max_log);
  into.evaluated += from.evaluated;
  into.degenerate += from.degenerate;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kCountMax - b ? kCountMax : a + b;
}

// count distinct m-subsets of {0..n-1}, flattened. Ranks are deduplicated
// while C(n, m) is representable; past that scale independent draws collide
// with negligible probability, so each subset is drawn directly instead.
std::vector<int> draw_subsets(int n, int m, int count, std::uint64_t total, Rng& rng) {
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(count) * m);
  if (total != kCountMax) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(count) * 2);
    while (seen.size() < static_cast<std::size_t>(count)) {
      const std::uint64_t rank = rng.below(total);
      if (!seen.insert(rank).second) continue;
      const std::vector<int> comb = combination_unrank(n, m, rank);
      flat.insert(flat.end(), comb.begin(), comb.end());
    }
  } else {
    std::vector<int> comb(m);
    std::unordered_set<int> chosen;
    for (int c = 0; c < count; ++c) {
      chosen.clear();
      int out = 0;
      for (int j = n - m; j < n; ++j) {
        int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
        if (!chosen.insert(pick).second) {
          pick = j;
          chosen.insert(j);
        }
        comb[out++] = pick;
      }
      std::sort(comb.begin(), comb.end());
      flat.insert(flat.end(), comb.begin(), comb.end());
    }
  }
  return flat;
}

EvalPlan build_plan(int n, int k, const SubsetStrategy& strategy, RandomSeed seed) {
  EvalPlan plan;
  std::uint64_t total_all = 0;
  for (int m = 2; m <= k + 1; ++m) total_all = saturating_add(total_all, binomial_or_max(n, m));
  const bool enumerate_all =
      strategy.mode == SubsetMode::exhaustive && total_all <= strategy.enumeration_cap;
  for (int m = 2; m <= k + 1; ++m) {
    SizePlan sp;
    sp.m = m;
    const std::uint64_t count = binomial_or_max(n, m);
    if (enumerate_all || count <= static_cast<std::uint64_t>(strategy.sample_count)) {
      sp.enumerated = true;
      sp.total = count;
    } else {
      sp.enumerated = false;
      sp.total = static_cast<std::uint64_t>(strategy.sample_count);
      Rng rng(seed.derived(static_cast<std::uint64_t>(m)));
      sp.indices = draw_subsets(n, m, strategy.sample_count, count, rng);
      plan.any_sampled = true;
    }
    plan.sizes.push_back(std::move(sp));
  }
  return plan;
}

// Source simplex volumes for every planned subset, indexed like the plan.
// These depend only on the points, so embed() computes them once and shares
// them across trial maps.
std::vector<std::vector<LogVolume>> compute_source_volumes(const PointSet& P, const EvalPlan& plan,
                                                           const ExecPolicy& exec) {
  std::vector<std::vector<LogVolume>> out(plan.sizes.size());
  const Eigen::MatrixXd& pts = P.coords();
  for (std::size_t si = 0; si < plan.sizes.size(); ++si) {
    const SizePlan& sp = plan.sizes[si];
    out[si].resize(sp.total);
    std::vector<LogVolume>& dst = out[si];
    const int m = sp.m;
    run_chunks(sp.total, kSubsetChunk, exec,
               [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
                 Eigen::JacobiSVD<Eigen::MatrixXd> svd;
                 Eigen::MatrixXd diff(P.dim(), m - 1);
                 std::vector<int> comb;
                 if (sp.enumerated) comb = combination_unrank(P.n(), m, begin);
                 for (std::uint64_t i = begin; i < end; ++i) {
                   const int* idx = sp.enumerated
                                        ? comb.data()
                                        : sp.indices.data() + i * static_cast<std::uint64_t>(m);
                   for (int j = 1; j < m; ++j) diff.col(j - 1) = pts.col(idx[j]) - pts.col(idx[0]);
                   dst[i] = detail::log_volume_from_difference(diff, svd, kDefaultRankTol);
                   if (sp.enumerated && i + 1 < end) next_combination(comb, P.n());
                 }
               });
  }
  return out;
}

// Log-ratio statistics of one map against precomputed source volumes. Chunk
// boundaries and the sampling plan are fixed upfront, so results match for
// every worker count.
std::vector<LogStats> eval_map(const LinearMap& f, const PointSet& P, const EvalPlan& plan,
                               const std::vector<std::vector<LogVolume>>& src,
                               const ExecPolicy& exec) {
  std::vector<LogStats> out(plan.sizes.size());
  const Eigen::MatrixXd& pts = P.coords();
  for (std::size_t si = 0; si < plan.sizes.size(); ++si) {
    const SizePlan& sp = plan.sizes[si];
    const std::vector<LogVolume>& svol = src[si];
    const int m = sp.m;
    std::vector<LogStats> partial(chunk_count(sp.total, kSubsetChunk));
    run_chunks(sp.total, kSubsetChunk, exec,
               [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
                 LogStats st;
                 Eigen::JacobiSVD<Eigen::MatrixXd> svd;
                 Eigen::MatrixXd diff(P.dim(), m - 1);
                 Eigen::MatrixXd img(f.output_dim(), m - 1);
                 std::vector<int> comb;
                 if (sp.enumerated) comb = combination_unrank(P.n(), m, begin);
                 for (std::uint64_t i = begin; i < end; ++i) {
                   const int* idx = sp.enumerated
                                        ? comb.data()
                                        : sp.indices.data() + i * static_cast<std::uint64_t>(m);
                   ++st.evaluated;
                   if (svol[i].degenerate) {
                     ++st.degenerate;
                   } else {
                     for (int j = 1; j < m; ++j)
                       diff.col(j - 1) = pts.col(idx[j]) - pts.col(idx[0]);
                     img.noalias() = f.matrix * diff;
                     if (f.scale != 1.0) img *= f.scale;
                     const LogVolume iv = detail::log_volume_from_difference(img, svd, kDefaultRankTol);
                     const double lr = iv.degenerate ? -kInf : (iv.value - svol[i].value) / (m - 1);
                     st.min_log = std::min(st.min_log, lr);
                     st.max_log = std::max(st.max_log, lr);
                   }
                   if (sp.enumerated && i + 1 < end) next_combination(comb, P.n());
                 }
                 partial[c] = st;
               });
    for (const LogStats& st : partial) merge(out[si], st);
  }
  return out;
}

// Ratios are reported as exp(log_ratio - log_shift); a zero shift reports the
// map as measured and shift = overall min log reports the rescaled map with
// an exact minimum of one.
DistortionReport make_report(const std::vector<LogStats>& stats, const EvalPlan& plan,
                             const SubsetStrategy& strategy, RandomSeed seed, double log_shift) {
  DistortionReport rep;
  rep.strategy = strategy;
  rep.sampled = plan.any_sampled;
  rep.seed = seed;
  double min_log = kInf;
  double max_log = -kInf;
  bool any = false;
  for (std::size_t si = 0; si < plan.sizes.size(); ++si) {
    const LogStats& st = stats[si];
    SizeStats ss;
    ss.evaluated = st.evaluated;
    ss.degenerate = st.degenerate;
    if (st.evaluated > st.degenerate) {
      ss.min_ratio = std::exp(st.min_log - log_shift);
      ss.max_ratio = std::exp(st.max_log - log_shift);
      min_log = std::min(min_log, st.min_log);
      max_log = std::max(max_log, st.max_log);
      any = true;
    } else {
      ss.min_ratio = kNaN;
      ss.max_ratio = kNaN;
    }
    rep.per_size[plan.sizes[si].m] = ss;
  }
  if (any) {
    rep.overall_min = std::exp(min_log - log_shift);
    rep.overall_max = std::exp(max_log - log_shift);
    rep.distortion = rep.overall_max / rep.overall_min;
  } else {
    rep.overall_min = kNaN;
    rep.overall_max = kNaN;
    rep.distortion = kNaN;
  }
  return rep;
}

void validate_report_args(const PointSet& P, int k, const SubsetStrategy& strategy) {
  if (k < 1 || k > P.n() - 1)
    throw std::invalid_argument("distortion: need 1 <= k <= n-1");
  if (strategy.sample_count < 1)
    throw std::invalid_argument("distortion: sample_count must be positive");
}

}  // namespace

std::optional<double> normalized_volume_ratio(const LinearMap& f,
                                              const Eigen::MatrixXd& subset_points,
                                              double rank_tol) {
  if (subset_points.cols() < 2)
    throw std::invalid_argument("normalized_volume_ratio: need at least two points");
  if (f.input_dim() != subset_points.rows())
    throw std::invalid_argument("normalized_volume_ratio: map/point dimension mismatch");
  const Eigen::MatrixXd diff = difference_matrix(subset_points);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  const LogVolume source = detail::log_volume_from_difference(diff, svd, rank_tol);
  if (source.degenerate) return std::nullopt;
  Eigen::MatrixXd img = f.matrix * diff;
  if (f.scale != 1.0) img *= f.scale;
  const LogVolume image = detail::log_volume_from_difference(img, svd, rank_tol);
  if (image.degenerate) return 0.0;
  const int k = static_cast<int>(subset_points.cols()) - 1;
  return std::exp((image.value - source.value) / k);
}

DistortionReport distortion_report(const LinearMap& f, const PointSet& P, int k,
                                   const SubsetStrategy& strategy, RandomSeed seed,
                                   const ExecPolicy& exec) {
  validate_report_args(P, k, strategy);
  if (f.input_dim() != P.dim())
    throw std::invalid_argument("distortion_report: map/point dimension mismatch");
  const EvalPlan plan = build_plan(P.n(), k, strategy, seed);
  const auto src = compute_source_volumes(P, plan, exec);
  const auto stats = eval_map(f, P, plan, src, exec);
  return make_report(stats, plan, strategy, seed, 0.0);
}

double distance_distortion(const LinearMap& f, const PointSet& P, const ExecPolicy& exec) {
  if (P.n() < 2) throw std::invalid_argument("distance_distortion: need at least two points");
  // Coincident points carry no distance information; surface them as input
  // errors rather than returning an infinite ratio.
  const Eigen::MatrixXd& pts = P.coords();
  std::vector<int> order(P.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int r = 0; r < P.dim(); ++r)
      if (pts(r, a) != pts(r, b)) return pts(r, a) < pts(r, b);
    return false;
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (pts.col(order[i - 1]) == pts.col(order[i]))
      throw DegenerateInputError("distance_distortion: points " + std::to_string(order[i - 1]) +
                                 " and " + std::to_string(order[i]) + " coincide");

  SubsetStrategy strategy;
  strategy.mode = SubsetMode::exhaustive;
  strategy.enumeration_cap = kCountMax;
  return distortion_report(f, P, 1, strategy, RandomSeed{}, exec).distortion;
}

EmbedResult embed(const PointSet& P, int d, int k, int max_trials,
                  std::optional<double> target_distortion, const SubsetStrategy& strategy,
                  RandomSeed seed, const ExecPolicy& exec) {
  validate_report_args(P, k, strategy);
  if (d < 1) throw std::invalid_argument("embed: need d >= 1");
  if (max_trials < 1) throw std::invalid_argument("embed: need max_trials >= 1");
  if (target_distortion && !(*target_distortion > 0.0))
    throw std::invalid_argument("embed: target distortion must be positive");

  const EvalPlan plan = build_plan(P.n(), k, strategy, seed.derived(0));
  const auto src = compute_source_volumes(P, plan, exec);

  bool any_source = false;
  for (const auto& per_size : src)
    for (const LogVolume& lv : per_size)
      if (!lv.degenerate) {
        any_source = true;
        break;
      }
  if (!any_source)
    throw DegenerateInputError("embed: every tracked subset is affinely dependent");

  const double log_target = target_distortion ? std::log(*target_distortion) : -kInf;
  std::vector<LogStats> best_stats;
  LinearMap best_map;
  double best_span = kInf;
  int trials = 0;
  for (int t = 0; t < max_trials; ++t) {
    LinearMap f = gaussian_matrix(d, P.dim(), seed.derived(1 + static_cast<std::uint64_t>(t)));
    std::vector<LogStats> stats = eval_map(f, P, plan, src, exec);
    double min_log = kInf;
    double max_log = -kInf;
    bool any = false;
    for (const LogStats& st : stats)
      if (st.evaluated > st.degenerate) {
        min_log = std::min(min_log, st.min_log);
        max_log = std::max(max_log, st.max_log);
        any = true;
      }
    const double span = any && min_log > -kInf ? max_log - min_log : kInf;
    ++trials;
    if (t == 0 || span < best_span) {
      best_span = span;
      best_stats = std::move(stats);
      best_map = std::move(f);
    }
    if (target_distortion && best_span <= log_target) break;
  }

  double overall_min_log = kInf;
  for (const LogStats& st : best_stats)
    if (st.evaluated > st.degenerate) overall_min_log = std::min(overall_min_log, st.min_log);
  if (!std::isfinite(overall_min_log))
    throw DegenerateInputError(
        "embed: image volumes collapsed in every trial (subset size exceeds the target dimension?)");

  EmbedResult result;
  result.map = best_map;
  result.map.scale = best_map.scale * std::exp(-overall_min_log);
  result.report = make_report(best_stats, plan, strategy, seed, overall_min_log);
  result.trials_used = trials;
  return result;
}

}  // namespace volproj
