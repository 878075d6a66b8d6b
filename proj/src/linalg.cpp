#include "volproj/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "volproj/subsets.hpp"

namespace volproj {

PointSet::PointSet(Eigen::MatrixXd coords) : coords_(std::move(coords)) {
  if (coords_.rows() < 1 || coords_.cols() < 2)
    throw std::invalid_argument("PointSet: need N >= 1 and n >= 2");
}

PointSet PointSet::from_points(const std::vector<Eigen::VectorXd>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("PointSet: need n >= 2");
  const Eigen::Index N = pts.front().size();
  Eigen::MatrixXd coords(N, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].size() != N)
      throw std::invalid_argument("PointSet: mixed point dimensions");
    coords.col(static_cast<Eigen::Index>(i)) = pts[i];
  }
  return PointSet(std::move(coords));
}

Eigen::MatrixXd difference_matrix(const Eigen::MatrixXd& points) {
  if (points.cols() < 2)
    throw std::invalid_argument("difference_matrix: need at least 2 points");
  return points.rightCols(points.cols() - 1).colwise() - points.col(0);
}

Eigen::MatrixXd difference_matrix(const std::vector<Eigen::VectorXd>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("difference_matrix: need at least 2 points");
  const Eigen::Index N = points.front().size();
  Eigen::MatrixXd diff(N, static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t j = 1; j < points.size(); ++j) {
    if (points[j].size() != N)
      throw std::invalid_argument("difference_matrix: mixed point dimensions");
    diff.col(static_cast<Eigen::Index>(j - 1)) = points[j] - points[0];
  }
  return diff;
}

namespace detail {

LogVolume log_volume_from_difference(const Eigen::MatrixXd& diff,
                                     Eigen::JacobiSVD<Eigen::MatrixXd>& svd, double rank_tol) {
  const Eigen::Index needed = diff.cols();
  if (diff.rows() < needed) return LogVolume{.degenerate = true};  // rank < k-1 forced
  svd.compute(diff);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (!(smax > 0.0) || sv(needed - 1) < rank_tol * smax)
    return LogVolume{.degenerate = true};
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < needed; ++i) logdet += std::log(sv(i));
  // (k-1)! normalization, as log Gamma(k).
  return LogVolume{logdet - std::lgamma(static_cast<double>(needed) + 1.0), false};
}

}  // namespace detail

LogVolume log_simplex_volume(const Eigen::MatrixXd& points, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  return detail::log_volume_from_difference(difference_matrix(points), svd, rank_tol);
}

LogVolume log_simplex_volume(const std::vector<Eigen::VectorXd>& points, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  return detail::log_volume_from_difference(difference_matrix(points), svd, rank_tol);
}

PointSet apply_map(const LinearMap& f, const PointSet& P) {
  if (f.input_dim() != P.dim())
    throw std::invalid_argument("apply_map: map expects dimension " +
                                std::to_string(f.input_dim()) + ", point set has " +
                                std::to_string(P.dim()));
  return PointSet(f.scale * (f.matrix * P.coords()));
}

GeneralPositionResult general_position_check(const PointSet& P, int k, double rank_tol) {
  if (k < 2 || k > P.n())
    throw std::invalid_argument("general_position_check: need 2 <= k <= n");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  Eigen::MatrixXd diff;
  for (int m = 2; m <= k; ++m) {
    std::vector<int> comb(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) comb[static_cast<std::size_t>(i)] = i;
    do {
      diff.resize(P.dim(), m - 1);
      for (int j = 1; j < m; ++j)
        diff.col(j - 1) = P.coords().col(comb[static_cast<std::size_t>(j)]) -
                          P.coords().col(comb[0]);
      if (detail::log_volume_from_difference(diff, svd, rank_tol).degenerate)
        return GeneralPositionResult{false, comb};
    } while (next_combination(comb, P.n()));
  }
  return GeneralPositionResult{};
}

}  // namespace volproj
