#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <vector>

namespace volproj {

// Rank cutoff relative to the largest singular value.
inline constexpr double kDefaultRankTol = 1e-10;

// An ordered n-point subset of R^N, one point per column.
class PointSet {
 public:
  explicit PointSet(Eigen::MatrixXd coords);
  static PointSet from_points(const std::vector<Eigen::VectorXd>& pts);

  [[nodiscard]] int n() const { return static_cast<int>(coords_.cols()); }
  [[nodiscard]] int dim() const { return static_cast<int>(coords_.rows()); }
  [[nodiscard]] const Eigen::MatrixXd& coords() const { return coords_; }
  [[nodiscard]] Eigen::VectorXd point(int i) const { return coords_.col(i); }

 private:
  Eigen::MatrixXd coords_;
};

// Linear embedding x -> scale * (matrix * x).
struct LinearMap {
  Eigen::MatrixXd matrix;  // d x N
  double scale = 1.0;

  [[nodiscard]] int output_dim() const { return static_cast<int>(matrix.rows()); }
  [[nodiscard]] int input_dim() const { return static_cast<int>(matrix.cols()); }
};

// Natural log of an (k-1)-dimensional simplex volume. value is meaningless
// when degenerate is set (rank-deficient difference matrix, zero volume).
struct LogVolume {
  double value = -std::numeric_limits<double>::infinity();
  bool degenerate = false;
};

// Columns p_{j+1} - p_1 of an ordered list of k points (N x k in, N x (k-1) out).
Eigen::MatrixXd difference_matrix(const Eigen::MatrixXd& points);
Eigen::MatrixXd difference_matrix(const std::vector<Eigen::VectorXd>& points);

// log( sqrt(det(P^T P)) / (k-1)! ) for the difference matrix P, computed from
// the singular values of P so the determinant never leaves log scale.
LogVolume log_simplex_volume(const Eigen::MatrixXd& points, double rank_tol = kDefaultRankTol);
LogVolume log_simplex_volume(const std::vector<Eigen::VectorXd>& points,
                             double rank_tol = kDefaultRankTol);

PointSet apply_map(const LinearMap& f, const PointSet& P);

struct GeneralPositionResult {
  bool ok = true;
  // Point indices of one affinely dependent subset when !ok.
  std::optional<std::vector<int>> witness;
};

// True iff every subset of size <= k is affinely independent at rank_tol.
GeneralPositionResult general_position_check(const PointSet& P, int k,
                                             double rank_tol = kDefaultRankTol);

namespace detail {

// Shared SVD-backed kernel; svd is reused across calls to avoid reallocation
// in subset loops. Same algorithm as log_simplex_volume.
LogVolume log_volume_from_difference(const Eigen::MatrixXd& diff,
                                     Eigen::JacobiSVD<Eigen::MatrixXd>& svd, double rank_tol);

}  // namespace detail

}  // namespace volproj
