#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "volproj/gamma.hpp"
#include "volproj/randgen.hpp"
#include "volproj/stats.hpp"

using namespace volproj;

namespace {

double normal_cdf(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("equal seeds give identical streams, different seeds do not") {
  Rng a(RandomSeed{42, 7});
  Rng b(RandomSeed{42, 7});
  Rng c(RandomSeed{42, 8});
  Rng d(RandomSeed{43, 7});
  bool c_differs = false;
  bool d_differs = false;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    c_differs |= (x != c.next_u64());
    d_differs |= (x != d.next_u64());
  }
  CHECK(c_differs);
  CHECK(d_differs);
}

TEST_CASE("derived sub-streams are deterministic and distinct") {
  const RandomSeed root{1729, 0};
  CHECK(root.derived(5).stream == root.derived(5).stream);
  CHECK(root.derived(5).seed == root.seed);
  std::set<std::uint64_t> streams;
  for (std::uint64_t i = 0; i < 256; ++i) streams.insert(root.derived(i).stream);
  CHECK(streams.size() == 256);
}

TEST_CASE("uniform01 stays in [0,1) and below() covers its range") {
  Rng rng(RandomSeed{3, 3});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t v = rng.below(10);
    CHECK(v < 10);
    seen.insert(v);
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("gaussian_matrix moments over 1e6 entries") {
  const LinearMap f = gaussian_matrix(1000, 1000, RandomSeed{99, 0});
  CHECK(f.scale == 1.0);
  REQUIRE(f.matrix.rows() == 1000);
  REQUIRE(f.matrix.cols() == 1000);
  const double mean = f.matrix.mean();
  const double var = (f.matrix.array() - mean).square().mean();
  CHECK(std::fabs(mean) < 0.005);
  CHECK(std::fabs(var - 1.0) < 0.01);
}

TEST_CASE("gaussian_matrix is reproducible") {
  const LinearMap a = gaussian_matrix(8, 16, RandomSeed{4, 4});
  const LinearMap b = gaussian_matrix(8, 16, RandomSeed{4, 4});
  const LinearMap c = gaussian_matrix(8, 16, RandomSeed{4, 5});
  CHECK(a.matrix == b.matrix);
  CHECK_FALSE(a.matrix == c.matrix);
}

TEST_CASE("normal draws pass a KS test against the normal CDF") {
  Rng rng(RandomSeed{2718, 1});
  std::vector<double> draws(100000);
  for (double& x : draws) x = rng.normal();
  CHECK(ks_one_sample(draws, normal_cdf) < 0.006);
}

TEST_CASE("sample_chi_square has the right law") {
  const auto draws = sample_chi_square(4, 100000, RandomSeed{55, 0});
  REQUIRE(draws.size() == 100000);
  for (double x : draws) REQUIRE(x > 0.0);
  CHECK(std::fabs(mean_of(draws) - 4.0) < 0.1);
  CHECK(ks_one_sample(draws, [](double t) { return chi_square_cdf(4, t); }) < 0.006);
}

TEST_CASE("sample_chi_square matches summed squared gaussian entries") {
  const int dof = 5;
  const int count = 100000;
  const LinearMap g = gaussian_matrix(dof, count, RandomSeed{60, 0});
  std::vector<double> summed(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) summed[static_cast<std::size_t>(j)] = g.matrix.col(j).squaredNorm();
  const auto direct = sample_chi_square(dof, count, RandomSeed{61, 0});
  CHECK(ks_two_sample(summed, direct) < 0.01);
}

TEST_CASE("ChiProductSpec degrees of freedom") {
  const ChiProductSpec a(10, 4);
  CHECK(a.t() == 28);
  CHECK(a.l() == 31);
  const ChiProductSpec b(6, 3);
  CHECK(b.t() == 12);
  CHECK(b.l() == 13);
  const ChiProductSpec c(8, 1);
  CHECK(c.t() == 8);
  CHECK(c.l() == 8);
  CHECK_THROWS_AS(ChiProductSpec(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(ChiProductSpec(4, 0), std::invalid_argument);
}

TEST_CASE("chi-square product with s=1 collapses to a single chi-square") {
  const auto prod = sample_chi_square_product(ChiProductSpec(7, 1), 100000, RandomSeed{70, 0});
  const auto single = sample_chi_square(7, 100000, RandomSeed{71, 0});
  CHECK(ks_two_sample(prod, single) < 0.01);
}

TEST_CASE("chi-square product mean matches prod of dofs") {
  // E prod chi2_{d-i+1} = prod (d-i+1); for (6,2) that is 6*5 = 30.
  const auto draws = sample_chi_square_product(ChiProductSpec(6, 2), 100000, RandomSeed{80, 0});
  for (double x : draws) REQUIRE(x > 0.0);
  // Var = 48*35 - 900 = 780, so 3 sigma of the mean at 1e5 draws is ~0.27.
  CHECK(std::fabs(mean_of(draws) - 30.0) < 0.3);
}

TEST_CASE("distinct streams are uncorrelated") {
  const RandomSeed root{12345, 0};
  Rng a(root.derived(0));
  Rng b(root.derived(1));
  const int m = 100000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = a.uniform01();
    const double y = b.uniform01();
    sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
  }
  const double n = m;
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  CHECK(std::fabs(cov / std::sqrt(vx * vy)) < 0.01);
}
