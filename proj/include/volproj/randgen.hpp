#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "volproj/linalg.hpp"

namespace volproj {

// (seed, stream) pair addressing one reproducible random stream. Equal pairs
// give bit-identical sequences; derived() yields sub-streams for parallel
// workers without coordination.
struct RandomSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  [[nodiscard]] RandomSeed derived(std::uint64_t index) const;
};

// xoshiro256** seeded through splitmix64. Not cryptographic.
class Rng {
 public:
  explicit Rng(RandomSeed s);

  std::uint64_t next_u64();
  double uniform01();                        // [0, 1)
  double normal();                           // N(0, 1), Box-Muller
  std::uint64_t below(std::uint64_t bound);  // uniform on [0, bound), bound >= 1

 private:
  std::array<std::uint64_t, 4> state_{};
  double pending_normal_ = 0.0;
  bool has_pending_ = false;
};

// (d, s) with the two sandwich degrees of freedom t = s(d-s+1) and
// l = t + (s-1)(s-2)/2.
struct ChiProductSpec {
  int d = 1;
  int s = 1;

  ChiProductSpec(int d_, int s_);
  [[nodiscard]] std::int64_t t() const;
  [[nodiscard]] std::int64_t l() const;
};

// d x N matrix of independent standard normals, scale 1.
LinearMap gaussian_matrix(int d, int N, RandomSeed seed);

// count independent chi-square draws with dof degrees of freedom.
std::vector<double> sample_chi_square(int dof, int count, RandomSeed seed);

// count independent draws of prod_{i=1..s} chi2_{d-i+1}, all factors independent.
std::vector<double> sample_chi_square_product(const ChiProductSpec& spec, int count,
                                              RandomSeed seed);

}  // namespace volproj
