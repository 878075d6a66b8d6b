#include "volproj/randgen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace volproj {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 step (Vigna); used only to expand seeds into generator state.
std::uint64_t splitmix_next(std::uint64_t& x) {
  x += kGolden;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t x) { return splitmix_next(x); }

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomSeed RandomSeed::derived(std::uint64_t index) const {
  return RandomSeed{seed, mix64(stream + kGolden * (index + 1))};
}

Rng::Rng(RandomSeed s) {
  std::uint64_t key = mix64(s.seed) ^ (kGolden * mix64(s.stream ^ 0x5851f42d4c957f2dULL));
  for (auto& word : state_) word = splitmix_next(key);
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t Rng::next_u64() {
  // xoshiro256**
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_pending_) {
    has_pending_ = false;
    return pending_normal_;
  }
  // Box-Muller; u1 in (0,1] so the log is finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  pending_normal_ = r * std::sin(angle);
  has_pending_ = true;
  return r * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  const std::uint64_t threshold = (-bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

ChiProductSpec::ChiProductSpec(int d_, int s_) : d(d_), s(s_) {
  if (d < 1 || s < 1 || s > d)
    throw std::invalid_argument("ChiProductSpec: need 1 <= s <= d");
}

std::int64_t ChiProductSpec::t() const {
  return static_cast<std::int64_t>(s) * (d - s + 1);
}

std::int64_t ChiProductSpec::l() const {
  return t() + static_cast<std::int64_t>(s - 1) * (s - 2) / 2;
}

LinearMap gaussian_matrix(int d, int N, RandomSeed seed) {
  if (d < 1 || N < 1) throw std::invalid_argument("gaussian_matrix: need d >= 1, N >= 1");
  Rng rng(seed);
  Eigen::MatrixXd m(d, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = rng.normal();
  return LinearMap{std::move(m), 1.0};
}

std::vector<double> sample_chi_square(int dof, int count, RandomSeed seed) {
  if (dof < 1 || count < 1)
    throw std::invalid_argument("sample_chi_square: need dof >= 1, count >= 1");
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& v : out) {
    double sum = 0.0;
    for (int i = 0; i < dof; ++i) {
      const double z = rng.normal();
      sum += z * z;
    }
    v = sum;
  }
  return out;
}

std::vector<double> sample_chi_square_product(const ChiProductSpec& spec, int count,
                                              RandomSeed seed) {
  if (count < 1) throw std::invalid_argument("sample_chi_square_product: need count >= 1");
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& v : out) {
    double prod = 1.0;
    for (int i = 1; i <= spec.s; ++i) {
      const int dof = spec.d - i + 1;
      double sum = 0.0;
      for (int j = 0; j < dof; ++j) {
        const double z = rng.normal();
        sum += z * z;
      }
      prod *= sum;
    }
    v = prod;
  }
  return out;
}

}  // namespace volproj
