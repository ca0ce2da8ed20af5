#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace hulldev {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent sub-seeds from (seed, stream).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(mix_seed(seed, stream));
}

inline double uniform01(Rng& rng) {
  // 53 random bits, strictly inside (0, 1)
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline double standard_normal(Rng& rng) {
  // Box-Muller; stdlib distributions are implementation-defined, this is not.
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

/// Dirichlet(1, ..., 1) sample of the given size.
inline Eigen::VectorXd dirichlet_flat(Rng& rng, int size) {
  Eigen::VectorXd w(size);
  for (int i = 0; i < size; ++i) w[i] = -std::log(uniform01(rng));
  return w / w.sum();
}

/// Uniform direction on the Euclidean sphere.
inline Eigen::VectorXd gaussian_direction(Rng& rng, int dim) {
  Eigen::VectorXd v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = standard_normal(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

}  // namespace hulldev
