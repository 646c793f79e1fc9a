#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mob {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Read-only view onto a (possibly strided) vector expression, e.g. a row of a
// column-major matrix.
using VectorView = Eigen::Ref<const Vector, 0, Eigen::InnerStride<>>;

enum class TargetKind { Regression, BinaryClassification };

enum class FeatureKind { Numeric, Categorical };

inline const char* to_string(TargetKind k) {
  return k == TargetKind::Regression ? "regression" : "binary";
}

inline const char* to_string(FeatureKind k) {
  return k == FeatureKind::Numeric ? "numeric" : "categorical";
}

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent seed streams so that
// results do not depend on evaluation order or thread schedule.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (key + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}

// Unbiased draw from [0, n) via rejection; pinned implementation so the same
// seed gives the same stream on every platform (std:: distributions are not
// portable).
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace mob
