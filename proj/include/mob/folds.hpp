#pragma once

#include "mob/types.hpp"

#include <cstdint>
#include <vector>

namespace mob {

// Seeded k-fold partition of [0, n). Fold sizes differ by at most one and the
// assignment is reproducible from (n, k, seed).
struct FoldAssignment {
  int k = 0;
  std::vector<int> assignment;  // fold index per row
  std::uint64_t seed = 0;

  std::vector<int> rows_in_fold(int fold) const;
  std::vector<int> rows_outside_fold(int fold) const;
};

FoldAssignment kfold_split(int n, int k, std::uint64_t seed);

// Per-target standardization statistics, fitted on training rows only.
struct Standardizer {
  double mean = 0.0;
  double sd = 0.0;  // sample sd (n-1 divisor); 0 for constant or single-value input

  double apply(double x) const { return sd > 0.0 ? (x - mean) / sd : x - mean; }
  Vector apply(const Vector& x) const;
};

Standardizer fit_standardizer(const Vector& values);

}  // namespace mob
