#include "mob/folds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mob {

std::vector<int> FoldAssignment::rows_in_fold(int fold) const {
  std::vector<int> rows;
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i)
    if (assignment[i] == fold) rows.push_back(i);
  return rows;
}

std::vector<int> FoldAssignment::rows_outside_fold(int fold) const {
  std::vector<int> rows;
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i)
    if (assignment[i] != fold) rows.push_back(i);
  return rows;
}

FoldAssignment kfold_split(int n, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold_split: k must be >= 2");
  if (k > n) throw std::invalid_argument("kfold_split: k must be <= n");

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }

  FoldAssignment fa;
  fa.k = k;
  fa.seed = seed;
  fa.assignment.resize(n);
  for (int i = 0; i < n; ++i) fa.assignment[perm[i]] = i % k;
  return fa;
}

Vector Standardizer::apply(const Vector& x) const {
  if (sd > 0.0) return (x.array() - mean) / sd;
  return x.array() - mean;
}

Standardizer fit_standardizer(const Vector& values) {
  const Index n = values.size();
  if (n == 0) throw std::invalid_argument("fit_standardizer: empty input");
  Standardizer s;
  s.mean = values.mean();
  if (n > 1) {
    const double ss = (values.array() - s.mean).square().sum();
    s.sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

}  // namespace mob
