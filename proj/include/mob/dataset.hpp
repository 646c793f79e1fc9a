#pragma once

#include "mob/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mob {

struct TargetColumn {
  std::string name;
  TargetKind kind = TargetKind::Regression;
  Vector values;  // BinaryClassification: values in {0,1}
};

// Per-feature metadata. Categorical columns store their level names; the
// feature matrix holds the level index.
struct FeatureColumn {
  std::string name;
  FeatureKind kind = FeatureKind::Numeric;
  std::vector<std::string> levels;  // empty for numeric columns

  // Level index for a raw value; unseen levels map to levels.size(), which
  // never matches a trained split.
  double encode(const std::string& raw) const;
};

struct Dataset {
  std::string name;
  Matrix features;  // n x d; categorical cells hold level indices
  std::vector<FeatureColumn> columns;
  std::vector<TargetColumn> targets;
  int dropped_rows = 0;  // rows removed at load time due to missing cells

  int n() const { return static_cast<int>(features.rows()); }
  int d() const { return static_cast<int>(features.cols()); }
  int m() const { return static_cast<int>(targets.size()); }

  std::vector<FeatureKind> feature_kinds() const;
  std::vector<std::string> target_names() const;
  const TargetColumn* find_target(const std::string& name) const;

  // Throws if any structural invariant is violated.
  void validate() const;
};

// Requested target: kind may be left unset for ARFF sources, where the
// attribute declaration determines it.
struct TargetSpec {
  std::string name;
  std::optional<TargetKind> kind;
};

Dataset load_csv(const std::string& path, const std::vector<TargetSpec>& target_spec);
Dataset parse_csv(const std::string& text, const std::vector<TargetSpec>& target_spec,
                  const std::string& name = "csv");
Dataset parse_arff(const std::string& text, const std::vector<TargetSpec>& target_spec);

void write_csv(const Dataset& ds, std::ostream& os);
void write_csv(const Dataset& ds, const std::string& path);

Dataset subset(const Dataset& ds, const std::vector<int>& rows);

// Raw tabular file (CSV or ARFF by extension) used by `predict`, where columns
// are matched against a trained schema instead of a target spec.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // empty cell = missing
};

RawTable read_raw_table(const std::string& path);

}  // namespace mob
