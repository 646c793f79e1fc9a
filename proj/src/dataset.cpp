#include "mob/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mob {

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// RFC-4180 field splitting: quoted fields, "" escapes, comma separator.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[32];
  snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ParsedColumns {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> cells;  // column-major raw strings
  int n = 0;
  int dropped = 0;
};

// Drops rows with any missing cell and transposes to column-major.
ParsedColumns collect_columns(const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows,
                              const std::vector<bool>& missing_mask_unused) {
  (void)missing_mask_unused;
  ParsedColumns pc;
  pc.names = header;
  pc.cells.resize(header.size());
  for (const auto& row : rows) {
    bool missing = false;
    for (const auto& cell : row)
      if (cell.empty()) {
        missing = true;
        break;
      }
    if (missing) {
      ++pc.dropped;
      continue;
    }
    for (size_t c = 0; c < header.size(); ++c) pc.cells[c].push_back(row[c]);
    ++pc.n;
  }
  return pc;
}

TargetColumn make_binary_target(const std::string& name, const std::vector<std::string>& raw) {
  // Numeric 0/1 columns map directly; any other two-level set maps in sorted
  // order so the coding is independent of row order.
  bool numeric01 = true;
  for (const auto& s : raw) {
    double v;
    if (!parse_double(s, v) || (v != 0.0 && v != 1.0)) {
      numeric01 = false;
      break;
    }
  }
  TargetColumn t;
  t.name = name;
  t.kind = TargetKind::BinaryClassification;
  t.values.resize(static_cast<Index>(raw.size()));
  if (numeric01) {
    for (size_t i = 0; i < raw.size(); ++i) {
      double v;
      parse_double(raw[i], v);
      t.values[static_cast<Index>(i)] = v;
    }
    return t;
  }
  std::set<std::string> levels(raw.begin(), raw.end());
  if (levels.size() > 2)
    throw std::runtime_error("target '" + name + "' is not binary: " +
                             std::to_string(levels.size()) + " distinct values");
  const std::string& one = *levels.rbegin();
  for (size_t i = 0; i < raw.size(); ++i)
    t.values[static_cast<Index>(i)] = raw[i] == one ? 1.0 : 0.0;
  return t;
}

TargetColumn make_regression_target(const std::string& name, const std::vector<std::string>& raw) {
  TargetColumn t;
  t.name = name;
  t.kind = TargetKind::Regression;
  t.values.resize(static_cast<Index>(raw.size()));
  for (size_t i = 0; i < raw.size(); ++i) {
    double v;
    if (!parse_double(raw[i], v) || !std::isfinite(v))
      throw std::runtime_error("target '" + name + "' has non-numeric value '" + raw[i] + "'");
    t.values[static_cast<Index>(i)] = v;
  }
  return t;
}

FeatureColumn make_feature(const std::string& name, const std::vector<std::string>& raw,
                           std::vector<double>& encoded) {
  FeatureColumn col;
  col.name = name;
  bool numeric = true;
  encoded.resize(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    double v;
    if (!parse_double(raw[i], v) || !std::isfinite(v)) {
      numeric = false;
      break;
    }
    encoded[i] = v;
  }
  if (numeric) return col;

  col.kind = FeatureKind::Categorical;
  std::map<std::string, int> index;  // first-appearance order
  for (size_t i = 0; i < raw.size(); ++i) {
    auto it = index.find(raw[i]);
    if (it == index.end()) {
      it = index.emplace(raw[i], static_cast<int>(col.levels.size())).first;
      col.levels.push_back(raw[i]);
    }
    encoded[i] = it->second;
  }
  return col;
}

}  // namespace

double FeatureColumn::encode(const std::string& raw) const {
  if (kind == FeatureKind::Numeric) {
    double v;
    if (!parse_double(raw, v))
      throw std::runtime_error("column '" + name + "': expected numeric value, got '" + raw + "'");
    return v;
  }
  for (size_t i = 0; i < levels.size(); ++i)
    if (levels[i] == raw) return static_cast<double>(i);
  return static_cast<double>(levels.size());
}

std::vector<FeatureKind> Dataset::feature_kinds() const {
  std::vector<FeatureKind> kinds;
  kinds.reserve(columns.size());
  for (const auto& c : columns) kinds.push_back(c.kind);
  return kinds;
}

std::vector<std::string> Dataset::target_names() const {
  std::vector<std::string> names;
  names.reserve(targets.size());
  for (const auto& t : targets) names.push_back(t.name);
  return names;
}

const TargetColumn* Dataset::find_target(const std::string& tname) const {
  for (const auto& t : targets)
    if (t.name == tname) return &t;
  return nullptr;
}

void Dataset::validate() const {
  if (n() < 1) throw std::runtime_error("dataset '" + name + "' is empty");
  if (m() < 1) throw std::runtime_error("dataset '" + name + "' has no targets");
  if (static_cast<int>(columns.size()) != d())
    throw std::runtime_error("dataset: column metadata/matrix mismatch");
  for (const auto& t : targets) {
    if (t.values.size() != features.rows())
      throw std::runtime_error("target '" + t.name + "' length mismatch");
    if (t.kind == TargetKind::BinaryClassification) {
      for (Index i = 0; i < t.values.size(); ++i)
        if (t.values[i] != 0.0 && t.values[i] != 1.0)
          throw std::runtime_error("target '" + t.name + "' has non-binary value");
    } else {
      if (!t.values.allFinite())
        throw std::runtime_error("target '" + t.name + "' has non-finite value");
    }
  }
}

Dataset parse_csv(const std::string& text, const std::vector<TargetSpec>& target_spec,
                  const std::string& name) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: empty file");
  const std::vector<std::string> header = split_csv_line(line);

  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("csv: row with " + std::to_string(fields.size()) +
                               " fields, expected " + std::to_string(header.size()));
    rows.push_back(std::move(fields));
  }

  ParsedColumns pc = collect_columns(header, rows, {});
  if (pc.n == 0) throw std::runtime_error("csv: no rows left after dropping missing values");

  std::vector<bool> is_target(header.size(), false);
  std::vector<int> target_col(target_spec.size(), -1);
  for (size_t s = 0; s < target_spec.size(); ++s) {
    for (size_t c = 0; c < header.size(); ++c)
      if (header[c] == target_spec[s].name) target_col[s] = static_cast<int>(c);
    if (target_col[s] < 0)
      throw std::runtime_error("csv: unknown target name '" + target_spec[s].name + "'");
    is_target[static_cast<size_t>(target_col[s])] = true;
  }

  Dataset ds;
  ds.name = name;
  ds.dropped_rows = pc.dropped;
  for (size_t s = 0; s < target_spec.size(); ++s) {
    const auto& spec = target_spec[s];
    if (!spec.kind)
      throw std::runtime_error("csv: target '" + spec.name + "' needs an explicit kind");
    const auto& raw = pc.cells[static_cast<size_t>(target_col[s])];
    ds.targets.push_back(*spec.kind == TargetKind::BinaryClassification
                             ? make_binary_target(spec.name, raw)
                             : make_regression_target(spec.name, raw));
  }

  std::vector<std::vector<double>> feature_cols;
  for (size_t c = 0; c < header.size(); ++c) {
    if (is_target[c]) continue;
    std::vector<double> encoded;
    ds.columns.push_back(make_feature(header[c], pc.cells[c], encoded));
    feature_cols.push_back(std::move(encoded));
  }

  ds.features.resize(pc.n, static_cast<Index>(feature_cols.size()));
  for (size_t c = 0; c < feature_cols.size(); ++c)
    for (int i = 0; i < pc.n; ++i) ds.features(i, static_cast<Index>(c)) = feature_cols[c][static_cast<size_t>(i)];

  ds.validate();
  return ds;
}

Dataset load_csv(const std::string& path, const std::vector<TargetSpec>& target_spec) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string base = path;
  if (auto pos = base.find_last_of("/\\"); pos != std::string::npos) base = base.substr(pos + 1);
  return parse_csv(ss.str(), target_spec, base);
}

namespace {

struct ArffAttribute {
  std::string name;
  bool numeric = false;
  std::vector<std::string> levels;  // nominal levels, declaration order
};

// Attribute name or nominal level, optionally quoted with ' or ".
std::string read_token(const std::string& s, size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos >= s.size()) return "";
  if (s[pos] == '\'' || s[pos] == '"') {
    const char q = s[pos++];
    std::string out;
    while (pos < s.size() && s[pos] != q) out += s[pos++];
    if (pos < s.size()) ++pos;
    return out;
  }
  std::string out;
  while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) out += s[pos++];
  return out;
}

ArffAttribute parse_attribute(const std::string& decl) {
  size_t pos = 0;
  ArffAttribute attr;
  attr.name = read_token(decl, pos);
  if (attr.name.empty()) throw std::runtime_error("arff: attribute without a name");
  while (pos < decl.size() && std::isspace(static_cast<unsigned char>(decl[pos]))) ++pos;
  if (pos >= decl.size()) throw std::runtime_error("arff: attribute '" + attr.name + "' without a type");
  if (decl[pos] == '{') {
    ++pos;
    const size_t close = decl.find('}', pos);
    if (close == std::string::npos)
      throw std::runtime_error("arff: unterminated nominal specification for '" + attr.name + "'");
    std::string body = decl.substr(pos, close - pos);
    for (auto& level : split_csv_line(body)) {
      level = trim(level);
      if (!level.empty() && (level.front() == '\'' || level.front() == '"') &&
          level.size() >= 2 && level.back() == level.front())
        level = level.substr(1, level.size() - 2);
      attr.levels.push_back(level);
    }
    if (attr.levels.empty())
      throw std::runtime_error("arff: nominal attribute '" + attr.name + "' with no levels");
    return attr;
  }
  const std::string type = lower(read_token(decl, pos));
  if (type == "numeric" || type == "real" || type == "integer") {
    attr.numeric = true;
    return attr;
  }
  throw std::runtime_error("arff: unsupported attribute type '" + type + "' for '" + attr.name + "'");
}

}  // namespace

Dataset parse_arff(const std::string& text, const std::vector<TargetSpec>& target_spec) {
  std::istringstream is(text);
  std::string line;
  std::string relation;
  std::vector<ArffAttribute> attrs;
  bool in_data = false;
  std::vector<std::vector<std::string>> rows;

  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '%') continue;
    if (!in_data) {
      const std::string low = lower(line);
      if (low.rfind("@relation", 0) == 0) {
        size_t pos = 9;
        relation = read_token(line, pos);
      } else if (low.rfind("@attribute", 0) == 0) {
        attrs.push_back(parse_attribute(line.substr(10)));
      } else if (low.rfind("@data", 0) == 0) {
        in_data = true;
      } else {
        throw std::runtime_error("arff: unexpected line in header: " + line);
      }
      continue;
    }
    if (line[0] == '{')
      throw std::runtime_error("arff: sparse data rows are not supported");
    auto fields = split_csv_line(line);
    if (fields.size() != attrs.size())
      throw std::runtime_error("arff: data row with " + std::to_string(fields.size()) +
                               " values, expected " + std::to_string(attrs.size()));
    for (auto& f : fields) {
      f = trim(f);
      if (!f.empty() && (f.front() == '\'' || f.front() == '"') && f.size() >= 2 &&
          f.back() == f.front())
        f = f.substr(1, f.size() - 2);
      if (f == "?") f = "";  // missing
    }
    rows.push_back(std::move(fields));
  }
  if (!in_data) throw std::runtime_error("arff: missing @data section");
  if (attrs.empty()) throw std::runtime_error("arff: no attributes declared");

  std::vector<std::string> header;
  header.reserve(attrs.size());
  for (const auto& a : attrs) header.push_back(a.name);
  ParsedColumns pc = collect_columns(header, rows, {});
  if (pc.n == 0) throw std::runtime_error("arff: no rows left after dropping missing values");

  std::vector<int> attr_of_target(target_spec.size(), -1);
  std::vector<bool> is_target(attrs.size(), false);
  for (size_t s = 0; s < target_spec.size(); ++s) {
    for (size_t a = 0; a < attrs.size(); ++a)
      if (attrs[a].name == target_spec[s].name) attr_of_target[s] = static_cast<int>(a);
    if (attr_of_target[s] < 0)
      throw std::runtime_error("arff: unknown target name '" + target_spec[s].name + "'");
    is_target[static_cast<size_t>(attr_of_target[s])] = true;
  }

  Dataset ds;
  ds.name = relation.empty() ? "arff" : relation;
  ds.dropped_rows = pc.dropped;

  for (size_t s = 0; s < target_spec.size(); ++s) {
    const auto& attr = attrs[static_cast<size_t>(attr_of_target[s])];
    const auto& raw = pc.cells[static_cast<size_t>(attr_of_target[s])];
    TargetKind kind;
    if (attr.numeric) {
      kind = TargetKind::Regression;
    } else {
      std::set<std::string> levels(attr.levels.begin(), attr.levels.end());
      if (levels != std::set<std::string>{"0", "1"})
        throw std::runtime_error("arff: nominal target '" + attr.name +
                                 "' must have levels {0,1}");
      kind = TargetKind::BinaryClassification;
    }
    if (target_spec[s].kind && *target_spec[s].kind != kind)
      throw std::runtime_error("arff: target '" + attr.name + "' is declared " +
                               std::string(to_string(kind)) + ", spec requested " +
                               to_string(*target_spec[s].kind));
    ds.targets.push_back(kind == TargetKind::BinaryClassification
                             ? make_binary_target(attr.name, raw)
                             : make_regression_target(attr.name, raw));
  }

  std::vector<std::vector<double>> feature_cols;
  for (size_t a = 0; a < attrs.size(); ++a) {
    if (is_target[a]) continue;
    const auto& attr = attrs[a];
    const auto& raw = pc.cells[a];
    FeatureColumn col;
    col.name = attr.name;
    std::vector<double> encoded(raw.size());
    if (attr.numeric) {
      for (size_t i = 0; i < raw.size(); ++i) {
        double v;
        if (!parse_double(raw[i], v) || !std::isfinite(v))
          throw std::runtime_error("arff: non-numeric value '" + raw[i] + "' in numeric attribute '" +
                                   attr.name + "'");
        encoded[i] = v;
      }
    } else {
      col.kind = FeatureKind::Categorical;
      col.levels = attr.levels;
      for (size_t i = 0; i < raw.size(); ++i) {
        auto it = std::find(attr.levels.begin(), attr.levels.end(), raw[i]);
        if (it == attr.levels.end())
          throw std::runtime_error("arff: undeclared level '" + raw[i] + "' in attribute '" +
                                   attr.name + "'");
        encoded[i] = static_cast<double>(it - attr.levels.begin());
      }
    }
    ds.columns.push_back(std::move(col));
    feature_cols.push_back(std::move(encoded));
  }

  ds.features.resize(pc.n, static_cast<Index>(feature_cols.size()));
  for (size_t c = 0; c < feature_cols.size(); ++c)
    for (int i = 0; i < pc.n; ++i) ds.features(i, static_cast<Index>(c)) = feature_cols[c][static_cast<size_t>(i)];

  ds.validate();
  return ds;
}

void write_csv(const Dataset& ds, std::ostream& os) {
  bool first = true;
  for (const auto& c : ds.columns) {
    if (!first) os << ',';
    os << csv_escape(c.name);
    first = false;
  }
  for (const auto& t : ds.targets) {
    if (!first) os << ',';
    os << csv_escape(t.name);
    first = false;
  }
  os << '\n';
  for (int i = 0; i < ds.n(); ++i) {
    first = true;
    for (int c = 0; c < ds.d(); ++c) {
      if (!first) os << ',';
      first = false;
      const auto& col = ds.columns[static_cast<size_t>(c)];
      const double v = ds.features(i, c);
      if (col.kind == FeatureKind::Numeric) {
        os << format_double(v);
      } else {
        os << csv_escape(col.levels[static_cast<size_t>(v)]);
      }
    }
    for (const auto& t : ds.targets) {
      if (!first) os << ',';
      first = false;
      if (t.kind == TargetKind::BinaryClassification)
        os << (t.values[i] != 0.0 ? '1' : '0');
      else
        os << format_double(t.values[i]);
    }
    os << '\n';
  }
}

void write_csv(const Dataset& ds, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write file: " + path);
  write_csv(ds, f);
}

Dataset subset(const Dataset& ds, const std::vector<int>& rows) {
  Dataset out;
  out.name = ds.name;
  out.columns = ds.columns;
  out.dropped_rows = 0;
  out.features.resize(static_cast<Index>(rows.size()), ds.features.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.features.row(static_cast<Index>(i)) = ds.features.row(rows[i]);
  for (const auto& t : ds.targets) {
    TargetColumn tc;
    tc.name = t.name;
    tc.kind = t.kind;
    tc.values.resize(static_cast<Index>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) tc.values[static_cast<Index>(i)] = t.values[rows[i]];
    out.targets.push_back(std::move(tc));
  }
  return out;
}

RawTable read_raw_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();

  RawTable table;
  const bool arff = path.size() >= 5 && lower(path.substr(path.size() - 5)) == ".arff";
  if (!arff) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("csv: empty file");
    table.header = split_csv_line(line);
    while (std::getline(is, line)) {
      if (trim(line).empty()) continue;
      auto fields = split_csv_line(line);
      if (fields.size() != table.header.size())
        throw std::runtime_error("csv: ragged row in " + path);
      table.rows.push_back(std::move(fields));
    }
    return table;
  }

  std::istringstream is(text);
  std::string line;
  bool in_data = false;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '%') continue;
    const std::string low = lower(line);
    if (!in_data) {
      if (low.rfind("@attribute", 0) == 0) {
        table.header.push_back(parse_attribute(line.substr(10)).name);
      } else if (low.rfind("@data", 0) == 0) {
        in_data = true;
      }
      continue;
    }
    if (line[0] == '{') throw std::runtime_error("arff: sparse data rows are not supported");
    auto fields = split_csv_line(line);
    if (fields.size() != table.header.size()) throw std::runtime_error("arff: ragged row in " + path);
    for (auto& fld : fields) {
      fld = trim(fld);
      if (!fld.empty() && (fld.front() == '\'' || fld.front() == '"') && fld.size() >= 2 &&
          fld.back() == fld.front())
        fld = fld.substr(1, fld.size() - 2);
      if (fld == "?") fld = "";
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

}  // namespace mob
