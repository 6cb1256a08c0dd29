#include "pagraph/data_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "pagraph/errors.hpp"

namespace pagraph {

// --- CSV -----------------------------------------------------------------

namespace {

// One RFC-4180 record starting at pos; advances pos past the record and its
// terminator. Quoted fields may contain delimiters, newlines and "" escapes.
std::vector<std::string> read_record(const std::string& text, std::size_t& pos,
                                     char delimiter, int line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos];
    if (quoted) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field += '"';
          pos += 2;
        } else {
          quoted = false;
          ++pos;
        }
      } else {
        field += c;
        ++pos;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
      ++pos;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
      ++pos;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
      ++pos;
      fields.push_back(std::move(field));
      return fields;
    } else {
      field += c;
      ++pos;
    }
  }
  if (quoted)
    throw ParseError("csv row " + std::to_string(line_no) +
                     ": unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

double parse_number(const std::string& s, int row, const std::string& column) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end == s.c_str() || *end != '\0' || s.empty())
    throw ParseError("csv row " + std::to_string(row) + ": column '" + column +
                     "' is not numeric: '" + s + "'");
  if (!std::isfinite(v))
    throw ParseError("csv row " + std::to_string(row) + ": column '" + column +
                     "' is not finite: '" + s + "'");
  return v;
}

bool parse_index(const std::string& s, std::size_t* out) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  *out = static_cast<std::size_t>(std::strtoull(s.c_str(), nullptr, 10));
  return true;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 char delimiter, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("csv: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::size_t pos = 0;
  int row_no = 0;
  std::vector<std::string> header;
  if (has_header) {
    if (pos >= text.size()) throw ParseError("csv '" + path + "': empty file");
    header = read_record(text, pos, delimiter, ++row_no);
  }

  std::vector<std::vector<std::string>> rows;
  while (pos < text.size()) {
    auto rec = read_record(text, pos, delimiter, ++row_no);
    if (rec.size() == 1 && rec[0].empty()) continue;  // trailing blank line
    rows.push_back(std::move(rec));
  }
  if (rows.empty()) throw ParseError("csv '" + path + "': no data rows");

  const std::size_t width = has_header ? header.size() : rows.front().size();
  if (width < 2)
    throw ParseError("csv '" + path + "': need at least one feature column "
                     "plus the label column");

  std::size_t label_idx;
  if (parse_index(label_column, &label_idx)) {
    if (label_idx >= width)
      throw ParseError("csv '" + path + "': label column index " +
                       std::to_string(label_idx) + " out of range (width " +
                       std::to_string(width) + ")");
  } else {
    if (!has_header)
      throw ParseError("csv '" + path + "': label column by name ('" +
                       label_column + "') needs a header row");
    const auto it = std::find(header.begin(), header.end(), label_column);
    if (it == header.end())
      throw ParseError("csv '" + path + "': no column named '" + label_column + "'");
    label_idx = static_cast<std::size_t>(it - header.begin());
  }

  const auto n = static_cast<std::int64_t>(rows.size());
  const auto d = static_cast<std::int64_t>(width - 1);
  Dataset ds;
  ds.features = Matrix(n, d);
  std::vector<std::string> raw_labels(rows.size());

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int report_row = static_cast<int>(r) + (has_header ? 2 : 1);
    if (rows[r].size() != width)
      throw ParseError("csv row " + std::to_string(report_row) + ": has " +
                       std::to_string(rows[r].size()) + " fields, expected " +
                       std::to_string(width));
    std::int64_t f = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_idx) {
        raw_labels[r] = rows[r][c];
        continue;
      }
      const std::string col_name =
          has_header ? header[c] : "col" + std::to_string(c);
      ds.features(static_cast<std::int64_t>(r), f++) =
          parse_number(rows[r][c], report_row, col_name);
    }
  }

  // Densify label text in lexicographic order.
  std::vector<std::string> names = raw_labels;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::map<std::string, std::int32_t> dense;
  for (std::size_t i = 0; i < names.size(); ++i)
    dense[names[i]] = static_cast<std::int32_t>(i);
  ds.class_names = std::move(names);
  ds.labels.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) ds.labels[r] = dense[raw_labels[r]];
  return ds;
}

void save_csv(const std::string& path, const Dataset& ds, char delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("csv: cannot open '" + path + "' for writing");
  for (std::int64_t j = 0; j < ds.features.cols(); ++j)
    out << 'x' << j << delimiter;
  out << "label\n";
  char num[64];
  for (std::int64_t i = 0; i < ds.features.rows(); ++i) {
    for (std::int64_t j = 0; j < ds.features.cols(); ++j) {
      std::snprintf(num, sizeof num, "%.17g", ds.features(i, j));
      out << num << delimiter;
    }
    out << ds.class_names[static_cast<std::size_t>(
               ds.labels[static_cast<std::size_t>(i)])]
        << '\n';
  }
  if (!out) throw ParseError("csv: write failed for '" + path + "'");
}

// --- synthetic generators ---------------------------------------------------

SyntheticKind synthetic_kind_from_string(const std::string& name) {
  if (name == "blobs") return SyntheticKind::kBlobs;
  if (name == "two_moons") return SyntheticKind::kTwoMoons;
  if (name == "rings") return SyntheticKind::kRings;
  if (name == "smile") return SyntheticKind::kSmile;
  throw ConfigError("unknown synthetic dataset '" + name +
                    "' (expected blobs|two_moons|rings|smile)");
}

bool is_synthetic_source(const std::string& source) {
  return source == "blobs" || source == "two_moons" || source == "rings" ||
         source == "smile";
}

double synthetic_default_noise(SyntheticKind kind) {
  return kind == SyntheticKind::kBlobs ? 1.0 : 0.15;
}

Dataset make_synthetic(SyntheticKind kind, NodeId n, double noise, Rng& rng) {
  const int classes =
      (kind == SyntheticKind::kBlobs || kind == SyntheticKind::kSmile) ? 3 : 2;
  if (n < 2 * classes)
    throw std::invalid_argument("make_synthetic: need n >= " +
                                std::to_string(2 * classes));
  Dataset ds;
  ds.features = Matrix(n, 2);
  ds.labels.resize(static_cast<std::size_t>(n));
  for (int c = 0; c < classes; ++c)
    ds.class_names.push_back(std::to_string(c));

  constexpr double kTau = 2.0 * std::numbers::pi;
  std::int64_t row = 0;
  for (int c = 0; c < classes; ++c) {
    const NodeId count = n / classes + (c < n % classes ? 1 : 0);
    for (NodeId i = 0; i < count; ++i, ++row) {
      double x = 0.0, y = 0.0;
      switch (kind) {
        case SyntheticKind::kBlobs: {
          static constexpr double cx[3] = {0.0, 6.0, 3.0};
          static constexpr double cy[3] = {0.0, 0.0, 5.196};
          x = cx[c] + noise * rng.normal();
          y = cy[c] + noise * rng.normal();
          break;
        }
        case SyntheticKind::kTwoMoons: {
          const double t = rng.uniform(0.0, std::numbers::pi);
          if (c == 0) {
            x = std::cos(t);
            y = std::sin(t);
          } else {
            x = 1.0 - std::cos(t);
            y = 0.5 - std::sin(t);
          }
          x += noise * rng.normal();
          y += noise * rng.normal();
          break;
        }
        case SyntheticKind::kRings: {
          static constexpr double radius[2] = {1.0, 2.5};
          const double theta = rng.uniform(0.0, kTau);
          const double r = radius[c] + noise * rng.normal();
          x = r * std::cos(theta);
          y = r * std::sin(theta);
          break;
        }
        case SyntheticKind::kSmile: {
          if (c < 2) {  // compact eyes
            x = (c == 0 ? -1.0 : 1.0) + noise * rng.normal();
            y = 0.8 + noise * rng.normal();
          } else {  // mouth: an arc, no single mean
            const double phi = rng.uniform(std::numbers::pi + 0.6, kTau - 0.6);
            x = 2.2 * std::cos(phi) + noise * rng.normal();
            y = 2.2 * std::sin(phi) + noise * rng.normal();
          }
          break;
        }
      }
      ds.features(row, 0) = x;
      ds.features(row, 1) = y;
      ds.labels[static_cast<std::size_t>(row)] = c;
    }
  }
  return ds;
}

// --- splits -------------------------------------------------------------------

LabelAssignment make_split(const std::vector<std::int32_t>& labels,
                           const std::vector<std::string>& class_names,
                           SplitCounts counts, Rng& rng) {
  const auto n = static_cast<NodeId>(labels.size());
  const auto classes = static_cast<std::int32_t>(class_names.size());
  if (counts.train < 1)
    throw std::invalid_argument("make_split: train count must be >= 1");
  if (counts.valid < 0 || counts.test < 0)
    throw std::invalid_argument("make_split: negative split count");
  const std::int64_t want_total = static_cast<std::int64_t>(counts.train) +
                                  counts.valid + counts.test;
  if (want_total > n)
    throw std::invalid_argument("make_split: requested " +
                                std::to_string(want_total) + " nodes but only " +
                                std::to_string(n) + " exist");
  for (NodeId i = 0; i < n; ++i)
    if (labels[static_cast<std::size_t>(i)] < 0 ||
        labels[static_cast<std::size_t>(i)] >= classes)
      throw std::invalid_argument("make_split: node " + std::to_string(i) +
                                  " has no valid label");

  // Per-class pools, each in a seeded random order.
  std::vector<std::vector<NodeId>> pool(static_cast<std::size_t>(classes));
  for (NodeId i = 0; i < n; ++i)
    pool[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(i);
  for (auto& p : pool) rng.shuffle(p);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(classes), 0);

  // Draws `want` nodes: proportional per-class quotas with the remainder
  // distributed by largest fractional share, ties broken by a seeded shuffle.
  auto allocate = [&](NodeId want) {
    std::vector<NodeId> out;
    if (want == 0) return out;
    std::int64_t total_left = 0;
    std::vector<std::int64_t> left(pool.size());
    for (std::size_t c = 0; c < pool.size(); ++c) {
      left[c] = static_cast<std::int64_t>(pool[c].size() - cursor[c]);
      total_left += left[c];
    }
    std::vector<std::int64_t> quota(pool.size(), 0);
    std::int64_t assigned = 0;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      quota[c] = static_cast<std::int64_t>(want) * left[c] / total_left;
      assigned += quota[c];
    }
    std::vector<std::size_t> order(pool.size());
    for (std::size_t c = 0; c < pool.size(); ++c) order[c] = c;
    rng.shuffle(order);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return static_cast<std::int64_t>(want) * left[a] % total_left >
                              static_cast<std::int64_t>(want) * left[b] % total_left;
                     });
    std::int64_t leftover = want - assigned;
    while (leftover > 0)
      for (std::size_t c : order) {
        if (leftover == 0) break;
        if (quota[c] < left[c]) {
          ++quota[c];
          --leftover;
        }
      }
    for (std::size_t c = 0; c < pool.size(); ++c)
      for (std::int64_t k = 0; k < quota[c]; ++k)
        out.push_back(pool[c][cursor[c]++]);
    std::sort(out.begin(), out.end());
    return out;
  };

  LabelAssignment out;
  out.n = n;
  out.labels = labels;
  out.class_names = class_names;
  out.train = allocate(counts.train);
  out.valid = allocate(counts.valid);
  out.test = allocate(counts.test);
  out.validate();
  return out;
}

// --- standardization ---------------------------------------------------------

int standardize_features(Matrix& x) {
  int constant = 0;
  const auto n = static_cast<double>(x.rows());
  for (std::int64_t j = 0; j < x.cols(); ++j) {
    double mean = 0.0;
    for (std::int64_t i = 0; i < x.rows(); ++i) mean += x(i, j);
    mean /= n;
    double var = 0.0;
    for (std::int64_t i = 0; i < x.rows(); ++i) {
      const double c = x(i, j) - mean;
      var += c * c;
    }
    var /= n;
    if (var <= 1e-24 * (1.0 + mean * mean)) {
      for (std::int64_t i = 0; i < x.rows(); ++i) x(i, j) = 0.0;
      ++constant;
      continue;
    }
    const double inv_sd = 1.0 / std::sqrt(var);
    for (std::int64_t i = 0; i < x.rows(); ++i) x(i, j) = (x(i, j) - mean) * inv_sd;
  }
  return constant;
}

// --- ground-truth graphs -------------------------------------------------------

GroundTruthGraph load_ground_truth_graph(const std::string& path,
                                         std::optional<NodeId> n) {
  std::ifstream in(path);
  if (!in) throw ParseError("edge list: cannot open '" + path + "'");

  std::optional<NodeId> declared = n;
  std::vector<Edge> raw;
  std::int64_t self_loops = 0;
  NodeId max_index = -1;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = line;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream ls(t);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first[0] == '#') {
      // "# n=<count>" pins the node count; other comments are skipped.
      const auto at = line.find("n=");
      if (at != std::string::npos && !n.has_value()) {
        errno = 0;
        char* end = nullptr;
        const long long v = std::strtoll(line.c_str() + at + 2, &end, 10);
        if (errno == 0 && end != line.c_str() + at + 2 && v > 0)
          declared = static_cast<NodeId>(v);
      }
      continue;
    }
    long long a = 0, b = 0;
    std::string second, extra;
    if (!(ls >> second) || (ls >> extra))
      throw ParseError("edge list row " + std::to_string(line_no) +
                       ": expected exactly two indices, got '" + line + "'");
    errno = 0;
    char* end = nullptr;
    a = std::strtoll(first.c_str(), &end, 10);
    if (errno != 0 || *end != '\0')
      throw ParseError("edge list row " + std::to_string(line_no) +
                       ": bad index '" + first + "'");
    b = std::strtoll(second.c_str(), &end, 10);
    if (errno != 0 || *end != '\0')
      throw ParseError("edge list row " + std::to_string(line_no) +
                       ": bad index '" + second + "'");
    if (a < 0 || b < 0)
      throw ParseError("edge list row " + std::to_string(line_no) +
                       ": negative index");
    if (declared && (a >= *declared || b >= *declared))
      throw ParseError("edge list row " + std::to_string(line_no) + ": index " +
                       std::to_string(std::max(a, b)) +
                       " >= declared node count " + std::to_string(*declared));
    if (a == b) {
      ++self_loops;
      continue;
    }
    raw.push_back(make_edge(static_cast<NodeId>(a), static_cast<NodeId>(b)));
    max_index = std::max(max_index, static_cast<NodeId>(std::max(a, b)));
  }

  const NodeId node_count = declared.value_or(max_index + 1);
  if (node_count <= 0)
    throw ParseError("edge list '" + path +
                     "': no edges and no '# n=' header to fix the node count");
  const auto raw_count = static_cast<std::int64_t>(raw.size());
  EdgeSet edges(std::move(raw));

  GroundTruthGraph out;
  out.self_loops_dropped = self_loops;
  out.duplicates_merged = raw_count - static_cast<std::int64_t>(edges.size());
  out.adj = from_edge_set(node_count, edges);
  return out;
}

// --- dataset loading -------------------------------------------------------------

LoadedDataset load_dataset(const DatasetSpec& spec) {
  Dataset ds;
  if (is_synthetic_source(spec.source)) {
    const SyntheticKind kind = synthetic_kind_from_string(spec.source);
    Rng rng(spec.synth_seed);
    ds = make_synthetic(kind, spec.synth_n,
                        spec.synth_noise.value_or(synthetic_default_noise(kind)),
                        rng);
  } else {
    ds = load_csv(spec.source, spec.label_column, spec.delimiter, spec.has_header);
  }

  LoadedDataset out;
  out.constant_columns = spec.standardize ? standardize_features(ds.features) : 0;
  Rng split_rng(spec.split_seed);
  out.labels = make_split(ds.labels, ds.class_names, spec.split, split_rng);
  out.features = std::move(ds.features);
  return out;
}

}  // namespace pagraph
