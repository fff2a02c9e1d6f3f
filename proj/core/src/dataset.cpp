#include "wdbc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "wdbc/rng.hpp"

namespace wdbc {

namespace {

constexpr std::size_t kFeatureCount = 30;

double parse_double(const std::string& token, std::size_t line_no) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(line_no, "unparseable number '" + token + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::size_t LabeledDataset::count(Label l) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& indices) const {
  LabeledDataset out;
  out.features = Matrix(indices.size(), features.cols());
  out.labels.reserve(indices.size());
  out.ids.reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const std::size_t i = indices[r];
    const auto src = features.row(i);
    std::copy(src.begin(), src.end(), out.features.row(r).begin());
    out.labels.push_back(labels[i]);
    out.ids.push_back(ids[i]);
  }
  return out;
}

std::vector<int> LabeledDataset::labels_pm1() const {
  std::vector<int> ys(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) ys[i] = label_to_pm1(labels[i]);
  return ys;
}

std::vector<int> LabeledDataset::labels_01() const {
  std::vector<int> ts(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) ts[i] = label_to_01(labels[i]);
  return ts;
}

LabeledDataset parse_wdbc(std::istream& in) {
  std::vector<double> entries;
  LabeledDataset data;
  std::string line;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != kFeatureCount + 2) {
      throw ParseError(line_no, "expected " + std::to_string(kFeatureCount + 2) +
                                    " fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(line_no, "empty id field");
    Label label;
    if (fields[1] == "B") {
      label = Label::Benign;
    } else if (fields[1] == "M") {
      label = Label::Malignant;
    } else {
      throw ParseError(line_no, "unknown diagnosis code '" + fields[1] + "'");
    }
    for (std::size_t j = 0; j < kFeatureCount; ++j) {
      entries.push_back(parse_double(fields[2 + j], line_no));
    }
    data.ids.push_back(fields[0]);
    data.labels.push_back(label);
    ++rows;
  }
  data.features = Matrix(rows, kFeatureCount, std::move(entries));
  return data;
}

LabeledDataset parse_wdbc(const std::string& text) {
  std::istringstream in(text);
  return parse_wdbc(in);
}

LabeledDataset load_wdbc_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open file '" + path + "'");
  return parse_wdbc(in);
}

std::string serialize_wdbc(const LabeledDataset& data) {
  std::string out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += data.ids[i];
    out += data.labels[i] == Label::Malignant ? ",M" : ",B";
    for (const double v : data.features.row(i)) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

Standardizer fit_standardizer(const LabeledDataset& data) {
  const std::size_t n = data.size();
  const std::size_t p = data.features.cols();
  if (n < 2) throw InvalidArgument("fit_standardizer: need at least 2 rows");
  Standardizer s;
  s.mean.assign(p, 0.0);
  s.stddev.assign(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) s.mean[j] += data.features(i, j);
  for (double& m : s.mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double d = data.features(i, j) - s.mean[j];
      s.stddev[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    s.stddev[j] = std::sqrt(s.stddev[j] / static_cast<double>(n - 1));
    if (s.stddev[j] == 0.0) throw DegenerateColumn(j);
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& features) const {
  if (features.cols() != mean.size()) {
    throw DimensionMismatch("standardizer: column count mismatch");
  }
  Matrix out(features.rows(), features.cols());
  for (std::size_t i = 0; i < features.rows(); ++i)
    for (std::size_t j = 0; j < features.cols(); ++j)
      out(i, j) = (features(i, j) - mean[j]) / stddev[j];
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, const std::vector<Label>& labels, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw InvalidArgument("split: train_fraction must be in (0,1)");
  }
  const auto total_train =
      static_cast<std::size_t>(std::lround(spec.train_fraction * static_cast<double>(n)));
  RngState rng = RngState(spec.seed).derive("split");

  std::vector<std::size_t> train, test;
  if (!spec.stratified) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(total_train));
    test.assign(perm.begin() + static_cast<std::ptrdiff_t>(total_train), perm.end());
  } else {
    // Per-class proportional counts by largest remainder, so the total is
    // exactly round(fraction*n) and each class is within one case of its share.
    std::vector<std::vector<std::size_t>> strata(2);
    for (std::size_t i = 0; i < n; ++i) {
      strata[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    std::vector<std::size_t> take(2);
    std::vector<double> frac(2);
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < 2; ++c) {
      const double exact = spec.train_fraction * static_cast<double>(strata[c].size());
      take[c] = static_cast<std::size_t>(std::floor(exact));
      frac[c] = exact - std::floor(exact);
      assigned += take[c];
    }
    std::vector<std::size_t> order{0, 1};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t k = 0; assigned < total_train; ++k) {
      take[order[k % 2]] += 1;
      ++assigned;
    }
    for (std::size_t c = 0; c < 2; ++c) {
      rng.shuffle(strata[c]);
      for (std::size_t i = 0; i < strata[c].size(); ++i) {
        (i < take[c] ? train : test).push_back(strata[c][i]);
      }
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
  }
  return {std::move(train), std::move(test)};
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                const SplitSpec& spec) {
  const auto [train_idx, test_idx] = split_indices(data.size(), data.labels, spec);
  return {data.subset(train_idx), data.subset(test_idx)};
}

std::vector<Fold> kfold(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n) {
    throw BadFoldCount("kfold: need 2 <= k <= n, got k=" + std::to_string(k) +
                       ", n=" + std::to_string(n));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  RngState rng = RngState(seed).derive("kfold");
  rng.shuffle(perm);

  std::vector<Fold> folds(k);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;  // first `extra` folds get one more
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds[f].validation.assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                               perm.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t g = 0; g < k; ++g) {
      if (g == f) continue;
      folds[f].train.insert(folds[f].train.end(), folds[g].validation.begin(),
                            folds[g].validation.end());
    }
    std::sort(folds[f].train.begin(), folds[f].train.end());
    std::sort(folds[f].validation.begin(), folds[f].validation.end());
  }
  return folds;
}

}  // namespace wdbc
