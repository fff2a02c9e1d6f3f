#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wdbc/linalg.hpp"

namespace wdbc {

enum class Label : int { Benign = 0, Malignant = 1 };

// Malignant is the positive class throughout.
inline int label_to_pm1(Label l) { return l == Label::Malignant ? +1 : -1; }
inline int label_to_01(Label l) { return l == Label::Malignant ? 1 : 0; }

struct LabeledDataset {
  Matrix features;            // rows = cases
  std::vector<Label> labels;  // same length as rows
  std::vector<std::string> ids;

  std::size_t size() const { return labels.size(); }
  std::size_t count(Label l) const;
  LabeledDataset subset(const std::vector<std::size_t>& indices) const;
  std::vector<int> labels_pm1() const;
  std::vector<int> labels_01() const;
};

// WDBC CSV: one case per line, "id,diagnosis,f1,...,f30", diagnosis in {B,M},
// no header. CRLF and a trailing newline are accepted. Throws ParseError with
// a 1-based line number on malformed input.
LabeledDataset parse_wdbc(std::istream& in);
LabeledDataset parse_wdbc(const std::string& text);
LabeledDataset load_wdbc_file(const std::string& path);

// Canonical serialization in the input format (shortest round-trip decimals).
std::string serialize_wdbc(const LabeledDataset& data);

// Per-column z-scoring statistics, frozen from the rows they were fit on.
struct Standardizer {
  Vector mean;
  Vector stddev;  // sample convention (n-1 denominator)

  Matrix apply(const Matrix& features) const;
};

// Throws DegenerateColumn if any column has zero spread.
Standardizer fit_standardizer(const LabeledDataset& data);

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool stratified = true;
};

// Deterministic train/test split; train size = round(train_fraction * n).
// Stratified mode keeps each class's share within one case of proportional.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& data,
                                                const SplitSpec& spec);

// Also expose the index sets (the experiment driver needs them).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, const std::vector<Label>& labels, const SplitSpec& spec);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

// k folds partitioning 0..n-1, sizes differing by at most one.
// Throws BadFoldCount unless 2 <= k <= n.
std::vector<Fold> kfold(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace wdbc
