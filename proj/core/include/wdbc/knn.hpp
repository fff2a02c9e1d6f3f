#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wdbc/dataset.hpp"
#include "wdbc/errors.hpp"
#include "wdbc/linalg.hpp"

namespace wdbc {

struct KnnModel {
  Matrix features;            // training rows, already standardized upstream
  std::vector<Label> labels;  // aligned with features
  std::size_t k = 1;
};

// Validates 1 <= k <= rows and matching lengths.
KnnModel make_knn_model(Matrix features, std::vector<Label> labels, std::size_t k);

struct KnnPrediction {
  Label label = Label::Benign;
  double score = 0.0;  // fraction of the neighbor set that is Malignant
};

inline constexpr std::size_t kNoExclusion = std::numeric_limits<std::size_t>::max();

// Majority vote over the k nearest training rows by Euclidean distance.
// Neighbor order is (squared distance, training index) ascending, so ties
// resolve deterministically; an even split votes Benign.  Pass a training
// index as `exclude_index` to score a training point without itself
// (leave-one-out style); the neighbor set then has min(k, n-1) members.
KnnPrediction knn_predict(const KnnModel& model, std::span<const double> x,
                          std::size_t exclude_index = kNoExclusion);

struct KnnSelection {
  std::size_t best_k = 0;
  std::vector<double> mean_errors;  // aligned with the candidate list
};

// Picks the candidate k with the lowest mean k-fold CV error (mean of the
// per-fold error rates); ties go to the smallest k.
KnnSelection knn_select_k(const LabeledDataset& data,
                          const std::vector<std::size_t>& candidate_ks,
                          std::size_t folds, std::uint64_t seed);

}  // namespace wdbc
