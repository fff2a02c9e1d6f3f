#include "wdbc/knn.hpp"

#include <algorithm>
#include <cmath>

namespace wdbc {

KnnModel make_knn_model(Matrix features, std::vector<Label> labels, std::size_t k) {
  if (labels.size() != features.rows()) {
    throw LengthMismatch("knn: features/labels size mismatch");
  }
  if (k < 1 || k > features.rows()) {
    throw InvalidArgument("knn: need 1 <= k <= " + std::to_string(features.rows()) +
                          ", got " + std::to_string(k));
  }
  return KnnModel{std::move(features), std::move(labels), k};
}

KnnPrediction knn_predict(const KnnModel& model, std::span<const double> x,
                          std::size_t exclude_index) {
  const std::size_t n = model.features.rows();
  if (x.size() != model.features.cols()) {
    throw DimensionMismatch("knn_predict: feature dimension mismatch");
  }
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == exclude_index) continue;
    order.emplace_back(squared_distance(model.features.row(i), x), i);
  }
  const std::size_t take = std::min(model.k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                    order.end());
  std::size_t malignant = 0;
  for (std::size_t r = 0; r < take; ++r) {
    if (model.labels[order[r].second] == Label::Malignant) ++malignant;
  }
  KnnPrediction pred;
  pred.score = static_cast<double>(malignant) / static_cast<double>(take);
  pred.label = 2 * malignant > take ? Label::Malignant : Label::Benign;
  return pred;
}

KnnSelection knn_select_k(const LabeledDataset& data,
                          const std::vector<std::size_t>& candidate_ks,
                          std::size_t folds, std::uint64_t seed) {
  if (candidate_ks.empty()) throw InvalidArgument("knn_select_k: no candidates");
  const auto fold_plan = kfold(data.size(), folds, seed);

  KnnSelection selection;
  selection.mean_errors.reserve(candidate_ks.size());
  double best_error = 0.0;
  for (const std::size_t k : candidate_ks) {
    double error_sum = 0.0;
    for (const Fold& fold : fold_plan) {
      const LabeledDataset train = data.subset(fold.train);
      const KnnModel model = make_knn_model(train.features, train.labels, k);
      std::size_t misses = 0;
      for (const std::size_t vi : fold.validation) {
        if (knn_predict(model, data.features.row(vi)).label != data.labels[vi]) {
          ++misses;
        }
      }
      error_sum += static_cast<double>(misses) / static_cast<double>(fold.validation.size());
    }
    const double mean_error = error_sum / static_cast<double>(fold_plan.size());
    selection.mean_errors.push_back(mean_error);
    if (selection.best_k == 0 || mean_error < best_error ||
        (mean_error == best_error && k < selection.best_k)) {
      best_error = mean_error;
      selection.best_k = k;
    }
  }
  return selection;
}

}  // namespace wdbc
