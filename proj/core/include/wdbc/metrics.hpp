#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wdbc/dataset.hpp"
#include "wdbc/errors.hpp"

namespace wdbc {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
};

// Malignant is the positive class throughout.
ConfusionMatrix confusion(const std::vector<Label>& preds,
                          const std::vector<Label>& truths);

// (TPR, FPR) = (TP/(TP+FN), FP/(FP+TN)); throws EmptyClass on a zero
// denominator.
std::pair<double, double> tpr_fpr(const ConfusionMatrix& cm);

double error_rate(const std::vector<Label>& preds, const std::vector<Label>& truths);
double accuracy(const std::vector<Label>& preds, const std::vector<Label>& truths);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // starts at (0,0), ends at (1,1)
  double auc = 0.0;
};

// Threshold sweep over the distinct score values descending (predict
// Malignant iff score >= threshold), one point per distinct score plus a
// (+inf, 0, 0) anchor; AUC by the trapezoidal rule, which equals the
// Mann-Whitney statistic with half credit for ties.
RocCurve roc_curve(const std::vector<double>& scores, const std::vector<Label>& truths);

// Independent AUC: (#correctly ordered (M,B) pairs + #ties/2) / (n_M n_B).
double auc_pair_oracle(const std::vector<double>& scores,
                       const std::vector<Label>& truths);

// Accuracy at each cutoff with predict-Malignant-iff-prob >= cutoff.
std::vector<std::pair<double, double>> accuracy_vs_cutoff(
    const std::vector<double>& probs, const std::vector<Label>& truths,
    const std::vector<double>& grid);

// The default cutoff sweep 0.00, 0.01, ..., 1.00.
std::vector<double> default_cutoff_grid();

}  // namespace wdbc
