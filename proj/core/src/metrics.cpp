#include "wdbc/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace wdbc {

ConfusionMatrix confusion(const std::vector<Label>& preds,
                          const std::vector<Label>& truths) {
  if (preds.size() != truths.size()) {
    throw LengthMismatch("confusion: preds/truths size mismatch");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool pred_m = preds[i] == Label::Malignant;
    const bool true_m = truths[i] == Label::Malignant;
    if (pred_m && true_m) ++cm.tp;
    else if (pred_m && !true_m) ++cm.fp;
    else if (!pred_m && true_m) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

std::pair<double, double> tpr_fpr(const ConfusionMatrix& cm) {
  if (cm.tp + cm.fn == 0 || cm.fp + cm.tn == 0) {
    throw EmptyClass("tpr_fpr: a class is absent from the truth labels");
  }
  const double tpr = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  const double fpr = static_cast<double>(cm.fp) / static_cast<double>(cm.fp + cm.tn);
  return {tpr, fpr};
}

double error_rate(const std::vector<Label>& preds, const std::vector<Label>& truths) {
  const ConfusionMatrix cm = confusion(preds, truths);
  if (cm.total() == 0) throw InvalidArgument("error_rate: empty input");
  return static_cast<double>(cm.fp + cm.fn) / static_cast<double>(cm.total());
}

double accuracy(const std::vector<Label>& preds, const std::vector<Label>& truths) {
  const ConfusionMatrix cm = confusion(preds, truths);
  if (cm.total() == 0) throw InvalidArgument("accuracy: empty input");
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

RocCurve roc_curve(const std::vector<double>& scores,
                   const std::vector<Label>& truths) {
  const std::size_t n = scores.size();
  if (truths.size() != n) throw LengthMismatch("roc_curve: scores/truths size mismatch");
  std::size_t positives = 0;
  for (const Label t : truths) {
    if (t == Label::Malignant) ++positives;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw EmptyClass("roc_curve: need both classes among the truths");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = 0;
  while (i < n) {
    const double threshold = scores[order[i]];
    // absorb the whole tie group at this score
    while (i < n && scores[order[i]] == threshold) {
      if (truths[order[i]] == Label::Malignant) ++tp;
      else ++fp;
      ++i;
    }
    curve.points.push_back({threshold,
                            static_cast<double>(fp) / static_cast<double>(negatives),
                            static_cast<double>(tp) / static_cast<double>(positives)});
  }

  double auc = 0.0;
  for (std::size_t p = 1; p < curve.points.size(); ++p) {
    const RocPoint& a = curve.points[p - 1];
    const RocPoint& b = curve.points[p];
    auc += (b.fpr - a.fpr) * 0.5 * (a.tpr + b.tpr);
  }
  curve.auc = auc;
  return curve;
}

double auc_pair_oracle(const std::vector<double>& scores,
                       const std::vector<Label>& truths) {
  if (scores.size() != truths.size()) {
    throw LengthMismatch("auc_pair_oracle: scores/truths size mismatch");
  }
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (truths[i] == Label::Malignant ? pos : neg).push_back(scores[i]);
  }
  if (pos.empty() || neg.empty()) {
    throw EmptyClass("auc_pair_oracle: need both classes among the truths");
  }
  double credit = 0.0;
  for (const double p : pos) {
    for (const double q : neg) {
      if (p > q) credit += 1.0;
      else if (p == q) credit += 0.5;
    }
  }
  return credit / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

std::vector<std::pair<double, double>> accuracy_vs_cutoff(
    const std::vector<double>& probs, const std::vector<Label>& truths,
    const std::vector<double>& grid) {
  if (probs.size() != truths.size()) {
    throw LengthMismatch("accuracy_vs_cutoff: probs/truths size mismatch");
  }
  if (grid.empty()) throw InvalidArgument("accuracy_vs_cutoff: empty cutoff grid");
  if (probs.empty()) throw InvalidArgument("accuracy_vs_cutoff: empty input");
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (const double cutoff : grid) {
    if (cutoff < 0.0 || cutoff > 1.0) {
      throw InvalidArgument("accuracy_vs_cutoff: cutoff outside [0,1]");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      const Label called = probs[i] >= cutoff ? Label::Malignant : Label::Benign;
      if (called == truths[i]) ++correct;
    }
    out.emplace_back(cutoff,
                     static_cast<double>(correct) / static_cast<double>(probs.size()));
  }
  return out;
}

std::vector<double> default_cutoff_grid() {
  std::vector<double> grid;
  grid.reserve(101);
  for (int i = 0; i <= 100; ++i) grid.push_back(static_cast<double>(i) / 100.0);
  return grid;
}

}  // namespace wdbc
