#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "test_support.hpp"
#include "wdbc/errors.hpp"
#include "wdbc/metrics.hpp"
#include "wdbc/rng.hpp"

using wdbc::Label;
using wdbc::RngState;

namespace {
constexpr Label M = Label::Malignant;
constexpr Label B = Label::Benign;
}  // namespace

TEST_CASE("confusion counts every quadrant") {
  const std::vector<Label> preds{M, M, B, B, M};
  const std::vector<Label> truths{M, B, B, M, M};
  const wdbc::ConfusionMatrix cm = wdbc::confusion(preds, truths);
  CHECK(cm.tp == 2);
  CHECK(cm.fp == 1);
  CHECK(cm.tn == 1);
  CHECK(cm.fn == 1);
  CHECK(cm.total() == 5);
  const auto [tpr, fpr] = wdbc::tpr_fpr(cm);
  CHECK(tpr == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(fpr == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wdbc::error_rate(preds, truths) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(wdbc::accuracy(preds, truths) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("tpr_fpr refuses a one-class truth") {
  wdbc::ConfusionMatrix no_pos;
  no_pos.tn = 3;
  no_pos.fp = 1;
  CHECK_THROWS_AS(wdbc::tpr_fpr(no_pos), wdbc::EmptyClass);
  wdbc::ConfusionMatrix no_neg;
  no_neg.tp = 2;
  no_neg.fn = 2;
  CHECK_THROWS_AS(wdbc::tpr_fpr(no_neg), wdbc::EmptyClass);
}

TEST_CASE("a hand-walked three-point curve") {
  // Scores 0.9 (M), 0.8 (B), 0.7 (M): thresholds 0.9, 0.8, 0.7.
  //   t=0.9: tpr=1/2, fpr=0;  t=0.8: tpr=1/2, fpr=1;  t=0.7: tpr=1, fpr=1.
  // AUC by trapezoids: 0.5*(0+... ) = 0.5; by pairs: of the two (M,B)
  // pairs one is ordered correctly, one is inverted.
  const std::vector<double> scores{0.9, 0.8, 0.7};
  const std::vector<Label> truths{M, B, M};
  const wdbc::RocCurve roc = wdbc::roc_curve(scores, truths);
  REQUIRE(roc.points.size() == 4);
  CHECK(roc.points[0].threshold == std::numeric_limits<double>::infinity());
  CHECK(roc.points[0].fpr == 0.0);
  CHECK(roc.points[0].tpr == 0.0);
  CHECK(roc.points[1].threshold == 0.9);
  CHECK(roc.points[1].tpr == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(roc.points[1].fpr == 0.0);
  CHECK(roc.points[2].threshold == 0.8);
  CHECK(roc.points[2].tpr == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(roc.points[2].fpr == 1.0);
  CHECK(roc.points[3].fpr == 1.0);
  CHECK(roc.points[3].tpr == 1.0);
  CHECK(roc.auc == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wdbc::auc_pair_oracle(scores, truths) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("tied scores collapse to one sweep point") {
  const std::vector<double> scores{0.6, 0.6, 0.2, 0.2};
  const std::vector<Label> truths{M, B, M, B};
  const wdbc::RocCurve roc = wdbc::roc_curve(scores, truths);
  // Distinct thresholds: +inf anchor, 0.6, 0.2.
  REQUIRE(roc.points.size() == 3);
  CHECK(roc.points[1].threshold == 0.6);
  CHECK(roc.points[1].tpr == 0.5);
  CHECK(roc.points[1].fpr == 0.5);
  CHECK(roc.points[2].tpr == 1.0);
  CHECK(roc.points[2].fpr == 1.0);
  // Every (M,B) pair is tied or split evenly: AUC = 1/2.
  CHECK(roc.auc == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("perfect and inverted rankings hit the exact endpoints") {
  const std::vector<double> scores{0.9, 0.8, 0.2, 0.1};
  const std::vector<Label> perfect{M, M, B, B};
  CHECK(wdbc::roc_curve(scores, perfect).auc == 1.0);
  CHECK(wdbc::auc_pair_oracle(scores, perfect) == 1.0);
  const std::vector<Label> inverted{B, B, M, M};
  CHECK(wdbc::roc_curve(scores, inverted).auc == 0.0);
  CHECK(wdbc::auc_pair_oracle(scores, inverted) == 0.0);
}

TEST_CASE("trapezoidal AUC equals the pair-counting value on random data") {
  RngState gen(1600);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + gen.next_below(40);
    std::vector<double> scores(n);
    std::vector<Label> truths(n);
    bool has_m = false;
    bool has_b = false;
    for (std::size_t i = 0; i < n; ++i) {
      // Quantized scores force plenty of exact ties.
      scores[i] = std::floor(gen.next_double() * 8.0) / 8.0;
      const bool malignant = gen.next_double() < 0.4;
      truths[i] = malignant ? M : B;
      (malignant ? has_m : has_b) = true;
    }
    if (!has_m) truths[0] = M;
    if (!has_b) truths[n - 1] = B;
    const wdbc::RocCurve roc = wdbc::roc_curve(scores, truths);
    const double oracle = wdbc::auc_pair_oracle(scores, truths);
    CHECK(roc.auc == doctest::Approx(oracle).epsilon(1e-12));
    // Curve shape sanity: monotone in both axes.
    for (std::size_t i = 1; i < roc.points.size(); ++i) {
      CHECK(roc.points[i].tpr >= roc.points[i - 1].tpr);
      CHECK(roc.points[i].fpr >= roc.points[i - 1].fpr);
    }
    CHECK(roc.points.front().tpr == 0.0);
    CHECK(roc.points.front().fpr == 0.0);
    CHECK(roc.points.back().tpr == 1.0);
    CHECK(roc.points.back().fpr == 1.0);
  }
}

TEST_CASE("accuracy_vs_cutoff walks the grid with >= semantics") {
  const std::vector<double> probs{0.9, 0.4, 0.1};
  const std::vector<Label> truths{M, B, B};
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto curve = wdbc::accuracy_vs_cutoff(probs, truths, grid);
  REQUIRE(curve.size() == 3);
  // cutoff 0.0: everything Malignant -> 1 of 3 correct.
  CHECK(curve[0].first == 0.0);
  CHECK(curve[0].second == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // cutoff 0.5: only 0.9 Malignant -> all correct.
  CHECK(curve[1].second == doctest::Approx(1.0).epsilon(1e-15));
  // cutoff 1.0: p >= 1 only; nothing Malignant -> 2 of 3 correct.
  CHECK(curve[2].second == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("the default cutoff grid spans [0,1] in steps of 0.01") {
  const std::vector<double> grid = wdbc::default_cutoff_grid();
  REQUIRE(grid.size() == 101);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid[50] == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] - grid[i - 1] == doctest::Approx(0.01).epsilon(1e-9));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(wdbc::confusion({M}, {M, B}), wdbc::LengthMismatch);
  CHECK_THROWS_AS(wdbc::error_rate({}, {}), wdbc::InvalidArgument);
  CHECK_THROWS_AS(wdbc::roc_curve({0.5}, {M}), wdbc::EmptyClass);
  CHECK_THROWS_AS(wdbc::roc_curve({0.5, 0.4}, {M}), wdbc::LengthMismatch);
  CHECK_THROWS_AS(wdbc::auc_pair_oracle({0.5, 0.4}, {B, B}), wdbc::EmptyClass);
  CHECK_THROWS_AS(wdbc::accuracy_vs_cutoff({}, {}, {0.5}), wdbc::InvalidArgument);
  CHECK_THROWS_AS(wdbc::accuracy_vs_cutoff({0.5}, {M}, {}), wdbc::InvalidArgument);
  CHECK_THROWS_AS(wdbc::accuracy_vs_cutoff({0.5}, {M}, {1.5}), wdbc::InvalidArgument);
}
