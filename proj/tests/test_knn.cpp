#include <cmath>
#include <vector>

#include <doctest.h>

#include "test_support.hpp"
#include "wdbc/errors.hpp"
#include "wdbc/knn.hpp"
#include "wdbc/rng.hpp"

using wdbc::Label;
using wdbc::Matrix;
using wdbc::RngState;
using wdbc::Vector;

namespace {

Matrix points_1d(std::initializer_list<double> values) {
  Matrix m(values.size(), 1);
  std::size_t i = 0;
  for (const double v : values) m(i++, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("nearest neighbor on a line") {
  const Matrix xs = points_1d({0.0, 1.0, 2.0, 10.0});
  const std::vector<Label> ys{Label::Benign, Label::Benign, Label::Malignant,
                              Label::Malignant};
  const wdbc::KnnModel model = wdbc::make_knn_model(xs, ys, 1);
  const Vector at_9{9.0};
  CHECK(wdbc::knn_predict(model, at_9).label == Label::Malignant);
  const Vector at_half{0.4};
  CHECK(wdbc::knn_predict(model, at_half).label == Label::Benign);
}

TEST_CASE("score is the malignant fraction of the neighbor set") {
  const Matrix xs = points_1d({0.0, 1.0, 2.0, 3.0, 4.0});
  const std::vector<Label> ys{Label::Benign, Label::Malignant, Label::Malignant,
                              Label::Benign, Label::Malignant};
  const wdbc::KnnModel model = wdbc::make_knn_model(xs, ys, 3);
  const Vector at_one{1.0};
  // Neighbors of 1.0: rows 1 (d=0), 0 and 2 (d=1, tie broken by index -> 0
  // first, then 2).  Set = {M, B, M} -> score 2/3, label Malignant.
  const wdbc::KnnPrediction pred = wdbc::knn_predict(model, at_one);
  CHECK(pred.score == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(pred.label == Label::Malignant);
}

TEST_CASE("distance ties pick the smaller training index") {
  // Rows 0 and 1 are both at distance 1 from the probe; k = 1 must take row 0.
  const Matrix xs = points_1d({-1.0, 1.0, 5.0});
  const std::vector<Label> ys{Label::Malignant, Label::Benign, Label::Benign};
  const wdbc::KnnModel model = wdbc::make_knn_model(xs, ys, 1);
  const Vector origin{0.0};
  const wdbc::KnnPrediction pred = wdbc::knn_predict(model, origin);
  CHECK(pred.label == Label::Malignant);
  CHECK(pred.score == 1.0);
}

TEST_CASE("an even vote goes Benign") {
  const Matrix xs = points_1d({-1.0, 1.0});
  const std::vector<Label> ys{Label::Malignant, Label::Benign};
  const wdbc::KnnModel model = wdbc::make_knn_model(xs, ys, 2);
  const Vector origin{0.0};
  const wdbc::KnnPrediction pred = wdbc::knn_predict(model, origin);
  CHECK(pred.score == 0.5);
  CHECK(pred.label == Label::Benign);
}

TEST_CASE("exclusion removes the row itself from the neighbor set") {
  const Matrix xs = points_1d({0.0, 0.1, 5.0});
  const std::vector<Label> ys{Label::Malignant, Label::Benign, Label::Benign};
  const wdbc::KnnModel model = wdbc::make_knn_model(xs, ys, 1);

  // Including itself, row 0 is its own nearest neighbor.
  CHECK(wdbc::knn_predict(model, xs.row(0)).label == Label::Malignant);
  // Excluded, the nearest remaining row is 1 (Benign).
  CHECK(wdbc::knn_predict(model, xs.row(0), 0).label == Label::Benign);

  // k equal to n with an exclusion shrinks the neighbor set to n - 1.
  const wdbc::KnnModel all = wdbc::make_knn_model(xs, ys, 3);
  const wdbc::KnnPrediction pred = wdbc::knn_predict(all, xs.row(2), 2);
  CHECK(pred.score == 0.5);  // {M, B} remain
  CHECK(pred.label == Label::Benign);
}

TEST_CASE("knn_select_k finds the better k and breaks ties downward") {
  RngState gen(1400);
  const wdbc::LabeledDataset data = wdbc::testing::random_blob_dataset(gen, 60, 2, 4.0);
  const wdbc::KnnSelection sel = wdbc::knn_select_k(data, {1, 3, 5}, 5, 7);
  REQUIRE(sel.mean_errors.size() == 3);
  // Well separated blobs: every candidate should do well, and best_k must
  // hold the minimum with ties resolved toward the smallest candidate.
  double best = 2.0;
  std::size_t best_k = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t k = i == 0 ? 1 : (i == 1 ? 3 : 5);
    if (sel.mean_errors[i] < best) {
      best = sel.mean_errors[i];
      best_k = k;
    }
  }
  CHECK(sel.best_k == best_k);
  CHECK(best <= 0.2);
  for (const double e : sel.mean_errors) {
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
  }
}

TEST_CASE("knn_select_k is deterministic in the seed") {
  RngState gen(1450);
  const wdbc::LabeledDataset data = wdbc::testing::random_blob_dataset(gen, 40, 3, 1.0);
  const auto a = wdbc::knn_select_k(data, {1, 3}, 4, 11);
  const auto b = wdbc::knn_select_k(data, {1, 3}, 4, 11);
  CHECK(a.best_k == b.best_k);
  CHECK(a.mean_errors == b.mean_errors);
}

TEST_CASE("input validation") {
  const Matrix xs = points_1d({0.0, 1.0});
  const std::vector<Label> ys{Label::Benign, Label::Malignant};
  CHECK_THROWS_AS(wdbc::make_knn_model(xs, ys, 0), wdbc::InvalidArgument);
  CHECK_THROWS_AS(wdbc::make_knn_model(xs, ys, 3), wdbc::InvalidArgument);
  CHECK_THROWS_AS(wdbc::make_knn_model(xs, {Label::Benign}, 1),
                  wdbc::LengthMismatch);
  const wdbc::KnnModel model = wdbc::make_knn_model(xs, ys, 1);
  const Vector wide{0.0, 0.0};
  CHECK_THROWS_AS(wdbc::knn_predict(model, wide), wdbc::DimensionMismatch);

  RngState gen(1500);
  const wdbc::LabeledDataset data = wdbc::testing::random_blob_dataset(gen, 10, 2, 1.0);
  CHECK_THROWS_AS(wdbc::knn_select_k(data, {}, 3, 0), wdbc::InvalidArgument);
  CHECK_THROWS_AS(wdbc::knn_select_k(data, {1}, 1, 0), wdbc::BadFoldCount);
}
