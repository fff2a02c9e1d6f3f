#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wdbc/dataset.hpp"
#include "wdbc/kernels.hpp"
#include "wdbc/metrics.hpp"

namespace wdbc {

// Hyperparameter grids searched by 10-fold CV on the training split.
struct GridSpec {
  std::vector<double> svm_c{0.1, 1.0, 10.0, 100.0};
  std::vector<double> rbf_gamma{0.01, 0.033, 0.1, 0.33};
  std::vector<int> poly_degree{2, 3};
  std::vector<std::pair<double, double>> tanh_kappa_c{{1.0 / 30.0, -1.0},
                                                      {0.001, -0.1}};
  std::vector<std::size_t> knn_k{1, 3, 10};
};

struct ExperimentConfig {
  std::string data_path;  // echoed into the report
  std::uint64_t seed = 0;
  double train_fraction = 0.8;
  bool stratified = true;
  std::size_t cv_folds = 10;
  std::size_t mc_samples = 2000;
  std::string out_dir;  // empty: nothing is written to disk
  GridSpec grids;
  // The comparison's Bayesian row uses the hierarchical variant unless this
  // asks for the fixed prior.
  bool vblr_fixed_prior = false;
  // KNN training error normally scores each training point without itself.
  bool knn_train_error_includes_self = false;
  // Pair-update cap for the indefinite Tanh kernel (0: solver default).
  std::uint64_t tanh_max_iters = 200000;
  // Worker threads for the per-method pipelines; results are identical for
  // any value.
  std::size_t threads = 1;
};

// Everything derived from the split that the methods share.  Holds the
// standardized feature matrices and the bias-prepended design matrices used
// by the logistic models.
struct PreparedData {
  LabeledDataset train;
  LabeledDataset test;
  Standardizer standardizer;  // fit on the training split only
  Matrix x_train;
  Matrix x_test;
  Matrix phi_train;  // [1 | x_train]
  Matrix phi_test;
  std::vector<int> y_train_pm1;
  std::vector<int> y_test_pm1;
  std::vector<int> y_train_01;
  std::vector<int> y_test_01;
};

PreparedData prepare(const LabeledDataset& data, const ExperimentConfig& cfg);

// Prepend a constant-1 column.
Matrix make_phi(const Matrix& x);

using HyperValue = std::variant<std::int64_t, double, std::string, bool>;
using HyperParams = std::vector<std::pair<std::string, HyperValue>>;

struct MethodResult {
  std::string name;
  std::string status = "ok";  // "ok" | "no_convergence" | "error: ..."
  HyperParams hyperparams;
  double train_error = 0.0;
  std::size_t train_misses = 0;
  double test_error = 0.0;
  std::size_t test_misses = 0;
  double auc = 0.0;
  double accuracy = 0.0;  // test accuracy at the default decision rule
  std::string roc_file;
  double wall_seconds = 0.0;
  bool has_metrics = true;  // false only for "error: ..." rows
  RocCurve roc;             // test-split curve
  // (cutoff, accuracy) sweep; empty for the SVM rows, whose scores are not
  // probabilities.
  std::vector<std::pair<double, double>> accuracy_curve;
};

struct ComparisonReport {
  int schema_version = 1;
  std::string library_version;
  ExperimentConfig config;
  std::vector<MethodResult> methods;  // AUC descending, failed rows last
};

// All method names understood by run_comparison / run_cv, in canonical
// order.
const std::vector<std::string>& method_names();

// The full protocol: split, standardize, per-method CV + fit + evaluation.
// Pass a subset of method_names() to restrict the run; empty means all.
ComparisonReport run_comparison(const LabeledDataset& data, const ExperimentConfig& cfg,
                                const std::vector<std::string>& only_methods = {});

// Per-configuration CV table for one tunable method ("svm_rbf", "svm_poly",
// "svm_tanh", "knn").
struct CvEntry {
  HyperParams params;
  double mean_error = 0.0;
};

struct CvTable {
  std::string method;
  std::vector<CvEntry> entries;
  std::size_t best_index = 0;
};

CvTable run_cv(const LabeledDataset& data, const ExperimentConfig& cfg,
               const std::string& method);

// Report rendering.  The JSON omits all wall-clock timing when
// include_timing is false, which is the byte-comparison form.
std::string report_to_json(const ComparisonReport& report, bool include_timing = true);

// Human-readable comparison table.
std::string render_report_table(const ComparisonReport& report);

// Writes report.json plus the per-method roc_/accuracy_ CSV files into
// config.out_dir (created if missing).
void write_outputs(const ComparisonReport& report);

// CSV renderers (also used by the roc subcommand).
std::string roc_to_csv(const RocCurve& curve, std::uint64_t seed,
                       const std::string& method);
std::string accuracy_curve_to_csv(const std::vector<std::pair<double, double>>& curve,
                                  std::uint64_t seed, const std::string& method);

}  // namespace wdbc
