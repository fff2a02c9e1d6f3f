#include "wdbc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "wdbc/knn.hpp"
#include "wdbc/logreg.hpp"
#include "wdbc/rng.hpp"
#include "wdbc/svm.hpp"
#include "wdbc/vblr.hpp"

#ifndef WDBC_LIBRARY_VERSION
#define WDBC_LIBRARY_VERSION "0.0.0"
#endif

namespace wdbc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Label label_from_pm1(int y) { return y < 0 ? Label::Benign : Label::Malignant; }

Label label_from_prob(double p) {
  return p >= 0.5 ? Label::Malignant : Label::Benign;
}

void fill_error_fields(MethodResult& result, const std::vector<Label>& train_preds,
                       const std::vector<Label>& train_truth,
                       const std::vector<Label>& test_preds,
                       const std::vector<Label>& test_truth,
                       const std::vector<double>& test_scores) {
  const ConfusionMatrix train_cm = confusion(train_preds, train_truth);
  const ConfusionMatrix test_cm = confusion(test_preds, test_truth);
  result.train_misses = train_cm.fp + train_cm.fn;
  result.train_error =
      static_cast<double>(result.train_misses) / static_cast<double>(train_cm.total());
  result.test_misses = test_cm.fp + test_cm.fn;
  result.test_error =
      static_cast<double>(result.test_misses) / static_cast<double>(test_cm.total());
  result.accuracy = static_cast<double>(test_cm.tp + test_cm.tn) /
                    static_cast<double>(test_cm.total());
  result.roc = roc_curve(test_scores, test_truth);
  result.auc = result.roc.auc;
}

// ---------------------------------------------------------------------------
// SVM family
// ---------------------------------------------------------------------------

struct SvmCandidates {
  std::vector<KernelSpec> kernels;  // in grid order
  std::uint64_t max_iters = 0;      // 0: solver default
};

SvmCandidates svm_candidates(const std::string& name, const ExperimentConfig& cfg) {
  SvmCandidates cand;
  if (name == "svm_rbf") {
    for (const double g : cfg.grids.rbf_gamma) cand.kernels.push_back(KernelSpec::rbf(g));
  } else if (name == "svm_poly") {
    for (const int d : cfg.grids.poly_degree) {
      cand.kernels.push_back(KernelSpec::polynomial(d));
    }
  } else if (name == "svm_tanh") {
    for (const auto& [kappa, c] : cfg.grids.tanh_kappa_c) {
      cand.kernels.push_back(KernelSpec::tanh(kappa, c));
    }
    cand.max_iters = cfg.tanh_max_iters;
  } else {
    throw UnknownMethod("not an SVM method: " + name);
  }
  if (cand.kernels.empty() || cfg.grids.svm_c.empty()) {
    throw InvalidArgument("svm grid for " + name + " is empty");
  }
  return cand;
}

struct SvmCvOutcome {
  std::vector<std::vector<double>> errors;  // [kernel][c]
  std::size_t best_kernel = 0;
  std::size_t best_c = 0;
  double best_error = 0.0;
  std::vector<Matrix> grams;  // one per kernel candidate, over the full train split
};

// Mean k-fold CV error for every (kernel, C) pair, with the
// smaller-C-then-earlier-kernel tie rule.
SvmCvOutcome svm_cross_validate(const SvmCandidates& cand, const Matrix& x_train,
                                const std::vector<int>& y_train,
                                const ExperimentConfig& cfg, const RngState& method_rng) {
  const auto folds = kfold(x_train.rows(), cfg.cv_folds, cfg.seed);
  SvmCvOutcome out;
  out.grams.reserve(cand.kernels.size());
  bool have_best = false;
  for (std::size_t ki = 0; ki < cand.kernels.size(); ++ki) {
    out.grams.push_back(gram(cand.kernels[ki], x_train));
    const Matrix& big = out.grams.back();
    out.errors.emplace_back();
    for (std::size_t ci = 0; ci < cfg.grids.svm_c.size(); ++ci) {
      SvmConfig run_cfg;
      run_cfg.kernel = cand.kernels[ki];
      run_cfg.C = cfg.grids.svm_c[ci];
      run_cfg.max_iters = cand.max_iters;
      double error_sum = 0.0;
      for (std::size_t fi = 0; fi < folds.size(); ++fi) {
        const Fold& fold = folds[fi];
        std::vector<int> ys;
        ys.reserve(fold.train.size());
        for (const std::size_t idx : fold.train) ys.push_back(y_train[idx]);
        RngState rng = method_rng.derive("cv:k" + std::to_string(ki) + ":c" +
                                         std::to_string(ci) + ":f" + std::to_string(fi));
        const DualSolution sol = smo_solve(GramView(big, fold.train), ys, run_cfg, rng);
        std::size_t misses = 0;
        for (const std::size_t v : fold.validation) {
          double f = sol.bias;
          for (std::size_t j = 0; j < fold.train.size(); ++j) {
            if (sol.alpha[j] != 0.0) f += sol.alpha[j] * ys[j] * big(fold.train[j], v);
          }
          const int pred = f < 0.0 ? -1 : 1;
          if (pred != y_train[v]) ++misses;
        }
        error_sum +=
            static_cast<double>(misses) / static_cast<double>(fold.validation.size());
      }
      const double mean_error = error_sum / static_cast<double>(folds.size());
      out.errors[ki].push_back(mean_error);
      const double c_value = cfg.grids.svm_c[ci];
      const double best_c_value = have_best ? cfg.grids.svm_c[out.best_c] : 0.0;
      if (!have_best || mean_error < out.best_error ||
          (mean_error == out.best_error &&
           (c_value < best_c_value ||
            (c_value == best_c_value && ki < out.best_kernel)))) {
        have_best = true;
        out.best_error = mean_error;
        out.best_kernel = ki;
        out.best_c = ci;
      }
    }
  }
  return out;
}

void append_kernel_params(HyperParams& hp, const KernelSpec& kernel) {
  switch (kernel.kind) {
    case KernelKind::Linear:
      break;
    case KernelKind::Polynomial:
      hp.emplace_back("d", static_cast<std::int64_t>(kernel.degree));
      break;
    case KernelKind::Rbf:
      hp.emplace_back("gamma", kernel.gamma);
      break;
    case KernelKind::Tanh:
      hp.emplace_back("kappa", kernel.kappa);
      hp.emplace_back("c", kernel.c);
      break;
  }
}

MethodResult run_svm_method(const std::string& name, const PreparedData& prep,
                            const ExperimentConfig& cfg, const RngState& method_rng) {
  MethodResult result;
  result.name = name;
  const SvmCandidates cand = svm_candidates(name, cfg);
  const SvmCvOutcome cv =
      svm_cross_validate(cand, prep.x_train, prep.y_train_pm1, cfg, method_rng);

  SvmConfig final_cfg;
  final_cfg.kernel = cand.kernels[cv.best_kernel];
  final_cfg.C = cfg.grids.svm_c[cv.best_c];
  final_cfg.max_iters = cand.max_iters;
  RngState rng = method_rng.derive("final");
  const Matrix& big = cv.grams[cv.best_kernel];
  const DualSolution sol = smo_solve(GramView(big), prep.y_train_pm1, final_cfg, rng);
  const SvmModel model = make_svm_model(prep.x_train, prep.y_train_pm1, final_cfg, sol);
  result.status = sol.converged ? "ok" : "no_convergence";

  const std::size_t n_train = prep.train.size();
  std::vector<Label> train_preds;
  train_preds.reserve(n_train);
  for (std::size_t i = 0; i < n_train; ++i) {
    double f = sol.bias;
    for (std::size_t j = 0; j < n_train; ++j) {
      if (sol.alpha[j] != 0.0) f += sol.alpha[j] * prep.y_train_pm1[j] * big(j, i);
    }
    train_preds.push_back(label_from_pm1(f < 0.0 ? -1 : 1));
  }
  std::vector<double> test_scores;
  std::vector<Label> test_preds;
  test_scores.reserve(prep.test.size());
  for (std::size_t i = 0; i < prep.test.size(); ++i) {
    const double f = svm_decision(model, prep.x_test.row(i));
    test_scores.push_back(f);
    test_preds.push_back(label_from_pm1(f < 0.0 ? -1 : 1));
  }
  fill_error_fields(result, train_preds, prep.train.labels, test_preds,
                    prep.test.labels, test_scores);

  result.hyperparams.emplace_back("kernel", final_cfg.kernel.to_string());
  result.hyperparams.emplace_back("C", final_cfg.C);
  append_kernel_params(result.hyperparams, final_cfg.kernel);
  result.hyperparams.emplace_back("cv_mean_error", cv.best_error);
  result.hyperparams.emplace_back("support_vectors",
                                  static_cast<std::int64_t>(model.alphas.size()));
  result.roc_file = "roc_" + name + ".csv";
  return result;
}

// ---------------------------------------------------------------------------
// KNN
// ---------------------------------------------------------------------------

MethodResult run_knn_method(const PreparedData& prep, const ExperimentConfig& cfg) {
  MethodResult result;
  result.name = "knn";
  if (cfg.grids.knn_k.empty()) throw InvalidArgument("knn grid is empty");

  LabeledDataset std_train = prep.train;
  std_train.features = prep.x_train;
  const KnnSelection sel =
      knn_select_k(std_train, cfg.grids.knn_k, cfg.cv_folds, cfg.seed);
  const KnnModel model = make_knn_model(prep.x_train, prep.train.labels, sel.best_k);

  std::vector<Label> train_preds;
  train_preds.reserve(prep.train.size());
  for (std::size_t i = 0; i < prep.train.size(); ++i) {
    const std::size_t exclusion =
        cfg.knn_train_error_includes_self ? kNoExclusion : i;
    train_preds.push_back(knn_predict(model, prep.x_train.row(i), exclusion).label);
  }
  std::vector<double> test_scores;
  std::vector<Label> test_preds;
  for (std::size_t i = 0; i < prep.test.size(); ++i) {
    const KnnPrediction pred = knn_predict(model, prep.x_test.row(i));
    test_scores.push_back(pred.score);
    test_preds.push_back(pred.label);
  }
  fill_error_fields(result, train_preds, prep.train.labels, test_preds,
                    prep.test.labels, test_scores);
  result.accuracy_curve =
      accuracy_vs_cutoff(test_scores, prep.test.labels, default_cutoff_grid());

  result.hyperparams.emplace_back("k", static_cast<std::int64_t>(sel.best_k));
  for (std::size_t i = 0; i < cfg.grids.knn_k.size(); ++i) {
    result.hyperparams.emplace_back("cv_error_k=" + std::to_string(cfg.grids.knn_k[i]),
                                    sel.mean_errors[i]);
  }
  result.hyperparams.emplace_back("train_error_includes_self",
                                  cfg.knn_train_error_includes_self);
  result.roc_file = "roc_knn.csv";
  return result;
}

// ---------------------------------------------------------------------------
// Logistic regression
// ---------------------------------------------------------------------------

MethodResult run_logreg_method(const PreparedData& prep) {
  MethodResult result;
  result.name = "logreg";
  const LogRegModel model = logreg_fit(prep.phi_train, prep.y_train_01);

  std::vector<Label> train_preds;
  for (std::size_t i = 0; i < prep.train.size(); ++i) {
    train_preds.push_back(
        label_from_prob(logreg_predict_proba(model, prep.phi_train.row(i))));
  }
  std::vector<double> test_scores;
  std::vector<Label> test_preds;
  for (std::size_t i = 0; i < prep.test.size(); ++i) {
    const double p = logreg_predict_proba(model, prep.phi_test.row(i));
    test_scores.push_back(p);
    test_preds.push_back(label_from_prob(p));
  }
  fill_error_fields(result, train_preds, prep.train.labels, test_preds,
                    prep.test.labels, test_scores);
  result.accuracy_curve =
      accuracy_vs_cutoff(test_scores, prep.test.labels, default_cutoff_grid());

  result.hyperparams.emplace_back("ridge", model.ridge);
  result.hyperparams.emplace_back("newton_iterations",
                                  static_cast<std::int64_t>(model.iterations));
  result.hyperparams.emplace_back("gradient_converged", model.converged);
  result.roc_file = "roc_logreg.csv";
  return result;
}

// ---------------------------------------------------------------------------
// Variational Bayesian logistic regression
// ---------------------------------------------------------------------------

MethodResult run_vblr_method(const PreparedData& prep, const ExperimentConfig& cfg,
                             const RngState& method_rng) {
  MethodResult result;
  result.name = "vblr";
  VblrConfig vcfg;
  vcfg.mode = cfg.vblr_fixed_prior ? PriorMode::Fixed : PriorMode::Hierarchical;
  vcfg.mc_samples = cfg.mc_samples;
  vcfg.seed = cfg.seed;
  const VblrPosterior post =
      cfg.vblr_fixed_prior ? fit_fixed(prep.phi_train, prep.y_train_01, vcfg)
                           : fit_hierarchical(prep.phi_train, prep.y_train_01, vcfg);

  RngState rng = method_rng.derive("predict");
  std::vector<Label> train_preds;
  for (std::size_t i = 0; i < prep.train.size(); ++i) {
    const double p =
        predict_proba_mc(post, prep.phi_train.row(i), cfg.mc_samples, rng).mean;
    train_preds.push_back(label_from_prob(p));
  }
  std::vector<double> test_scores;
  std::vector<Label> test_preds;
  for (std::size_t i = 0; i < prep.test.size(); ++i) {
    const double p =
        predict_proba_mc(post, prep.phi_test.row(i), cfg.mc_samples, rng).mean;
    test_scores.push_back(p);
    test_preds.push_back(label_from_prob(p));
  }
  fill_error_fields(result, train_preds, prep.train.labels, test_preds,
                    prep.test.labels, test_scores);
  result.accuracy_curve =
      accuracy_vs_cutoff(test_scores, prep.test.labels, default_cutoff_grid());

  result.hyperparams.emplace_back(
      "variant", std::string(cfg.vblr_fixed_prior ? "fixed" : "hierarchical"));
  if (cfg.vblr_fixed_prior) {
    result.hyperparams.emplace_back("s0_scale", 10.0);
  } else {
    result.hyperparams.emplace_back("a0", vcfg.a0);
    result.hyperparams.emplace_back("b0", vcfg.b0);
  }
  result.hyperparams.emplace_back("xi_init", vcfg.xi_init);
  result.hyperparams.emplace_back("mc_samples",
                                  static_cast<std::int64_t>(cfg.mc_samples));
  result.hyperparams.emplace_back("em_iterations",
                                  static_cast<std::int64_t>(post.iterations));
  result.hyperparams.emplace_back("em_converged", post.converged);
  result.hyperparams.emplace_back("jitter_events",
                                  static_cast<std::int64_t>(post.jitter_events));
  result.hyperparams.emplace_back("final_bound", post.trace.back());
  result.roc_file = "roc_vblr.csv";
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// Shared preparation
// ---------------------------------------------------------------------------

Matrix make_phi(const Matrix& x) {
  Matrix phi(x.rows(), x.cols() + 1);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    phi(i, 0) = 1.0;
    for (std::size_t j = 0; j < x.cols(); ++j) phi(i, j + 1) = x(i, j);
  }
  return phi;
}

PreparedData prepare(const LabeledDataset& data, const ExperimentConfig& cfg) {
  SplitSpec spec;
  spec.train_fraction = cfg.train_fraction;
  spec.seed = cfg.seed;
  spec.stratified = cfg.stratified;
  auto [train, test] = split(data, spec);

  PreparedData prep;
  prep.standardizer = fit_standardizer(train);
  prep.x_train = prep.standardizer.apply(train.features);
  prep.x_test = prep.standardizer.apply(test.features);
  prep.phi_train = make_phi(prep.x_train);
  prep.phi_test = make_phi(prep.x_test);
  prep.y_train_pm1 = train.labels_pm1();
  prep.y_test_pm1 = test.labels_pm1();
  prep.y_train_01 = train.labels_01();
  prep.y_test_01 = test.labels_01();
  prep.train = std::move(train);
  prep.test = std::move(test);
  return prep;
}

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"svm_rbf", "svm_poly", "svm_tanh",
                                              "knn",     "logreg",   "vblr"};
  return names;
}

ComparisonReport run_comparison(const LabeledDataset& data, const ExperimentConfig& cfg,
                                const std::vector<std::string>& only_methods) {
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw InvalidArgument("run_comparison: train_fraction must be in (0,1)");
  }
  if (cfg.cv_folds < 2) throw InvalidArgument("run_comparison: need cv_folds >= 2");
  for (const std::string& m : only_methods) {
    const auto& names = method_names();
    if (std::find(names.begin(), names.end(), m) == names.end()) {
      std::string valid;
      for (const auto& n : names) valid += (valid.empty() ? "" : ", ") + n;
      throw UnknownMethod("unknown method '" + m + "' (valid: " + valid + ")");
    }
  }

  const PreparedData prep = prepare(data, cfg);
  const RngState root(cfg.seed);

  std::vector<std::string> selected;
  for (const std::string& name : method_names()) {
    if (only_methods.empty() ||
        std::find(only_methods.begin(), only_methods.end(), name) !=
            only_methods.end()) {
      selected.push_back(name);
    }
  }

  const auto run_one = [&](const std::string& name) {
    const auto start = std::chrono::steady_clock::now();
    MethodResult result;
    try {
      const RngState method_rng = root.derive("method:" + name);
      if (name == "knn") {
        result = run_knn_method(prep, cfg);
      } else if (name == "logreg") {
        result = run_logreg_method(prep);
      } else if (name == "vblr") {
        result = run_vblr_method(prep, cfg, method_rng);
      } else {
        result = run_svm_method(name, prep, cfg, method_rng);
      }
    } catch (const std::exception& e) {
      result = MethodResult{};
      result.name = name;
      result.status = std::string("error: ") + e.what();
      result.has_metrics = false;
    }
    const auto stop = std::chrono::steady_clock::now();
    result.wall_seconds = std::chrono::duration<double>(stop - start).count();
    return result;
  };

  std::vector<MethodResult> results(selected.size());
  const std::size_t workers = std::max<std::size_t>(1, cfg.threads);
  if (workers == 1 || selected.size() <= 1) {
    for (std::size_t i = 0; i < selected.size(); ++i) results[i] = run_one(selected[i]);
  } else {
    std::atomic<std::size_t> next{0};
    const auto drain = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= selected.size()) break;
        results[i] = run_one(selected[i]);
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < std::min(workers, selected.size()); ++w) {
      pool.emplace_back(drain);
    }
    drain();
    for (std::thread& t : pool) t.join();
  }

  std::sort(results.begin(), results.end(),
            [](const MethodResult& a, const MethodResult& b) {
              if (a.has_metrics != b.has_metrics) return a.has_metrics;
              if (a.auc != b.auc) return a.auc > b.auc;
              return a.name < b.name;
            });

  ComparisonReport report;
  report.library_version = WDBC_LIBRARY_VERSION;
  report.config = cfg;
  report.methods = std::move(results);
  return report;
}

CvTable run_cv(const LabeledDataset& data, const ExperimentConfig& cfg,
               const std::string& method) {
  const PreparedData prep = prepare(data, cfg);
  CvTable table;
  table.method = method;
  if (method == "knn") {
    if (cfg.grids.knn_k.empty()) throw InvalidArgument("knn grid is empty");
    LabeledDataset std_train = prep.train;
    std_train.features = prep.x_train;
    const KnnSelection sel =
        knn_select_k(std_train, cfg.grids.knn_k, cfg.cv_folds, cfg.seed);
    for (std::size_t i = 0; i < cfg.grids.knn_k.size(); ++i) {
      CvEntry entry;
      entry.params.emplace_back("k", static_cast<std::int64_t>(cfg.grids.knn_k[i]));
      entry.mean_error = sel.mean_errors[i];
      if (cfg.grids.knn_k[i] == sel.best_k) table.best_index = i;
      table.entries.push_back(std::move(entry));
    }
    return table;
  }
  if (method == "svm_rbf" || method == "svm_poly" || method == "svm_tanh") {
    const RngState method_rng = RngState(cfg.seed).derive("method:" + method);
    const SvmCandidates cand = svm_candidates(method, cfg);
    const SvmCvOutcome cv =
        svm_cross_validate(cand, prep.x_train, prep.y_train_pm1, cfg, method_rng);
    for (std::size_t ki = 0; ki < cand.kernels.size(); ++ki) {
      for (std::size_t ci = 0; ci < cfg.grids.svm_c.size(); ++ci) {
        CvEntry entry;
        entry.params.emplace_back("kernel", cand.kernels[ki].to_string());
        entry.params.emplace_back("C", cfg.grids.svm_c[ci]);
        entry.mean_error = cv.errors[ki][ci];
        if (ki == cv.best_kernel && ci == cv.best_c) {
          table.best_index = table.entries.size();
        }
        table.entries.push_back(std::move(entry));
      }
    }
    return table;
  }
  if (method == "logreg" || method == "vblr") {
    throw InvalidArgument("method '" + method + "' has no hyperparameter grid");
  }
  throw UnknownMethod("unknown method '" + method + "'");
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

ordered_json hyperparams_to_json(const HyperParams& hp) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : hp) {
    std::visit([&](const auto& v) { j[key] = v; }, value);
  }
  return j;
}

ordered_json config_to_json(const ExperimentConfig& cfg) {
  ordered_json grids;
  grids["svm_c"] = cfg.grids.svm_c;
  grids["rbf_gamma"] = cfg.grids.rbf_gamma;
  grids["poly_degree"] = cfg.grids.poly_degree;
  ordered_json tanh_pairs = ordered_json::array();
  for (const auto& [kappa, c] : cfg.grids.tanh_kappa_c) {
    tanh_pairs.push_back({kappa, c});
  }
  grids["tanh_kappa_c"] = std::move(tanh_pairs);
  grids["knn_k"] = cfg.grids.knn_k;

  ordered_json j;
  j["data"] = cfg.data_path;
  j["seed"] = cfg.seed;
  j["train_fraction"] = cfg.train_fraction;
  j["stratified"] = cfg.stratified;
  j["cv_folds"] = cfg.cv_folds;
  j["mc_samples"] = cfg.mc_samples;
  j["vblr_variant"] = cfg.vblr_fixed_prior ? "fixed" : "hierarchical";
  j["knn_train_error_includes_self"] = cfg.knn_train_error_includes_self;
  j["tanh_max_iters"] = cfg.tanh_max_iters;
  j["grids"] = std::move(grids);
  return j;
}

}  // namespace

std::string report_to_json(const ComparisonReport& report, bool include_timing) {
  ordered_json j;
  j["schema_version"] = report.schema_version;
  j["library_version"] = report.library_version;
  j["config"] = config_to_json(report.config);
  ordered_json methods = ordered_json::array();
  for (const MethodResult& m : report.methods) {
    ordered_json jm;
    jm["name"] = m.name;
    jm["status"] = m.status;
    jm["hyperparams"] = hyperparams_to_json(m.hyperparams);
    jm["train_error"] = m.train_error;
    jm["train_misses"] = m.train_misses;
    jm["test_error"] = m.test_error;
    jm["test_misses"] = m.test_misses;
    jm["auc"] = m.auc;
    jm["accuracy"] = m.accuracy;
    jm["roc_file"] = m.roc_file;
    if (include_timing) {
      jm["timing"] = ordered_json{{"wall_seconds", m.wall_seconds}};
    }
    methods.push_back(std::move(jm));
  }
  j["methods"] = std::move(methods);
  return j.dump(2) + "\n";
}

std::string render_report_table(const ComparisonReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %-16s %-22s %-22s %-10s %-10s\n", "method",
                "status", "test_error(miss)", "train_error(miss)", "auc", "accuracy");
  out += line;
  for (const MethodResult& m : report.methods) {
    if (!m.has_metrics) {
      std::snprintf(line, sizeof(line), "%-10s %s\n", m.name.c_str(),
                    m.status.c_str());
      out += line;
      continue;
    }
    char test_field[32];
    char train_field[32];
    std::snprintf(test_field, sizeof(test_field), "%.8f (%zu)", m.test_error,
                  m.test_misses);
    std::snprintf(train_field, sizeof(train_field), "%.8f (%zu)", m.train_error,
                  m.train_misses);
    std::snprintf(line, sizeof(line), "%-10s %-16s %-22s %-22s %-10.7f %-10.7f\n",
                  m.name.c_str(), m.status.c_str(), test_field, train_field, m.auc,
                  m.accuracy);
    out += line;
  }
  return out;
}

std::string roc_to_csv(const RocCurve& curve, std::uint64_t seed,
                       const std::string& method) {
  std::string out = "# seed=" + std::to_string(seed) + " method=" + method + "\n";
  out += "threshold,fpr,tpr\n";
  for (const RocPoint& p : curve.points) {
    out += format_double(p.threshold);
    out += ',';
    out += format_double(p.fpr);
    out += ',';
    out += format_double(p.tpr);
    out += '\n';
  }
  return out;
}

std::string accuracy_curve_to_csv(const std::vector<std::pair<double, double>>& curve,
                                  std::uint64_t seed, const std::string& method) {
  std::string out = "# seed=" + std::to_string(seed) + " method=" + method + "\n";
  out += "cutoff,accuracy\n";
  for (const auto& [cutoff, acc] : curve) {
    out += format_double(cutoff);
    out += ',';
    out += format_double(acc);
    out += '\n';
  }
  return out;
}

void write_outputs(const ComparisonReport& report) {
  const std::string& dir = report.config.out_dir;
  if (dir.empty()) throw InvalidArgument("write_outputs: config.out_dir is empty");
  std::filesystem::create_directories(dir);
  const auto write_file = [&](const std::string& name, const std::string& content) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
  };
  write_file("report.json", report_to_json(report, /*include_timing=*/true));
  for (const MethodResult& m : report.methods) {
    if (!m.has_metrics) continue;
    write_file(m.roc_file, roc_to_csv(m.roc, report.config.seed, m.name));
    if (!m.accuracy_curve.empty()) {
      write_file("accuracy_" + m.name + ".csv",
                 accuracy_curve_to_csv(m.accuracy_curve, report.config.seed, m.name));
    }
  }
}

}  // namespace wdbc
