// Command-line front end: inspect / compare / roc / cv.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wdbc/dataset.hpp"
#include "wdbc/errors.hpp"
#include "wdbc/experiment.hpp"

namespace {

struct CommonArgs {
  std::string data_path;
  std::uint64_t seed = 0;
  double split = 0.8;
  bool stratified = true;
  std::size_t folds = 10;
  std::size_t mc_samples = 2000;
  std::size_t threads = 1;
  bool vblr_fixed_prior = false;
  bool knn_include_self = false;
  std::uint64_t tanh_max_iters = 200000;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--data", args.data_path, "WDBC CSV file")->required();
  cmd->add_option("--seed", args.seed, "seed for the split and all solvers");
  cmd->add_option("--split", args.split, "training fraction (default 0.8)");
  cmd->add_option("--stratified", args.stratified,
                  "stratify the split by class (default true)");
  cmd->add_option("--folds", args.folds, "cross-validation fold count (default 10)");
  cmd->add_option("--mc-samples", args.mc_samples,
                  "Monte Carlo draws for the Bayesian predictor (default 2000)");
  cmd->add_option("--threads", args.threads,
                  "worker threads; reported numbers do not depend on this");
  cmd->add_flag("--vblr-fixed-prior", args.vblr_fixed_prior,
                "use the fixed-prior Bayesian variant instead of the hierarchical one");
  cmd->add_flag("--knn-train-error-includes-self", args.knn_include_self,
                "let each training point count itself as a neighbor");
  cmd->add_option("--tanh-max-iters", args.tanh_max_iters,
                  "pair-update cap for the tanh kernel (0: solver default)");
}

wdbc::ExperimentConfig to_config(const CommonArgs& args) {
  wdbc::ExperimentConfig cfg;
  cfg.data_path = args.data_path;
  cfg.seed = args.seed;
  cfg.train_fraction = args.split;
  cfg.stratified = args.stratified;
  cfg.cv_folds = args.folds;
  cfg.mc_samples = args.mc_samples;
  cfg.threads = args.threads;
  cfg.vblr_fixed_prior = args.vblr_fixed_prior;
  cfg.knn_train_error_includes_self = args.knn_include_self;
  cfg.tanh_max_iters = args.tanh_max_iters;
  return cfg;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = text.find(sep, begin);
    parts.push_back(text.substr(begin, end - begin));
    if (end == std::string::npos) break;
    begin = end + 1;
  }
  return parts;
}

double parse_grid_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw wdbc::InvalidArgument("bad number in grid: '" + s + "'");
  }
  return v;
}

long long parse_grid_int(const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw wdbc::InvalidArgument("bad integer in grid: '" + s + "'");
  }
  return v;
}

// Grid override syntax: semicolon-separated key=value-list entries, e.g.
//   svm_rbf:  C=0.1,1,10;gamma=0.01,0.1
//   svm_poly: C=1,10;d=2,3,4
//   svm_tanh: C=1;kappa_c=0.033:-1,0.001:-0.1
//   knn:      k=1,3,5,10
void apply_grid_override(const std::string& method, const std::string& spec,
                         wdbc::GridSpec& grids) {
  const bool is_svm =
      method == "svm_rbf" || method == "svm_poly" || method == "svm_tanh";
  for (const std::string& entry : split_on(spec, ';')) {
    if (entry.empty()) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos) {
      throw wdbc::InvalidArgument("grid entry '" + entry + "' is not key=values");
    }
    const std::string key = entry.substr(0, eq);
    const std::vector<std::string> values = split_on(entry.substr(eq + 1), ',');
    if (values.empty() || values.front().empty()) {
      throw wdbc::InvalidArgument("grid entry '" + entry + "' has no values");
    }
    if (key == "C" && is_svm) {
      grids.svm_c.clear();
      for (const auto& v : values) grids.svm_c.push_back(parse_grid_double(v));
    } else if (key == "gamma" && method == "svm_rbf") {
      grids.rbf_gamma.clear();
      for (const auto& v : values) grids.rbf_gamma.push_back(parse_grid_double(v));
    } else if (key == "d" && method == "svm_poly") {
      grids.poly_degree.clear();
      for (const auto& v : values) {
        grids.poly_degree.push_back(static_cast<int>(parse_grid_int(v)));
      }
    } else if (key == "kappa_c" && method == "svm_tanh") {
      grids.tanh_kappa_c.clear();
      for (const auto& v : values) {
        const std::size_t colon = v.find(':');
        if (colon == std::string::npos) {
          throw wdbc::InvalidArgument("kappa_c pair '" + v + "' is not kappa:c");
        }
        grids.tanh_kappa_c.emplace_back(parse_grid_double(v.substr(0, colon)),
                                        parse_grid_double(v.substr(colon + 1)));
      }
    } else if (key == "k" && method == "knn") {
      grids.knn_k.clear();
      for (const auto& v : values) {
        const long long k = parse_grid_int(v);
        if (k < 1) throw wdbc::InvalidArgument("k must be positive");
        grids.knn_k.push_back(static_cast<std::size_t>(k));
      }
    } else {
      throw wdbc::InvalidArgument("grid key '" + key + "' is not valid for method '" +
                                  method + "'");
    }
  }
}

std::string hyper_value_to_string(const wdbc::HyperValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[32];
          const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
          return std::string(buf, ptr);
        } else {
          return std::to_string(v);
        }
      },
      value);
}

int cmd_inspect(const std::string& path) {
  const wdbc::LabeledDataset data = wdbc::load_wdbc_file(path);
  std::printf("%zu cases, %zu B / %zu M\n", data.size(),
              data.count(wdbc::Label::Benign), data.count(wdbc::Label::Malignant));
  std::printf("%-8s %12s %12s %12s\n", "feature", "min", "mean", "max");
  for (std::size_t j = 0; j < data.features.cols(); ++j) {
    double lo = data.features(0, j);
    double hi = lo;
    double sum = 0.0;
    for (std::size_t i = 0; i < data.features.rows(); ++i) {
      const double v = data.features(i, j);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    std::printf("f%-7zu %12.6g %12.6g %12.6g\n", j + 1, lo,
                sum / static_cast<double>(data.features.rows()), hi);
  }
  return 0;
}

int cmd_compare(const CommonArgs& common, const std::string& out_dir,
                const std::vector<std::string>& methods) {
  const wdbc::LabeledDataset data = wdbc::load_wdbc_file(common.data_path);
  wdbc::ExperimentConfig cfg = to_config(common);
  cfg.out_dir = out_dir;
  const wdbc::ComparisonReport report = wdbc::run_comparison(data, cfg, methods);
  std::cout << wdbc::render_report_table(report);
  if (out_dir.empty()) {
    std::cout << wdbc::report_to_json(report);
  } else {
    wdbc::write_outputs(report);
    std::cout << "wrote "
              << (std::filesystem::path(out_dir) / "report.json").string() << "\n";
  }
  const bool any_ok =
      std::any_of(report.methods.begin(), report.methods.end(),
                  [](const wdbc::MethodResult& m) { return m.has_metrics; });
  return any_ok ? 0 : 3;
}

int cmd_roc(const CommonArgs& common, const std::string& method,
            const std::string& out_dir) {
  const wdbc::LabeledDataset data = wdbc::load_wdbc_file(common.data_path);
  const wdbc::ExperimentConfig cfg = to_config(common);
  const wdbc::ComparisonReport report = wdbc::run_comparison(data, cfg, {method});
  const wdbc::MethodResult& m = report.methods.front();
  if (!m.has_metrics) {
    std::cerr << method << " failed: " << m.status << "\n";
    return 3;
  }
  const std::string csv = wdbc::roc_to_csv(m.roc, cfg.seed, method);
  if (out_dir.empty()) {
    std::cout << csv;
  } else {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path =
        std::filesystem::path(out_dir) / ("roc_" + method + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wdbc::Error("cannot write " + path.string());
    out << csv;
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_cv(const CommonArgs& common, const std::string& method,
           const std::string& grid_spec) {
  const wdbc::LabeledDataset data = wdbc::load_wdbc_file(common.data_path);
  wdbc::ExperimentConfig cfg = to_config(common);
  if (!grid_spec.empty()) apply_grid_override(method, grid_spec, cfg.grids);
  const wdbc::CvTable table = wdbc::run_cv(data, cfg, method);
  std::printf("method: %s (%zu-fold CV on the training split, seed %llu)\n",
              table.method.c_str(), cfg.cv_folds,
              static_cast<unsigned long long>(cfg.seed));
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const wdbc::CvEntry& entry = table.entries[i];
    std::string params;
    for (const auto& [key, value] : entry.params) {
      if (!params.empty()) params += ' ';
      params += key + '=' + hyper_value_to_string(value);
    }
    std::printf("%c %-40s mean_error=%.8f\n", i == table.best_index ? '*' : ' ',
                params.c_str(), entry.mean_error);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WDBC classification toolkit"};
  app.require_subcommand(1);

  std::string inspect_data;
  CLI::App* inspect = app.add_subcommand("inspect", "summarize a WDBC CSV file");
  inspect->add_option("--data", inspect_data, "WDBC CSV file")->required();

  CommonArgs compare_args;
  std::string compare_out;
  std::vector<std::string> compare_methods;
  CLI::App* compare =
      app.add_subcommand("compare", "run the full method comparison protocol");
  add_common_options(compare, compare_args);
  compare->add_option("--out", compare_out,
                      "directory for report.json and the per-method CSV files");
  compare->add_option("--methods", compare_methods,
                      "comma-separated subset of the method list")
      ->delimiter(',');

  CommonArgs roc_args;
  std::string roc_method;
  std::string roc_out;
  CLI::App* roc = app.add_subcommand("roc", "test-split ROC curve for one method");
  add_common_options(roc, roc_args);
  roc->add_option("--method", roc_method, "method name")->required();
  roc->add_option("--out", roc_out,
                  "directory for roc_<method>.csv (default: print to stdout)");

  CommonArgs cv_args;
  std::string cv_method;
  std::string cv_grid;
  CLI::App* cv =
      app.add_subcommand("cv", "cross-validation table for one tunable method");
  add_common_options(cv, cv_args);
  cv->add_option("--method", cv_method, "method name")->required();
  cv->add_option("--grid", cv_grid,
                 "grid override, e.g. C=0.1,1;gamma=0.01,0.1 or k=1,3,5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (inspect->parsed()) return cmd_inspect(inspect_data);
    if (compare->parsed()) return cmd_compare(compare_args, compare_out, compare_methods);
    if (roc->parsed()) return cmd_roc(roc_args, roc_method, roc_out);
    if (cv->parsed()) return cmd_cv(cv_args, cv_method, cv_grid);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
