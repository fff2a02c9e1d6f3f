#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "wdbc/experiment.hpp"
#include "wdbc/kernels.hpp"
#include "wdbc/knn.hpp"
#include "wdbc/logreg.hpp"
#include "wdbc/rng.hpp"
#include "wdbc/sampling.hpp"
#include "wdbc/svm.hpp"
#include "wdbc/vblr.hpp"

namespace {

using wdbc::KernelSpec;
using wdbc::Label;
using wdbc::Matrix;
using wdbc::RngState;
using wdbc::Vector;

Matrix random_features(std::size_t n, std::size_t p, std::uint64_t seed) {
  RngState rng(seed);
  Matrix x(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) x(i, j) = rng.next_normal();
  }
  return x;
}

std::vector<int> balanced_labels(std::size_t n) {
  std::vector<int> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = i % 2 == 0 ? 1 : -1;
  return ys;
}

// Two shifted Gaussian clouds, so the solvers face realistic overlap.
Matrix shifted_features(std::size_t n, std::size_t p, std::uint64_t seed) {
  Matrix x = random_features(n, p, seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double shift = i % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < p; ++j) x(i, j) += shift;
  }
  return x;
}

void bm_gram_rbf(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix x = random_features(n, 30, 1);
  const KernelSpec kernel = KernelSpec::rbf(0.033);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wdbc::gram(kernel, x));
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(bm_gram_rbf)->Arg(64)->Arg(128)->Arg(256)->Arg(455)->Complexity();

void bm_smo_solve(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix x = shifted_features(n, 10, 2);
  const std::vector<int> ys = balanced_labels(n);
  wdbc::SvmConfig cfg;
  cfg.kernel = KernelSpec::rbf(0.1);
  cfg.C = 1.0;
  const Matrix k = wdbc::gram(cfg.kernel, x);
  for (auto _ : state) {
    RngState rng(7);
    benchmark::DoNotOptimize(wdbc::smo_solve(wdbc::GramView(k), ys, cfg, rng));
  }
}
BENCHMARK(bm_smo_solve)->Arg(64)->Arg(128)->Arg(256);

void bm_vblr_fit_hierarchical(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix x = shifted_features(n, 10, 3);
  const Matrix phis = wdbc::make_phi(x);
  std::vector<int> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = i % 2 == 0 ? 1 : 0;
  wdbc::VblrConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wdbc::fit_hierarchical(phis, ts, cfg));
  }
}
BENCHMARK(bm_vblr_fit_hierarchical)->Arg(64)->Arg(256)->Arg(455);

void bm_logreg_fit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix x = shifted_features(n, 30, 4);
  const Matrix phis = wdbc::make_phi(x);
  std::vector<int> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = i % 2 == 0 ? 1 : 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wdbc::logreg_fit(phis, ts));
  }
}
BENCHMARK(bm_logreg_fit)->Arg(128)->Arg(455);

void bm_sample_mvn(benchmark::State& state) {
  const std::size_t p = static_cast<std::size_t>(state.range(0));
  Vector mu(p, 0.0);
  Matrix cov = Matrix::identity(p);
  for (std::size_t i = 0; i + 1 < p; ++i) {
    cov(i, i + 1) = cov(i + 1, i) = 0.2;
  }
  for (auto _ : state) {
    RngState rng(11);
    benchmark::DoNotOptimize(wdbc::sample_mvn(mu, cov, 2000, rng));
  }
}
BENCHMARK(bm_sample_mvn)->Arg(5)->Arg(31);

void bm_knn_predict(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Matrix x = shifted_features(n, 30, 5);
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = i % 2 == 0 ? Label::Malignant : Label::Benign;
  }
  const wdbc::KnnModel model = wdbc::make_knn_model(x, labels, 10);
  const Matrix probes = random_features(64, 30, 6);
  for (auto _ : state) {
    for (std::size_t i = 0; i < probes.rows(); ++i) {
      benchmark::DoNotOptimize(wdbc::knn_predict(model, probes.row(i)));
    }
  }
}
BENCHMARK(bm_knn_predict)->Arg(128)->Arg(455);

}  // namespace

BENCHMARK_MAIN();
