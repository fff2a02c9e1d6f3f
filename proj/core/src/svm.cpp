#include "wdbc/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace wdbc {

namespace {

// Steps smaller than this (relative) are treated as no progress.
constexpr double kStepEps = 1e-10;

// Alphas within this fraction of C from a box bound snap onto the bound.
constexpr double kBoundSnap = 1e-10;

void validate_labels(const std::vector<int>& ys) {
  for (const int y : ys) {
    if (y != 1 && y != -1) {
      throw InvalidArgument("svm: labels must be -1 or +1, got " + std::to_string(y));
    }
  }
}

// Sequentially mutated dual state for one solve.
class SmoState {
public:
  SmoState(const GramView& k, const std::vector<int>& ys, const SvmConfig& cfg,
           RngState& rng)
      : k_(k), ys_(ys), cfg_(cfg), rng_(rng), n_(ys.size()) {
    alpha_.assign(n_, 0.0);
    errors_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) errors_[i] = -ys_[i];
    max_iters_ = cfg.max_iters != 0
                     ? cfg.max_iters
                     : 10 * static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(n_);
    // Sweep at half the advertised tolerance.  A quiet sweep pins every
    // margin vector's ideal bias within sweep_tol_ of the running bias, so
    // their mean (the reported bias) moves each KKT residual by at most
    // another sweep_tol_ — together still within cfg.tol.
    sweep_tol_ = 0.5 * cfg.tol;
  }

  DualSolution run() {
    while (true) {
      const bool phase_updated = sweep_phase();
      const Vector g = recompute_margins();
      const double bias = final_bias(g);
      const double worst = max_kkt_violation(g, bias);
      if (worst <= cfg_.tol) {
        return finish(bias, /*converged=*/true);
      }
      if (iters_ >= max_iters_ || !phase_updated) {
        // Either out of budget or fully stalled (no pair can improve any
        // further, yet KKT still fails — seen with the indefinite Tanh
        // kernel).  The current iterate is the best one: every accepted
        // pair step maximizes the dual objective over its feasible
        // segment, so the objective never decreases along the way.
        return finish(bias, /*converged=*/false);
      }
      // Re-derive the error cache from the exact margins and keep going.
      for (std::size_t i = 0; i < n_; ++i) errors_[i] = g[i] + b_ - ys_[i];
    }
  }

private:
  // Full sweeps until max_passes consecutive quiet passes or the cap.
  // Returns whether any update happened during this phase.
  bool sweep_phase() {
    bool any_update = false;
    std::size_t quiet = 0;
    while (quiet < cfg_.max_passes && iters_ < max_iters_) {
      std::size_t changed = 0;
      for (std::size_t i = 0; i < n_ && iters_ < max_iters_; ++i) {
        const double r = errors_[i] * ys_[i];  // y_i f_i - 1
        const bool violates = (r < -sweep_tol_ && alpha_[i] < cfg_.C) ||
                              (r > sweep_tol_ && alpha_[i] > 0.0);
        if (violates && examine(i)) {
          ++changed;
          ++iters_;
        }
      }
      quiet = changed == 0 ? quiet + 1 : 0;
      any_update = any_update || changed > 0;
    }
    return any_update;
  }

  // Partner choice: one seeded random draw first, then a linear scan from a
  // random start so a lone productive pair cannot be missed forever.
  bool examine(std::size_t i) {
    std::size_t j = rng_.next_below(n_ - 1);
    if (j >= i) ++j;
    if (try_step(i, j)) return true;
    const std::size_t start = rng_.next_below(n_);
    for (std::size_t off = 0; off < n_; ++off) {
      std::size_t cand = start + off;
      if (cand >= n_) cand -= n_;
      if (cand == i) continue;
      if (try_step(i, cand)) return true;
    }
    return false;
  }

  bool try_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1 = alpha_[i1];
    const double a2 = alpha_[i2];
    const int y1 = ys_[i1];
    const int y2 = ys_[i2];
    const double s = y1 * y2;
    const double e1 = errors_[i1];
    const double e2 = errors_[i2];
    double lo, hi;
    if (s < 0) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(cfg_.C, cfg_.C + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - cfg_.C);
      hi = std::min(cfg_.C, a1 + a2);
    }
    if (lo >= hi) return false;

    const double k11 = k_(i1, i1);
    const double k12 = k_(i1, i2);
    const double k22 = k_(i2, i2);
    const double eta = k11 + k22 - 2.0 * k12;
    // Margins without bias, needed by the endpoint objective and b update.
    const double g1 = e1 + y1 - b_;
    const double g2 = e2 + y2 - b_;

    double a2new;
    if (eta > 0.0) {
      a2new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Along the constraint segment the objective is linear or convex, so
      // its maximum sits at an endpoint.
      const double v1 = g1 - y1 * a1 * k11 - y2 * a2 * k12;
      const double v2 = g2 - y1 * a1 * k12 - y2 * a2 * k22;
      const auto segment_objective = [&](double t2) {
        const double t1 = a1 + s * (a2 - t2);
        return t1 + t2 - 0.5 * k11 * t1 * t1 - 0.5 * k22 * t2 * t2 -
               s * k12 * t1 * t2 - y1 * t1 * v1 - y2 * t2 * v2;
      };
      const double at_lo = segment_objective(lo);
      const double at_hi = segment_objective(hi);
      if (at_lo > at_hi + kStepEps) {
        a2new = lo;
      } else if (at_hi > at_lo + kStepEps) {
        a2new = hi;
      } else {
        return false;
      }
    }
    if (std::abs(a2new - a2) < kStepEps * (a2new + a2 + kStepEps)) return false;

    // Snap to the box corners.  The paired update a1 + s*(a2 - a2new) leaves
    // roundoff residue (~1e-16) when the exact result is 0 or C, and such a
    // phantom "free" vector both skews the free-vector bias mean and blocks
    // any further pair step (its fixing move is narrower than the minimum
    // accepted step), stalling the solve short of the KKT tolerance.
    const double snap = kBoundSnap * cfg_.C;
    a2new = a2new < snap ? 0.0 : (a2new > cfg_.C - snap ? cfg_.C : a2new);
    double a1new = std::clamp(a1 + s * (a2 - a2new), 0.0, cfg_.C);
    a1new = a1new < snap ? 0.0 : (a1new > cfg_.C - snap ? cfg_.C : a1new);
    const double d1 = a1new - a1;
    const double d2 = a2new - a2;

    const double b1 = b_ - e1 - y1 * d1 * k11 - y2 * d2 * k12;
    const double b2 = b_ - e2 - y1 * d1 * k12 - y2 * d2 * k22;
    double bnew;
    if (a1new > 0.0 && a1new < cfg_.C) {
      bnew = b1;
    } else if (a2new > 0.0 && a2new < cfg_.C) {
      bnew = b2;
    } else {
      bnew = 0.5 * (b1 + b2);
    }

    const double db = bnew - b_;
    for (std::size_t m = 0; m < n_; ++m) {
      errors_[m] += y1 * d1 * k_(i1, m) + y2 * d2 * k_(i2, m) + db;
    }
    alpha_[i1] = a1new;
    alpha_[i2] = a2new;
    b_ = bnew;
    return true;
  }

  // Exact g_i = sum_j alpha_j y_j K(i,j) over the support set only.
  Vector recompute_margins() const {
    Vector g(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (alpha_[j] == 0.0) continue;
      const double w = alpha_[j] * ys_[j];
      for (std::size_t i = 0; i < n_; ++i) g[i] += w * k_(i, j);
    }
    return g;
  }

  double final_bias(const Vector& g) const {
    double sum = 0.0;
    std::size_t margin_count = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (alpha_[i] > 0.0 && alpha_[i] < cfg_.C) {
        sum += ys_[i] - g[i];
        ++margin_count;
      }
    }
    if (margin_count > 0) return sum / static_cast<double>(margin_count);
    // No margin vectors: take the midpoint of the interval the bound
    // constraints leave for b.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_; ++i) {
      const double v = ys_[i] - g[i];
      const bool at_zero = alpha_[i] == 0.0;
      if ((at_zero && ys_[i] > 0) || (!at_zero && ys_[i] < 0)) {
        lo = std::max(lo, v);
      } else {
        hi = std::min(hi, v);
      }
    }
    if (std::isinf(lo) && std::isinf(hi)) return 0.0;
    if (std::isinf(lo)) return hi;
    if (std::isinf(hi)) return lo;
    return 0.5 * (lo + hi);
  }

  double max_kkt_violation(const Vector& g, double bias) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double r = ys_[i] * (g[i] + bias);
      double v;
      if (alpha_[i] == 0.0) {
        v = std::max(0.0, 1.0 - r);
      } else if (alpha_[i] == cfg_.C) {
        v = std::max(0.0, r - 1.0);
      } else {
        v = std::abs(r - 1.0);
      }
      worst = std::max(worst, v);
    }
    return worst;
  }

  DualSolution finish(double bias, bool converged) {
    DualSolution sol;
    sol.alpha = alpha_;
    sol.bias = bias;
    sol.converged = converged;
    sol.iterations = iters_;
    sol.dual_objective = dual_objective(k_, ys_, alpha_);
    return sol;
  }

  const GramView& k_;
  const std::vector<int>& ys_;
  const SvmConfig& cfg_;
  RngState& rng_;
  std::size_t n_;
  std::uint64_t max_iters_ = 0;
  std::uint64_t iters_ = 0;
  double sweep_tol_ = 0.0;
  Vector alpha_;
  Vector errors_;  // E_i = f_i - y_i under the running bias b_
  double b_ = 0.0;
};

}  // namespace

DualSolution smo_solve(const GramView& k, const std::vector<int>& ys,
                       const SvmConfig& cfg, RngState& rng) {
  if (k.size() != ys.size()) throw LengthMismatch("smo_solve: gram/label size mismatch");
  if (ys.size() < 2) throw InvalidArgument("smo_solve: need at least 2 points");
  if (!(cfg.C > 0.0) || !(cfg.tol > 0.0)) {
    throw InvalidArgument("smo_solve: C and tol must be positive");
  }
  validate_labels(ys);
  return SmoState(k, ys, cfg, rng).run();
}

KktReport check_kkt(const GramView& k, const std::vector<int>& ys,
                    const Vector& alpha, double bias, double C) {
  const std::size_t n = ys.size();
  if (alpha.size() != n || k.size() != n) {
    throw LengthMismatch("check_kkt: size mismatch");
  }
  KktReport report;
  double net = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    net += alpha[i] * ys[i];
    if (alpha[i] < 0.0 || alpha[i] > C) report.box_feasible = false;
  }
  report.equality_residual = std::abs(net);
  for (std::size_t i = 0; i < n; ++i) {
    double f = bias;
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] != 0.0) f += alpha[j] * ys[j] * k(i, j);
    }
    const double r = ys[i] * f;
    double v;
    if (alpha[i] == 0.0) {
      v = std::max(0.0, 1.0 - r);
    } else if (alpha[i] == C) {
      v = std::max(0.0, r - 1.0);
    } else {
      v = std::abs(r - 1.0);
    }
    report.max_violation = std::max(report.max_violation, v);
  }
  return report;
}

double dual_objective(const GramView& k, const std::vector<int>& ys,
                      const Vector& alpha) {
  const std::size_t n = ys.size();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] != 0.0) active.push_back(i);
  }
  double linear = 0.0;
  double quad = 0.0;
  for (const std::size_t i : active) {
    linear += alpha[i];
    for (const std::size_t j : active) {
      quad += alpha[i] * alpha[j] * ys[i] * ys[j] * k(i, j);
    }
  }
  return linear - 0.5 * quad;
}

NoConvergence::NoConvergence(std::uint64_t iterations, SvmModel best)
    : Error("svm: iteration cap reached with KKT violations after " +
            std::to_string(iterations) + " updates"),
      iterations_(iterations),
      best_(std::move(best)) {}

SvmModel make_svm_model(const Matrix& xs, const std::vector<int>& ys,
                        const SvmConfig& cfg, const DualSolution& sol) {
  SvmModel model;
  model.kernel = cfg.kernel;
  model.C = cfg.C;
  model.config = cfg;
  model.bias = sol.bias;
  model.converged = sol.converged;
  model.iterations = sol.iterations;
  model.dual_objective = sol.dual_objective;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < sol.alpha.size(); ++i) {
    if (sol.alpha[i] > 0.0) kept.push_back(i);
  }
  model.support_vectors = Matrix(kept.size(), xs.cols());
  model.support_labels.reserve(kept.size());
  model.alphas.reserve(kept.size());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto src = xs.row(kept[r]);
    std::copy(src.begin(), src.end(), model.support_vectors.row(r).begin());
    model.support_labels.push_back(ys[kept[r]]);
    model.alphas.push_back(sol.alpha[kept[r]]);
  }
  return model;
}

SvmModel svm_train(const Matrix& xs, const std::vector<int>& ys,
                   const SvmConfig& cfg, RngState& rng) {
  if (xs.rows() != ys.size()) throw LengthMismatch("svm_train: xs/ys size mismatch");
  validate_labels(ys);
  const auto pos = std::count(ys.begin(), ys.end(), 1);
  if (pos == 0 || static_cast<std::size_t>(pos) == ys.size()) {
    throw EmptyClass("svm_train: need at least one example of each class");
  }
  const Matrix k = gram(cfg.kernel, xs);
  const DualSolution sol = smo_solve(GramView(k), ys, cfg, rng);
  SvmModel model = make_svm_model(xs, ys, cfg, sol);
  if (!sol.converged) throw NoConvergence(sol.iterations, std::move(model));
  return model;
}

double svm_decision(const SvmModel& model, std::span<const double> x) {
  if (model.support_vectors.rows() > 0 && x.size() != model.support_vectors.cols()) {
    throw DimensionMismatch("svm_decision: feature dimension mismatch");
  }
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.rows(); ++i) {
    f += model.alphas[i] * model.support_labels[i] *
         kernel_eval(model.kernel, model.support_vectors.row(i), x);
  }
  return f;
}

int svm_predict(const SvmModel& model, std::span<const double> x) {
  return svm_decision(model, x) < 0.0 ? -1 : 1;
}

}  // namespace wdbc
