#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wdbc/errors.hpp"
#include "wdbc/kernels.hpp"
#include "wdbc/linalg.hpp"
#include "wdbc/rng.hpp"

namespace wdbc {

struct SvmConfig {
  KernelSpec kernel;
  double C = 1.0;
  // A point is KKT-clean when its margin condition holds within `tol`.
  double tol = 1e-3;
  // Stop sweeping after this many consecutive full passes with no update.
  std::size_t max_passes = 10;
  // Hard cap on successful pair updates; 0 means 10*n^2.
  std::uint64_t max_iters = 0;
};

struct SvmModel {
  KernelSpec kernel;
  double C = 1.0;
  Matrix support_vectors;           // rows with alpha > 0, in training order
  std::vector<int> support_labels;  // +-1, aligned with support_vectors
  Vector alphas;                    // aligned with support_vectors
  double bias = 0.0;
  SvmConfig config;                 // echo of the training configuration
  bool converged = true;
  std::uint64_t iterations = 0;     // successful pair updates performed
  double dual_objective = 0.0;
};

// Read-only view of a kernel matrix: either a whole precomputed Gram matrix
// or the principal submatrix selected by an index list.  The viewed objects
// must outlive the view.
class GramView {
public:
  explicit GramView(const Matrix& full) : full_(&full), indices_(nullptr) {}
  GramView(const Matrix& full, const std::vector<std::size_t>& indices)
      : full_(&full), indices_(&indices) {}

  std::size_t size() const { return indices_ ? indices_->size() : full_->rows(); }
  double operator()(std::size_t i, std::size_t j) const {
    if (indices_) return (*full_)((*indices_)[i], (*indices_)[j]);
    return (*full_)(i, j);
  }

private:
  const Matrix* full_;
  const std::vector<std::size_t>* indices_;
};

// Raw output of the dual solver, before support-vector extraction.
struct DualSolution {
  Vector alpha;  // full length, zeros included
  double bias = 0.0;
  bool converged = false;
  std::uint64_t iterations = 0;
  double dual_objective = 0.0;
};

// Pairwise coordinate ascent on the soft-margin dual
//   max_a  sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K(i,j)
//   s.t.   0 <= a_i <= C,  sum_i a_i y_i = 0.
// Does not throw on hitting the iteration cap; inspect `converged`.
DualSolution smo_solve(const GramView& k, const std::vector<int>& ys,
                       const SvmConfig& cfg, RngState& rng);

// Aggregate KKT diagnostics for a dual point, used by the solver's final
// verification and exposed for external checking.
struct KktReport {
  double max_violation = 0.0;      // worst margin-condition slack over all points
  double equality_residual = 0.0;  // |sum_i alpha_i y_i|
  bool box_feasible = true;        // 0 <= alpha_i <= C for all i
};

KktReport check_kkt(const GramView& k, const std::vector<int>& ys,
                    const Vector& alpha, double bias, double C);

// Dual objective sum(a) - 1/2 a'YKYa evaluated from scratch.
double dual_objective(const GramView& k, const std::vector<int>& ys,
                      const Vector& alpha);

// Raised when the solver hits its iteration cap with KKT violations still
// present (a live possibility for the indefinite Tanh kernel).  Carries the
// best iterate so callers can keep the partial model.
class NoConvergence : public Error {
public:
  NoConvergence(std::uint64_t iterations, SvmModel best);
  std::uint64_t iterations() const { return iterations_; }
  const SvmModel& best() const { return best_; }

private:
  std::uint64_t iterations_;
  SvmModel best_;
};

// Trains on (xs, ys) with ys in {-1,+1}.  Throws EmptyClass unless both
// classes are present; throws NoConvergence as described above.
SvmModel svm_train(const Matrix& xs, const std::vector<int>& ys,
                   const SvmConfig& cfg, RngState& rng);

// Builds the retained-support-vector model from a dual solution over xs.
SvmModel make_svm_model(const Matrix& xs, const std::vector<int>& ys,
                        const SvmConfig& cfg, const DualSolution& sol);

// f(x) = sum_i alpha_i y_i k(sv_i, x) + bias.
double svm_decision(const SvmModel& model, std::span<const double> x);

// sign(f(x)) with sign(0) = +1.
int svm_predict(const SvmModel& model, std::span<const double> x);

}  // namespace wdbc
