#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "wdbc/errors.hpp"
#include "wdbc/linalg.hpp"

namespace wdbc {

// Numerically stable 1/(1+exp(-a)); never overflows or returns NaN.
double sigmoid(double a);

// Stable ln(1+exp(a)).
double softplus(double a);

struct LogRegModel {
  Vector weights;        // bias weight first when phi = [1, features]
  double ridge = 1e-8;   // L2 stabilizer used by the fit
  std::size_t iterations = 0;
  bool converged = false;
};

// Penalized negative log likelihood and its gradient:
//   value    = -sum_i [t_i ln s_i + (1-t_i) ln(1-s_i)] + ridge/2 ||w||^2
//   gradient = sum_i (s_i - t_i) phi_i + ridge w,   s_i = sigmoid(w'phi_i).
std::pair<double, Vector> nll_grad(const Vector& w, const Matrix& phis,
                                   const std::vector<int>& ts, double ridge);

// Damped Newton-Raphson on the penalized likelihood.  Stops when the
// gradient norm falls below tol*(1+|value|) or after max_iter iterations;
// shrinks any step that would increase the objective (up to 20 halvings).
LogRegModel logreg_fit(const Matrix& phis, const std::vector<int>& ts,
                       double ridge = 1e-8, double tol = 1e-8,
                       std::size_t max_iter = 100);

double logreg_predict_proba(const LogRegModel& model, std::span<const double> phi);

}  // namespace wdbc
