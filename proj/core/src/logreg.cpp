#include "wdbc/logreg.hpp"

#include <algorithm>
#include <cmath>

namespace wdbc {

double sigmoid(double a) {
  if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

double softplus(double a) {
  if (a > 0.0) return a + std::log1p(std::exp(-a));
  return std::log1p(std::exp(a));
}

namespace {

void validate_targets(const std::vector<int>& ts) {
  for (const int t : ts) {
    if (t != 0 && t != 1) {
      throw InvalidArgument("logreg: targets must be 0 or 1, got " + std::to_string(t));
    }
  }
}

double nll_value(const Vector& w, const Matrix& phis, const std::vector<int>& ts,
                 double ridge) {
  double value = 0.0;
  for (std::size_t i = 0; i < phis.rows(); ++i) {
    const double a = dot(w, phis.row(i));
    value += ts[i] == 1 ? softplus(-a) : softplus(a);
  }
  return value + 0.5 * ridge * dot(w, w);
}

}  // namespace

std::pair<double, Vector> nll_grad(const Vector& w, const Matrix& phis,
                                   const std::vector<int>& ts, double ridge) {
  const std::size_t n = phis.rows();
  const std::size_t p = phis.cols();
  if (ts.size() != n) throw LengthMismatch("nll_grad: phis/ts size mismatch");
  if (w.size() != p) throw DimensionMismatch("nll_grad: weight dimension mismatch");
  validate_targets(ts);
  double value = 0.0;
  Vector grad(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto phi = phis.row(i);
    const double a = dot(w, phi);
    value += ts[i] == 1 ? softplus(-a) : softplus(a);
    const double resid = sigmoid(a) - static_cast<double>(ts[i]);
    for (std::size_t j = 0; j < p; ++j) grad[j] += resid * phi[j];
  }
  value += 0.5 * ridge * dot(w, w);
  for (std::size_t j = 0; j < p; ++j) grad[j] += ridge * w[j];
  return {value, std::move(grad)};
}

LogRegModel logreg_fit(const Matrix& phis, const std::vector<int>& ts, double ridge,
                       double tol, std::size_t max_iter) {
  const std::size_t n = phis.rows();
  const std::size_t p = phis.cols();
  if (ts.size() != n) throw LengthMismatch("logreg_fit: phis/ts size mismatch");
  validate_targets(ts);
  const auto ones = std::count(ts.begin(), ts.end(), 1);
  if (ones == 0 || static_cast<std::size_t>(ones) == n) {
    throw EmptyClass("logreg_fit: need at least one example of each class");
  }
  if (ridge < 0.0) throw InvalidArgument("logreg_fit: ridge must be >= 0");

  LogRegModel model;
  model.ridge = ridge;
  model.weights.assign(p, 0.0);

  auto [value, grad] = nll_grad(model.weights, phis, ts, ridge);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    if (norm2(grad) <= tol * (1.0 + std::abs(value))) {
      model.converged = true;
      break;
    }
    // H = sum_i s_i(1-s_i) phi_i phi_i' + ridge I
    Matrix hessian(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      const auto phi = phis.row(i);
      const double s = sigmoid(dot(model.weights, phi));
      const double wgt = s * (1.0 - s);
      for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c <= r; ++c) hessian(r, c) += wgt * phi[r] * phi[c];
    }
    for (std::size_t r = 0; r < p; ++r) {
      hessian(r, r) += ridge;
      for (std::size_t c = r + 1; c < p; ++c) hessian(r, c) = hessian(c, r);
    }
    Vector direction;
    try {
      Vector neg_grad(p);
      for (std::size_t j = 0; j < p; ++j) neg_grad[j] = -grad[j];
      direction = solve_spd(hessian, neg_grad);
    } catch (const NotPositiveDefinite&) {
      throw SingularHessian("logreg_fit: Newton system not solvable (ridge " +
                            std::to_string(ridge) + ")");
    }
    // Step halving: accept the first step that does not increase the value.
    double step = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 20; ++halving) {
      Vector trial(p);
      for (std::size_t j = 0; j < p; ++j) trial[j] = model.weights[j] + step * direction[j];
      const double trial_value = nll_value(trial, phis, ts, ridge);
      if (trial_value <= value) {
        model.weights = std::move(trial);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    model.iterations = iter + 1;
    if (!accepted) break;  // numerically stationary; no improving step found
    std::tie(value, grad) = nll_grad(model.weights, phis, ts, ridge);
  }
  if (!model.converged) {
    model.converged = norm2(grad) <= tol * (1.0 + std::abs(value));
  }
  return model;
}

double logreg_predict_proba(const LogRegModel& model, std::span<const double> phi) {
  if (phi.size() != model.weights.size()) {
    throw DimensionMismatch("logreg_predict_proba: dimension mismatch");
  }
  return sigmoid(dot(model.weights, phi));
}

}  // namespace wdbc
