#include <cmath>
#include <vector>

#include <doctest.h>

#include "test_support.hpp"
#include "wdbc/errors.hpp"
#include "wdbc/logreg.hpp"
#include "wdbc/rng.hpp"

using wdbc::Matrix;
using wdbc::RngState;
using wdbc::Vector;

TEST_CASE("sigmoid and softplus are stable at extreme arguments") {
  CHECK(wdbc::sigmoid(0.0) == 0.5);
  CHECK(wdbc::sigmoid(2.0) == doctest::Approx(0.8807970779778823).epsilon(1e-15));
  CHECK(wdbc::sigmoid(1000.0) == 1.0);
  CHECK(wdbc::sigmoid(-1000.0) == 0.0);
  CHECK(std::isfinite(wdbc::sigmoid(-1000.0)));
  CHECK(wdbc::softplus(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(wdbc::softplus(1000.0) == doctest::Approx(1000.0).epsilon(1e-15));
  CHECK(wdbc::softplus(-1000.0) == 0.0);
  // sigma(-a) = 1 - sigma(a)
  for (double a = -5.0; a <= 5.0; a += 0.37) {
    CHECK(wdbc::sigmoid(-a) == doctest::Approx(1.0 - wdbc::sigmoid(a)).epsilon(1e-12));
  }
}

TEST_CASE("objective at w = 0 is n ln 2 with gradient sum (1/2 - t) phi") {
  Matrix phis(3, 2);
  phis(0, 0) = 1.0;
  phis(0, 1) = 2.0;
  phis(1, 0) = 1.0;
  phis(1, 1) = -1.0;
  phis(2, 0) = 1.0;
  phis(2, 1) = 0.5;
  const std::vector<int> ts{1, 0, 1};
  const Vector w0{0.0, 0.0};
  const auto [value, grad] = wdbc::nll_grad(w0, phis, ts, 0.0);
  CHECK(value == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-15));
  // gradient_j = sum_i (0.5 - t_i) phi_ij
  CHECK(grad[0] == doctest::Approx((0.5 - 1) + (0.5 - 0) + (0.5 - 1)).epsilon(1e-15));
  CHECK(grad[1] ==
        doctest::Approx((0.5 - 1) * 2.0 + (0.5 - 0) * -1.0 + (0.5 - 1) * 0.5)
            .epsilon(1e-15));
}

TEST_CASE("nll value matches the direct formula at a nonzero weight") {
  Matrix phis(2, 2);
  phis(0, 0) = 1.0;
  phis(0, 1) = 1.0;
  phis(1, 0) = 1.0;
  phis(1, 1) = -2.0;
  const std::vector<int> ts{1, 0};
  const Vector w{0.3, -0.7};
  const double ridge = 0.01;
  const auto [value, grad] = wdbc::nll_grad(w, phis, ts, ridge);
  const double a0 = 0.3 - 0.7;        // w'phi_0
  const double a1 = 0.3 + 1.4;        // w'phi_1
  const double expected = -std::log(wdbc::sigmoid(a0)) -
                          std::log(1.0 - wdbc::sigmoid(a1)) +
                          0.5 * ridge * (0.09 + 0.49);
  CHECK(value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(grad.size() == 2);
}

TEST_CASE("analytic gradient matches central differences") {
  RngState gen(910);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = wdbc::testing::random_logistic_instance(gen, 4, 25, 1, 4);
    const std::size_t p = inst.phis.cols();
    Vector w(p);
    for (std::size_t j = 0; j < p; ++j) w[j] = gen.next_normal() * 0.8;
    const double ridge = trial % 3 == 0 ? 0.0 : 0.05;
    const auto [value, grad] = wdbc::nll_grad(w, inst.phis, inst.ts, ridge);
    CHECK(std::isfinite(value));
    const Vector numeric = wdbc::testing::central_difference(
        [&](const Vector& v) {
          return wdbc::nll_grad(v, inst.phis, inst.ts, ridge).first;
        },
        w, 1e-6);
    for (std::size_t j = 0; j < p; ++j) {
      const double scale = 1.0 + std::abs(numeric[j]);
      CHECK(std::abs(grad[j] - numeric[j]) / scale <= 1e-6);
    }
  }
}

TEST_CASE("the fit separates a separable instance") {
  Matrix phis(6, 2);
  const double xs[6] = {-3.0, -2.0, -1.5, 1.5, 2.0, 3.0};
  for (std::size_t i = 0; i < 6; ++i) {
    phis(i, 0) = 1.0;
    phis(i, 1) = xs[i];
  }
  const std::vector<int> ts{0, 0, 0, 1, 1, 1};
  const wdbc::LogRegModel model = wdbc::logreg_fit(phis, ts, 1e-6);
  CHECK(model.converged);
  for (std::size_t i = 0; i < 6; ++i) {
    const double p = wdbc::logreg_predict_proba(model, phis.row(i));
    CHECK((p >= 0.5 ? 1 : 0) == ts[i]);
  }
  // The slope must be positive to assign class 1 to positive x.
  CHECK(model.weights[1] > 0.0);
}

TEST_CASE("a huge ridge pins the weights near zero") {
  RngState gen(920);
  const auto inst = wdbc::testing::random_logistic_instance(gen, 10, 20, 2, 3);
  const wdbc::LogRegModel model = wdbc::logreg_fit(inst.phis, inst.ts, 1e6);
  double norm = 0.0;
  for (const double w : model.weights) norm += w * w;
  CHECK(std::sqrt(norm) <= 1e-3);
}

TEST_CASE("fit converges and annihilates the gradient on random instances") {
  RngState gen(930);
  for (int trial = 0; trial < 15; ++trial) {
    const auto inst = wdbc::testing::random_logistic_instance(gen, 8, 30, 1, 3);
    const wdbc::LogRegModel model = wdbc::logreg_fit(inst.phis, inst.ts, 1e-4);
    CHECK(model.converged);
    const auto [value, grad] =
        wdbc::nll_grad(model.weights, inst.phis, inst.ts, 1e-4);
    double gnorm = 0.0;
    for (const double g : grad) gnorm += g * g;
    CHECK(std::sqrt(gnorm) <= 1e-6 * (1.0 + std::abs(value)));
  }
}

TEST_CASE("an unpenalized duplicated column yields SingularHessian") {
  Matrix phis(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    const double v = static_cast<double>(i) - 1.5;
    phis(i, 0) = v;
    phis(i, 1) = v;  // exact copy: Hessian is rank one
  }
  const std::vector<int> ts{0, 0, 1, 1};
  CHECK_THROWS_AS(wdbc::logreg_fit(phis, ts, 0.0), wdbc::SingularHessian);
}

TEST_CASE("input validation") {
  Matrix phis(2, 1);
  phis(0, 0) = 1.0;
  phis(1, 0) = -1.0;
  CHECK_THROWS_AS(wdbc::logreg_fit(phis, {1, 1}, 1e-8), wdbc::EmptyClass);
  CHECK_THROWS_AS(wdbc::logreg_fit(phis, {0, 2}, 1e-8), wdbc::InvalidArgument);
  CHECK_THROWS_AS(wdbc::logreg_fit(phis, {0}, 1e-8), wdbc::LengthMismatch);
  CHECK_THROWS_AS(wdbc::logreg_fit(phis, {0, 1}, -1.0), wdbc::InvalidArgument);
  const Vector w{0.0};
  CHECK_THROWS_AS(wdbc::nll_grad(w, phis, {0}, 0.0), wdbc::LengthMismatch);
  const Vector w2{0.0, 0.0};
  CHECK_THROWS_AS(wdbc::nll_grad(w2, phis, {0, 1}, 0.0), wdbc::DimensionMismatch);

  wdbc::LogRegModel model;
  model.weights = Vector{1.0, 1.0};
  const Vector good{1.0, 1.0};
  CHECK(wdbc::logreg_predict_proba(model, good) ==
        doctest::Approx(0.8807970779778823).epsilon(1e-15));
  const Vector bad{1.0};
  CHECK_THROWS_AS(wdbc::logreg_predict_proba(model, bad), wdbc::DimensionMismatch);
}
