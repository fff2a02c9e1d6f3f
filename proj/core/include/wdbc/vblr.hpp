#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wdbc/errors.hpp"
#include "wdbc/linalg.hpp"
#include "wdbc/rng.hpp"

namespace wdbc {

enum class PriorMode { Fixed, Hierarchical };

struct VblrConfig {
  PriorMode mode = PriorMode::Hierarchical;
  // Fixed mode: Gaussian prior N(m0, S0).  Leave empty to get the defaults
  // m0 = 0, S0 = 10 I sized from the data.
  Vector m0;
  Matrix S0;
  // Hierarchical mode: Gamma(a0, b0) hyperprior on the weight precision.
  double a0 = 1e-2;
  double b0 = 1e-2;
  double xi_init = 1.0;
  std::size_t max_em_iters = 200;
  double elbo_tol = 1e-6;
  std::size_t mc_samples = 2000;
  std::uint64_t seed = 0;
};

struct VblrPosterior {
  PriorMode mode = PriorMode::Fixed;
  Vector mu_n;
  Matrix s_n;
  double a_n = 0.0;  // hierarchical mode only
  double b_n = 0.0;  // hierarchical mode only
  Vector xi;
  // Fixed mode: the log marginal-likelihood bound after each EM cycle.
  // Hierarchical mode: the ELBO after each update cycle.
  std::vector<double> trace;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t jitter_events = 0;  // precision inversions that needed a nudge
};

// lambda(xi) = (1/2xi)(sigmoid(xi) - 1/2), extended by its even Taylor
// series 1/8 - xi^2/96 + O(xi^4) near zero.
double lambda_xi(double xi);

// The local lower bound on the logistic sigmoid:
//   sigma(a) >= sigma(xi) exp{(a-xi)/2 - lambda(xi)(a^2 - xi^2)}.
double sigmoid_lower_bound(double a, double xi);

// Gaussian-posterior update for fixed prior N(m0, S0):
//   S_N^-1 = S0^-1 + 2 sum_i lambda(xi_i) phi_i phi_i',
//   mu_N   = S_N (S0^-1 m0 + sum_i (t_i - 1/2) phi_i).
std::pair<Vector, Matrix> e_step_fixed(const Matrix& phis, const std::vector<int>& ts,
                                       const Vector& m0, const Matrix& s0,
                                       const Vector& xi);

// Bound-maximizing variational parameters: xi_i = sqrt(phi_i'(S_N +
// mu_N mu_N')phi_i), floored at 1e-10 so lambda stays finite.
Vector m_step_xi(const Matrix& phis, const Vector& mu_n, const Matrix& s_n);

// Closed-form log bound on the marginal likelihood for the fixed prior,
// evaluated at a consistent (xi, mu_N, S_N) triple.  The data enters only
// through that triple, so no (phis, ts) argument is needed.
double fixed_bound(const Vector& m0, const Matrix& s0, const Vector& xi,
                   const Vector& mu_n, const Matrix& s_n);

VblrPosterior fit_fixed(const Matrix& phis, const std::vector<int>& ts,
                        const VblrConfig& cfg);

VblrPosterior fit_hierarchical(const Matrix& phis, const std::vector<int>& ts,
                               const VblrConfig& cfg);

// The five ELBO pieces for the hierarchical model, kept separate so each
// can be checked on its own.
struct ElboTerms {
  double expected_log_h = 0.0;            // data term under the local bound
  double expected_log_prior_w = 0.0;      // E[ln p(w|alpha)]
  double expected_log_prior_alpha = 0.0;  // E[ln p(alpha)]
  double entropy_w = 0.0;                 // -E[ln q(w)]
  double entropy_alpha = 0.0;             // -E[ln q(alpha)]
  double total() const {
    return expected_log_h + expected_log_prior_w + expected_log_prior_alpha +
           entropy_w + entropy_alpha;
  }
};

ElboTerms elbo_terms(const VblrPosterior& post, const Matrix& phis,
                     const std::vector<int>& ts, double a0, double b0);

double elbo(const VblrPosterior& post, const Matrix& phis, const std::vector<int>& ts,
            const VblrConfig& cfg);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of p(C1|phi) = integral sigma(w'phi) q(w) dw using
// draws w ~ N(mu_N, S_N); the standard error comes along for free.
McEstimate predict_proba_mc(const VblrPosterior& post, std::span<const double> phi,
                            std::size_t mc_samples, RngState& rng);

}  // namespace wdbc
