#include "wdbc/vblr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wdbc/logreg.hpp"
#include "wdbc/sampling.hpp"
#include "wdbc/special.hpp"

namespace wdbc {

namespace {

constexpr double kXiFloor = 1e-10;
constexpr double kTaylorCut = 1e-4;

void validate_targets(const std::vector<int>& ts) {
  for (const int t : ts) {
    if (t != 0 && t != 1) {
      throw InvalidArgument("vblr: targets must be 0 or 1, got " + std::to_string(t));
    }
  }
}

double log_sigmoid(double a) { return -softplus(-a); }

// 2 sum_i lambda(xi_i) phi_i phi_i'
Matrix data_precision(const Matrix& phis, const Vector& xi) {
  const std::size_t p = phis.cols();
  Matrix m(p, p);
  for (std::size_t i = 0; i < phis.rows(); ++i) {
    const double w = 2.0 * lambda_xi(xi[i]);
    const auto phi = phis.row(i);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t c = 0; c <= r; ++c) m(r, c) += w * phi[r] * phi[c];
  }
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = r + 1; c < p; ++c) m(r, c) = m(c, r);
  return m;
}

Vector data_pull(const Matrix& phis, const std::vector<int>& ts) {
  Vector rhs(phis.cols(), 0.0);
  for (std::size_t i = 0; i < phis.rows(); ++i) {
    const double w = static_cast<double>(ts[i]) - 0.5;
    const auto phi = phis.row(i);
    for (std::size_t j = 0; j < phi.size(); ++j) rhs[j] += w * phi[j];
  }
  return rhs;
}

// Inverts an SPD precision matrix; one diagonal nudge is allowed before
// giving up, and taking it is counted by the caller.
Matrix invert_with_jitter(Matrix precision, std::size_t& jitter_events) {
  try {
    return spd_inverse(precision);
  } catch (const NotPositiveDefinite&) {
    ++jitter_events;
    double max_diag = 0.0;
    for (std::size_t i = 0; i < precision.rows(); ++i) {
      max_diag = std::max(max_diag, std::abs(precision(i, i)));
    }
    const double nudge = 1e-10 * (1.0 + max_diag);
    for (std::size_t i = 0; i < precision.rows(); ++i) precision(i, i) += nudge;
    return spd_inverse(precision);
  }
}

double trace_of(const Matrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

double lambda_xi(double xi) {
  const double ax = std::abs(xi);
  if (ax > kTaylorCut) return (sigmoid(ax) - 0.5) / (2.0 * ax);
  return 0.125 - xi * xi / 96.0;
}

double sigmoid_lower_bound(double a, double xi) {
  return sigmoid(xi) * std::exp(0.5 * (a - xi) - lambda_xi(xi) * (a * a - xi * xi));
}

std::pair<Vector, Matrix> e_step_fixed(const Matrix& phis, const std::vector<int>& ts,
                                       const Vector& m0, const Matrix& s0,
                                       const Vector& xi) {
  const std::size_t n = phis.rows();
  const std::size_t p = m0.size();
  if (ts.size() != n || xi.size() != n) {
    throw LengthMismatch("e_step_fixed: phis/ts/xi size mismatch");
  }
  if (s0.rows() != p || s0.cols() != p || (n > 0 && phis.cols() != p)) {
    throw DimensionMismatch("e_step_fixed: prior dimension mismatch");
  }
  validate_targets(ts);
  if (n == 0) return {m0, s0};

  const Matrix s0_inv = spd_inverse(s0);
  Matrix precision = data_precision(phis, xi);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) precision(r, c) += s0_inv(r, c);
  const Matrix s_n = spd_inverse(precision);
  Vector rhs = matvec(s0_inv, m0);
  const Vector pull = data_pull(phis, ts);
  for (std::size_t j = 0; j < p; ++j) rhs[j] += pull[j];
  return {matvec(s_n, rhs), s_n};
}

Vector m_step_xi(const Matrix& phis, const Vector& mu_n, const Matrix& s_n) {
  const std::size_t p = mu_n.size();
  if (s_n.rows() != p || s_n.cols() != p || (phis.rows() > 0 && phis.cols() != p)) {
    throw DimensionMismatch("m_step_xi: dimension mismatch");
  }
  // xi_i^2 = phi_i' (S_N + mu mu') phi_i
  Matrix second_moment = s_n;
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) second_moment(r, c) += mu_n[r] * mu_n[c];
  Vector xi(phis.rows());
  for (std::size_t i = 0; i < phis.rows(); ++i) {
    const auto phi = phis.row(i);
    double q = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < p; ++c) acc += second_moment(r, c) * phi[c];
      q += phi[r] * acc;
    }
    xi[i] = std::max(std::sqrt(std::max(q, 0.0)), kXiFloor);
  }
  return xi;
}

double fixed_bound(const Vector& m0, const Matrix& s0, const Vector& xi,
                   const Vector& mu_n, const Matrix& s_n) {
  double value = 0.5 * (log_det_spd(s_n) - log_det_spd(s0));
  value += 0.5 * dot(mu_n, solve_spd(s_n, mu_n));
  value -= 0.5 * dot(m0, solve_spd(s0, m0));
  for (const double x : xi) {
    value += log_sigmoid(x) - 0.5 * x + lambda_xi(x) * x * x;
  }
  return value;
}

namespace {

// Resolve the fixed-mode prior, defaulting to m0 = 0, S0 = 10 I.
std::pair<Vector, Matrix> resolve_prior(const VblrConfig& cfg, std::size_t p) {
  Vector m0 = cfg.m0;
  if (m0.empty()) m0.assign(p, 0.0);
  if (m0.size() != p) throw DimensionMismatch("vblr: m0 dimension mismatch");
  Matrix s0 = cfg.S0;
  if (s0.rows() == 0) {
    s0 = Matrix::identity(p);
    for (std::size_t i = 0; i < p; ++i) s0(i, i) = 10.0;
  }
  if (s0.rows() != p || s0.cols() != p) {
    throw DimensionMismatch("vblr: S0 dimension mismatch");
  }
  return {std::move(m0), std::move(s0)};
}

}  // namespace

VblrPosterior fit_fixed(const Matrix& phis, const std::vector<int>& ts,
                        const VblrConfig& cfg) {
  if (cfg.mode != PriorMode::Fixed) {
    throw InvalidArgument("fit_fixed: config is not in Fixed mode");
  }
  const std::size_t n = phis.rows();
  if (ts.size() != n) throw LengthMismatch("fit_fixed: phis/ts size mismatch");
  validate_targets(ts);
  const std::size_t p = n > 0 ? phis.cols() : cfg.m0.size();
  auto [m0, s0] = resolve_prior(cfg, p);

  VblrPosterior post;
  post.mode = PriorMode::Fixed;
  post.xi.assign(n, cfg.xi_init);
  if (n == 0) {
    post.mu_n = m0;
    post.s_n = s0;
    post.trace.push_back(fixed_bound(m0, s0, post.xi, post.mu_n, post.s_n));
    post.converged = true;
    return post;
  }

  const Matrix s0_inv = spd_inverse(s0);
  const Vector pull = data_pull(phis, ts);
  const auto posterior_under = [&](const Vector& xi) {
    Matrix precision = data_precision(phis, xi);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t c = 0; c < p; ++c) precision(r, c) += s0_inv(r, c);
    Matrix s_n = invert_with_jitter(std::move(precision), post.jitter_events);
    Vector rhs = matvec(s0_inv, m0);
    for (std::size_t j = 0; j < p; ++j) rhs[j] += pull[j];
    Vector mu = matvec(s_n, rhs);
    return std::make_pair(std::move(mu), std::move(s_n));
  };

  std::tie(post.mu_n, post.s_n) = posterior_under(post.xi);
  post.trace.push_back(fixed_bound(m0, s0, post.xi, post.mu_n, post.s_n));
  for (std::size_t iter = 1; iter <= cfg.max_em_iters; ++iter) {
    post.xi = m_step_xi(phis, post.mu_n, post.s_n);
    std::tie(post.mu_n, post.s_n) = posterior_under(post.xi);
    post.trace.push_back(fixed_bound(m0, s0, post.xi, post.mu_n, post.s_n));
    post.iterations = iter;
    const auto len = post.trace.size();
    if (std::abs(post.trace[len - 1] - post.trace[len - 2]) < cfg.elbo_tol) {
      post.converged = true;
      break;
    }
  }
  return post;
}

VblrPosterior fit_hierarchical(const Matrix& phis, const std::vector<int>& ts,
                               const VblrConfig& cfg) {
  if (cfg.mode != PriorMode::Hierarchical) {
    throw InvalidArgument("fit_hierarchical: config is not in Hierarchical mode");
  }
  if (!(cfg.a0 > 0.0) || !(cfg.b0 > 0.0)) {
    throw InvalidArgument("fit_hierarchical: a0 and b0 must be positive");
  }
  const std::size_t n = phis.rows();
  const std::size_t p = phis.cols();
  if (ts.size() != n) throw LengthMismatch("fit_hierarchical: phis/ts size mismatch");
  validate_targets(ts);

  VblrPosterior post;
  post.mode = PriorMode::Hierarchical;
  post.xi.assign(n, cfg.xi_init);
  post.a_n = cfg.a0;
  post.b_n = cfg.b0;
  const Vector pull = data_pull(phis, ts);

  for (std::size_t iter = 1; iter <= cfg.max_em_iters; ++iter) {
    // q(w) under the current E[alpha] = a_N/b_N
    const double e_alpha = post.a_n / post.b_n;
    Matrix precision = data_precision(phis, post.xi);
    for (std::size_t d = 0; d < p; ++d) precision(d, d) += e_alpha;
    post.s_n = invert_with_jitter(std::move(precision), post.jitter_events);
    post.mu_n = matvec(post.s_n, pull);
    // q(alpha): a_N is a constant, b_N absorbs E[w'w]
    post.a_n = cfg.a0 + static_cast<double>(p) / 2.0;
    post.b_n = cfg.b0 + 0.5 * (dot(post.mu_n, post.mu_n) + trace_of(post.s_n));
    // variational parameters
    post.xi = m_step_xi(phis, post.mu_n, post.s_n);

    post.trace.push_back(elbo_terms(post, phis, ts, cfg.a0, cfg.b0).total());
    post.iterations = iter;
    const auto len = post.trace.size();
    if (len >= 2 && std::abs(post.trace[len - 1] - post.trace[len - 2]) < cfg.elbo_tol) {
      post.converged = true;
      break;
    }
  }
  return post;
}

ElboTerms elbo_terms(const VblrPosterior& post, const Matrix& phis,
                     const std::vector<int>& ts, double a0, double b0) {
  const std::size_t n = phis.rows();
  const std::size_t p = post.mu_n.size();
  if (ts.size() != n || post.xi.size() != n) {
    throw LengthMismatch("elbo_terms: phis/ts/xi size mismatch");
  }
  const double e_log_alpha = digamma(post.a_n) - std::log(post.b_n);
  const double e_alpha = post.a_n / post.b_n;
  const double log2pi = std::log(2.0 * std::numbers::pi);

  ElboTerms terms;
  for (std::size_t i = 0; i < n; ++i) {
    const auto phi = phis.row(i);
    const double m = dot(post.mu_n, phi);
    double quad = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < p; ++c) acc += post.s_n(r, c) * phi[c];
      quad += phi[r] * acc;
    }
    const double e_a_sq = m * m + quad;
    const double x = post.xi[i];
    terms.expected_log_h += log_sigmoid(x) + m * static_cast<double>(ts[i]) -
                            0.5 * (m + x) - lambda_xi(x) * (e_a_sq - x * x);
  }
  const double e_w_sq = dot(post.mu_n, post.mu_n) + trace_of(post.s_n);
  terms.expected_log_prior_w = -0.5 * static_cast<double>(p) * log2pi +
                               0.5 * static_cast<double>(p) * e_log_alpha -
                               0.5 * e_alpha * e_w_sq;
  terms.expected_log_prior_alpha =
      a0 * std::log(b0) + (a0 - 1.0) * e_log_alpha - b0 * e_alpha - log_gamma(a0);
  // Gaussian differential entropy: (1/2)ln|S_N| + (P/2)(ln 2pi + 1).
  terms.entropy_w =
      0.5 * log_det_spd(post.s_n) + 0.5 * static_cast<double>(p) * (log2pi + 1.0);
  terms.entropy_alpha = post.a_n - std::log(post.b_n) + log_gamma(post.a_n) +
                        (1.0 - post.a_n) * digamma(post.a_n);
  return terms;
}

double elbo(const VblrPosterior& post, const Matrix& phis, const std::vector<int>& ts,
            const VblrConfig& cfg) {
  if (post.mode != PriorMode::Hierarchical) {
    throw InvalidArgument("elbo: posterior is not in Hierarchical mode");
  }
  return elbo_terms(post, phis, ts, cfg.a0, cfg.b0).total();
}

McEstimate predict_proba_mc(const VblrPosterior& post, std::span<const double> phi,
                            std::size_t mc_samples, RngState& rng) {
  if (mc_samples < 1) throw InvalidArgument("predict_proba_mc: need mc_samples >= 1");
  if (phi.size() != post.mu_n.size()) {
    throw DimensionMismatch("predict_proba_mc: dimension mismatch");
  }
  const auto draws = sample_mvn(post.mu_n, post.s_n, mc_samples, rng);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const Vector& w : draws) {
    const double s = sigmoid(dot(w, phi));
    sum += s;
    sum_sq += s * s;
  }
  const double m = static_cast<double>(mc_samples);
  McEstimate est;
  est.mean = sum / m;
  if (mc_samples > 1) {
    const double var = std::max(0.0, (sum_sq - m * est.mean * est.mean) / (m - 1.0));
    est.std_error = std::sqrt(var / m);
  }
  return est;
}

}  // namespace wdbc
