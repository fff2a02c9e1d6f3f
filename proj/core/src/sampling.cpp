#include "wdbc/sampling.hpp"

#include <cmath>

namespace wdbc {

std::vector<Vector> sample_mvn(const Vector& mu, const Matrix& cov, std::size_t n,
                               RngState& rng) {
  const std::size_t p = mu.size();
  if (cov.rows() != p || cov.cols() != p) {
    throw DimensionMismatch("sample_mvn: mean/covariance size mismatch");
  }
  if (n == 0) throw InvalidArgument("sample_mvn: n must be >= 1");

  Matrix l;
  try {
    l = cholesky(cov);
  } catch (const NotPositiveDefinite&) {
    double max_diag = 0.0;
    for (std::size_t i = 0; i < p; ++i) max_diag = std::max(max_diag, std::abs(cov(i, i)));
    Matrix jittered = cov;
    const double eps = 1e-12 * (1.0 + max_diag);
    for (std::size_t i = 0; i < p; ++i) jittered(i, i) += eps;
    l = cholesky(jittered);
  }

  std::vector<Vector> draws;
  draws.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vector z = rng.normal_vector(p);
    Vector x = mu;
    for (std::size_t i = 0; i < p; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j <= i; ++j) s += l(i, j) * z[j];
      x[i] += s;
    }
    draws.push_back(std::move(x));
  }
  return draws;
}

}  // namespace wdbc
