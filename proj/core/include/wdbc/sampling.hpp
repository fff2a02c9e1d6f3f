#pragma once

#include <vector>

#include "wdbc/linalg.hpp"
#include "wdbc/rng.hpp"

namespace wdbc {

// n draws mu + L z from N(mu, cov), z standard normal, L = chol(cov).
// A factorization failure is retried once with +1e-12*(1+max|diag|)*I so an
// exactly singular (e.g. zero) covariance degrades to a point mass; genuinely
// indefinite input still throws NotPositiveDefinite.
std::vector<Vector> sample_mvn(const Vector& mu, const Matrix& cov, std::size_t n,
                               RngState& rng);

}  // namespace wdbc
