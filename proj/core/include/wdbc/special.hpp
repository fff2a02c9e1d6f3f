#pragma once

namespace wdbc {

// psi(x) for x > 0 via recurrence shift to x >= 10 plus the asymptotic
// Bernoulli series. Absolute error <= 1e-10 on [1e-3, 1e6].
// Throws DomainError for x <= 0.
double digamma(double x);

// ln Gamma(x) for x > 0, same shift-plus-Stirling scheme and accuracy.
// Throws DomainError for x <= 0.
double log_gamma(double x);

}  // namespace wdbc
