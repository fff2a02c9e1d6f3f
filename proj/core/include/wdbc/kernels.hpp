#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "wdbc/errors.hpp"
#include "wdbc/linalg.hpp"

namespace wdbc {

enum class KernelKind { Linear, Polynomial, Rbf, Tanh };

// A kernel family plus its parameters.  Only the fields relevant to `kind`
// are meaningful: `degree` for Polynomial, `gamma` for Rbf, `kappa`/`c` for
// Tanh.  The textual form used by parse/to_string is
//   linear | poly:d=<int> | rbf:gamma=<float> | tanh:kappa=<float>,c=<float>
struct KernelSpec {
  KernelKind kind = KernelKind::Linear;
  int degree = 3;
  double gamma = 1.0;
  double kappa = 1.0;
  double c = 0.0;

  static KernelSpec linear();
  static KernelSpec polynomial(int degree);
  static KernelSpec rbf(double gamma);
  static KernelSpec tanh(double kappa, double c);

  // Parses the textual form above; throws InvalidArgument on anything else.
  static KernelSpec parse(const std::string& text);
  std::string to_string() const;

  // True for kernels that are positive semi-definite for all parameter
  // values we accept (everything except Tanh).
  bool positive_semidefinite() const { return kind != KernelKind::Tanh; }

  bool operator==(const KernelSpec& other) const;
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

// Full Gram matrix K(i,j) = k(X_i, X_j); symmetric by construction.
Matrix gram(const KernelSpec& spec, const Matrix& x);

// Rectangular cross-kernel K(i,j) = k(A_i, B_j).
Matrix gram(const KernelSpec& spec, const Matrix& a, const Matrix& b);

}  // namespace wdbc
