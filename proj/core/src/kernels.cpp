#include "wdbc/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <vector>

namespace wdbc {

namespace {

std::map<std::string, std::string> parse_params(const std::string& text,
                                                const std::string& whole) {
  std::map<std::string, std::string> params;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(start, comma - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw InvalidArgument("kernel spec '" + whole + "': expected key=value, got '" +
                            item + "'");
    }
    const std::string key = item.substr(0, eq);
    if (params.count(key)) {
      throw InvalidArgument("kernel spec '" + whole + "': duplicate key '" + key + "'");
    }
    params[key] = item.substr(eq + 1);
    start = comma + 1;
  }
  return params;
}

double to_double(const std::string& value, const std::string& whole) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw InvalidArgument("kernel spec '" + whole + "': bad number '" + value + "'");
  }
  return out;
}

int to_int(const std::string& value, const std::string& whole) {
  int out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("kernel spec '" + whole + "': bad integer '" + value + "'");
  }
  return out;
}

void require_keys(const std::map<std::string, std::string>& params,
                  const std::vector<std::string>& keys, const std::string& whole) {
  for (const auto& key : keys) {
    if (!params.count(key)) {
      throw InvalidArgument("kernel spec '" + whole + "': missing key '" + key + "'");
    }
  }
  if (params.size() != keys.size()) {
    for (const auto& [key, value] : params) {
      (void)value;
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw InvalidArgument("kernel spec '" + whole + "': unknown key '" + key + "'");
      }
    }
  }
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

KernelSpec KernelSpec::linear() { return KernelSpec{KernelKind::Linear}; }

KernelSpec KernelSpec::polynomial(int degree) {
  if (degree < 1) throw InvalidArgument("polynomial kernel: degree must be >= 1");
  KernelSpec spec;
  spec.kind = KernelKind::Polynomial;
  spec.degree = degree;
  return spec;
}

KernelSpec KernelSpec::rbf(double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("rbf kernel: gamma must be > 0");
  KernelSpec spec;
  spec.kind = KernelKind::Rbf;
  spec.gamma = gamma;
  return spec;
}

KernelSpec KernelSpec::tanh(double kappa, double c) {
  KernelSpec spec;
  spec.kind = KernelKind::Tanh;
  spec.kappa = kappa;
  spec.c = c;
  return spec;
}

KernelSpec KernelSpec::parse(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (name == "linear") {
    if (!rest.empty()) {
      throw InvalidArgument("kernel spec '" + text + "': linear takes no parameters");
    }
    return linear();
  }
  if (name == "poly") {
    const auto params = parse_params(rest, text);
    require_keys(params, {"d"}, text);
    return polynomial(to_int(params.at("d"), text));
  }
  if (name == "rbf") {
    const auto params = parse_params(rest, text);
    require_keys(params, {"gamma"}, text);
    return rbf(to_double(params.at("gamma"), text));
  }
  if (name == "tanh") {
    const auto params = parse_params(rest, text);
    require_keys(params, {"kappa", "c"}, text);
    return tanh(to_double(params.at("kappa"), text), to_double(params.at("c"), text));
  }
  throw InvalidArgument("kernel spec '" + text + "': unknown kernel '" + name + "'");
}

std::string KernelSpec::to_string() const {
  switch (kind) {
    case KernelKind::Linear:
      return "linear";
    case KernelKind::Polynomial:
      return "poly:d=" + std::to_string(degree);
    case KernelKind::Rbf:
      return "rbf:gamma=" + format_double(gamma);
    case KernelKind::Tanh:
      return "tanh:kappa=" + format_double(kappa) + ",c=" + format_double(c);
  }
  throw InvalidArgument("kernel spec: corrupt kind");
}

bool KernelSpec::operator==(const KernelSpec& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case KernelKind::Linear:
      return true;
    case KernelKind::Polynomial:
      return degree == other.degree;
    case KernelKind::Rbf:
      return gamma == other.gamma;
    case KernelKind::Tanh:
      return kappa == other.kappa && c == other.c;
  }
  return false;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
  switch (spec.kind) {
    case KernelKind::Linear:
      return dot(x, y);
    case KernelKind::Polynomial:
      return std::pow(dot(x, y), spec.degree);
    case KernelKind::Rbf:
      return std::exp(-spec.gamma * squared_distance(x, y));
    case KernelKind::Tanh:
      return std::tanh(spec.kappa * dot(x, y) + spec.c);
  }
  throw InvalidArgument("kernel_eval: corrupt kind");
}

Matrix gram(const KernelSpec& spec, const Matrix& x) {
  const std::size_t n = x.rows();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernel_eval(spec, x.row(i), x.row(j));
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Matrix gram(const KernelSpec& spec, const Matrix& a, const Matrix& b) {
  Matrix k(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      k(i, j) = kernel_eval(spec, a.row(i), b.row(j));
  return k;
}

}  // namespace wdbc
