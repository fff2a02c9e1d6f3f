#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wdbc {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A matrix handed to a Cholesky-based routine was not positive definite.
class NotPositiveDefinite : public Error {
public:
  explicit NotPositiveDefinite(std::size_t pivot)
      : Error("matrix is not positive definite (pivot " + std::to_string(pivot) + ")"),
        pivot_(pivot) {}
  std::size_t pivot() const { return pivot_; }

private:
  std::size_t pivot_;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class LengthMismatch : public Error {
public:
  using Error::Error;
};

// CSV parse failure; line numbers are 1-based.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// A feature column with zero spread cannot be standardized.
class DegenerateColumn : public Error {
public:
  explicit DegenerateColumn(std::size_t column)
      : Error("column " + std::to_string(column) + " has zero standard deviation"),
        column_(column) {}
  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

class BadFoldCount : public Error {
public:
  using Error::Error;
};

class SingularHessian : public Error {
public:
  using Error::Error;
};

// A score set with one of the two classes missing cannot be ranked.
class EmptyClass : public Error {
public:
  using Error::Error;
};

class UnknownMethod : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

}  // namespace wdbc
