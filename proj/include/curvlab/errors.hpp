#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace curvlab {

enum class ErrorKind {
  dimension,
  precondition,
  numeric,
  structure,
  jacobi,
  not_integrable,
  domain,
  constraint,
  usage,
  parse,
};

const char* to_string(ErrorKind kind);

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorKind::dimension, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::precondition, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class NotIntegrableError : public Error {
 public:
  explicit NotIntegrableError(const std::string& what) : Error(ErrorKind::not_integrable, what) {}
};

/// Broken antisymmetry or J/G incompatibility. When the failure is an
/// antisymmetry violation of C, `index()` holds the offending (j, i, k).
class StructureError : public Error {
 public:
  explicit StructureError(const std::string& what) : Error(ErrorKind::structure, what) {}
  StructureError(const std::string& what, std::array<std::size_t, 3> index)
      : Error(ErrorKind::structure, what), index_(index), has_index_(true) {}

  bool has_index() const noexcept { return has_index_; }
  std::array<std::size_t, 3> index() const noexcept { return index_; }

 private:
  std::array<std::size_t, 3> index_{};
  bool has_index_ = false;
};

/// The three residuals of the Jacobi/Bianchi systems, each reported separately.
class JacobiError : public Error {
 public:
  JacobiError(const std::string& what, std::array<double, 3> residuals)
      : Error(ErrorKind::jacobi, what), residuals_(residuals) {}
  std::array<double, 3> residuals() const noexcept { return residuals_; }

 private:
  std::array<double, 3> residuals_;
};

/// Codimension-2 constraint violation; carries both constraint residuals.
class ConstraintError : public Error {
 public:
  ConstraintError(const std::string& what, std::array<double, 2> residuals)
      : Error(ErrorKind::constraint, what), residuals_(residuals) {}
  std::array<double, 2> residuals() const noexcept { return residuals_; }

 private:
  std::array<double, 2> residuals_;
};

/// Instance-file error located by a JSON pointer into the document.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : Error(ErrorKind::parse, path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace curvlab
