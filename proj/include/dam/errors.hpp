#pragma once

#include <stdexcept>
#include <string>

namespace dam {

// Every error carries a short machine-readable code; the CLI prints it verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& message) : Error("shape_error", message) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message) : Error("argument_error", message) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& message) : Error("index_error", message) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& message) : Error("numeric_error", message) {}
};

class BuildError : public Error {
 public:
  explicit BuildError(const std::string& message) : Error("build_error", message) {}
};

class MetricError : public Error {
 public:
  explicit MetricError(const std::string& message) : Error("undefined_metric", message) {}
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& message) : Error("integrity_error", message) {}
};

class VersionError : public Error {
 public:
  explicit VersionError(const std::string& message) : Error("version_mismatch", message) {}
};

class TaskMismatchError : public Error {
 public:
  explicit TaskMismatchError(const std::string& message) : Error("task_mismatch", message) {}
};

// `field` names the offending input key when there is one.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::string field = {})
      : Error("parse_error", message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class MissingLabelError : public Error {
 public:
  explicit MissingLabelError(const std::string& message) : Error("missing_label", message) {}
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error("validation_error", message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ServiceUnavailableError : public Error {
 public:
  explicit ServiceUnavailableError(const std::string& message)
      : Error("service_unavailable", message) {}
};

class ExplanationUnavailableError : public Error {
 public:
  explicit ExplanationUnavailableError(const std::string& message)
      : Error("explanations_unavailable", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io_error", message) {}
};

}  // namespace dam
