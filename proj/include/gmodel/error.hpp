#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gmodel {

/// Base class of every error raised by the toolchain.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A dotted path did not resolve. `prefix()` is the longest prefix that did.
class NotFound : public Error {
public:
  NotFound(std::string path, std::string prefix)
      : Error("path '" + path + "' not found (resolved prefix '" + prefix + "')"),
        path_(std::move(path)), prefix_(std::move(prefix)) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& prefix() const noexcept { return prefix_; }

private:
  std::string path_;
  std::string prefix_;
};

/// Raised when an operation's precondition on the model is not met
/// (typically: the model was not validated first).
class ModelError : public Error {
public:
  using Error::Error;
};

class CapacityExceeded : public Error {
public:
  CapacityExceeded(std::string owner, std::int64_t needed, std::int64_t capacity)
      : Error("memory '" + owner + "' needs " + std::to_string(needed) +
              " bytes but has capacity " + std::to_string(capacity)),
        owner_(std::move(owner)), needed_(needed), capacity_(capacity) {}

  const std::string& owner_path() const noexcept { return owner_; }
  std::int64_t needed_bytes() const noexcept { return needed_; }
  std::int64_t capacity_bytes() const noexcept { return capacity_; }

private:
  std::string owner_;
  std::int64_t needed_;
  std::int64_t capacity_;
};

class MissingGeometry : public ModelError {
public:
  using ModelError::ModelError;
};

class CyclicTaskGraph : public ModelError {
public:
  using ModelError::ModelError;
};

class UnallocatedTask : public ModelError {
public:
  explicit UnallocatedTask(const std::string& task)
      : ModelError("task '" + task + "' has no task allocation"), task_(task) {}
  const std::string& task_path() const noexcept { return task_; }

private:
  std::string task_;
};

class UnknownIntrinsic : public Error {
public:
  UnknownIntrinsic(const std::string& task, const std::string& op)
      : Error("task '" + task + "' deploys unknown intrinsic '" + op + "'"),
        task_(task), op_(op) {}
  const std::string& task_path() const noexcept { return task_; }
  const std::string& op_name() const noexcept { return op_; }

private:
  std::string task_;
  std::string op_;
};

// Matrix ingestion.
class MatrixMarketError : public Error {
public:
  using Error::Error;
};

class MalformedHeader : public MatrixMarketError {
public:
  using MatrixMarketError::MatrixMarketError;
};

class NonSquare : public MatrixMarketError {
public:
  using MatrixMarketError::MatrixMarketError;
};

class MalformedEntry : public MatrixMarketError {
public:
  MalformedEntry(std::size_t line, const std::string& what)
      : MatrixMarketError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class IndexOutOfRange : public MalformedEntry {
public:
  explicit IndexOutOfRange(std::size_t line)
      : MalformedEntry(line, "index out of range") {}
};

// Numerics.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class BreakdownDetected : public Error {
public:
  using Error::Error;
};

class AsymmetricMatrix : public Error {
public:
  using Error::Error;
};

class MissingBinding : public Error {
public:
  explicit MissingBinding(const std::string& port)
      : Error("no binding supplied for input port '" + port + "'"), port_(port) {}
  const std::string& port() const noexcept { return port_; }

private:
  std::string port_;
};

class IntrinsicShapeMismatch : public Error {
public:
  using Error::Error;
};

}  // namespace gmodel
