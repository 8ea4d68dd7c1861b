#pragma once

#include <stdexcept>
#include <string>

namespace dfh {

// Base for all library errors. exit_code matches the CLI convention:
// 2 = input schema violation, 3 = series under-specification,
// 4 = precondition failure in a math operation.
class Error : public std::runtime_error {
public:
  Error(int exit_code, const std::string& msg)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

private:
  int exit_code_;
};

class SchemaError : public Error {
public:
  explicit SchemaError(const std::string& msg) : Error(2, msg) {}
};

class SingularIndexUncovered : public Error {
public:
  explicit SingularIndexUncovered(const std::string& msg) : Error(3, msg) {}
};

class PreconditionFailed : public Error {
public:
  explicit PreconditionFailed(const std::string& msg) : Error(4, msg) {}
};

class DegreeOverflow : public PreconditionFailed {
public:
  explicit DegreeOverflow(const std::string& msg) : PreconditionFailed(msg) {}
};

class SingularMatrix : public PreconditionFailed {
public:
  explicit SingularMatrix(const std::string& msg) : PreconditionFailed(msg) {}
};

class MajorantViolated : public PreconditionFailed {
public:
  explicit MajorantViolated(const std::string& msg) : PreconditionFailed(msg) {}
};

class RadiusTooLarge : public PreconditionFailed {
public:
  explicit RadiusTooLarge(const std::string& msg) : PreconditionFailed(msg) {}
};

class ZeroAtOrigin : public PreconditionFailed {
public:
  explicit ZeroAtOrigin(const std::string& msg) : PreconditionFailed(msg) {}
};

class InsufficientData : public PreconditionFailed {
public:
  explicit InsufficientData(const std::string& msg) : PreconditionFailed(msg) {}
};

}  // namespace dfh
