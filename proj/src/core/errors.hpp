#pragma once

#include <stdexcept>
#include <string>

namespace vgl {

// Error categories, aligned with the C API status codes and CLI exit codes.
enum class ErrorCode {
    invalid_argument = 1,
    validation = 2,
    no_convergence = 3,
    io = 4,
    numeric = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorCode::validation, w) {}
};
struct NoConvergenceError : Error {
    explicit NoConvergenceError(const std::string& w) : Error(ErrorCode::no_convergence, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};
struct NumericError : Error {
    explicit NumericError(const std::string& w) : Error(ErrorCode::numeric, w) {}
};

}  // namespace vgl
