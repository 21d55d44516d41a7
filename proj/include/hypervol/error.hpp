#pragma once

#include <stdexcept>
#include <string>

namespace hypervol {

// Exit codes used by the command-line tool.
enum class ErrorKind { Validation = 2, Infeasible = 3, Unsupported = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error(ErrorKind::Validation, w) {}
};
struct InfeasibleError : Error {
  explicit InfeasibleError(const std::string& w) : Error(ErrorKind::Infeasible, w) {}
};
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& w) : Error(ErrorKind::Unsupported, w) {}
};

}  // namespace hypervol
