#pragma once

#include <stdexcept>
#include <string>

namespace pmt {

/// Failure category. Each maps to one process exit code of the CLI.
enum class ErrorKind { usage, config, data, numerical };

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

struct DataError : Error {
    explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

// 0 success, 2 usage/config, 3 data, 4 numerical tolerance.
int exit_code(ErrorKind kind) noexcept;

}  // namespace pmt
