#pragma once

#include <stdexcept>
#include <string>

namespace efrep {

// Exit codes used by the command line tool.
enum class ExitCode : int { kOk = 0, kParameter = 2, kFormat = 3, kCapacity = 4 };

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ExitCode code)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(what, ExitCode::kParameter) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what)
      : Error(what, ExitCode::kParameter) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error(what, ExitCode::kFormat) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what)
      : Error(what, ExitCode::kCapacity) {}
};

// Raised by the fft engine when a rounded coefficient is too far from its
// floating value to be trusted.
class ExactnessError : public Error {
 public:
  explicit ExactnessError(const std::string& what)
      : Error(what, ExitCode::kCapacity) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what)
      : Error(what, ExitCode::kCapacity) {}
};

}  // namespace efrep
