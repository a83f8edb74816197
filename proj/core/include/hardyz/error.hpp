#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardyz {

/// Failure categories shared by every module. The CLI maps `parameter` to a
/// usage error and everything else to a computational failure.
enum class ErrorKind {
  parameter,   ///< argument outside the documented range
  domain,      ///< argument outside the region where the method is valid
  pole,        ///< argument at or too close to a pole
  accuracy,    ///< requested accuracy cannot be reached
  divergence,  ///< iteration failed to converge
  singular,    ///< vanishing derivative or degenerate configuration
  io,          ///< file system failure
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace hardyz
