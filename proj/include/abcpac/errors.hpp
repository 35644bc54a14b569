#pragma once

#include <stdexcept>
#include <string>

namespace abcpac {

/// Parameter vector outside the model's domain (non-finite entries, wrong size).
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed data handed to a pure function (empty dataset, length mismatch).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Configuration that cannot describe a valid run. `path` locates the offending key.
class InvalidConfigError : public std::invalid_argument {
 public:
  explicit InvalidConfigError(const std::string& message, std::string path = {})
      : std::invalid_argument(message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Requested evaluation point outside a tabulated range.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// All particle weights vanished, or the population collapsed to a single particle.
class DegenerateSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ESS is already below the target at the current temperature, so no larger
/// temperature can satisfy the bisection equation.
class LadderStallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace abcpac
