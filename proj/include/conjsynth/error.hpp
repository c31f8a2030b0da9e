#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conjsynth {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed STL text. `position()` is the byte offset of the offending token.
class parse_error : public error {
public:
  parse_error(const std::string& message, std::size_t position)
      : error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// A formula references a variable the trace does not carry, or a trace is
/// otherwise unusable for evaluation.
class evaluation_error : public error {
public:
  using error::error;
};

/// The system model produced non-finite values or rejected its input.
class simulation_error : public error {
public:
  using error::error;
};

/// Covariance decomposition failed; the optimizer needs a restart.
class numerical_error : public error {
public:
  using error::error;
};

/// Invalid scenario, campaign or synthesis configuration.
class config_error : public error {
public:
  using error::error;
};

} // namespace conjsynth
