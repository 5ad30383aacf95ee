#pragma once

#include <stdexcept>
#include <string>

namespace automizer {

/// Malformed input or violated precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size bound was exceeded. `bound()` names the policy field.
class ScaleError : public std::runtime_error {
 public:
  ScaleError(std::string bound, const std::string& what)
      : std::runtime_error("scale bound '" + bound + "' exceeded: " + what),
        bound_(std::move(bound)) {}
  const std::string& bound() const noexcept { return bound_; }

 private:
  std::string bound_;
};

}  // namespace automizer
