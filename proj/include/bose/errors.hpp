#pragma once

#include <stdexcept>
#include <string>

namespace bose {

// Bad inputs: out-of-range arguments, malformed specs, violated preconditions.
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// The inputs were admissible but a numerical procedure failed (bracket lost,
// integrator stalled, eigensolver did not converge).
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bose
