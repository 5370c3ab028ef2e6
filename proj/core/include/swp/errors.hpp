#pragma once

#include <stdexcept>
#include <string>

namespace swp {

// Malformed arguments: out-of-range items, infeasible allocations, bad params.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid solver / learner configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration guard was exceeded.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swp
