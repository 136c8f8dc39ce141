#pragma once

#include <stdexcept>
#include <string>

namespace obstacle {

// Invalid quadrature/sweep configuration (CLI exit status 2).
struct ConfigError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

// Input that violates an operation's precondition.
struct InputError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

} // namespace obstacle
