#pragma once

#include <stdexcept>
#include <string>

namespace approxbdd
{

/// Violated precondition: out-of-range variable, foreign handle, bad width.
class usage_error : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Golden and approximate circuits disagree on inputs, outputs or signedness.
class interface_mismatch : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration requested above the configured input limit.
class oracle_limit_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace approxbdd
