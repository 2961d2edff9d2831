#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace approxbdd
{

using big_int = boost::multiprecision::cpp_int;
using big_rational = boost::multiprecision::cpp_rational;

/// Exact value num / 2^exp. Not normalised: `2/2^2` and `1/2^1` are kept
/// apart in storage but compare equal.
struct dyadic
{
  big_int num{ 0 };
  uint32_t exp{ 0 };

  dyadic() = default;
  dyadic( big_int numerator, uint32_t exponent ) : num( std::move( numerator ) ), exp( exponent ) {}

  static dyadic integer( big_int v ) { return dyadic{ std::move( v ), 0u }; }

  /// Same value with denominator 2^new_exp (new_exp >= exp).
  dyadic rescaled( uint32_t new_exp ) const;

  big_rational to_rational() const;
  double to_double() const;

  /// `num/2^exp`, or just `num` when exp is 0 or num is 0.
  std::string str() const;

  friend dyadic operator+( dyadic const& a, dyadic const& b );
  friend bool operator==( dyadic const& a, dyadic const& b );
  friend bool operator<( dyadic const& a, dyadic const& b );
  friend bool operator<=( dyadic const& a, dyadic const& b ) { return !( b < a ); }
};

inline big_int pow2( uint32_t e )
{
  big_int r = 1;
  r <<= e;
  return r;
}

/// Parse "3", "0.25", "3/4" or "3/2^2" into an exact rational.
big_rational parse_rational( std::string const& text );

} // namespace approxbdd
