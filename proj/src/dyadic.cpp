#include "approxbdd/dyadic.hpp"

#include <stdexcept>

namespace approxbdd
{

dyadic dyadic::rescaled( uint32_t new_exp ) const
{
  if ( new_exp < exp )
  {
    throw std::invalid_argument( "dyadic::rescaled: cannot lower the exponent" );
  }
  big_int n = num;
  n <<= ( new_exp - exp );
  return dyadic{ std::move( n ), new_exp };
}

big_rational dyadic::to_rational() const
{
  return big_rational( num, pow2( exp ) );
}

double dyadic::to_double() const
{
  return static_cast<double>( to_rational() );
}

std::string dyadic::str() const
{
  if ( exp == 0 || num == 0 )
  {
    return num.str();
  }
  return num.str() + "/2^" + std::to_string( exp );
}

dyadic operator+( dyadic const& a, dyadic const& b )
{
  auto const e = std::max( a.exp, b.exp );
  auto r = a.rescaled( e );
  r.num += b.rescaled( e ).num;
  return r;
}

bool operator==( dyadic const& a, dyadic const& b )
{
  auto const e = std::max( a.exp, b.exp );
  return a.rescaled( e ).num == b.rescaled( e ).num;
}

bool operator<( dyadic const& a, dyadic const& b )
{
  auto const e = std::max( a.exp, b.exp );
  return a.rescaled( e ).num < b.rescaled( e ).num;
}

big_rational parse_rational( std::string const& text )
{
  auto fail = [&]() -> big_rational { throw std::invalid_argument( "not a rational number: '" + text + "'" ); };
  if ( text.empty() )
  {
    return fail();
  }
  auto digits_only = []( std::string const& s, bool allow_sign ) {
    if ( s.empty() )
      return false;
    std::size_t i = ( allow_sign && s[0] == '-' ) ? 1 : 0;
    if ( i == s.size() )
      return false;
    for ( ; i < s.size(); ++i )
      if ( s[i] < '0' || s[i] > '9' )
        return false;
    return true;
  };

  if ( auto slash = text.find( '/' ); slash != std::string::npos )
  {
    auto const lhs = text.substr( 0, slash );
    auto rhs = text.substr( slash + 1 );
    if ( !digits_only( lhs, true ) )
      return fail();
    big_int den;
    if ( rhs.rfind( "2^", 0 ) == 0 )
    {
      auto const e = rhs.substr( 2 );
      if ( !digits_only( e, false ) || e.size() > 6 )
        return fail();
      den = pow2( static_cast<uint32_t>( std::stoul( e ) ) );
    }
    else
    {
      if ( !digits_only( rhs, false ) )
        return fail();
      den = big_int( rhs );
    }
    if ( den == 0 )
      return fail();
    return big_rational( big_int( lhs ), den );
  }

  if ( auto dot = text.find( '.' ); dot != std::string::npos )
  {
    auto const whole = text.substr( 0, dot );
    auto const frac = text.substr( dot + 1 );
    bool const negative = !whole.empty() && whole[0] == '-';
    auto const whole_digits = negative ? whole.substr( 1 ) : whole;
    if ( ( !whole_digits.empty() && !digits_only( whole_digits, false ) ) || !digits_only( frac, false ) )
      return fail();
    big_int scale = 1;
    for ( std::size_t i = 0; i < frac.size(); ++i )
      scale *= 10;
    big_int n = big_int( whole_digits.empty() ? "0" : whole_digits ) * scale + big_int( frac );
    if ( negative )
      n = -n;
    return big_rational( n, scale );
  }

  if ( !digits_only( text, true ) )
    return fail();
  return big_rational( big_int( text ) );
}

} // namespace approxbdd
