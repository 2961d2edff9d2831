#include <catch_amalgamated.hpp>

#include <approxbdd/arith.hpp>
#include <approxbdd/errors.hpp>
#include <approxbdd/generators.hpp>

#include "test_util.hpp"

using namespace approxbdd;

namespace
{

/// Word over fresh variables [first, first + width).
bdd_word var_word( bdd_manager& m, uint32_t first, uint32_t width, bool is_signed )
{
  bdd_word w{ &m, {}, is_signed };
  for ( uint32_t i = 0; i < width; ++i )
  {
    w.bits.push_back( m.var( first + i ) );
  }
  return w;
}

int64_t value_of( uint64_t k, uint32_t first, uint32_t width, bool is_signed )
{
  int64_t v = static_cast<int64_t>( ( k >> first ) & ( ( uint64_t{ 1 } << width ) - 1u ) );
  if ( is_signed && ( ( v >> ( width - 1u ) ) & 1 ) )
  {
    v -= int64_t{ 1 } << width;
  }
  return v;
}

} // namespace

TEST_CASE( "compile half adder", "[arith]" )
{
  auto const c = parse_netlist( ".model ha\n.inputs a b\n.outputs s0 s1\n.gate XOR a b -> s0\n.gate AND a b -> s1\n" );
  bdd_manager m( 2 );
  auto const w = compile( m, c );
  REQUIRE( w.width() == 2u );
  CHECK( m.sat_prob( w[1] ).to_rational() == big_rational( 1, 4 ) );
  CHECK( m.sat_prob( w[0] ).to_rational() == big_rational( 1, 2 ) );
  CHECK( w[1] == m.and_( m.var( 0 ), m.var( 1 ) ) );

  auto const k = parse_netlist( ".model k\n.inputs a\n.outputs y\n.gate CONST1 -> y\n" );
  bdd_manager m1( 1 );
  CHECK( compile( m1, k )[0] == m1.true_() );

  bdd_manager small( 1 );
  CHECK_THROWS_AS( compile( small, c ), usage_error );
}

TEST_CASE( "compile agrees with simulation", "[arith][property]" )
{
  for ( auto kind : { adder_kind::rca, adder_kind::cla, adder_kind::cska } )
  {
    for ( bool sgn : { false, true } )
    {
      auto const c = mutate( gen_adder( kind, 5, sgn ), 21, 4 );
      bdd_manager m( c.num_inputs() );
      auto const w = compile( m, c );
      CHECK( w.is_signed == sgn );
      for ( uint64_t k = 0; k < ( uint64_t{ 1 } << c.num_inputs() ); ++k )
      {
        auto const a = approxbdd::testing::assignment_of( k, c.num_inputs() );
        CHECK( evaluate( w, a ) == int_value( simulate( c, a ) ) );
      }
    }
  }
}

TEST_CASE( "extension", "[arith]" )
{
  bdd_manager m( 3 );
  auto const x0 = m.var( 0 );
  bdd_word const u{ &m, { x0 }, false };
  auto const ue = extend( u, 3 );
  CHECK( ue.bits == std::vector<node_ref>{ x0, m.false_(), m.false_() } );

  bdd_word const s{ &m, { x0, m.var( 1 ) }, true };
  auto const se = extend( s, 4 );
  CHECK( se.bits == std::vector<node_ref>{ x0, m.var( 1 ), m.var( 1 ), m.var( 1 ) } );

  CHECK( extend( s, 2 ).bits == s.bits );
  CHECK_THROWS_AS( extend( s, 1 ), usage_error );
}

TEST_CASE( "add and subtract against integer arithmetic", "[arith][property]" )
{
  for ( uint32_t wa = 1; wa <= 6; ++wa )
  {
    for ( uint32_t wb : { 1u, wa / 2u + 1u, wa } )
    {
      for ( bool sgn : { false, true } )
      {
        bdd_manager m( wa + wb );
        auto const a = var_word( m, 0, wa, sgn );
        auto const b = var_word( m, wa, wb, sgn );
        auto const sum = add( a, b );
        auto const diff = subtract( a, b );
        CHECK( diff.is_signed );
        CHECK( diff.width() == std::max( wa, wb ) + 1u );
        for ( uint64_t k = 0; k < ( uint64_t{ 1 } << ( wa + wb ) ); ++k )
        {
          auto const va = value_of( k, 0, wa, sgn );
          auto const vb = value_of( k, wa, wb, sgn );
          auto const in = approxbdd::testing::assignment_of( k, wa + wb );
          REQUIRE( evaluate( sum, in ) == va + vb );
          REQUIRE( evaluate( diff, in ) == va - vb );
        }
      }
    }
  }
}

TEST_CASE( "mixed signedness subtraction", "[arith]" )
{
  bdd_manager m( 8 );
  auto const a = var_word( m, 0, 4, false );
  auto const b = var_word( m, 4, 4, true );
  auto const d = subtract( a, b );
  for ( uint64_t k = 0; k < 256u; ++k )
  {
    auto const in = approxbdd::testing::assignment_of( k, 8 );
    REQUIRE( evaluate( d, in ) == value_of( k, 0, 4, false ) - value_of( k, 4, 4, true ) );
  }
}

TEST_CASE( "self subtraction collapses", "[arith]" )
{
  for ( bool sgn : { false, true } )
  {
    auto const c = gen_adder( adder_kind::cla, 8, sgn );
    bdd_manager m( c.num_inputs() );
    auto const w = compile( m, c );
    auto const d = subtract( w, w );
    for ( auto b : d.bits )
    {
      CHECK( b == m.false_() );
    }
  }
}

TEST_CASE( "words from different managers", "[arith]" )
{
  bdd_manager m1( 2 ), m2( 2 );
  bdd_word const a{ &m1, { m1.var( 0 ) }, false };
  bdd_word const b{ &m2, { m2.var( 0 ) }, false };
  CHECK_THROWS_AS( add( a, b ), usage_error );
  CHECK_THROWS_AS( subtract( a, b ), usage_error );
}
