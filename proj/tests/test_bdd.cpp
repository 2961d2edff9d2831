#include <catch_amalgamated.hpp>

#include <approxbdd/bdd.hpp>
#include <approxbdd/errors.hpp>

#include "test_util.hpp"

#include <random>
#include <vector>

using namespace approxbdd;
using approxbdd::testing::brute_count;
using approxbdd::testing::from_table;
using approxbdd::testing::random_formula;

TEST_CASE( "projection variables", "[bdd]" )
{
  bdd_manager m( 4 );
  auto const x0 = m.var( 0 );
  std::vector<bool> a{ true, false, false, false };
  CHECK( m.evaluate( x0, a ) );
  a[0] = false;
  CHECK_FALSE( m.evaluate( x0, a ) );
  CHECK( m.var( 0 ) == x0 );
  CHECK( m.sat_prob( x0 ).to_rational() == big_rational( 1, 2 ) );
  CHECK( m.sat_prob( m.var( 3 ) ).to_rational() == big_rational( 1, 2 ) );
  CHECK_THROWS_AS( m.var( 4 ), usage_error );
}

TEST_CASE( "sat_prob of a single variable is one half for any width", "[bdd]" )
{
  for ( uint32_t n = 1; n <= 70; n += 7 )
  {
    bdd_manager m( n );
    CHECK( m.sat_prob( m.var( 0 ) ).to_rational() == big_rational( 1, 2 ) );
    CHECK( m.sat_prob( m.var( n - 1u ) ).to_rational() == big_rational( 1, 2 ) );
  }
}

TEST_CASE( "apply terminal identities", "[bdd]" )
{
  bdd_manager m( 3 );
  auto const x = m.var( 1 );
  CHECK( m.and_( x, m.not_( x ) ) == m.false_() );
  CHECK( m.xor_( x, m.false_() ) == x );
  CHECK( m.or_( x, m.not_( x ) ) == m.true_() );
  CHECK( m.apply( bool_op::xnor_, x, x ) == m.true_() );
  CHECK( m.apply( bool_op::nand_, x, m.true_() ) == m.not_( x ) );
  CHECK( m.apply( bool_op::nor_, x, m.false_() ) == m.not_( x ) );
  CHECK( m.and_not( x, x ) == m.false_() );
  CHECK( m.and_not( m.true_(), x ) == m.not_( x ) );
}

TEST_CASE( "model counts", "[bdd]" )
{
  {
    bdd_manager m( 2 );
    CHECK( m.sat_count( m.or_( m.var( 0 ), m.var( 1 ) ) ) == 3 );
  }
  {
    bdd_manager m( 5 );
    CHECK( m.sat_count( m.true_() ) == 32 );
    CHECK( m.sat_count( m.false_() ) == 0 );
  }
  {
    bdd_manager m( 3 );
    CHECK( m.sat_count( m.xor_( m.var( 0 ), m.var( 1 ) ) ) == 4 );
  }
  {
    bdd_manager m( 70 );
    CHECK( m.sat_count( m.var( 0 ) ) == pow2( 69 ) );
    auto const f = m.and_( m.var( 3 ), m.var( 69 ) );
    CHECK( m.sat_count( f ) == pow2( 68 ) );
    CHECK( m.sat_prob( f ).to_rational() == big_rational( 1, 4 ) );
  }
}

TEST_CASE( "is_sat", "[bdd]" )
{
  bdd_manager m( 2 );
  CHECK_FALSE( m.is_sat( m.false_() ) );
  CHECK( m.is_sat( m.true_() ) );
  auto const f = m.and_( m.var( 0 ), m.var( 1 ) );
  CHECK( m.is_sat( f ) );
  auto const w = m.pick_sat( f );
  CHECK( m.evaluate( f, w ) );
}

TEST_CASE( "node counter", "[bdd]" )
{
  bdd_manager m( 2 );
  CHECK( m.nodes_created() == 0u );
  m.var( 0 );
  CHECK( m.nodes_created() == 1u );
  m.var( 1 );
  m.reset_node_counter();
  // x0 ? x1 : 0 needs a single new node.
  m.and_( m.var( 0 ), m.var( 1 ) );
  CHECK( m.nodes_created() == 1u );
  m.reset_node_counter();
  // x0 ? !x1 : x1 needs !x1 and the root.
  m.xor_( m.var( 0 ), m.var( 1 ) );
  CHECK( m.nodes_created() == 2u );
  m.reset_node_counter();
  m.xor_( m.var( 1 ), m.var( 0 ) );
  CHECK( m.nodes_created() == 0u );
}

TEST_CASE( "foreign handles are rejected", "[bdd]" )
{
  bdd_manager m1( 2 ), m2( 2 );
  auto const a = m1.var( 0 );
  auto const b = m2.var( 0 );
  CHECK_FALSE( a == b );
  CHECK_FALSE( m1.true_() == m2.true_() );
  CHECK_THROWS_AS( m1.and_( a, b ), usage_error );
  CHECK_THROWS_AS( m1.not_( b ), usage_error );
  CHECK_THROWS_AS( m1.sat_count( b ), usage_error );
  CHECK_THROWS_AS( m1.is_sat( b ), usage_error );
}

TEST_CASE( "canonicity against truth tables", "[bdd][property]" )
{
  std::mt19937_64 rng( 7 );
  for ( uint32_t n = 1; n <= 8; ++n )
  {
    bdd_manager m( n );
    for ( int trial = 0; trial < 60; ++trial )
    {
      auto const fm = random_formula( m, rng, 6 );
      CHECK( from_table( m, fm.table ) == fm.f );
    }
  }
}

TEST_CASE( "sat_count against enumeration", "[bdd][property]" )
{
  std::mt19937_64 rng( 11 );
  for ( uint32_t n = 1; n <= 14; ++n )
  {
    bdd_manager m( n );
    for ( int trial = 0; trial < 20; ++trial )
    {
      auto const fm = random_formula( m, rng, 8 );
      uint64_t expected = 0;
      for ( auto v : fm.table )
      {
        expected += v;
      }
      CHECK( m.sat_count( fm.f ) == expected );
      CHECK( brute_count( m, fm.f ) == expected );
    }
  }
}

TEST_CASE( "De Morgan, involution and additivity", "[bdd][property]" )
{
  std::mt19937_64 rng( 13 );
  for ( uint32_t n : { 3u, 6u, 10u, 40u, 80u } )
  {
    bdd_manager m( n );
    auto const depth = n <= 10u ? 7u : 5u;
    for ( int trial = 0; trial < 40; ++trial )
    {
      auto const a = random_formula( m, rng, depth ).f;
      auto const b = random_formula( m, rng, depth ).f;
      CHECK( m.not_( m.and_( a, b ) ) == m.or_( m.not_( a ), m.not_( b ) ) );
      CHECK( m.not_( m.or_( a, b ) ) == m.and_( m.not_( a ), m.not_( b ) ) );
      CHECK( m.not_( m.not_( a ) ) == a );
      CHECK( m.apply( bool_op::nand_, a, b ) == m.not_( m.and_( a, b ) ) );
      CHECK( m.apply( bool_op::nor_, a, b ) == m.not_( m.or_( a, b ) ) );
      CHECK( m.apply( bool_op::xnor_, a, b ) == m.not_( m.xor_( a, b ) ) );
      CHECK( m.and_not( a, b ) == m.and_( a, m.not_( b ) ) );
      CHECK( m.sat_count( a ) + m.sat_count( m.not_( a ) ) == pow2( n ) );
    }
  }
}

TEST_CASE( "bounded cache gives identical diagrams", "[bdd][property]" )
{
  bdd_manager unbounded( 10 );
  bdd_manager bounded( 10, bdd_options{ 64 } );
  CHECK( bounded.cache_capacity() == 64u );
  std::mt19937_64 r1( 5 ), r2( 5 );
  for ( int trial = 0; trial < 50; ++trial )
  {
    auto const a = random_formula( unbounded, r1, 8 );
    auto const b = random_formula( bounded, r2, 8 );
    CHECK( a.table == b.table );
    CHECK( unbounded.sat_count( a.f ) == bounded.sat_count( b.f ) );
    CHECK( unbounded.dag_size( a.f ) == bounded.dag_size( b.f ) );
    CHECK( from_table( bounded, b.table ) == b.f );
  }
}

TEST_CASE( "node structure accessors", "[bdd]" )
{
  bdd_manager m( 3 );
  auto const f = m.and_( m.var( 0 ), m.var( 2 ) );
  CHECK( m.level( f ) == 0u );
  CHECK( m.low( f ) == m.false_() );
  CHECK( m.high( f ) == m.var( 2 ) );
  CHECK( m.level( m.true_() ) == 3u );
  CHECK( m.dag_size( f ) == 2u );
  CHECK( m.dag_size( m.true_() ) == 0u );
}
