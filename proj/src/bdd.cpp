#include "approxbdd/bdd.hpp"

#include "approxbdd/errors.hpp"

#include <atomic>
#include <bit>
#include <string>

namespace approxbdd
{

namespace
{

std::atomic<uint32_t> next_manager_id{ 1 };

inline std::size_t mix( uint32_t a, uint32_t b, uint32_t c )
{
  uint64_t h = ( uint64_t{ a } * 0x9e3779b97f4a7c15ull ) ^ ( uint64_t{ b } * 0xc2b2ae3d27d4eb4full ) ^
               ( uint64_t{ c } * 0x165667b19e3779f9ull );
  return static_cast<std::size_t>( h ^ ( h >> 29 ) );
}

constexpr std::size_t initial_buckets = 1u << 12;
constexpr std::size_t initial_cache = 1u << 14;

} // namespace

bdd_manager::bdd_manager( uint32_t var_count, bdd_options options )
    : var_count_( var_count ),
      id_( next_manager_id.fetch_add( 1u ) ),
      options_( options ),
      buckets_( initial_buckets, empty_slot ),
      var_nodes_( var_count, empty_slot )
{
  nodes_.push_back( { var_count_, 0u, 0u, empty_slot } );
  nodes_.push_back( { var_count_, 1u, 1u, empty_slot } );
  if ( options_.cache_capacity > 0u )
  {
    cache_.assign( std::bit_ceil( options_.cache_capacity ), cache_entry{ empty_slot, 0u, 0u, 0u } );
  }
  else
  {
    cache_.assign( initial_cache, cache_entry{ empty_slot, 0u, 0u, 0u } );
  }
}

void bdd_manager::check( node_ref a ) const
{
  if ( !owns( a ) )
  {
    throw usage_error( "node handle does not belong to this BDD manager" );
  }
}

node_ref bdd_manager::var( uint32_t index )
{
  if ( index >= var_count_ )
  {
    throw usage_error( "variable index " + std::to_string( index ) + " out of range (manager has " +
                       std::to_string( var_count_ ) + " variables)" );
  }
  if ( var_nodes_[index] == empty_slot )
  {
    var_nodes_[index] = make_node( index, 0u, 1u );
  }
  return { var_nodes_[index], id_ };
}

uint32_t bdd_manager::make_node( uint32_t level, uint32_t low, uint32_t high )
{
  if ( low == high )
  {
    return low;
  }
  auto const mask = buckets_.size() - 1u;
  auto const bucket = mix( level, low, high ) & mask;
  for ( auto i = buckets_[bucket]; i != empty_slot; i = nodes_[i].next )
  {
    auto const& n = nodes_[i];
    if ( n.level == level && n.low == low && n.high == high )
    {
      return i;
    }
  }
  auto const index = static_cast<uint32_t>( nodes_.size() );
  nodes_.push_back( { level, low, high, buckets_[bucket] } );
  buckets_[bucket] = index;
  ++created_;
  if ( nodes_.size() > buckets_.size() )
  {
    grow_unique();
  }
  return index;
}

void bdd_manager::grow_unique()
{
  buckets_.assign( buckets_.size() * 2u, empty_slot );
  auto const mask = buckets_.size() - 1u;
  for ( uint32_t i = 2u; i < nodes_.size(); ++i )
  {
    auto& n = nodes_[i];
    auto const bucket = mix( n.level, n.low, n.high ) & mask;
    n.next = buckets_[bucket];
    buckets_[bucket] = i;
  }
}

bool bdd_manager::cache_lookup( uint32_t op, uint32_t a, uint32_t b, uint32_t& result ) const
{
  auto const mask = cache_.size() - 1u;
  auto slot = mix( a, b, op ) & mask;
  if ( options_.cache_capacity > 0u )
  {
    auto const& e = cache_[slot];
    if ( e.op == op && e.a == a && e.b == b )
    {
      result = e.result;
      return true;
    }
    return false;
  }
  while ( true )
  {
    auto const& e = cache_[slot];
    if ( e.op == empty_slot )
    {
      return false;
    }
    if ( e.op == op && e.a == a && e.b == b )
    {
      result = e.result;
      return true;
    }
    slot = ( slot + 1u ) & mask;
  }
}

void bdd_manager::cache_insert( uint32_t op, uint32_t a, uint32_t b, uint32_t result )
{
  auto const mask = cache_.size() - 1u;
  auto slot = mix( a, b, op ) & mask;
  if ( options_.cache_capacity > 0u )
  {
    cache_[slot] = { op, a, b, result };
    return;
  }
  while ( cache_[slot].op != empty_slot )
  {
    slot = ( slot + 1u ) & mask;
  }
  cache_[slot] = { op, a, b, result };
  if ( ++cache_used_ * 2u > cache_.size() )
  {
    grow_cache();
  }
}

void bdd_manager::grow_cache()
{
  std::vector<cache_entry> old( cache_.size() * 4u, cache_entry{ empty_slot, 0u, 0u, 0u } );
  old.swap( cache_ );
  auto const mask = cache_.size() - 1u;
  for ( auto const& e : old )
  {
    if ( e.op == empty_slot )
      continue;
    auto slot = mix( e.a, e.b, e.op ) & mask;
    while ( cache_[slot].op != empty_slot )
    {
      slot = ( slot + 1u ) & mask;
    }
    cache_[slot] = e;
  }
}

void bdd_manager::clear_cache()
{
  auto const size = options_.cache_capacity > 0u ? cache_.size() : initial_cache;
  cache_.assign( size, cache_entry{ empty_slot, 0u, 0u, 0u } );
  cache_used_ = 0;
}

uint32_t bdd_manager::not_rec( uint32_t a )
{
  if ( a < 2u )
  {
    return a ^ 1u;
  }
  uint32_t result;
  if ( cache_lookup( not_op, a, 0u, result ) )
  {
    return result;
  }
  auto const n = nodes_[a];
  auto const low = not_rec( n.low );
  auto const high = not_rec( n.high );
  result = make_node( n.level, low, high );
  cache_insert( not_op, a, 0u, result );
  return result;
}

uint32_t bdd_manager::apply_rec( uint32_t op, uint32_t a, uint32_t b )
{
  switch ( static_cast<bool_op>( op ) )
  {
  case bool_op::and_:
    if ( a == 0u || b == 0u )
      return 0u;
    if ( a == 1u || a == b )
      return b;
    if ( b == 1u )
      return a;
    break;
  case bool_op::or_:
    if ( a == 1u || b == 1u )
      return 1u;
    if ( a == 0u || a == b )
      return b;
    if ( b == 0u )
      return a;
    break;
  case bool_op::xor_:
    if ( a == b )
      return 0u;
    if ( a == 0u )
      return b;
    if ( b == 0u )
      return a;
    if ( a == 1u )
      return not_rec( b );
    if ( b == 1u )
      return not_rec( a );
    break;
  case bool_op::nand_:
    if ( a == 0u || b == 0u )
      return 1u;
    if ( a == 1u || a == b )
      return not_rec( b );
    if ( b == 1u )
      return not_rec( a );
    break;
  case bool_op::nor_:
    if ( a == 1u || b == 1u )
      return 0u;
    if ( a == 0u || a == b )
      return not_rec( b );
    if ( b == 0u )
      return not_rec( a );
    break;
  case bool_op::xnor_:
    if ( a == b )
      return 1u;
    if ( a == 1u )
      return b;
    if ( b == 1u )
      return a;
    if ( a == 0u )
      return not_rec( b );
    if ( b == 0u )
      return not_rec( a );
    break;
  case bool_op::and_not:
    if ( a == 0u || b == 1u || a == b )
      return 0u;
    if ( b == 0u )
      return a;
    if ( a == 1u )
      return not_rec( b );
    break;
  }
  if ( a > b && static_cast<bool_op>( op ) != bool_op::and_not )
  {
    std::swap( a, b );
  }
  uint32_t result;
  if ( cache_lookup( op, a, b, result ) )
  {
    return result;
  }
  auto const na = nodes_[a];
  auto const nb = nodes_[b];
  auto const top = std::min( na.level, nb.level );
  auto const a_low = na.level == top ? na.low : a;
  auto const a_high = na.level == top ? na.high : a;
  auto const b_low = nb.level == top ? nb.low : b;
  auto const b_high = nb.level == top ? nb.high : b;
  auto const low = apply_rec( op, a_low, b_low );
  auto const high = apply_rec( op, a_high, b_high );
  result = make_node( top, low, high );
  cache_insert( op, a, b, result );
  return result;
}

node_ref bdd_manager::apply( bool_op op, node_ref a, node_ref b )
{
  check( a );
  check( b );
  if ( static_cast<uint32_t>( op ) >= not_op )
    throw usage_error( "unknown Boolean operation" );
  return { apply_rec( static_cast<uint32_t>( op ), a.index_, b.index_ ), id_ };
}

node_ref bdd_manager::not_( node_ref a )
{
  check( a );
  return { not_rec( a.index_ ), id_ };
}

bool bdd_manager::is_sat( node_ref a ) const
{
  check( a );
  return a.index_ != 0u;
}

big_int const& bdd_manager::count_big( uint32_t a )
{
  if ( count_known_[a] )
  {
    return count_big_memo_[a];
  }
  auto const n = nodes_[a];
  big_int total = count_big( n.low );
  total <<= ( nodes_[n.low].level - n.level - 1u );
  big_int high = count_big( n.high );
  high <<= ( nodes_[n.high].level - n.level - 1u );
  total += high;
  count_known_[a] = 1u;
  count_big_memo_[a] = std::move( total );
  return count_big_memo_[a];
}

uint64_t bdd_manager::count_small( uint32_t a )
{
  if ( a < 2u )
  {
    return a;
  }
  if ( count_known_[a] )
  {
    return count_memo_[a];
  }
  auto const n = nodes_[a];
  auto const low = count_small( n.low ) << ( nodes_[n.low].level - n.level - 1u );
  auto const high = count_small( n.high ) << ( nodes_[n.high].level - n.level - 1u );
  count_known_[a] = 1u;
  count_memo_[a] = low + high;
  return low + high;
}

big_int bdd_manager::sat_count( node_ref a )
{
  check( a );
  auto const top = nodes_[a.index_].level;
  // counts of immutable nodes never change, so the memo outlives the call
  if ( count_known_.size() < nodes_.size() )
  {
    count_known_.resize( nodes_.size(), 0u );
    if ( var_count_ < 64u )
    {
      count_memo_.resize( nodes_.size() );
    }
    else
    {
      count_big_memo_.resize( nodes_.size() );
      count_big_memo_[1] = 1;
      count_known_[0] = count_known_[1] = 1u;
    }
  }
  if ( var_count_ < 64u )
  {
    return big_int( count_small( a.index_ ) << top );
  }
  big_int c = count_big( a.index_ );
  c <<= top;
  return c;
}

dyadic bdd_manager::sat_prob( node_ref a )
{
  return dyadic{ sat_count( a ), var_count_ };
}

std::vector<bool> bdd_manager::pick_sat( node_ref a ) const
{
  check( a );
  if ( a.index_ == 0u )
  {
    throw usage_error( "pick_sat on the FALSE terminal" );
  }
  std::vector<bool> assignment( var_count_, false );
  auto i = a.index_;
  while ( i > 1u )
  {
    auto const& n = nodes_[i];
    if ( n.low != 0u )
    {
      i = n.low;
    }
    else
    {
      assignment[n.level] = true;
      i = n.high;
    }
  }
  return assignment;
}

bool bdd_manager::evaluate( node_ref a, std::vector<bool> const& assignment ) const
{
  check( a );
  if ( assignment.size() != var_count_ )
  {
    throw usage_error( "assignment length does not match the variable count" );
  }
  auto i = a.index_;
  while ( i > 1u )
  {
    auto const& n = nodes_[i];
    i = assignment[n.level] ? n.high : n.low;
  }
  return i == 1u;
}

uint32_t bdd_manager::level( node_ref a ) const
{
  check( a );
  return nodes_[a.index_].level;
}

node_ref bdd_manager::low( node_ref a ) const
{
  check( a );
  return { nodes_[a.index_].low, id_ };
}

node_ref bdd_manager::high( node_ref a ) const
{
  check( a );
  return { nodes_[a.index_].high, id_ };
}

std::size_t bdd_manager::dag_size( node_ref a ) const
{
  check( a );
  std::vector<bool> seen( nodes_.size(), false );
  std::vector<uint32_t> stack{ a.index_ };
  std::size_t count = 0;
  while ( !stack.empty() )
  {
    auto const i = stack.back();
    stack.pop_back();
    if ( i < 2u || seen[i] )
      continue;
    seen[i] = true;
    ++count;
    stack.push_back( nodes_[i].low );
    stack.push_back( nodes_[i].high );
  }
  return count;
}

} // namespace approxbdd
