#include "approxbdd/arith.hpp"

#include "approxbdd/errors.hpp"

#include <algorithm>

namespace approxbdd
{

namespace
{

bdd_manager& shared_manager( bdd_word const& a, bdd_word const& b )
{
  if ( a.manager == nullptr || a.manager != b.manager )
    throw usage_error( "BDD words belong to different managers" );
  if ( a.bits.empty() || b.bits.empty() )
    throw usage_error( "empty BDD word" );
  return *a.manager;
}

/// Width at which both operands are exactly representable as signed words.
std::size_t signed_width( bdd_word const& w )
{
  return w.width() + ( w.is_signed ? 0u : 1u );
}

std::vector<node_ref> ripple( bdd_manager& m, bdd_word const& a, bdd_word const& b, bool invert_b, node_ref carry )
{
  std::vector<node_ref> sum;
  sum.reserve( a.width() );
  for ( std::size_t i = 0; i < a.width(); ++i )
  {
    // with invert_b the cell sees !b[i]; fused ops avoid materialising it
    auto const half = invert_b ? m.apply( bool_op::xnor_, a[i], b[i] ) : m.xor_( a[i], b[i] );
    sum.push_back( m.xor_( half, carry ) );
    if ( i + 1u < a.width() )
    {
      auto const generate = invert_b ? m.and_not( a[i], b[i] ) : m.and_( a[i], b[i] );
      carry = m.or_( generate, m.and_( half, carry ) );
    }
  }
  return sum;
}

} // namespace

bdd_word compile( bdd_manager& manager, circuit const& c )
{
  if ( manager.var_count() != c.num_inputs() )
  {
    throw usage_error( "manager has " + std::to_string( manager.var_count() ) + " variables, circuit '" + c.name +
                       "' has " + std::to_string( c.num_inputs() ) + " inputs" );
  }
  std::vector<node_ref> wires;
  wires.reserve( c.num_wires() );
  for ( uint32_t i = 0; i < c.num_inputs(); ++i )
    wires.push_back( manager.var( i ) );
  for ( auto const& g : c.gates )
  {
    auto const a = arity( g.op ) > 0u ? wires[g.fanin[0]] : manager.false_();
    auto const b = arity( g.op ) > 1u ? wires[g.fanin[1]] : manager.false_();
    node_ref r;
    switch ( g.op )
    {
    case gate_op::buf:
      r = a;
      break;
    case gate_op::not_:
      r = manager.not_( a );
      break;
    case gate_op::and_:
      r = manager.apply( bool_op::and_, a, b );
      break;
    case gate_op::or_:
      r = manager.apply( bool_op::or_, a, b );
      break;
    case gate_op::xor_:
      r = manager.apply( bool_op::xor_, a, b );
      break;
    case gate_op::nand_:
      r = manager.apply( bool_op::nand_, a, b );
      break;
    case gate_op::nor_:
      r = manager.apply( bool_op::nor_, a, b );
      break;
    case gate_op::xnor_:
      r = manager.apply( bool_op::xnor_, a, b );
      break;
    case gate_op::const0:
      r = manager.false_();
      break;
    case gate_op::const1:
      r = manager.true_();
      break;
    }
    wires.push_back( r );
  }
  bdd_word w{ &manager, {}, c.is_signed };
  w.bits.reserve( c.outputs.size() );
  for ( auto const o : c.outputs )
    w.bits.push_back( wires[o] );
  return w;
}

bdd_word extend( bdd_word const& w, std::size_t width )
{
  if ( w.manager == nullptr || w.bits.empty() )
    throw usage_error( "cannot extend an empty BDD word" );
  if ( width < w.width() )
    throw usage_error( "extend cannot narrow a word from " + std::to_string( w.width() ) + " to " +
                       std::to_string( width ) + " bits" );
  auto r = w;
  auto const fill = w.is_signed ? w.sign_bit() : w.manager->false_();
  r.bits.resize( width, fill );
  return r;
}

bdd_word add( bdd_word const& a, bdd_word const& b )
{
  auto& m = shared_manager( a, b );
  std::size_t width;
  bool result_signed;
  if ( a.is_signed == b.is_signed )
  {
    width = std::max( a.width(), b.width() ) + 1u;
    result_signed = a.is_signed;
  }
  else
  {
    width = std::max( signed_width( a ), signed_width( b ) ) + 1u;
    result_signed = true;
  }
  auto const ea = extend( a, width );
  auto const eb = extend( b, width );
  return { &m, ripple( m, ea, eb, false, m.false_() ), result_signed };
}

bdd_word subtract( bdd_word const& a, bdd_word const& b )
{
  auto& m = shared_manager( a, b );
  auto const width = a.is_signed == b.is_signed ? std::max( a.width(), b.width() ) + 1u
                                                : std::max( signed_width( a ), signed_width( b ) ) + 1u;
  auto const ea = extend( a, width );
  auto const eb = extend( b, width );
  return { &m, ripple( m, ea, eb, true, m.true_() ), true };
}

big_int evaluate( bdd_word const& w, std::vector<bool> const& assignment )
{
  output_word out{ {}, w.is_signed };
  for ( auto const bit : w.bits )
    out.bits.push_back( w.manager->evaluate( bit, assignment ) );
  return int_value( out );
}

} // namespace approxbdd
