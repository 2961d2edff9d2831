#include "approxbdd/generators.hpp"

#include "approxbdd/errors.hpp"

#include <array>
#include <map>
#include <string>

namespace approxbdd
{

namespace
{

class netlist_builder
{
public:
  netlist_builder( std::string name, uint32_t bits, bool is_signed )
  {
    c_.name = std::move( name );
    c_.is_signed = is_signed;
    for ( uint32_t i = 0; i < bits; ++i )
    {
      c_.input_names.push_back( "a" + std::to_string( i ) );
      c_.input_names.push_back( "b" + std::to_string( i ) );
    }
  }

  wire_id a( uint32_t i ) const { return 2u * i; }
  wire_id b( uint32_t i ) const { return 2u * i + 1u; }

  wire_id add( gate_op op, wire_id x, wire_id y = 0u )
  {
    gate g{ op, { 0u, 0u } };
    if ( arity( op ) > 0u )
      g.fanin[0] = x;
    if ( arity( op ) > 1u )
      g.fanin[1] = y;
    c_.gates.push_back( g );
    c_.gate_names.push_back( "n" + std::to_string( c_.gates.size() ) );
    return c_.gate_wire( c_.gates.size() - 1u );
  }

  wire_id and_( wire_id x, wire_id y ) { return add( gate_op::and_, x, y ); }
  wire_id or_( wire_id x, wire_id y ) { return add( gate_op::or_, x, y ); }
  wire_id xor_( wire_id x, wire_id y ) { return add( gate_op::xor_, x, y ); }

  /// Sum bit of the sign-extended operands: a[msb] ^ b[msb] ^ carry.
  wire_id sign_cell( uint32_t msb, wire_id carry ) { return xor_( xor_( a( msb ), b( msb ) ), carry ); }

  circuit finish( std::vector<wire_id> const& outputs )
  {
    c_.outputs = outputs;
    for ( std::size_t i = 0; i < outputs.size(); ++i )
      c_.gate_names.at( outputs[i] - c_.num_inputs() ) = "s" + std::to_string( i );
    return std::move( c_ );
  }

private:
  circuit c_;
};

std::string adder_name( adder_kind kind, uint32_t bits, bool is_signed )
{
  return std::string( to_string( kind ) ) + std::to_string( bits ) + ( is_signed ? "s" : "u" );
}

circuit gen_rca( uint32_t bits, bool is_signed )
{
  netlist_builder nb( adder_name( adder_kind::rca, bits, is_signed ), bits, is_signed );
  std::vector<wire_id> out;
  auto carry = nb.and_( nb.a( 0 ), nb.b( 0 ) );
  out.push_back( nb.xor_( nb.a( 0 ), nb.b( 0 ) ) );
  for ( uint32_t i = 1; i < bits; ++i )
  {
    auto const half = nb.xor_( nb.a( i ), nb.b( i ) );
    out.push_back( nb.xor_( half, carry ) );
    carry = nb.or_( nb.and_( nb.a( i ), nb.b( i ) ), nb.and_( half, carry ) );
  }
  out.push_back( is_signed ? nb.sign_cell( bits - 1u, carry ) : carry );
  return nb.finish( out );
}

circuit gen_cla( uint32_t bits, bool is_signed )
{
  netlist_builder nb( adder_name( adder_kind::cla, bits, is_signed ), bits, is_signed );
  std::vector<wire_id> p, g;
  for ( uint32_t i = 0; i < bits; ++i )
  {
    p.push_back( nb.xor_( nb.a( i ), nb.b( i ) ) );
    g.push_back( nb.and_( nb.a( i ), nb.b( i ) ) );
  }

  std::vector<wire_id> carry( bits + 1u );
  std::optional<wire_id> block_in; // carry into the current block; none for block 0
  for ( uint32_t lo = 0; lo < bits; lo += adder_block_width )
  {
    auto const hi = std::min( bits, lo + adder_block_width ); // exclusive
    // prefix products p[t] & ... & p[k-1], shared inside the block
    std::map<std::pair<uint32_t, uint32_t>, wire_id> products;
    auto product = [&]( uint32_t from, uint32_t to ) { // inclusive range
      auto const key = std::make_pair( from, to );
      if ( auto it = products.find( key ); it != products.end() )
        return it->second;
      wire_id w = p[to];
      for ( auto t = to; t-- > from; )
      {
        auto const sub = std::make_pair( t, to );
        if ( auto it = products.find( sub ); it != products.end() )
        {
          w = it->second;
          continue;
        }
        w = nb.and_( p[t], w );
        products.emplace( sub, w );
      }
      products.emplace( key, w );
      return w;
    };

    for ( auto k = lo + 1u; k <= hi; ++k )
    {
      wire_id c = g[k - 1u];
      for ( auto t = k - 1u; t-- > lo; )
        c = nb.or_( c, nb.and_( g[t], product( t + 1u, k - 1u ) ) );
      if ( block_in )
        c = nb.or_( c, nb.and_( product( lo, k - 1u ), *block_in ) );
      carry[k] = c;
    }
    block_in = carry[hi];
  }

  std::vector<wire_id> out{ p[0] };
  for ( uint32_t i = 1; i < bits; ++i )
    out.push_back( nb.xor_( p[i], carry[i] ) );
  out.push_back( is_signed ? nb.sign_cell( bits - 1u, carry[bits] ) : carry[bits] );
  return nb.finish( out );
}

circuit gen_cska( uint32_t bits, bool is_signed )
{
  netlist_builder nb( adder_name( adder_kind::cska, bits, is_signed ), bits, is_signed );
  std::vector<wire_id> out;
  std::optional<wire_id> carry;
  for ( uint32_t lo = 0; lo < bits; lo += adder_block_width )
  {
    auto const hi = std::min( bits, lo + adder_block_width );
    auto const block_in = carry;
    std::vector<wire_id> propagate;
    for ( auto i = lo; i < hi; ++i )
    {
      auto const half = nb.xor_( nb.a( i ), nb.b( i ) );
      propagate.push_back( half );
      if ( !carry )
      {
        out.push_back( half );
        carry = nb.and_( nb.a( i ), nb.b( i ) );
        continue;
      }
      out.push_back( nb.xor_( half, *carry ) );
      carry = nb.or_( nb.and_( nb.a( i ), nb.b( i ) ), nb.and_( half, *carry ) );
    }
    if ( block_in )
    {
      auto skip = propagate[0];
      for ( std::size_t k = 1; k < propagate.size(); ++k )
        skip = nb.and_( skip, propagate[k] );
      carry = nb.or_( *carry, nb.and_( skip, *block_in ) );
    }
  }
  out.push_back( is_signed ? nb.sign_cell( bits - 1u, *carry ) : *carry );
  return nb.finish( out );
}

constexpr std::array<gate_op, 8> logic_ops{ gate_op::buf,  gate_op::not_,  gate_op::and_, gate_op::or_,
                                            gate_op::xor_, gate_op::nand_, gate_op::nor_,  gate_op::xnor_ };

} // namespace

std::string_view to_string( adder_kind k )
{
  switch ( k )
  {
  case adder_kind::rca:
    return "rca";
  case adder_kind::cla:
    return "cla";
  case adder_kind::cska:
    return "cska";
  }
  return "?";
}

std::optional<adder_kind> adder_kind_from_string( std::string_view s )
{
  for ( auto k : { adder_kind::rca, adder_kind::cla, adder_kind::cska } )
    if ( to_string( k ) == s )
      return k;
  return std::nullopt;
}

circuit gen_adder( adder_kind kind, uint32_t bits, bool is_signed )
{
  if ( bits < 1u || bits > 32u )
    throw usage_error( "adder width must be in [1, 32], got " + std::to_string( bits ) );
  switch ( kind )
  {
  case adder_kind::rca:
    return gen_rca( bits, is_signed );
  case adder_kind::cla:
    return gen_cla( bits, is_signed );
  case adder_kind::cska:
    return gen_cska( bits, is_signed );
  }
  throw usage_error( "unknown adder kind" );
}

circuit mutate( circuit const& c, uint64_t seed, uint32_t edits )
{
  if ( edits == 0u )
    throw usage_error( "mutate needs at least one edit" );
  auto r = c;
  if ( r.gates.empty() )
    return r;

  std::mt19937_64 rng( seed );
  for ( uint32_t e = 0; e < edits; ++e )
  {
    for ( int attempt = 0; attempt < 64; ++attempt )
    {
      auto const g = draw( rng, r.gates.size() );
      auto const wire = r.gate_wire( g );
      auto const before = r.gates[g];
      auto& gt = r.gates[g];
      switch ( draw( rng, 3u ) )
      {
      case 0u: {
        auto const op = logic_ops[draw( rng, logic_ops.size() )];
        for ( auto k = arity( gt.op ); k < arity( op ); ++k )
          gt.fanin[k] = static_cast<wire_id>( draw( rng, wire ) );
        gt.op = op;
        break;
      }
      case 1u:
        if ( arity( gt.op ) > 0u )
          gt.fanin[draw( rng, arity( gt.op ) )] = static_cast<wire_id>( draw( rng, wire ) );
        break;
      default:
        gt.op = draw( rng, 2u ) == 0u ? gate_op::const0 : gate_op::const1;
        break;
      }
      for ( auto k = arity( gt.op ); k < 2u; ++k )
        gt.fanin[k] = 0u;
      if ( !( gt == before ) )
        break;
    }
  }
  return r;
}

uint64_t derive_seed( uint64_t base, uint64_t index )
{
  uint64_t z = base + 0x9e3779b97f4a7c15ull * ( index + 1u );
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

} // namespace approxbdd
