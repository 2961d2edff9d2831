#include "approxbdd/netlist.hpp"

#include "approxbdd/errors.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace approxbdd
{

namespace
{

struct op_name
{
  gate_op op;
  std::string_view name;
};

constexpr std::array<op_name, 10> op_names{ { { gate_op::buf, "BUF" },
                                              { gate_op::not_, "NOT" },
                                              { gate_op::and_, "AND" },
                                              { gate_op::or_, "OR" },
                                              { gate_op::xor_, "XOR" },
                                              { gate_op::nand_, "NAND" },
                                              { gate_op::nor_, "NOR" },
                                              { gate_op::xnor_, "XNOR" },
                                              { gate_op::const0, "CONST0" },
                                              { gate_op::const1, "CONST1" } } };

std::vector<std::string> tokenize( std::string_view line )
{
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && ( line[i] == ' ' || line[i] == '\t' || line[i] == '\r' ) )
      ++i;
    auto const start = i;
    while ( i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' )
      ++i;
    if ( i > start )
      tokens.emplace_back( line.substr( start, i - start ) );
  }
  return tokens;
}

struct raw_gate
{
  gate_op op;
  std::vector<std::string> fanin;
  std::string out;
  std::size_t line;
};

inline uint64_t lane_pattern( uint32_t input )
{
  constexpr std::array<uint64_t, 6> patterns{ 0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
                                              0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };
  return patterns[input];
}

} // namespace

uint32_t arity( gate_op op )
{
  switch ( op )
  {
  case gate_op::const0:
  case gate_op::const1:
    return 0u;
  case gate_op::buf:
  case gate_op::not_:
    return 1u;
  default:
    return 2u;
  }
}

std::string_view to_string( gate_op op )
{
  for ( auto const& [o, name] : op_names )
  {
    if ( o == op )
      return name;
  }
  return "?";
}

std::optional<gate_op> gate_op_from_string( std::string_view name )
{
  for ( auto const& [o, n] : op_names )
  {
    if ( n == name )
      return o;
  }
  return std::nullopt;
}

bool evaluate_gate( gate_op op, bool a, bool b )
{
  switch ( op )
  {
  case gate_op::buf:
    return a;
  case gate_op::not_:
    return !a;
  case gate_op::and_:
    return a && b;
  case gate_op::or_:
    return a || b;
  case gate_op::xor_:
    return a != b;
  case gate_op::nand_:
    return !( a && b );
  case gate_op::nor_:
    return !( a || b );
  case gate_op::xnor_:
    return a == b;
  case gate_op::const0:
    return false;
  case gate_op::const1:
    return true;
  }
  return false;
}

namespace
{

inline uint64_t evaluate_lanes( gate_op op, uint64_t a, uint64_t b )
{
  switch ( op )
  {
  case gate_op::buf:
    return a;
  case gate_op::not_:
    return ~a;
  case gate_op::and_:
    return a & b;
  case gate_op::or_:
    return a | b;
  case gate_op::xor_:
    return a ^ b;
  case gate_op::nand_:
    return ~( a & b );
  case gate_op::nor_:
    return ~( a | b );
  case gate_op::xnor_:
    return ~( a ^ b );
  case gate_op::const0:
    return 0u;
  case gate_op::const1:
    return ~uint64_t{ 0 };
  }
  return 0u;
}

} // namespace

std::string const& circuit::wire_name( wire_id w ) const
{
  if ( w < num_inputs() )
    return input_names[w];
  return gate_names.at( w - num_inputs() );
}

std::vector<bool> active_gates( circuit const& c )
{
  std::vector<bool> active( c.gates.size(), false );
  auto const n = c.num_inputs();
  for ( auto const w : c.outputs )
  {
    if ( w >= n )
      active[w - n] = true;
  }
  for ( auto g = c.gates.size(); g-- > 0; )
  {
    if ( !active[g] )
      continue;
    auto const& gt = c.gates[g];
    for ( uint32_t k = 0; k < arity( gt.op ); ++k )
    {
      if ( gt.fanin[k] >= n )
        active[gt.fanin[k] - n] = true;
    }
  }
  return active;
}

std::size_t active_gate_count( circuit const& c )
{
  auto const active = active_gates( c );
  return static_cast<std::size_t>( std::count( active.begin(), active.end(), true ) );
}

void validate( circuit const& c )
{
  if ( c.num_inputs() == 0u )
    throw usage_error( "circuit '" + c.name + "' has no inputs" );
  if ( c.outputs.empty() )
    throw usage_error( "circuit '" + c.name + "' has no outputs" );
  if ( c.gate_names.size() != c.gates.size() )
    throw usage_error( "circuit '" + c.name + "': gate name table size mismatch" );
  for ( std::size_t g = 0; g < c.gates.size(); ++g )
  {
    auto const& gt = c.gates[g];
    for ( uint32_t k = 0; k < arity( gt.op ); ++k )
    {
      if ( gt.fanin[k] >= c.gate_wire( g ) )
        throw usage_error( "circuit '" + c.name + "': gate " + c.gate_names[g] + " is not in topological order" );
    }
  }
  for ( auto const w : c.outputs )
  {
    if ( w >= c.num_wires() )
      throw usage_error( "circuit '" + c.name + "': output refers to an undefined wire" );
  }
}

circuit remove_inactive( circuit const& c )
{
  auto const active = active_gates( c );
  auto const n = c.num_inputs();
  std::vector<wire_id> remap( c.num_wires() );
  for ( wire_id i = 0; i < n; ++i )
    remap[i] = i;

  circuit r;
  r.name = c.name;
  r.input_names = c.input_names;
  r.is_signed = c.is_signed;
  for ( std::size_t g = 0; g < c.gates.size(); ++g )
  {
    if ( !active[g] )
      continue;
    auto gt = c.gates[g];
    for ( uint32_t k = 0; k < arity( gt.op ); ++k )
      gt.fanin[k] = remap[gt.fanin[k]];
    for ( uint32_t k = arity( gt.op ); k < 2u; ++k )
      gt.fanin[k] = 0u;
    remap[c.gate_wire( g )] = r.gate_wire( r.gates.size() );
    r.gates.push_back( gt );
    r.gate_names.push_back( c.gate_names[g] );
  }
  for ( auto const w : c.outputs )
    r.outputs.push_back( remap[w] );
  return r;
}

big_int int_value( output_word const& w )
{
  big_int v = 0;
  for ( std::size_t i = 0; i < w.bits.size(); ++i )
  {
    if ( w.bits[i] )
      bit_set( v, static_cast<unsigned>( i ) );
  }
  if ( w.is_signed && !w.bits.empty() && w.bits.back() )
  {
    v -= pow2( static_cast<uint32_t>( w.bits.size() ) );
  }
  return v;
}

parse_error::parse_error( kind k, std::size_t line, std::string const& message )
    : std::runtime_error( "line " + std::to_string( line ) + ": " + message ), kind_( k ), line_( line )
{
}

circuit parse_netlist( std::string_view text )
{
  using k = parse_error::kind;

  circuit c;
  bool have_model = false;
  bool have_inputs = false;
  bool have_outputs = false;
  std::size_t outputs_line = 0;
  std::vector<std::string> output_names;
  std::vector<raw_gate> raw;
  std::unordered_map<std::string, wire_id> inputs;
  std::unordered_map<std::string, std::size_t> gate_by_name;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while ( pos <= text.size() )
  {
    auto const eol = std::min( text.find( '\n', pos ), text.size() );
    auto line = text.substr( pos, eol - pos );
    pos = eol + 1;
    ++line_no;
    if ( auto hash = line.find( '#' ); hash != std::string_view::npos )
      line = line.substr( 0, hash );
    auto const tokens = tokenize( line );
    if ( tokens.empty() )
    {
      if ( eol == text.size() )
        break;
      continue;
    }
    auto const& directive = tokens[0];
    if ( directive == ".end" )
    {
      break;
    }
    if ( directive == ".model" )
    {
      if ( tokens.size() != 2u )
        throw parse_error( k::syntax, line_no, ".model expects exactly one name" );
      if ( have_model )
        throw parse_error( k::duplicate_definition, line_no, "duplicate .model" );
      c.name = tokens[1];
      have_model = true;
    }
    else if ( directive == ".inputs" )
    {
      if ( tokens.size() < 2u )
        throw parse_error( k::syntax, line_no, ".inputs expects at least one wire" );
      for ( std::size_t i = 1; i < tokens.size(); ++i )
      {
        if ( inputs.contains( tokens[i] ) )
          throw parse_error( k::duplicate_definition, line_no, "wire '" + tokens[i] + "' defined twice" );
        inputs.emplace( tokens[i], static_cast<wire_id>( c.input_names.size() ) );
        c.input_names.push_back( tokens[i] );
      }
      have_inputs = true;
    }
    else if ( directive == ".outputs" )
    {
      if ( tokens.size() < 2u )
        throw parse_error( k::syntax, line_no, ".outputs expects at least one wire" );
      if ( have_outputs )
        throw parse_error( k::duplicate_definition, line_no, "duplicate .outputs" );
      output_names.assign( tokens.begin() + 1, tokens.end() );
      outputs_line = line_no;
      have_outputs = true;
    }
    else if ( directive == ".signed" )
    {
      if ( tokens.size() != 2u || ( tokens[1] != "true" && tokens[1] != "false" ) )
        throw parse_error( k::syntax, line_no, ".signed expects 'true' or 'false'" );
      c.is_signed = tokens[1] == "true";
    }
    else if ( directive == ".gate" )
    {
      if ( tokens.size() < 2u )
        throw parse_error( k::syntax, line_no, ".gate expects an operation" );
      auto const op = gate_op_from_string( tokens[1] );
      if ( !op )
        throw parse_error( k::unknown_op, line_no, "unknown gate operation '" + tokens[1] + "'" );
      auto const ar = arity( *op );
      if ( tokens.size() != ar + 4u || tokens[ar + 2u] != "->" )
      {
        throw parse_error( k::syntax, line_no,
                           "expected '.gate " + tokens[1] + ( ar == 0u ? "" : ar == 1u ? " <in>" : " <in1> <in2>" ) +
                               " -> <out>'" );
      }
      auto const& out = tokens[ar + 3u];
      if ( inputs.contains( out ) || gate_by_name.contains( out ) )
        throw parse_error( k::duplicate_definition, line_no, "wire '" + out + "' defined twice" );
      gate_by_name.emplace( out, raw.size() );
      raw.push_back( { *op, { tokens.begin() + 2, tokens.begin() + 2 + ar }, out, line_no } );
    }
    else
    {
      throw parse_error( k::syntax, line_no, "unknown directive '" + directive + "'" );
    }
    if ( eol == text.size() )
      break;
  }

  if ( !have_model )
    throw parse_error( k::syntax, line_no, "missing .model" );
  if ( !have_inputs )
    throw parse_error( k::syntax, line_no, "missing .inputs" );
  if ( !have_outputs )
    throw parse_error( k::syntax, line_no, "missing .outputs" );

  for ( auto const& g : raw )
  {
    for ( auto const& in : g.fanin )
    {
      if ( !inputs.contains( in ) && !gate_by_name.contains( in ) )
        throw parse_error( k::undefined_wire, g.line, "undefined wire '" + in + "'" );
    }
  }
  for ( auto const& o : output_names )
  {
    if ( !inputs.contains( o ) && !gate_by_name.contains( o ) )
      throw parse_error( k::undefined_wire, outputs_line, "undefined wire '" + o + "'" );
  }

  // depth-first post-order; keeps file order when it is already topological
  enum class mark : uint8_t
  {
    none,
    visiting,
    done
  };
  std::vector<mark> marks( raw.size(), mark::none );
  std::vector<std::size_t> order;
  order.reserve( raw.size() );
  for ( std::size_t root = 0; root < raw.size(); ++root )
  {
    if ( marks[root] != mark::none )
      continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{ { root, 0u } };
    marks[root] = mark::visiting;
    while ( !stack.empty() )
    {
      auto& [g, next] = stack.back();
      if ( next < raw[g].fanin.size() )
      {
        auto const& in = raw[g].fanin[next++];
        auto const it = gate_by_name.find( in );
        if ( it == gate_by_name.end() )
          continue;
        auto const dep = it->second;
        if ( marks[dep] == mark::visiting )
          throw parse_error( k::cycle, raw[g].line, "combinational cycle through wire '" + in + "'" );
        if ( marks[dep] == mark::none )
        {
          marks[dep] = mark::visiting;
          stack.emplace_back( dep, 0u );
        }
        continue;
      }
      marks[g] = mark::done;
      order.push_back( g );
      stack.pop_back();
    }
  }

  std::unordered_map<std::string, wire_id> wires = inputs;
  for ( auto const g : order )
  {
    gate gt{ raw[g].op, { 0u, 0u } };
    for ( std::size_t i = 0; i < raw[g].fanin.size(); ++i )
      gt.fanin[i] = wires.at( raw[g].fanin[i] );
    wires.emplace( raw[g].out, c.gate_wire( c.gates.size() ) );
    c.gates.push_back( gt );
    c.gate_names.push_back( raw[g].out );
  }
  for ( auto const& o : output_names )
    c.outputs.push_back( wires.at( o ) );
  return c;
}

circuit read_netlist( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw std::runtime_error( "cannot open netlist '" + path + "'" );
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_netlist( ss.str() );
}

std::string emit_netlist( circuit const& c )
{
  std::ostringstream os;
  os << ".model " << c.name << '\n';
  os << ".inputs";
  for ( auto const& n : c.input_names )
    os << ' ' << n;
  os << "\n.outputs";
  for ( auto const w : c.outputs )
    os << ' ' << c.wire_name( w );
  os << "\n.signed " << ( c.is_signed ? "true" : "false" ) << '\n';
  for ( std::size_t g = 0; g < c.gates.size(); ++g )
  {
    auto const& gt = c.gates[g];
    os << ".gate " << to_string( gt.op );
    for ( uint32_t k = 0; k < arity( gt.op ); ++k )
      os << ' ' << c.wire_name( gt.fanin[k] );
    os << " -> " << c.gate_names[g] << '\n';
  }
  os << ".end\n";
  return os.str();
}

void write_netlist( circuit const& c, std::string const& path )
{
  std::ofstream out( path );
  if ( !out )
    throw std::runtime_error( "cannot write netlist '" + path + "'" );
  out << emit_netlist( c );
}

output_word simulate( circuit const& c, std::vector<bool> const& assignment )
{
  if ( assignment.size() != c.num_inputs() )
  {
    throw usage_error( "assignment has " + std::to_string( assignment.size() ) + " bits, circuit '" + c.name +
                       "' has " + std::to_string( c.num_inputs() ) + " inputs" );
  }
  std::vector<bool> wires( assignment.begin(), assignment.end() );
  wires.reserve( c.num_wires() );
  for ( auto const& g : c.gates )
  {
    auto const a = arity( g.op ) > 0u && wires[g.fanin[0]];
    auto const b = arity( g.op ) > 1u && wires[g.fanin[1]];
    wires.push_back( evaluate_gate( g.op, a, b ) );
  }
  output_word w{ {}, c.is_signed };
  for ( auto const o : c.outputs )
    w.bits.push_back( wires[o] );
  return w;
}

std::vector<uint64_t> simulate_lanes( circuit const& c, std::span<const uint64_t> inputs )
{
  if ( inputs.size() != c.num_inputs() )
    throw usage_error( "lane input count does not match circuit '" + c.name + "'" );
  std::vector<uint64_t> wires( inputs.begin(), inputs.end() );
  wires.reserve( c.num_wires() );
  for ( auto const& g : c.gates )
  {
    wires.push_back( evaluate_lanes( g.op, wires[g.fanin[0]], wires[g.fanin[1]] ) );
  }
  std::vector<uint64_t> out;
  out.reserve( c.outputs.size() );
  for ( auto const o : c.outputs )
    out.push_back( wires[o] );
  return out;
}

void check_same_interface( circuit const& f, circuit const& fp )
{
  if ( f.input_names != fp.input_names )
    throw interface_mismatch( "input lists of '" + f.name + "' and '" + fp.name + "' differ" );
  if ( f.num_outputs() != fp.num_outputs() )
    throw interface_mismatch( "output widths of '" + f.name + "' and '" + fp.name + "' differ" );
  if ( f.is_signed != fp.is_signed )
    throw interface_mismatch( "signedness of '" + f.name + "' and '" + fp.name + "' differs" );
}

oracle_result oracle_metrics( circuit const& f, circuit const& fp, uint32_t max_inputs )
{
  check_same_interface( f, fp );
  auto const n = f.num_inputs();
  auto const m = f.num_outputs();
  if ( n > max_inputs )
  {
    throw oracle_limit_error( "exhaustive oracle limited to " + std::to_string( max_inputs ) + " inputs, circuit has " +
                              std::to_string( n ) );
  }
  if ( m > 62u )
    throw usage_error( "exhaustive oracle supports at most 62 output bits" );

  uint64_t const total = uint64_t{ 1 } << n;
  uint64_t const lanes = std::min<uint64_t>( total, 64u );
  uint64_t const lane_mask = lanes == 64u ? ~uint64_t{ 0 } : ( uint64_t{ 1 } << lanes ) - 1u;
  int64_t const sign_weight = f.is_signed ? ( int64_t{ 1 } << m ) : 0;

  std::vector<uint64_t> in( n );
  int64_t wce = 0;
  unsigned __int128 abs_sum = 0;
  uint64_t differing = 0;

  for ( uint64_t base = 0; base < total; base += lanes )
  {
    for ( uint32_t i = 0; i < n; ++i )
      in[i] = i < 6u ? lane_pattern( i ) : ( ( base >> i ) & 1u ? ~uint64_t{ 0 } : 0u );
    auto const golden = simulate_lanes( f, in );
    auto const approx = simulate_lanes( fp, in );

    uint64_t diff = 0;
    for ( uint32_t j = 0; j < m; ++j )
      diff |= golden[j] ^ approx[j];
    diff &= lane_mask;
    differing += static_cast<uint64_t>( std::popcount( diff ) );

    while ( diff != 0u )
    {
      auto const lane = static_cast<uint32_t>( std::countr_zero( diff ) );
      diff &= diff - 1u;
      int64_t a = 0;
      int64_t b = 0;
      for ( uint32_t j = 0; j < m; ++j )
      {
        a |= static_cast<int64_t>( ( golden[j] >> lane ) & 1u ) << j;
        b |= static_cast<int64_t>( ( approx[j] >> lane ) & 1u ) << j;
      }
      if ( sign_weight != 0 )
      {
        if ( ( a >> ( m - 1u ) ) & 1 )
          a -= sign_weight;
        if ( ( b >> ( m - 1u ) ) & 1 )
          b -= sign_weight;
      }
      auto const e = a > b ? a - b : b - a;
      wce = std::max( wce, e );
      abs_sum += static_cast<uint64_t>( e );
    }
  }

  big_int sum = static_cast<uint64_t>( abs_sum >> 64 );
  sum <<= 64;
  sum += static_cast<uint64_t>( abs_sum );
  return { big_int( wce ), dyadic{ sum, n }, dyadic{ big_int( differing ), n } };
}

} // namespace approxbdd
