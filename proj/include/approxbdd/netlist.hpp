#pragma once

#include "approxbdd/dyadic.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace approxbdd
{

enum class gate_op : uint8_t
{
  buf,
  not_,
  and_,
  or_,
  xor_,
  nand_,
  nor_,
  xnor_,
  const0,
  const1
};

/// Number of fan-ins a gate operation takes (0, 1 or 2).
uint32_t arity( gate_op op );
std::string_view to_string( gate_op op );
std::optional<gate_op> gate_op_from_string( std::string_view name );
bool evaluate_gate( gate_op op, bool a, bool b );

/// Wire ids: [0, num_inputs) are primary inputs, num_inputs + g is the output
/// of gate g.
using wire_id = uint32_t;

struct gate
{
  gate_op op{ gate_op::const0 };
  std::array<wire_id, 2> fanin{ 0u, 0u };

  friend bool operator==( gate const&, gate const& ) = default;
};

/// Combinational gate netlist. Gates are stored in topological order, so every
/// fan-in of gate g is a wire id smaller than num_inputs + g.
struct circuit
{
  std::string name;
  std::vector<std::string> input_names;
  std::vector<gate> gates;
  std::vector<std::string> gate_names;
  std::vector<wire_id> outputs; // LSB first
  bool is_signed{ false };

  uint32_t num_inputs() const { return static_cast<uint32_t>( input_names.size() ); }
  uint32_t num_outputs() const { return static_cast<uint32_t>( outputs.size() ); }
  uint32_t num_wires() const { return num_inputs() + static_cast<uint32_t>( gates.size() ); }
  wire_id gate_wire( std::size_t g ) const { return num_inputs() + static_cast<wire_id>( g ); }
  std::string const& wire_name( wire_id w ) const;

  friend bool operator==( circuit const&, circuit const& ) = default;
};

/// Gates in the transitive fan-in of the outputs.
std::vector<bool> active_gates( circuit const& c );
std::size_t active_gate_count( circuit const& c );

/// Checks the structural invariants; throws usage_error on violation.
void validate( circuit const& c );

/// Drops gates that do not reach an output, keeping names and interface.
circuit remove_inactive( circuit const& c );

struct output_word
{
  std::vector<bool> bits; // LSB first
  bool is_signed{ false };
};

big_int int_value( output_word const& w );

class parse_error : public std::runtime_error
{
public:
  enum class kind
  {
    syntax,
    undefined_wire,
    cycle,
    duplicate_definition,
    unknown_op
  };

  parse_error( kind k, std::size_t line, std::string const& message );

  kind error_kind() const { return kind_; }
  std::size_t line() const { return line_; }

private:
  kind kind_;
  std::size_t line_;
};

circuit parse_netlist( std::string_view text );
circuit read_netlist( std::string const& path );
std::string emit_netlist( circuit const& c );
void write_netlist( circuit const& c, std::string const& path );

output_word simulate( circuit const& c, std::vector<bool> const& assignment );

/// Bit-parallel simulation of 64 assignments at once; `inputs[i]` holds lane
/// values of input i. Returns one word per output.
std::vector<uint64_t> simulate_lanes( circuit const& c, std::span<const uint64_t> inputs );

struct oracle_result
{
  big_int wce;
  dyadic mae;
  dyadic error_rate;
};

inline constexpr uint32_t default_oracle_limit = 24u;

/// Throws interface_mismatch when the two circuits do not share an interface.
void check_same_interface( circuit const& f, circuit const& fp );

/// Exhaustive enumeration of all 2^n inputs.
oracle_result oracle_metrics( circuit const& f, circuit const& fp, uint32_t max_inputs = default_oracle_limit );

} // namespace approxbdd
