#pragma once

#include "approxbdd/netlist.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace approxbdd
{

enum class adder_kind : uint8_t
{
  rca,  // ripple-carry
  cla,  // carry-lookahead, 4-bit lookahead blocks rippled together
  cska  // carry-skip, 4-bit skip blocks
};

std::string_view to_string( adder_kind k );
std::optional<adder_kind> adder_kind_from_string( std::string_view s );

inline constexpr uint32_t adder_block_width = 4u;

/// Exact `bits`-bit adder. Inputs are interleaved a0 b0 a1 b1 ...; outputs
/// s0 .. s<bits> LSB first. Signed variants produce the sign-extended sum.
circuit gen_adder( adder_kind kind, uint32_t bits, bool is_signed );

/// Uniform draw in [0, bound) that is identical on every standard library.
inline uint64_t draw( std::mt19937_64& rng, uint64_t bound )
{
  return rng() % bound;
}

/// Applies `edits` random point mutations (operation change, rewiring to an
/// earlier wire, or constant replacement). Inputs, outputs and signedness
/// stay fixed. Deterministic in `seed`.
circuit mutate( circuit const& c, uint64_t seed, uint32_t edits );

/// Seed of the i-th member of a mutant family, mixed with splitmix64.
uint64_t derive_seed( uint64_t base, uint64_t index );

} // namespace approxbdd
