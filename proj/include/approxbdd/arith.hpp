#pragma once

#include "approxbdd/bdd.hpp"
#include "approxbdd/netlist.hpp"

#include <cstddef>
#include <vector>

namespace approxbdd
{

/// Multi-bit function as one BDD per bit, LSB first. The sign bit of a
/// signed word is its last element.
struct bdd_word
{
  bdd_manager* manager{ nullptr };
  std::vector<node_ref> bits;
  bool is_signed{ false };

  std::size_t width() const { return bits.size(); }
  node_ref sign_bit() const { return bits.back(); }
  node_ref operator[]( std::size_t i ) const { return bits[i]; }
};

/// Builds the output BDDs of `c`; input i becomes manager variable i.
bdd_word compile( bdd_manager& manager, circuit const& c );

/// Zero- or sign-extends to `width` bits.
bdd_word extend( bdd_word const& w, std::size_t width );

/// Ripple-carry sum, wide enough never to overflow.
bdd_word add( bdd_word const& a, bdd_word const& b );

/// Ripple-carry difference a - b as a signed word of width max(width)+1
/// (for equal signedness); the carry-out is discarded.
bdd_word subtract( bdd_word const& a, bdd_word const& b );

/// Integer value of the word under one input assignment (test helper).
big_int evaluate( bdd_word const& w, std::vector<bool> const& assignment );

} // namespace approxbdd
