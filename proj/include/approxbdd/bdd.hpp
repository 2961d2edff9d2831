#pragma once

#include "approxbdd/dyadic.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace approxbdd
{

class bdd_manager;

/// Handle to a node of one particular manager. Handles from different
/// managers never compare equal.
class node_ref
{
public:
  node_ref() = default;

  uint32_t index() const { return index_; }
  bool is_false() const { return index_ == 0u; }
  bool is_true() const { return index_ == 1u; }
  bool is_terminal() const { return index_ < 2u; }

  friend bool operator==( node_ref const&, node_ref const& ) = default;

private:
  friend class bdd_manager;
  node_ref( uint32_t index, uint32_t owner ) : index_( index ), owner_( owner ) {}

  uint32_t index_{ 0 };
  uint32_t owner_{ 0 };
};

enum class bool_op : uint8_t
{
  and_,
  or_,
  xor_,
  nand_,
  nor_,
  xnor_,
  and_not // a & !b, without building !b
};

struct bdd_options
{
  /// Operation-cache slots; 0 keeps every result (growable table).
  std::size_t cache_capacity{ 0 };
};

/// Reduced ordered BDD store without complement edges. Variable order equals
/// variable index and is fixed for the lifetime of the manager.
class bdd_manager
{
public:
  explicit bdd_manager( uint32_t var_count, bdd_options options = {} );

  bdd_manager( bdd_manager const& ) = delete;
  bdd_manager& operator=( bdd_manager const& ) = delete;

  uint32_t var_count() const { return var_count_; }

  node_ref false_() const { return { 0u, id_ }; }
  node_ref true_() const { return { 1u, id_ }; }
  node_ref constant( bool value ) const { return value ? true_() : false_(); }

  node_ref var( uint32_t index );

  node_ref apply( bool_op op, node_ref a, node_ref b );
  node_ref not_( node_ref a );
  node_ref and_( node_ref a, node_ref b ) { return apply( bool_op::and_, a, b ); }
  node_ref or_( node_ref a, node_ref b ) { return apply( bool_op::or_, a, b ); }
  node_ref xor_( node_ref a, node_ref b ) { return apply( bool_op::xor_, a, b ); }
  node_ref and_not( node_ref a, node_ref b ) { return apply( bool_op::and_not, a, b ); }

  bool is_sat( node_ref a ) const;

  /// Satisfying assignments over all `var_count()` variables.
  big_int sat_count( node_ref a );
  /// sat_count / 2^var_count, exponent kept at var_count.
  dyadic sat_prob( node_ref a );

  /// One satisfying assignment (don't-care variables set to 0). Requires is_sat.
  std::vector<bool> pick_sat( node_ref a ) const;
  bool evaluate( node_ref a, std::vector<bool> const& assignment ) const;

  /// Level of a node's variable; terminals report var_count().
  uint32_t level( node_ref a ) const;
  node_ref low( node_ref a ) const;
  node_ref high( node_ref a ) const;

  /// Internal nodes reachable from `a`.
  std::size_t dag_size( node_ref a ) const;

  std::size_t nodes_created() const { return created_; }
  void reset_node_counter() { created_ = 0; }
  /// Internal nodes currently stored (no garbage collection, so monotone).
  std::size_t node_count() const { return nodes_.size() - 2u; }

  void clear_cache();
  std::size_t cache_capacity() const { return options_.cache_capacity; }

  bool owns( node_ref a ) const { return a.owner_ == id_ && a.index_ < nodes_.size(); }

private:
  struct node
  {
    uint32_t level;
    uint32_t low;
    uint32_t high;
    uint32_t next; // unique-table chain
  };

  struct cache_entry
  {
    uint32_t op;
    uint32_t a;
    uint32_t b;
    uint32_t result;
  };

  static constexpr uint32_t empty_slot = 0xffffffffu;
  static constexpr uint32_t not_op = 7u;

  void check( node_ref a ) const;
  uint32_t make_node( uint32_t level, uint32_t low, uint32_t high );
  void grow_unique();

  uint32_t apply_rec( uint32_t op, uint32_t a, uint32_t b );
  uint32_t not_rec( uint32_t a );

  bool cache_lookup( uint32_t op, uint32_t a, uint32_t b, uint32_t& result ) const;
  void cache_insert( uint32_t op, uint32_t a, uint32_t b, uint32_t result );
  void grow_cache();

  uint64_t count_small( uint32_t a );
  big_int const& count_big( uint32_t a );

  uint32_t var_count_;
  uint32_t id_;
  bdd_options options_;
  std::vector<node> nodes_;
  std::vector<uint32_t> buckets_;
  std::vector<uint32_t> var_nodes_;
  std::vector<cache_entry> cache_;
  std::size_t cache_used_{ 0 };
  std::size_t created_{ 0 };

  std::vector<uint64_t> count_memo_;
  std::vector<big_int> count_big_memo_;
  std::vector<uint8_t> count_known_;
};

} // namespace approxbdd
