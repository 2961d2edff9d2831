#pragma once

#include "approxbdd/metrics.hpp"
#include "approxbdd/netlist.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace approxbdd
{

struct search_config
{
  metric_kind metric{ metric_kind::wce };
  big_rational tau{ 0 };
  algorithm algo{ algorithm::noabs };
  uint32_t lambda{ 4 };
  uint32_t edits{ 2 };
  std::optional<uint64_t> max_evaluations;
  std::optional<uint64_t> max_generations;
  std::optional<std::chrono::nanoseconds> time_budget;
  uint64_t rng_seed{ 1 };
  bdd_options bdd{};
};

/// Throws usage_error for a negative threshold, lambda or edits of zero, a
/// metric other than wce/mae, or no budget at all.
void validate( search_config const& cfg );

struct generation_record
{
  uint64_t generation{ 0 };
  std::size_t best_size{ 0 };
  dyadic best_error;
  uint64_t evals{ 0 };
  int64_t elapsed_ns{ 0 };
};

struct search_result
{
  circuit best;
  dyadic best_error;
  std::vector<generation_record> history;
};

/// (1+lambda) loop minimising the active gate count of f' subject to
/// e(f, f') <= tau, always measured against the seed as golden circuit.
/// Offspring replace the parent on equal fitness.
search_result run_search( circuit const& seed, search_config const& cfg );

/// fraction * 2^m, the threshold expressed as a share of the output range.
big_rational range_fraction_threshold( circuit const& c, big_rational const& fraction );

/// One JSON object per line; timing is the only nondeterministic field.
void write_history_jsonl( std::vector<generation_record> const& history, std::ostream& os );

} // namespace approxbdd
