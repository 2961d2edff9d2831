#include "approxbdd/search.hpp"

#include "approxbdd/errors.hpp"
#include "approxbdd/generators.hpp"

#include <json.hpp>

#include <limits>

namespace approxbdd
{

void validate( search_config const& cfg )
{
  if ( cfg.tau < 0 )
    throw usage_error( "threshold must be non-negative" );
  if ( cfg.lambda == 0u )
    throw usage_error( "lambda must be at least 1" );
  if ( cfg.edits == 0u )
    throw usage_error( "edits per mutation must be at least 1" );
  if ( cfg.metric == metric_kind::error_rate )
    throw usage_error( "search supports the wce and mae metrics" );
  if ( cfg.algo == algorithm::direct )
    throw usage_error( "search needs a wce/mae algorithm" );
  if ( !cfg.max_evaluations && !cfg.max_generations && !cfg.time_budget )
    throw usage_error( "search needs an evaluation, generation or time budget" );
}

search_result run_search( circuit const& seed, search_config const& cfg )
{
  validate( cfg );
  using clock_type = std::chrono::steady_clock;
  auto const start = clock_type::now();
  constexpr auto infeasible = std::numeric_limits<std::size_t>::max();

  search_result result{ seed, dyadic{ 0, cfg.metric == metric_kind::mae ? seed.num_inputs() : 0u }, {} };
  auto parent_size = active_gate_count( seed );
  uint64_t evals = 0;
  uint64_t generation = 0;

  auto budget_left = [&]() {
    if ( cfg.max_evaluations && evals >= *cfg.max_evaluations )
      return false;
    if ( cfg.time_budget && clock_type::now() - start >= *cfg.time_budget )
      return false;
    return true;
  };

  while ( budget_left() && !( cfg.max_generations && generation >= *cfg.max_generations ) )
  {
    ++generation;
    std::optional<circuit> best_child;
    dyadic best_child_error;
    std::size_t best_child_size = infeasible;

    for ( uint32_t j = 0; j < cfg.lambda && budget_left(); ++j )
    {
      auto child = mutate( result.best, derive_seed( cfg.rng_seed, evals ), cfg.edits );
      auto const ev = evaluate_pair( seed, child, cfg.metric, cfg.algo, cfg.bdd );
      ++evals;
      auto const size = ev.result.value.to_rational() <= cfg.tau ? active_gate_count( child ) : infeasible;
      if ( size < best_child_size )
      {
        best_child_size = size;
        best_child = std::move( child );
        best_child_error = ev.result.value;
      }
    }

    if ( best_child && best_child_size != infeasible && best_child_size <= parent_size )
    {
      result.best = std::move( *best_child );
      result.best_error = std::move( best_child_error );
      parent_size = best_child_size;
    }

    auto const elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>( clock_type::now() - start ).count();
    result.history.push_back( { generation, parent_size, result.best_error, evals, elapsed } );
  }
  return result;
}

big_rational range_fraction_threshold( circuit const& c, big_rational const& fraction )
{
  return fraction * big_rational( pow2( c.num_outputs() ) );
}

void write_history_jsonl( std::vector<generation_record> const& history, std::ostream& os )
{
  for ( auto const& h : history )
  {
    nlohmann::ordered_json j;
    j["generation"] = h.generation;
    j["best_size"] = h.best_size;
    if ( h.best_error.num <= std::numeric_limits<uint64_t>::max() )
      j["best_error_numerator"] = static_cast<uint64_t>( h.best_error.num );
    else
      j["best_error_numerator"] = h.best_error.num.str();
    j["best_error_denominator_exp"] = h.best_error.exp;
    j["evals"] = h.evals;
    j["elapsed_ns"] = h.elapsed_ns;
    os << j.dump() << '\n';
  }
}

} // namespace approxbdd
