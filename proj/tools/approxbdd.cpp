// approxbdd: exact error analysis of approximate arithmetic circuits.
//
// Exit codes: 0 ok, 1 I/O or internal error, 2 usage (bad flags, bad netlist
// or corpus spec), 3 interface mismatch, 4 oracle input limit, 5 verification
// failure.

#include "approxbdd/bench.hpp"
#include "approxbdd/errors.hpp"
#include "approxbdd/generators.hpp"
#include "approxbdd/metrics.hpp"
#include "approxbdd/netlist.hpp"
#include "approxbdd/search.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace approxbdd;

namespace
{

enum exit_code : int
{
  ok = 0,
  failure = 1,
  usage = 2,
  mismatch = 3,
  oracle_limit = 4,
  verify_failed = 5
};

std::string read_file( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw std::runtime_error( "cannot open '" + path + "'" );
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

circuit load_circuit( std::string const& path, std::string const& signedness )
{
  auto c = read_netlist( path );
  if ( signedness == "signed" )
    c.is_signed = true;
  else if ( signedness == "unsigned" )
    c.is_signed = false;
  return c;
}

std::string format_value( dyadic const& v )
{
  if ( v.num == 0 || v.exp == 0 )
    return v.num.str();
  char dec[64];
  std::snprintf( dec, sizeof dec, "%.10g", v.to_double() );
  return v.str() + " (" + dec + ")";
}

std::string format_rational( big_rational const& r )
{
  char dec[64];
  std::snprintf( dec, sizeof dec, "%.10g", static_cast<double>( r ) );
  auto exact = numerator( r ).str();
  if ( denominator( r ) != 1 )
    exact += "/" + denominator( r ).str();
  return exact + " (" + dec + ")";
}

void write_text( std::string const& path, std::string const& text )
{
  if ( path.empty() || path == "-" )
  {
    std::cout << text;
    return;
  }
  std::ofstream out( path );
  if ( !out )
    throw std::runtime_error( "cannot write '" + path + "'" );
  out << text;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Exact BDD-based error analysis of approximate arithmetic circuits" };
  app.require_subcommand( 1 );

  // gen
  auto* gen = app.add_subcommand( "gen", "Write an exact adder netlist" );
  std::string gen_kind = "rca";
  uint32_t gen_bits = 0;
  bool gen_signed = false;
  std::string gen_out;
  gen->add_option( "--kind", gen_kind, "rca, cla or cska" )->check( CLI::IsMember( { "rca", "cla", "cska" } ) );
  gen->add_option( "--bits", gen_bits, "Operand width" )->required()->check( CLI::Range( 1u, 32u ) );
  gen->add_flag( "--signed", gen_signed, "Two's-complement operands" );
  gen->add_option( "--out", gen_out, "Output file (stdout when omitted)" );

  // eval
  auto* eval = app.add_subcommand( "eval", "Compute one error metric" );
  std::string golden_path, approx_path, signedness;
  std::string eval_metric = "wce";
  std::string eval_algo = "noabs";
  bool relative = false;
  uint32_t oracle_bits = default_oracle_limit;
  std::size_t cache_capacity = 0;
  eval->add_option( "--golden", golden_path, "Exact circuit" )->required();
  eval->add_option( "--approx", approx_path, "Approximate circuit" )->required();
  eval->add_option( "--metric", eval_metric, "wce, mae or ep" )->check( CLI::IsMember( { "wce", "mae", "ep" } ) );
  eval->add_option( "--algo", eval_algo, "baseline, ones, noabs or oracle" )
      ->check( CLI::IsMember( { "baseline", "ones", "noabs", "oracle" } ) );
  eval->add_flag( "--relative", relative, "Also print the value divided by 2^m - 1" );
  eval->add_option( "--signedness", signedness, "Override circuit signedness" )
      ->check( CLI::IsMember( { "signed", "unsigned" } ) );
  eval->add_option( "--oracle-limit", oracle_bits, "Largest input count the oracle enumerates" );
  eval->add_option( "--cache", cache_capacity, "Operation-cache slots (0 = unbounded)" );

  // verify
  auto* verify = app.add_subcommand( "verify", "Run all algorithms (and the oracle) and check agreement" );
  uint32_t max_oracle_bits = 20;
  std::string inject_fault;
  verify->add_option( "--golden", golden_path, "Exact circuit" )->required();
  verify->add_option( "--approx", approx_path, "Approximate circuit" )->required();
  verify->add_option( "--max-oracle-bits", max_oracle_bits, "Run the oracle up to this many inputs" );
  verify->add_option( "--signedness", signedness, "Override circuit signedness" )
      ->check( CLI::IsMember( { "signed", "unsigned" } ) );
  verify->add_option( "--inject-fault", inject_fault, "Testing aid: add 1 to one routine's result" )
      ->group( "" )
      ->check( CLI::IsMember( { "wce/baseline", "wce/ones", "wce/noabs", "mae/baseline", "mae/ones", "mae/noabs" } ) );

  // bench
  auto* bench = app.add_subcommand( "bench", "Time all algorithms over a generated corpus" );
  std::string spec_path, csv_path, jsonl_path, summary_path;
  uint32_t workers = 0;
  bench->add_option( "--spec", spec_path, "Corpus spec (JSON)" )->required();
  bench->add_option( "--out-csv", csv_path, "Per-record CSV" );
  bench->add_option( "--out-jsonl", jsonl_path, "Per-record JSON lines" );
  bench->add_option( "--summary-csv", summary_path, "Summary CSV" );
  bench->add_option( "--workers", workers, "Worker threads (overrides the spec)" );

  // search
  auto* search = app.add_subcommand( "search", "Threshold-constrained approximation search" );
  std::string seed_path, out_path, log_path, tau_text = "0";
  search_config cfg;
  std::string search_metric = "wce", search_algo = "noabs";
  uint64_t budget = 10000;
  uint64_t generations = 0;
  double time_limit = 0.0;
  search->add_option( "--seed-circuit", seed_path, "Exact seed circuit (also the golden circuit)" )->required();
  search->add_option( "--metric", search_metric, "wce or mae" )->check( CLI::IsMember( { "wce", "mae" } ) );
  search->add_option( "--tau", tau_text, "Error threshold: integer, decimal, a/b or a/2^k" );
  search->add_option( "--algo", search_algo, "baseline, ones, noabs or oracle" )
      ->check( CLI::IsMember( { "baseline", "ones", "noabs", "oracle" } ) );
  search->add_option( "--lambda", cfg.lambda, "Offspring per generation" )->check( CLI::PositiveNumber );
  search->add_option( "--edits", cfg.edits, "Point mutations per offspring" )->check( CLI::PositiveNumber );
  search->add_option( "--budget", budget, "Maximum evaluations (0 = unlimited)" );
  search->add_option( "--generations", generations, "Maximum generations (0 = unlimited)" );
  search->add_option( "--time-limit", time_limit, "Wall-clock limit in seconds (0 = unlimited)" );
  search->add_option( "--rng-seed", cfg.rng_seed, "Random seed" );
  search->add_option( "--out", out_path, "Best netlist (stdout when omitted)" );
  search->add_option( "--log", log_path, "Generation log (JSON lines)" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::CallForHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::CallForAllHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::ParseError const& e )
  {
    app.exit( e );
    return usage;
  }

  try
  {
    if ( gen->parsed() )
    {
      write_text( gen_out, emit_netlist( gen_adder( *adder_kind_from_string( gen_kind ), gen_bits, gen_signed ) ) );
      return ok;
    }

    if ( eval->parsed() )
    {
      auto const f = load_circuit( golden_path, signedness );
      auto const fp = load_circuit( approx_path, signedness );
      check_same_interface( f, fp );
      if ( eval_algo == "oracle" && f.num_inputs() >= 20u && f.num_inputs() <= oracle_bits )
      {
        std::cerr << "warning: exhaustive oracle over 2^" << f.num_inputs() << " inputs may take a long time\n";
      }
      auto const metric = *metric_from_string( eval_metric );
      auto algo = *algorithm_from_string( eval_algo );
      if ( metric == metric_kind::error_rate && algo != algorithm::oracle )
        algo = algorithm::direct;
      auto const ev = evaluate_pair( f, fp, metric, algo, bdd_options{ cache_capacity }, oracle_bits );
      std::cout << format_value( ev.result.value ) << '\n';
      if ( relative )
        std::cout << "relative " << format_rational( ev.result.relative() ) << '\n';
      return ok;
    }

    if ( verify->parsed() )
    {
      auto const f = load_circuit( golden_path, signedness );
      auto const fp = load_circuit( approx_path, signedness );
      algorithm_table table;
      if ( !inject_fault.empty() )
      {
        auto corrupt = []( metric_fn fn ) -> metric_fn {
          return [fn]( bdd_word const& eps ) {
            auto v = fn( eps );
            v.value.num += pow2( v.value.exp );
            return v;
          };
        };
        if ( inject_fault == "wce/baseline" )
          table.wce_baseline = corrupt( table.wce_baseline );
        else if ( inject_fault == "wce/ones" )
          table.wce_ones = corrupt( table.wce_ones );
        else if ( inject_fault == "wce/noabs" )
          table.wce_noabs = corrupt( table.wce_noabs );
        else if ( inject_fault == "mae/baseline" )
          table.mae_baseline = corrupt( table.mae_baseline );
        else if ( inject_fault == "mae/ones" )
          table.mae_ones = corrupt( table.mae_ones );
        else
          table.mae_noabs = corrupt( table.mae_noabs );
      }
      auto const report = verify_pair( f, fp, max_oracle_bits, table );
      for ( auto const& e : report.entries )
        std::cout << e.label << ' ' << format_value( e.value ) << '\n';
      if ( !report.oracle_ran )
        std::cout << "oracle skipped (" << f.num_inputs() << " inputs > " << max_oracle_bits << ")\n";
      if ( !report.agree )
      {
        for ( auto const& m : report.mismatches )
          std::cout << "MISMATCH " << m << '\n';
        return verify_failed;
      }
      std::cout << "agree\n";
      return ok;
    }

    if ( bench->parsed() )
    {
      corpus_spec spec;
      try
      {
        spec = parse_corpus_spec( read_file( spec_path ) );
      }
      catch ( usage_error const& e )
      {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
      }
      if ( workers > 0u )
        spec.workers = workers;
      auto const records = run_corpus( spec );
      if ( !csv_path.empty() )
      {
        std::ostringstream os;
        write_records_csv( records, os );
        write_text( csv_path, os.str() );
      }
      if ( !jsonl_path.empty() )
      {
        std::ostringstream os;
        write_records_jsonl( records, os );
        write_text( jsonl_path, os.str() );
      }
      if ( records.empty() )
      {
        std::cout << "empty corpus\n";
        return ok;
      }
      auto const s = summarize( records );
      if ( !summary_path.empty() )
      {
        std::ostringstream os;
        write_summary_csv( s, os );
        write_text( summary_path, os.str() );
      }
      write_summary_table( s, std::cout );
      return ok;
    }

    if ( search->parsed() )
    {
      try
      {
        cfg.tau = parse_rational( tau_text );
      }
      catch ( std::invalid_argument const& e )
      {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
      }
      cfg.metric = *metric_from_string( search_metric );
      cfg.algo = *algorithm_from_string( search_algo );
      if ( budget > 0u )
        cfg.max_evaluations = budget;
      if ( generations > 0u )
        cfg.max_generations = generations;
      if ( time_limit > 0.0 )
        cfg.time_budget = std::chrono::nanoseconds( static_cast<int64_t>( time_limit * 1e9 ) );
      validate( cfg );
      auto const seed = read_netlist( seed_path );
      auto const result = run_search( seed, cfg );
      write_text( out_path, emit_netlist( remove_inactive( result.best ) ) );
      if ( !log_path.empty() )
      {
        std::ofstream log( log_path );
        if ( !log )
          throw std::runtime_error( "cannot write '" + log_path + "'" );
        write_history_jsonl( result.history, log );
      }
      std::cerr << "best: " << active_gate_count( result.best ) << " active gates (seed "
                << active_gate_count( seed ) << "), error " << format_value( result.best_error ) << '\n';
      return ok;
    }
  }
  catch ( parse_error const& e )
  {
    std::cerr << "netlist error: " << e.what() << '\n';
    return usage;
  }
  catch ( usage_error const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  catch ( interface_mismatch const& e )
  {
    std::cerr << "interface mismatch: " << e.what() << '\n';
    return mismatch;
  }
  catch ( oracle_limit_error const& e )
  {
    std::cerr << "oracle limit: " << e.what() << '\n';
    return oracle_limit;
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return failure;
  }
  return ok;
}
