// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <approxbdd/arith.hpp>
#include <approxbdd/bench.hpp>
#include <approxbdd/generators.hpp>
#include <approxbdd/metrics.hpp>
#include <approxbdd/netlist.hpp>
#include <approxbdd/search.hpp>

#include "test_util.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

using namespace approxbdd;
namespace fs = std::filesystem;

namespace
{

constexpr adder_kind all_kinds[] = { adder_kind::rca, adder_kind::cla, adder_kind::cska };

struct outcome
{
  bool pass{ true };
  std::string detail;
};

outcome fail( std::string detail )
{
  return { false, std::move( detail ) };
}

using metric_fn_ptr = error_value ( * )( bdd_word const& );

struct six_values
{
  dyadic wce[3];
  dyadic mae[3];
};

six_values run_six( bdd_word const& eps )
{
  metric_fn_ptr const wce_fns[] = { wce_baseline, wce_ones, wce_noabs };
  metric_fn_ptr const mae_fns[] = { mae_baseline, mae_ones, mae_noabs };
  six_values v;
  for ( int i = 0; i < 3; ++i )
  {
    v.wce[i] = wce_fns[i]( eps ).value;
    v.mae[i] = mae_fns[i]( eps ).value;
  }
  return v;
}

char const* const algo_names[] = { "baseline", "ones", "noabs" };

// ---------------------------------------------------------------------------

outcome criterion_oracle_exactness()
{
  corpus_spec spec;
  spec.kinds = { std::begin( all_kinds ), std::end( all_kinds ) };
  spec.widths = { 8 };
  spec.signedness = { false, true };
  spec.mutants = 200;
  spec.min_edits = 1;
  spec.max_edits = 16;
  spec.seed = 101;
  auto const corpus = build_corpus( spec );
  std::size_t nonzero = 0;
  for ( auto const& p : corpus )
  {
    auto const o = oracle_metrics( p.golden, p.approx );
    bdd_manager m( p.golden.num_inputs() );
    auto const eps = subtract( compile( m, p.golden ), compile( m, p.approx ) );
    auto const v = run_six( eps );
    for ( int i = 0; i < 3; ++i )
    {
      if ( !( v.wce[i] == dyadic::integer( o.wce ) ) )
        return fail( p.id + " wce/" + algo_names[i] + " = " + v.wce[i].str() + ", oracle " + o.wce.str() );
      if ( !( v.mae[i] == o.mae ) )
        return fail( p.id + " mae/" + algo_names[i] + " = " + v.mae[i].str() + ", oracle " + o.mae.str() );
    }
    nonzero += o.wce != 0 ? 1u : 0u;
  }
  return { true, std::to_string( corpus.size() ) + " pairs, " + std::to_string( nonzero ) +
                     " with nonzero error, six algorithms equal the oracle" };
}

corpus_spec speed_corpus()
{
  corpus_spec spec;
  spec.kinds = { std::begin( all_kinds ), std::end( all_kinds ) };
  spec.widths = { 16 };
  spec.signedness = { false, true };
  spec.mutants = 17;
  spec.min_edits = 16;
  spec.max_edits = 48;
  spec.metrics = { metric_kind::wce, metric_kind::mae };
  spec.algorithms = { algorithm::baseline, algorithm::ones, algorithm::noabs };
  spec.seed = 11;
  spec.warmup = true;
  return spec;
}

outcome criterion_cross_agreement()
{
  corpus_spec spec;
  spec.kinds = { std::begin( all_kinds ), std::end( all_kinds ) };
  spec.widths = { 16 };
  spec.signedness = { false, true };
  spec.mutants = 17;
  spec.min_edits = 1;
  spec.max_edits = 48;
  spec.seed = 202;
  auto const corpus = build_corpus( spec );
  std::size_t nonzero = 0;
  for ( auto const& p : corpus )
  {
    bdd_manager m( p.golden.num_inputs() );
    auto const eps = subtract( compile( m, p.golden ), compile( m, p.approx ) );
    auto const v = run_six( eps );
    for ( int i = 1; i < 3; ++i )
    {
      if ( !( v.wce[i] == v.wce[0] ) )
        return fail( p.id + " wce/" + algo_names[i] + " = " + v.wce[i].str() + ", baseline " + v.wce[0].str() );
      if ( !( v.mae[i] == v.mae[0] ) )
        return fail( p.id + " mae/" + algo_names[i] + " = " + v.mae[i].str() + ", baseline " + v.mae[0].str() );
    }
    nonzero += v.wce[0].num != 0 ? 1u : 0u;
  }
  return { true, std::to_string( corpus.size() ) + " pairs at n = 32, " + std::to_string( nonzero ) +
                     " with nonzero error, all equal" };
}

outcome criterion_exact_circuits()
{
  std::size_t count = 0;
  for ( auto kind : all_kinds )
  {
    for ( bool sgn : { false, true } )
    {
      for ( uint32_t bits = 1; bits <= 32u; ++bits )
      {
        auto const c = gen_adder( kind, bits, sgn );
        bdd_manager m( c.num_inputs() );
        auto const w = compile( m, c );
        auto const eps = subtract( w, w );
        auto const v = run_six( eps );
        for ( int i = 0; i < 3; ++i )
        {
          if ( v.wce[i].num != 0 || v.mae[i].num != 0 )
            return fail( c.name + ": " + algo_names[i] + " reports wce " + v.wce[i].str() + ", mae " + v.mae[i].str() );
        }
        if ( wce_noabs( eps ).value.num != 0 )
          return fail( c.name + ": wce_noabs nonzero" );
        if ( c.num_inputs() <= 20u )
        {
          auto const o = oracle_metrics( c, c );
          if ( o.wce != 0 || o.mae.num != 0 )
            return fail( c.name + ": oracle nonzero" );
        }
        ++count;
      }
    }
  }
  return { true, std::to_string( count ) + " seed adders (1..32 bits), every algorithm returns 0" };
}

struct speed_data
{
  std::vector<bench_record> records;
  summary sum;
};

speed_data const& speed_results()
{
  static speed_data const data = [] {
    speed_data d;
    d.records = run_corpus( speed_corpus() );
    d.sum = summarize( d.records );
    return d;
  }();
  return data;
}

summary_row const* find_row( summary const& s, metric_kind k, algorithm a )
{
  for ( auto const& r : s.rows )
  {
    if ( r.metric == k && r.algo == a && r.width == 16u )
      return &r;
  }
  return nullptr;
}

outcome criterion_speedup()
{
  auto const& d = speed_results();
  bool pass = true;
  std::ostringstream detail;
  detail << ( d.records.size() / 6u ) << " pairs;";
  for ( auto k : { metric_kind::wce, metric_kind::mae } )
  {
    for ( auto a : { algorithm::ones, algorithm::noabs } )
    {
      auto const* r = find_row( d.sum, k, a );
      if ( !r )
        return fail( "missing summary row" );
      char buf[64];
      std::snprintf( buf, sizeof buf, " %s/%s %.2fx", std::string( to_string( k ) ).c_str(),
                     std::string( to_string( a ) ).c_str(), r->speedup );
      detail << buf;
      if ( r->speedup < 1.5 )
      {
        pass = false;
        detail << " (below 1.5x)";
      }
    }
  }
  for ( auto const& c : d.sum.checks )
  {
    if ( !c.results_agree )
      return fail( "bench results disagree across algorithms" );
  }
  return { pass, detail.str() };
}

double median( std::vector<double> v )
{
  std::sort( v.begin(), v.end() );
  auto const n = v.size();
  return n % 2u ? v[n / 2u] : 0.5 * ( v[n / 2u - 1u] + v[n / 2u] );
}

outcome criterion_phases()
{
  auto const& d = speed_results();
  std::ostringstream detail;
  bool pass = true;
  for ( auto const& r : d.records )
  {
    if ( !r.error.empty() )
      return fail( r.circuit_id + ": " + r.error );
    if ( r.loading.nodes == 0u || r.loading.ns < 0 || r.subtracting.ns < 0 || r.calculating.ns < 0 )
      return fail( r.circuit_id + ": phase columns not populated" );
  }
  std::vector<double> share;
  for ( auto const& r : d.records )
  {
    share.push_back( static_cast<double>( r.loading.ns ) / static_cast<double>( std::max<int64_t>( 1, r.total_ns() ) ) );
  }
  auto const med = median( share );
  char buf[96];
  std::snprintf( buf, sizeof buf, "median loading share %.1f%%;", 100.0 * med );
  detail << buf;
  if ( med >= 0.10 )
    pass = false;
  for ( auto k : { metric_kind::wce, metric_kind::mae } )
  {
    auto const* base = find_row( d.sum, k, algorithm::baseline );
    auto const* ones = find_row( d.sum, k, algorithm::ones );
    auto const* noabs = find_row( d.sum, k, algorithm::noabs );
    std::snprintf( buf, sizeof buf, " %s calc share baseline %.1f%% ones %.1f%% noabs %.1f%%;",
                   std::string( to_string( k ) ).c_str(), 100.0 * base->calc_share, 100.0 * ones->calc_share,
                   100.0 * noabs->calc_share );
    detail << buf;
    if ( !( base->calc_share > ones->calc_share && base->calc_share > noabs->calc_share ) )
      pass = false;
  }
  return { pass, detail.str() };
}

/// Truth table of every node reachable from `roots`, built bottom-up from
/// the node structure and compared with sat_count.
bool check_counts( bdd_manager& m, std::vector<node_ref> const& roots, std::size_t& checked, std::string& why )
{
  auto const n = m.var_count();
  std::size_t const words = ( ( std::size_t{ 1 } << n ) + 63u ) / 64u;
  std::vector<std::vector<uint64_t>> var_tt( n );
  for ( uint32_t i = 0; i < n; ++i )
  {
    var_tt[i].assign( words, 0u );
    for ( std::size_t k = 0; k < ( std::size_t{ 1 } << n ); ++k )
    {
      if ( ( k >> i ) & 1u )
        var_tt[i][k / 64u] |= uint64_t{ 1 } << ( k % 64u );
    }
  }
  std::unordered_map<uint32_t, std::vector<uint64_t>> tt;
  std::size_t const used_bits = std::size_t{ 1 } << n;
  auto full = std::vector<uint64_t>( words, ~uint64_t{ 0 } );
  if ( used_bits % 64u )
    full.back() = ( uint64_t{ 1 } << ( used_bits % 64u ) ) - 1u;
  std::function<std::vector<uint64_t> const&( node_ref )> table = [&]( node_ref f ) -> std::vector<uint64_t> const& {
    auto it = tt.find( f.index() );
    if ( it != tt.end() )
      return it->second;
    std::vector<uint64_t> t( words, 0u );
    if ( f.is_true() )
      t = full;
    else if ( !f.is_false() )
    {
      auto const& lo = table( m.low( f ) );
      auto const& hi = table( m.high( f ) );
      auto const& x = var_tt[m.level( f )];
      for ( std::size_t w = 0; w < words; ++w )
        t[w] = ( full[w] & ~x[w] & lo[w] ) | ( x[w] & hi[w] );
    }
    return tt.emplace( f.index(), std::move( t ) ).first->second;
  };
  for ( auto r : roots )
    table( r );
  checked += tt.size();
  for ( auto r : roots )
  {
    std::vector<node_ref> stack{ r };
    std::map<uint32_t, bool> seen;
    while ( !stack.empty() )
    {
      auto const f = stack.back();
      stack.pop_back();
      if ( seen[f.index()] )
        continue;
      seen[f.index()] = true;
      auto const& t = tt.at( f.index() );
      uint64_t pop = 0;
      for ( auto w : t )
        pop += static_cast<uint64_t>( __builtin_popcountll( w ) );
      if ( m.sat_count( f ) != pop )
      {
        why = "sat_count mismatch on node " + std::to_string( f.index() );
        return false;
      }
      if ( m.sat_count( f ) + m.sat_count( m.not_( f ) ) != pow2( n ) )
      {
        why = "additivity fails on node " + std::to_string( f.index() );
        return false;
      }
      if ( m.not_( m.not_( f ) ) != f )
      {
        why = "involution fails";
        return false;
      }
      if ( !f.is_terminal() )
      {
        stack.push_back( m.low( f ) );
        stack.push_back( m.high( f ) );
      }
    }
  }
  return true;
}

outcome criterion_bdd_properties()
{
  std::size_t nodes_checked = 0, identities = 0, canon = 0;
  std::string why;
  std::mt19937_64 rng( 606 );

  // Equivalent adders of different topologies compile to identical handles.
  for ( bool sgn : { false, true } )
  {
    for ( uint32_t bits : { 4u, 7u, 12u, 16u } )
    {
      bdd_manager m( 2u * bits );
      auto const r = compile( m, gen_adder( adder_kind::rca, bits, sgn ) );
      auto const c = compile( m, gen_adder( adder_kind::cla, bits, sgn ) );
      auto const s = compile( m, gen_adder( adder_kind::cska, bits, sgn ) );
      if ( r.bits != c.bits || r.bits != s.bits )
        return fail( "equivalent adders compile to different diagrams" );
      ++canon;
    }
  }

  // Corpus nodes with n <= 14: output words, characteristic words and all
  // nodes below them.
  for ( auto kind : all_kinds )
  {
    for ( bool sgn : { false, true } )
    {
      for ( uint32_t bits : { 3u, 5u, 7u } )
      {
        auto const golden = gen_adder( kind, bits, sgn );
        for ( uint64_t i = 0; i < 8u; ++i )
        {
          auto const approx = mutate( golden, derive_seed( 66, i ), 1u + static_cast<uint32_t>( i * 3u ) );
          bdd_manager m( golden.num_inputs() );
          auto const f = compile( m, golden );
          auto const fp = compile( m, approx );
          auto const eps = subtract( f, fp );
          std::vector<node_ref> roots = f.bits;
          roots.insert( roots.end(), fp.bits.begin(), fp.bits.end() );
          roots.insert( roots.end(), eps.bits.begin(), eps.bits.end() );
          if ( !check_counts( m, roots, nodes_checked, why ) )
            return fail( golden.name + ": " + why );

          // Canonicity against a truth-table construction from simulation.
          for ( uint32_t o = 0; o < approx.num_outputs(); ++o )
          {
            std::vector<uint8_t> t( std::size_t{ 1 } << approx.num_inputs() );
            for ( std::size_t k = 0; k < t.size(); ++k )
              t[k] = simulate( approx, testing::assignment_of( k, approx.num_inputs() ) ).bits[o];
            if ( testing::from_table( m, t ) != fp[o] )
              return fail( approx.name + ": diagram differs from truth-table construction" );
            ++canon;
          }

          // De Morgan on pairs of corpus nodes.
          for ( std::size_t a = 0; a < roots.size(); ++a )
          {
            auto const x = roots[a], y = roots[( a * 7u + 3u ) % roots.size()];
            if ( m.not_( m.and_( x, y ) ) != m.or_( m.not_( x ), m.not_( y ) ) ||
                 m.not_( m.or_( x, y ) ) != m.and_( m.not_( x ), m.not_( y ) ) )
              return fail( "De Morgan identity fails" );
            ++identities;
          }
        }
      }
    }
  }

  // Random formulas for every n up to 14.
  for ( uint32_t n = 1; n <= 14u; ++n )
  {
    bdd_manager m( n );
    for ( int trial = 0; trial < 25; ++trial )
    {
      auto const fm = testing::random_formula( m, rng, 8 );
      uint64_t pop = 0;
      for ( auto v : fm.table )
        pop += v;
      if ( m.sat_count( fm.f ) != pop )
        return fail( "random formula count mismatch" );
      if ( testing::from_table( m, fm.table ) != fm.f )
        return fail( "random formula canonicity mismatch" );
      ++canon;
    }
  }
  return { true, std::to_string( nodes_checked ) + " corpus nodes counted, " + std::to_string( canon ) +
                     " canonicity checks, " + std::to_string( identities ) + " De Morgan pairs" };
}

outcome criterion_arith()
{
  std::size_t cases = 0;
  for ( uint32_t wa = 1; wa <= 6u; ++wa )
  {
    for ( uint32_t wb = 1; wb <= 6u; ++wb )
    {
      for ( bool sgn : { false, true } )
      {
        bdd_manager m( wa + wb );
        bdd_word a{ &m, {}, sgn }, b{ &m, {}, sgn };
        for ( uint32_t i = 0; i < wa; ++i )
          a.bits.push_back( m.var( i ) );
        for ( uint32_t i = 0; i < wb; ++i )
          b.bits.push_back( m.var( wa + i ) );
        auto const sum = add( a, b );
        auto const diff = subtract( a, b );
        for ( uint64_t k = 0; k < ( uint64_t{ 1 } << ( wa + wb ) ); ++k )
        {
          int64_t va = static_cast<int64_t>( k & ( ( 1u << wa ) - 1u ) );
          int64_t vb = static_cast<int64_t>( ( k >> wa ) & ( ( 1u << wb ) - 1u ) );
          if ( sgn && ( va >> ( wa - 1u ) ) )
            va -= int64_t{ 1 } << wa;
          if ( sgn && ( vb >> ( wb - 1u ) ) )
            vb -= int64_t{ 1 } << wb;
          auto const in = testing::assignment_of( k, wa + wb );
          if ( evaluate( sum, in ) != va + vb )
            return fail( "add mismatch at widths " + std::to_string( wa ) + "," + std::to_string( wb ) );
          if ( evaluate( diff, in ) != va - vb )
            return fail( "subtract mismatch at widths " + std::to_string( wa ) + "," + std::to_string( wb ) );
          ++cases;
        }
        for ( auto bit : subtract( a, a ).bits )
        {
          if ( bit != m.false_() )
            return fail( "subtract(w, w) is not all FALSE" );
        }
      }
    }
  }
  return { true, std::to_string( cases ) + " operand pairs exact; subtract(w, w) all FALSE" };
}

outcome criterion_search()
{
  auto const seed = gen_adder( adder_kind::rca, 8, false );
  search_config cfg;
  cfg.metric = metric_kind::wce;
  cfg.tau = 8;
  cfg.algo = algorithm::noabs;
  cfg.max_evaluations = 10000;
  cfg.rng_seed = 1;
  auto const start = std::chrono::steady_clock::now();
  auto const loose = run_search( seed, cfg );
  cfg.tau = 0;
  auto const exact = run_search( seed, cfg );
  auto const secs = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();

  auto const o8 = oracle_metrics( seed, loose.best );
  auto const o0 = oracle_metrics( seed, exact.best );
  auto const seed_size = active_gate_count( seed );
  auto const size8 = active_gate_count( loose.best );
  std::ostringstream detail;
  detail << "tau 8: " << size8 << " of " << seed_size << " gates, oracle wce " << o8.wce << "; tau 0: "
         << active_gate_count( exact.best ) << " gates, oracle error rate " << o0.error_rate.str() << "; "
         << static_cast<int>( secs ) << " s";
  bool const pass = size8 < seed_size && o8.wce <= 8 && o0.error_rate.num == 0 &&
                    active_gate_count( exact.best ) <= seed_size;
  return { pass, detail.str() };
}

// ---------------------------------------------------------------------------

std::string slurp( fs::path const& p )
{
  std::ifstream in( p );
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli( std::string const& args )
{
  auto const cmd = std::string( APPROXBDD_CLI ) + " " + args + " > /dev/null 2>&1";
  auto const status = std::system( cmd.c_str() );
  return WIFEXITED( status ) ? WEXITSTATUS( status ) : -1;
}

std::string drop_csv_columns( std::string const& text, std::vector<std::size_t> const& drop )
{
  std::istringstream in( text );
  std::ostringstream out;
  std::string line;
  while ( std::getline( in, line ) )
  {
    std::istringstream fields( line );
    std::string field;
    std::size_t col = 0;
    while ( std::getline( fields, field, ',' ) )
    {
      if ( std::find( drop.begin(), drop.end(), col ) == drop.end() )
        out << field << ',';
      ++col;
    }
    out << '\n';
  }
  return out.str();
}

std::string drop_elapsed( std::string const& jsonl )
{
  std::istringstream in( jsonl );
  std::ostringstream out;
  std::string line;
  while ( std::getline( in, line ) )
  {
    auto const pos = line.find( ",\"elapsed_ns\"" );
    out << line.substr( 0, pos ) << '\n';
  }
  return out.str();
}

outcome criterion_determinism()
{
  auto const dir = fs::temp_directory_path() / ( "approxbdd_accept_" + std::to_string( ::getpid() ) );
  fs::create_directories( dir );
  auto const p = [&]( std::string const& name ) { return ( dir / name ).string(); };
  std::size_t compared = 0;
  auto same = [&]( std::string const& a, std::string const& b ) {
    ++compared;
    return !a.empty() && a == b;
  };

  std::ofstream( p( "corpus.json" ) )
      << R"({"kinds":["rca","cla","cska"],"widths":[8],"signed":[false,true],"mutants":4,"edits":[1,8],)"
         R"("metrics":["wce","mae","ep"],"algorithms":["baseline","ones","noabs"],"seed":5})";

  outcome result{ true, "" };
  for ( int round = 0; round < 2; ++round )
  {
    auto const tag = std::to_string( round );
    for ( auto kind : { "rca", "cla", "cska" } )
    {
      if ( run_cli( std::string( "gen --kind " ) + kind + " --bits 12 --signed --out " + p( kind + tag + ".net" ) ) != 0 )
        result = fail( "gen failed" );
    }
    if ( run_cli( "search --seed-circuit " + p( "rca" + tag + ".net" ) +
                  " --metric mae --tau 3/2 --budget 400 --rng-seed 9 --out " + p( "search" + tag + ".net" ) +
                  " --log " + p( "search" + tag + ".jsonl" ) ) != 0 )
      result = fail( "search failed" );
    if ( run_cli( "bench --spec " + p( "corpus.json" ) + " --workers 3 --out-csv " + p( "bench" + tag + ".csv" ) ) !=
         0 )
      result = fail( "bench failed" );
  }
  if ( !result.pass )
    return result;

  for ( auto kind : { "rca", "cla", "cska" } )
  {
    if ( !same( slurp( p( std::string( kind ) + "0.net" ) ), slurp( p( std::string( kind ) + "1.net" ) ) ) )
      return fail( std::string( "gen " ) + kind + " output differs" );
  }
  if ( !same( slurp( p( "search0.net" ) ), slurp( p( "search1.net" ) ) ) )
    return fail( "search netlist differs" );
  if ( !same( drop_elapsed( slurp( p( "search0.jsonl" ) ) ), drop_elapsed( slurp( p( "search1.jsonl" ) ) ) ) )
    return fail( "search log differs" );
  // Columns 5..7 hold the phase timings.
  if ( !same( drop_csv_columns( slurp( p( "bench0.csv" ) ), { 5, 6, 7 } ),
              drop_csv_columns( slurp( p( "bench1.csv" ) ), { 5, 6, 7 } ) ) )
    return fail( "bench records differ" );

  auto spec = parse_corpus_spec( slurp( p( "corpus.json" ) ) );
  spec.mutants = 200;
  auto const a = build_corpus( spec );
  auto const b = build_corpus( spec );
  for ( std::size_t i = 0; i < a.size(); ++i )
  {
    if ( emit_netlist( a[i].approx ) != emit_netlist( b[i].approx ) )
      return fail( "mutant " + a[i].id + " differs" );
  }
  compared += a.size();

  std::error_code ec;
  fs::remove_all( dir, ec );
  return { true, std::to_string( compared ) + " artefacts byte-identical across runs (timings excluded)" };
}

} // namespace

int main()
{
  struct criterion
  {
    int id;
    char const* name;
    std::function<outcome()> run;
  };
  std::vector<criterion> const criteria = {
      { 1, "oracle exactness (8-bit corpus)", criterion_oracle_exactness },
      { 2, "cross-algorithm agreement (16-bit corpus)", criterion_cross_agreement },
      { 3, "exact circuits give zero error", criterion_exact_circuits },
      { 4, "speedup >= 1.5x over baseline (16-bit)", criterion_speedup },
      { 5, "phase breakdown", criterion_phases },
      { 6, "BDD core properties", criterion_bdd_properties },
      { 7, "word arithmetic", criterion_arith },
      { 8, "search contract", criterion_search },
      { 9, "determinism", criterion_determinism },
  };

  int failures = 0;
  for ( auto const& c : criteria )
  {
    outcome o;
    auto const start = std::chrono::steady_clock::now();
    try
    {
      o = c.run();
    }
    catch ( std::exception const& e )
    {
      o = fail( std::string( "exception: " ) + e.what() );
    }
    auto const secs = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    std::printf( "criterion %d %s: %s [%.1fs] %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str() );
    std::fflush( stdout );
    failures += o.pass ? 0 : 1;
  }
  std::printf( "%d of %zu criteria passed\n", static_cast<int>( criteria.size() ) - failures, criteria.size() );
  return failures == 0 ? 0 : 1;
}
