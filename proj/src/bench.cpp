#include "approxbdd/bench.hpp"

#include "approxbdd/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <thread>
#include <tuple>

namespace approxbdd
{

namespace
{

template<typename T, typename Parse>
std::vector<T> parse_list( nlohmann::json const& j, char const* key, Parse parse )
{
  std::vector<T> out;
  if ( !j.contains( key ) )
    return out;
  if ( !j[key].is_array() )
    throw usage_error( std::string( "corpus spec: '" ) + key + "' must be an array" );
  for ( auto const& item : j[key] )
    out.push_back( parse( item ) );
  return out;
}

std::string lower_name( nlohmann::json const& item, char const* key )
{
  if ( !item.is_string() )
    throw usage_error( std::string( "corpus spec: entries of '" ) + key + "' must be strings" );
  return item.get<std::string>();
}

double median( std::vector<double> v )
{
  if ( v.empty() )
    return 0.0;
  std::sort( v.begin(), v.end() );
  auto const mid = v.size() / 2u;
  return v.size() % 2u ? v[mid] : 0.5 * ( v[mid - 1u] + v[mid] );
}

std::string format_fixed( double v, int precision )
{
  char buf[64];
  std::snprintf( buf, sizeof buf, "%.*f", precision, v );
  return buf;
}

} // namespace

corpus_spec parse_corpus_spec( std::string const& json_text )
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse( json_text );
  }
  catch ( nlohmann::json::parse_error const& e )
  {
    throw usage_error( std::string( "corpus spec is not valid JSON: " ) + e.what() );
  }
  if ( !j.is_object() )
    throw usage_error( "corpus spec must be a JSON object" );

  static const std::vector<std::string> known{ "kinds",   "widths",   "signed", "mutants", "edits",          "metrics",
                                               "algorithms", "seed", "warmup", "workers", "cache_capacity" };
  for ( auto const& [key, value] : j.items() )
  {
    if ( std::find( known.begin(), known.end(), key ) == known.end() )
      throw usage_error( "corpus spec: unknown key '" + key + "'" );
  }

  corpus_spec spec;
  try
  {
    spec.kinds = parse_list<adder_kind>( j, "kinds", []( auto const& item ) {
      auto const name = lower_name( item, "kinds" );
      auto const k = adder_kind_from_string( name );
      if ( !k )
        throw usage_error( "corpus spec: unknown adder kind '" + name + "'" );
      return *k;
    } );
    spec.widths = parse_list<uint32_t>( j, "widths", []( auto const& item ) {
      if ( !item.is_number_unsigned() || item.template get<uint32_t>() < 1u || item.template get<uint32_t>() > 32u )
        throw usage_error( "corpus spec: widths must be integers in [1, 32]" );
      return item.template get<uint32_t>();
    } );
    spec.signedness = parse_list<bool>( j, "signed", []( auto const& item ) {
      if ( !item.is_boolean() )
        throw usage_error( "corpus spec: 'signed' entries must be booleans" );
      return item.template get<bool>();
    } );
    spec.metrics = parse_list<metric_kind>( j, "metrics", []( auto const& item ) {
      auto const name = lower_name( item, "metrics" );
      auto const k = metric_from_string( name );
      if ( !k )
        throw usage_error( "corpus spec: unknown metric '" + name + "'" );
      return *k;
    } );
    spec.algorithms = parse_list<algorithm>( j, "algorithms", []( auto const& item ) {
      auto const name = lower_name( item, "algorithms" );
      auto const a = algorithm_from_string( name );
      if ( !a || *a == algorithm::direct )
        throw usage_error( "corpus spec: unknown algorithm '" + name + "'" );
      return *a;
    } );
    if ( j.contains( "mutants" ) )
    {
      if ( !j["mutants"].is_number_unsigned() )
        throw usage_error( "corpus spec: 'mutants' must be a non-negative integer" );
      spec.mutants = j["mutants"].get<uint32_t>();
    }
    if ( j.contains( "edits" ) )
    {
      auto const& e = j["edits"];
      if ( e.is_number_unsigned() )
      {
        spec.min_edits = spec.max_edits = e.get<uint32_t>();
      }
      else if ( e.is_array() && e.size() == 2u && e[0].is_number_unsigned() && e[1].is_number_unsigned() )
      {
        spec.min_edits = e[0].get<uint32_t>();
        spec.max_edits = e[1].get<uint32_t>();
      }
      else
      {
        throw usage_error( "corpus spec: 'edits' must be an integer or [min, max]" );
      }
      if ( spec.min_edits == 0u || spec.min_edits > spec.max_edits )
        throw usage_error( "corpus spec: edits must satisfy 1 <= min <= max" );
    }
    if ( j.contains( "seed" ) )
    {
      if ( !j["seed"].is_number_unsigned() )
        throw usage_error( "corpus spec: 'seed' must be a non-negative integer" );
      spec.seed = j["seed"].get<uint64_t>();
    }
    if ( j.contains( "warmup" ) )
    {
      if ( !j["warmup"].is_boolean() )
        throw usage_error( "corpus spec: 'warmup' must be a boolean" );
      spec.warmup = j["warmup"].get<bool>();
    }
    if ( j.contains( "workers" ) )
    {
      if ( !j["workers"].is_number_unsigned() || j["workers"].get<uint32_t>() == 0u )
        throw usage_error( "corpus spec: 'workers' must be a positive integer" );
      spec.workers = j["workers"].get<uint32_t>();
    }
    if ( j.contains( "cache_capacity" ) )
    {
      if ( !j["cache_capacity"].is_number_unsigned() )
        throw usage_error( "corpus spec: 'cache_capacity' must be a non-negative integer" );
      spec.bdd.cache_capacity = j["cache_capacity"].get<std::size_t>();
    }
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw usage_error( std::string( "corpus spec: " ) + e.what() );
  }
  return spec;
}

std::vector<corpus_pair> build_corpus( corpus_spec const& spec )
{
  std::vector<corpus_pair> pairs;
  uint64_t point = 0;
  for ( auto const kind : spec.kinds )
  {
    for ( auto const width : spec.widths )
    {
      for ( bool const is_signed : spec.signedness )
      {
        auto const golden = gen_adder( kind, width, is_signed );
        auto const point_seed = derive_seed( spec.seed, point++ );
        for ( uint32_t i = 0; i < spec.mutants; ++i )
        {
          auto const seed = derive_seed( point_seed, i );
          std::mt19937_64 rng( seed );
          auto const edits =
              spec.min_edits + static_cast<uint32_t>( draw( rng, spec.max_edits - spec.min_edits + 1u ) );
          char suffix[16];
          std::snprintf( suffix, sizeof suffix, "_m%03u", i );
          pairs.push_back( { golden.name + suffix, width, golden, mutate( golden, rng(), edits ), seed } );
        }
      }
    }
  }
  return pairs;
}

std::vector<bench_record> run_corpus( corpus_spec const& spec )
{
  auto const pairs = build_corpus( spec );

  struct task
  {
    std::size_t pair;
    metric_kind metric;
    algorithm algo;
  };
  std::vector<task> tasks;
  for ( std::size_t p = 0; p < pairs.size(); ++p )
  {
    for ( auto const metric : spec.metrics )
    {
      if ( metric == metric_kind::error_rate )
      {
        tasks.push_back( { p, metric, algorithm::direct } );
        continue;
      }
      for ( auto const algo : spec.algorithms )
        tasks.push_back( { p, metric, algo } );
    }
  }

  std::vector<bench_record> records( tasks.size() );
  std::atomic<std::size_t> next{ 0 };
  auto worker = [&]() {
    for ( auto t = next.fetch_add( 1u ); t < tasks.size(); t = next.fetch_add( 1u ) )
    {
      auto const& tk = tasks[t];
      auto const& pr = pairs[tk.pair];
      auto& rec = records[t];
      rec.circuit_id = pr.id;
      rec.width = pr.width;
      rec.is_signed = pr.golden.is_signed;
      rec.metric = tk.metric;
      rec.algo = tk.algo;
      rec.seed = pr.seed;
      try
      {
        if ( spec.warmup )
          (void)evaluate_pair( pr.golden, pr.approx, tk.metric, tk.algo, spec.bdd );
        auto const ev = evaluate_pair( pr.golden, pr.approx, tk.metric, tk.algo, spec.bdd );
        rec.loading = ev.loading;
        rec.subtracting = ev.subtracting;
        rec.calculating = ev.calculating;
        rec.result = ev.result.value;
      }
      catch ( std::exception const& e )
      {
        rec.error = e.what();
      }
    }
  };

  auto const workers = std::max<uint32_t>( 1u, std::min<uint32_t>( spec.workers, static_cast<uint32_t>( tasks.size() ) ) );
  if ( workers == 1u )
  {
    worker();
  }
  else
  {
    std::vector<std::jthread> pool;
    for ( uint32_t w = 0; w < workers; ++w )
      pool.emplace_back( worker );
  }
  return records;
}

void write_records_csv( std::vector<bench_record> const& records, std::ostream& os )
{
  os << "circuit_id,width,signed,metric,algorithm,load_ns,sub_ns,calc_ns,load_nodes,sub_nodes,calc_nodes,result_num,"
        "result_den_exp,seed\n";
  for ( auto const& r : records )
  {
    os << r.circuit_id << ',' << r.width << ',' << ( r.is_signed ? "true" : "false" ) << ',' << to_string( r.metric )
       << ',' << to_string( r.algo ) << ',' << r.loading.ns << ',' << r.subtracting.ns << ',' << r.calculating.ns << ','
       << r.loading.nodes << ',' << r.subtracting.nodes << ',' << r.calculating.nodes << ',';
    if ( r.error.empty() )
      os << r.result.num.str() << ',' << r.result.exp;
    else
      os << "error,";
    os << ',' << r.seed << '\n';
  }
}

void write_records_jsonl( std::vector<bench_record> const& records, std::ostream& os )
{
  for ( auto const& r : records )
  {
    nlohmann::ordered_json j;
    j["circuit_id"] = r.circuit_id;
    j["width"] = r.width;
    j["signed"] = r.is_signed;
    j["metric"] = to_string( r.metric );
    j["algorithm"] = to_string( r.algo );
    j["load_ns"] = r.loading.ns;
    j["sub_ns"] = r.subtracting.ns;
    j["calc_ns"] = r.calculating.ns;
    j["load_nodes"] = r.loading.nodes;
    j["sub_nodes"] = r.subtracting.nodes;
    j["calc_nodes"] = r.calculating.nodes;
    j["result_num"] = r.result.num.str();
    j["result_den_exp"] = r.result.exp;
    j["seed"] = r.seed;
    if ( !r.error.empty() )
      j["error"] = r.error;
    os << j.dump() << '\n';
  }
}

summary summarize( std::vector<bench_record> const& records )
{
  using group_key = std::tuple<metric_kind, uint32_t, algorithm>;
  std::map<group_key, std::vector<bench_record const*>> groups;
  std::map<std::pair<metric_kind, uint32_t>, std::vector<bench_record const*>> by_point;
  for ( auto const& r : records )
  {
    if ( !r.error.empty() )
      continue;
    groups[{ r.metric, r.width, r.algo }].push_back( &r );
    by_point[{ r.metric, r.width }].push_back( &r );
  }

  summary s;
  for ( auto const& [key, members] : groups )
  {
    summary_row row;
    std::tie( row.metric, row.width, row.algo ) = key;
    row.count = members.size();
    auto const count = static_cast<double>( members.size() );
    for ( auto const* r : members )
    {
      row.mean_load_ns += static_cast<double>( r->loading.ns ) / count;
      row.mean_sub_ns += static_cast<double>( r->subtracting.ns ) / count;
      row.mean_calc_ns += static_cast<double>( r->calculating.ns ) / count;
      row.mean_load_nodes += static_cast<double>( r->loading.nodes ) / count;
      row.mean_sub_nodes += static_cast<double>( r->subtracting.nodes ) / count;
      row.mean_calc_nodes += static_cast<double>( r->calculating.nodes ) / count;
    }
    row.mean_total_ns = row.mean_load_ns + row.mean_sub_ns + row.mean_calc_ns;
    row.calc_share = row.mean_total_ns > 0.0 ? row.mean_calc_ns / row.mean_total_ns : 0.0;
    s.rows.push_back( row );
  }
  for ( auto& row : s.rows )
  {
    for ( auto const& base : s.rows )
    {
      if ( base.metric == row.metric && base.width == row.width && base.algo == algorithm::baseline &&
           row.mean_total_ns > 0.0 )
      {
        row.speedup = base.mean_total_ns / row.mean_total_ns;
      }
    }
  }

  for ( auto const& [key, members] : by_point )
  {
    summary_check check;
    std::tie( check.metric, check.width ) = key;
    std::vector<double> load, total;
    std::map<std::string, dyadic const*> first_result;
    for ( auto const* r : members )
    {
      load.push_back( static_cast<double>( r->loading.ns ) );
      total.push_back( static_cast<double>( r->total_ns() ) );
      auto [it, inserted] = first_result.emplace( r->circuit_id, &r->result );
      if ( !inserted && !( *it->second == r->result ) )
        check.results_agree = false;
    }
    auto const med_total = median( total );
    check.median_load_share = med_total > 0.0 ? median( load ) / med_total : 0.0;
    check.load_negligible = check.width < 16u || check.median_load_share < 0.10;
    s.checks.push_back( check );
  }
  return s;
}

void write_summary_csv( summary const& s, std::ostream& os )
{
  os << "metric,width,algorithm,count,mean_load_ns,mean_sub_ns,mean_calc_ns,mean_total_ns,mean_load_nodes,"
        "mean_sub_nodes,mean_calc_nodes,calc_share,speedup\n";
  for ( auto const& r : s.rows )
  {
    os << to_string( r.metric ) << ',' << r.width << ',' << to_string( r.algo ) << ',' << r.count << ','
       << format_fixed( r.mean_load_ns, 1 ) << ',' << format_fixed( r.mean_sub_ns, 1 ) << ','
       << format_fixed( r.mean_calc_ns, 1 ) << ',' << format_fixed( r.mean_total_ns, 1 ) << ','
       << format_fixed( r.mean_load_nodes, 1 ) << ',' << format_fixed( r.mean_sub_nodes, 1 ) << ','
       << format_fixed( r.mean_calc_nodes, 1 ) << ',' << format_fixed( r.calc_share, 4 ) << ','
       << format_fixed( r.speedup, 3 ) << '\n';
  }
}

void write_summary_table( summary const& s, std::ostream& os )
{
  char line[256];
  std::snprintf( line, sizeof line, "%-6s %5s %-9s %6s %12s %12s %12s %12s %10s %10s %10s %7s %8s\n", "metric",
                 "width", "algorithm", "count", "load[us]", "sub[us]", "calc[us]", "total[us]", "load_nd", "sub_nd",
                 "calc_nd", "calc%", "speedup" );
  os << line;
  for ( auto const& r : s.rows )
  {
    std::snprintf( line, sizeof line, "%-6s %5u %-9s %6zu %12.1f %12.1f %12.1f %12.1f %10.0f %10.0f %10.0f %6.1f%% %7.2fx\n",
                   std::string( to_string( r.metric ) ).c_str(), r.width, std::string( to_string( r.algo ) ).c_str(),
                   r.count, r.mean_load_ns / 1e3, r.mean_sub_ns / 1e3, r.mean_calc_ns / 1e3, r.mean_total_ns / 1e3,
                   r.mean_load_nodes, r.mean_sub_nodes, r.mean_calc_nodes, 100.0 * r.calc_share, r.speedup );
    os << line;
  }
  os << '\n';
  for ( auto const& c : s.checks )
  {
    std::snprintf( line, sizeof line, "%s/%u: median loading share %.2f%%%s; results %s\n",
                   std::string( to_string( c.metric ) ).c_str(), c.width, 100.0 * c.median_load_share,
                   c.load_negligible ? "" : " (NOT negligible)", c.results_agree ? "agree" : "DISAGREE" );
    os << line;
  }
}

} // namespace approxbdd
