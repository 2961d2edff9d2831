#include "approxbdd/metrics.hpp"

#include "approxbdd/errors.hpp"

#include <array>
#include <chrono>

namespace approxbdd
{

namespace
{

using clock_type = std::chrono::steady_clock;

int64_t elapsed_ns( clock_type::time_point since )
{
  return std::chrono::duration_cast<std::chrono::nanoseconds>( clock_type::now() - since ).count();
}

bdd_manager& checked_manager( bdd_word const& eps )
{
  if ( eps.manager == nullptr )
    throw usage_error( "characteristic word has no manager" );
  if ( !eps.is_signed )
    throw usage_error( "error metrics expect the signed subtraction result" );
  if ( eps.width() < 2u )
    throw usage_error( "characteristic word needs at least two bits" );
  return *eps.manager;
}

error_value make_value( metric_kind kind, algorithm algo, bdd_word const& eps, dyadic value )
{
  error_value v;
  v.kind = kind;
  v.algo = algo;
  v.value = std::move( value );
  v.n = eps.manager->var_count();
  v.m = static_cast<uint32_t>( eps.width() - 1u );
  return v;
}

/// r_i = eps_i xor sign for every bit below the sign (ones' complement magnitude).
bdd_word ones_magnitude( bdd_word const& eps )
{
  auto& m = *eps.manager;
  auto const sign = eps.sign_bit();
  bdd_word r{ &m, {}, false };
  r.bits.reserve( eps.width() - 1u );
  for ( std::size_t i = 0; i + 1u < eps.width(); ++i )
    r.bits.push_back( m.xor_( eps[i], sign ) );
  return r;
}

bdd_word twos_magnitude( bdd_word const& eps )
{
  auto const r = ones_magnitude( eps );
  return add( r, bdd_word{ eps.manager, { eps.sign_bit() }, false } );
}

/// MSB-first search for the largest value of `bits` (optionally complemented)
/// inside `mu`. Narrows `mu` to the inputs attaining it.
big_int binary_search( bdd_manager& m, std::vector<node_ref> const& bits, bool complemented, node_ref& mu )
{
  big_int value = 0;
  for ( auto i = bits.size(); i-- > 0; )
  {
    auto const candidate = complemented ? m.and_not( mu, bits[i] ) : m.and_( mu, bits[i] );
    if ( m.is_sat( candidate ) )
    {
      bit_set( value, static_cast<unsigned>( i ) );
      mu = candidate;
    }
  }
  return value;
}

big_int weighted_count( bdd_manager& m, std::vector<node_ref> const& bits )
{
  big_int sum = 0;
  for ( std::size_t i = 0; i < bits.size(); ++i )
  {
    if ( bits[i].is_false() )
      continue;
    big_int c = m.sat_count( bits[i] );
    c <<= static_cast<unsigned>( i );
    sum += c;
  }
  return sum;
}

} // namespace

std::string_view to_string( metric_kind k )
{
  switch ( k )
  {
  case metric_kind::wce:
    return "wce";
  case metric_kind::mae:
    return "mae";
  case metric_kind::error_rate:
    return "ep";
  }
  return "?";
}

std::string_view to_string( algorithm a )
{
  switch ( a )
  {
  case algorithm::baseline:
    return "baseline";
  case algorithm::ones:
    return "ones";
  case algorithm::noabs:
    return "noabs";
  case algorithm::oracle:
    return "oracle";
  case algorithm::direct:
    return "direct";
  }
  return "?";
}

std::optional<metric_kind> metric_from_string( std::string_view s )
{
  for ( auto k : { metric_kind::wce, metric_kind::mae, metric_kind::error_rate } )
    if ( to_string( k ) == s )
      return k;
  return std::nullopt;
}

std::optional<algorithm> algorithm_from_string( std::string_view s )
{
  for ( auto a : { algorithm::baseline, algorithm::ones, algorithm::noabs, algorithm::oracle, algorithm::direct } )
    if ( to_string( a ) == s )
      return a;
  return std::nullopt;
}

big_rational error_value::relative() const
{
  return value.to_rational() / big_rational( pow2( m ) - 1 );
}

error_value wce_baseline( bdd_word const& eps )
{
  auto& m = checked_manager( eps );
  auto const r = twos_magnitude( eps );
  auto mu = m.true_();
  auto wce = binary_search( m, r.bits, false, mu );
  auto v = make_value( metric_kind::wce, algorithm::baseline, eps, dyadic::integer( std::move( wce ) ) );
  v.witness = m.pick_sat( mu );
  return v;
}

error_value mae_baseline( bdd_word const& eps )
{
  auto& m = checked_manager( eps );
  auto const r = twos_magnitude( eps );
  return make_value( metric_kind::mae, algorithm::baseline, eps, dyadic{ weighted_count( m, r.bits ), m.var_count() } );
}

error_value wce_ones( bdd_word const& eps )
{
  auto& m = checked_manager( eps );
  auto const r = ones_magnitude( eps );
  auto mu = m.true_();
  auto wce = binary_search( m, r.bits, false, mu );
  auto const negative = m.and_( mu, eps.sign_bit() );
  if ( m.is_sat( negative ) )
  {
    wce += 1;
    mu = negative;
  }
  auto v = make_value( metric_kind::wce, algorithm::ones, eps, dyadic::integer( std::move( wce ) ) );
  v.witness = m.pick_sat( mu );
  return v;
}

error_value mae_ones( bdd_word const& eps )
{
  auto& m = checked_manager( eps );
  auto const r = ones_magnitude( eps );
  auto sum = weighted_count( m, r.bits );
  sum += m.sat_count( eps.sign_bit() );
  return make_value( metric_kind::mae, algorithm::ones, eps, dyadic{ std::move( sum ), m.var_count() } );
}

error_value wce_noabs( bdd_word const& eps )
{
  auto& m = checked_manager( eps );
  auto const sign = eps.sign_bit();
  std::vector<node_ref> const magnitude( eps.bits.begin(), eps.bits.end() - 1 );

  auto mu_p = m.not_( sign );
  auto mu_n = sign;
  bool const has_positive = m.is_sat( mu_p );
  bool const has_negative = m.is_sat( mu_n );

  big_int wce_p = 0;
  big_int wce_n = 0;
  if ( has_positive )
    wce_p = binary_search( m, magnitude, false, mu_p );
  if ( has_negative )
    wce_n = binary_search( m, magnitude, true, mu_n ) + 1;

  // a branch with no inputs contributes nothing, in particular not the +1
  bool const negative_wins = has_negative && ( !has_positive || wce_n > wce_p );
  auto v = make_value( metric_kind::wce, algorithm::noabs, eps,
                       dyadic::integer( negative_wins ? std::move( wce_n ) : std::move( wce_p ) ) );
  v.witness = m.pick_sat( negative_wins ? mu_n : mu_p );
  return v;
}

error_value mae_noabs( bdd_word const& eps )
{
  auto& m = checked_manager( eps );
  auto const sign = eps.sign_bit();
  big_int sum = 0;
  for ( std::size_t i = 0; i + 1u < eps.width(); ++i )
  {
    auto const positive = m.and_not( eps[i], sign );
    auto const negative = m.and_not( sign, eps[i] );
    big_int c = m.sat_count( positive ) + m.sat_count( negative );
    c <<= static_cast<unsigned>( i );
    sum += c;
  }
  sum += m.sat_count( sign );
  return make_value( metric_kind::mae, algorithm::noabs, eps, dyadic{ std::move( sum ), m.var_count() } );
}

error_value error_rate( bdd_word const& f, bdd_word const& fp )
{
  if ( f.manager == nullptr || f.manager != fp.manager )
    throw usage_error( "error_rate: words belong to different managers" );
  if ( f.width() != fp.width() )
    throw usage_error( "error_rate: word widths differ (" + std::to_string( f.width() ) + " vs " +
                       std::to_string( fp.width() ) + ")" );
  auto& m = *f.manager;
  auto differs = m.false_();
  for ( std::size_t i = 0; i < f.width(); ++i )
    differs = m.or_( differs, m.xor_( f[i], fp[i] ) );
  error_value v;
  v.kind = metric_kind::error_rate;
  v.algo = algorithm::direct;
  v.value = m.sat_prob( differs );
  v.n = m.var_count();
  v.m = static_cast<uint32_t>( f.width() );
  return v;
}

error_value compute_metric( metric_kind kind, algorithm algo, bdd_word const& eps )
{
  if ( kind == metric_kind::wce )
  {
    switch ( algo )
    {
    case algorithm::baseline:
      return wce_baseline( eps );
    case algorithm::ones:
      return wce_ones( eps );
    case algorithm::noabs:
      return wce_noabs( eps );
    default:
      break;
    }
  }
  else if ( kind == metric_kind::mae )
  {
    switch ( algo )
    {
    case algorithm::baseline:
      return mae_baseline( eps );
    case algorithm::ones:
      return mae_ones( eps );
    case algorithm::noabs:
      return mae_noabs( eps );
    default:
      break;
    }
  }
  throw usage_error( "no BDD routine for metric '" + std::string( to_string( kind ) ) + "' with algorithm '" +
                     std::string( to_string( algo ) ) + "'" );
}

evaluation evaluate_pair( circuit const& golden, circuit const& approx, metric_kind kind, algorithm algo,
                          bdd_options options, uint32_t oracle_limit )
{
  check_same_interface( golden, approx );
  evaluation ev;

  if ( algo == algorithm::oracle )
  {
    auto const start = clock_type::now();
    auto const o = oracle_metrics( golden, approx, oracle_limit );
    ev.calculating.ns = elapsed_ns( start );
    ev.result.kind = kind;
    ev.result.algo = algorithm::oracle;
    ev.result.n = golden.num_inputs();
    ev.result.m = golden.num_outputs();
    switch ( kind )
    {
    case metric_kind::wce:
      ev.result.value = dyadic::integer( o.wce );
      break;
    case metric_kind::mae:
      ev.result.value = o.mae;
      break;
    case metric_kind::error_rate:
      ev.result.value = o.error_rate;
      break;
    }
    return ev;
  }

  bdd_manager m( golden.num_inputs(), options );

  auto start = clock_type::now();
  auto const f = compile( m, golden );
  auto const fp = compile( m, approx );
  ev.loading = { elapsed_ns( start ), m.nodes_created() };

  if ( kind == metric_kind::error_rate )
  {
    m.reset_node_counter();
    start = clock_type::now();
    ev.result = error_rate( f, fp );
    ev.calculating = { elapsed_ns( start ), m.nodes_created() };
    return ev;
  }

  m.reset_node_counter();
  start = clock_type::now();
  auto const eps = subtract( f, fp );
  ev.subtracting = { elapsed_ns( start ), m.nodes_created() };

  m.reset_node_counter();
  start = clock_type::now();
  ev.result = compute_metric( kind, algo, eps );
  ev.calculating = { elapsed_ns( start ), m.nodes_created() };
  ev.result.m = golden.num_outputs();
  return ev;
}

verify_report verify_pair( circuit const& golden, circuit const& approx, uint32_t max_oracle_inputs,
                           algorithm_table const& table )
{
  check_same_interface( golden, approx );
  bdd_manager m( golden.num_inputs() );
  auto const f = compile( m, golden );
  auto const fp = compile( m, approx );
  auto const eps = subtract( f, fp );

  verify_report report;
  std::array<std::pair<std::string, metric_fn const*>, 6> const routines{ {
      { "wce/baseline", &table.wce_baseline },
      { "wce/ones", &table.wce_ones },
      { "wce/noabs", &table.wce_noabs },
      { "mae/baseline", &table.mae_baseline },
      { "mae/ones", &table.mae_ones },
      { "mae/noabs", &table.mae_noabs },
  } };
  for ( auto const& [label, fn] : routines )
    report.entries.push_back( { label, ( *fn )( eps ).value } );
  report.entries.push_back( { "ep/direct", error_rate( f, fp ).value } );

  if ( golden.num_inputs() <= max_oracle_inputs )
  {
    auto const o = oracle_metrics( golden, approx, max_oracle_inputs );
    report.oracle_ran = true;
    report.entries.push_back( { "wce/oracle", dyadic::integer( o.wce ) } );
    report.entries.push_back( { "mae/oracle", o.mae } );
    report.entries.push_back( { "ep/oracle", o.error_rate } );
  }

  for ( std::string_view metric : { "wce/", "mae/", "ep/" } )
  {
    verify_entry const* reference = nullptr;
    for ( auto const& e : report.entries )
    {
      if ( e.label.rfind( metric, 0 ) != 0 )
        continue;
      if ( reference == nullptr )
      {
        reference = &e;
      }
      else if ( !( e.value == reference->value ) )
      {
        report.agree = false;
        report.mismatches.push_back( e.label + " = " + e.value.str() + " but " + reference->label + " = " +
                                     reference->value.str() );
      }
    }
  }
  return report;
}

} // namespace approxbdd
