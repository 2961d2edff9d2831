#pragma once

#include "approxbdd/arith.hpp"
#include "approxbdd/bdd.hpp"
#include "approxbdd/dyadic.hpp"
#include "approxbdd/netlist.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace approxbdd
{

enum class metric_kind : uint8_t
{
  wce,
  mae,
  error_rate
};

enum class algorithm : uint8_t
{
  baseline, // two's-complement absolute value
  ones,     // ones' complement with arithmetic correction
  noabs,    // split positive/negative branches, no absolute value
  oracle,   // exhaustive simulation
  direct    // error rate: no characteristic function needed
};

std::string_view to_string( metric_kind k );
std::string_view to_string( algorithm a );
std::optional<metric_kind> metric_from_string( std::string_view s );
std::optional<algorithm> algorithm_from_string( std::string_view s );

/// Exact metric value. WCE is stored with exponent 0; MAE and error rate
/// carry denominator 2^n.
struct error_value
{
  metric_kind kind{ metric_kind::wce };
  algorithm algo{ algorithm::baseline };
  dyadic value;
  uint32_t n{ 0 }; // inputs
  uint32_t m{ 0 }; // output bits of the compared circuits
  /// WCE only: one input assignment attaining the worst case.
  std::vector<bool> witness;

  big_int const& wce() const { return value.num; }
  /// value / (2^m - 1)
  big_rational relative() const;
};

// The characteristic word `eps` is the signed result of subtract(f, f').

error_value wce_baseline( bdd_word const& eps );
error_value mae_baseline( bdd_word const& eps );
error_value wce_ones( bdd_word const& eps );
error_value mae_ones( bdd_word const& eps );
error_value wce_noabs( bdd_word const& eps );
error_value mae_noabs( bdd_word const& eps );

/// Fraction of inputs on which any output bit differs.
error_value error_rate( bdd_word const& f, bdd_word const& fp );

/// Dispatch for wce / mae over baseline, ones, noabs.
error_value compute_metric( metric_kind kind, algorithm algo, bdd_word const& eps );

struct phase_stats
{
  int64_t ns{ 0 };
  std::size_t nodes{ 0 };
};

struct evaluation
{
  error_value result;
  phase_stats loading;
  phase_stats subtracting;
  phase_stats calculating;

  int64_t total_ns() const { return loading.ns + subtracting.ns + calculating.ns; }
};

/// Full pipeline on a fresh manager: compile both circuits ("loading"),
/// build eps ("subtracting"), then run the metric ("calculating").
/// Oracle requests run exhaustive simulation and report no phases.
evaluation evaluate_pair( circuit const& golden, circuit const& approx, metric_kind kind, algorithm algo,
                          bdd_options options = {}, uint32_t oracle_limit = default_oracle_limit );

using metric_fn = std::function<error_value( bdd_word const& )>;

/// The six BDD routines, replaceable for fault-injection tests.
struct algorithm_table
{
  metric_fn wce_baseline = approxbdd::wce_baseline;
  metric_fn mae_baseline = approxbdd::mae_baseline;
  metric_fn wce_ones = approxbdd::wce_ones;
  metric_fn mae_ones = approxbdd::mae_ones;
  metric_fn wce_noabs = approxbdd::wce_noabs;
  metric_fn mae_noabs = approxbdd::mae_noabs;
};

struct verify_entry
{
  std::string label; // e.g. "wce/noabs"
  dyadic value;
};

struct verify_report
{
  bool agree{ true };
  bool oracle_ran{ false };
  std::vector<verify_entry> entries;
  std::vector<std::string> mismatches;
};

/// Runs all six algorithms (plus the oracle when n <= max_oracle_inputs)
/// and checks WCE and MAE agreement.
verify_report verify_pair( circuit const& golden, circuit const& approx, uint32_t max_oracle_inputs,
                           algorithm_table const& table = {} );

} // namespace approxbdd
