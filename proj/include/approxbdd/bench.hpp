#pragma once

#include "approxbdd/generators.hpp"
#include "approxbdd/metrics.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace approxbdd
{

/// Which circuit pairs to evaluate. Every (kind, width, signedness) point
/// contributes `mutants` approximations of its exact adder; mutant i of a
/// point uses between min_edits and max_edits point mutations.
struct corpus_spec
{
  std::vector<adder_kind> kinds;
  std::vector<uint32_t> widths;
  std::vector<bool> signedness;
  uint32_t mutants{ 0 };
  uint32_t min_edits{ 1 };
  uint32_t max_edits{ 4 };
  std::vector<metric_kind> metrics;
  std::vector<algorithm> algorithms;
  uint64_t seed{ 1 };
  bool warmup{ true };
  uint32_t workers{ 1 };
  bdd_options bdd{};
};

/// Parses the corpus-spec JSON document; throws usage_error on bad input.
corpus_spec parse_corpus_spec( std::string const& json_text );

struct corpus_pair
{
  std::string id;
  uint32_t width{ 0 };
  circuit golden;
  circuit approx;
  uint64_t seed{ 0 };
};

/// The deterministic list of (golden, mutant) pairs described by `spec`.
std::vector<corpus_pair> build_corpus( corpus_spec const& spec );

struct bench_record
{
  std::string circuit_id;
  uint32_t width{ 0 };
  bool is_signed{ false };
  metric_kind metric{ metric_kind::wce };
  algorithm algo{ algorithm::baseline };
  phase_stats loading;
  phase_stats subtracting;
  phase_stats calculating;
  dyadic result;
  uint64_t seed{ 0 };
  std::string error; // empty when the evaluation succeeded

  int64_t total_ns() const { return loading.ns + subtracting.ns + calculating.ns; }
};

/// One fresh-manager evaluation per (pair, metric, algorithm), preceded by a
/// discarded warm-up run when `spec.warmup` is set. Record order does not
/// depend on the worker count.
std::vector<bench_record> run_corpus( corpus_spec const& spec );

void write_records_csv( std::vector<bench_record> const& records, std::ostream& os );
void write_records_jsonl( std::vector<bench_record> const& records, std::ostream& os );

struct summary_row
{
  metric_kind metric{ metric_kind::wce };
  uint32_t width{ 0 };
  algorithm algo{ algorithm::baseline };
  std::size_t count{ 0 };
  double mean_load_ns{ 0 };
  double mean_sub_ns{ 0 };
  double mean_calc_ns{ 0 };
  double mean_total_ns{ 0 };
  double mean_load_nodes{ 0 };
  double mean_sub_nodes{ 0 };
  double mean_calc_nodes{ 0 };
  double speedup{ 0 };    // mean baseline total / mean total; 0 without a baseline
  double calc_share{ 0 }; // mean calc / mean total
};

struct summary_check
{
  metric_kind metric{ metric_kind::wce };
  uint32_t width{ 0 };
  double median_load_share{ 0 };
  bool load_negligible{ true };
  bool results_agree{ true };
};

struct summary
{
  std::vector<summary_row> rows;
  std::vector<summary_check> checks;
};

summary summarize( std::vector<bench_record> const& records );

void write_summary_csv( summary const& s, std::ostream& os );
void write_summary_table( summary const& s, std::ostream& os );

} // namespace approxbdd
