#pragma once

#include <ruca/bit_matrix.hpp>
#include <ruca/netlist.hpp>
#include <ruca/simulate.hpp>

#include <cstdint>
#include <string_view>

namespace ruca
{

enum class metric
{
  mae, ///< mean absolute error of the unsigned output word, normalized by 2^m
  nhd  ///< normalized Hamming distance
};

std::string_view to_string( metric kind ) noexcept;
/// Accepts "mae" and "nhd" (case-insensitive); throws constraint_error otherwise.
metric parse_metric( std::string_view text );

struct qor_config
{
  metric kind = metric::mae;
  unsigned exhaustive_cap = 14; ///< exhaustive evaluation when n <= cap
  std::size_t samples = 4096;   ///< random vectors otherwise
  std::uint64_t seed = 1;
  bool msb_first = false; ///< outputs[0] is the most significant bit
};

struct qor_result
{
  double value = 0.0;
  std::uint64_t vectors = 0;
  std::uint64_t mismatched_vectors = 0; ///< vectors with at least one differing output
  bool exhaustive = false;
};

/*
  Compares two circuits output by output (positional). Stimulus is drawn
  over the golden inputs; `approx` inputs are matched by name, and any
  extra ones must be fixed through `pins` (enables).
*/
qor_result compare_circuits( circuit const& golden, circuit const& approx, qor_config const& cfg,
                             pin_assignment const& pins = {} );

double mae( circuit const& golden, circuit const& approx, qor_config cfg, pin_assignment const& pins = {} );
double nhd( circuit const& golden, circuit const& approx, qor_config cfg, pin_assignment const& pins = {} );

/// The same metrics over all rows of two truth tables.
double matrix_qor( boolean_matrix const& m, boolean_matrix const& approx, metric kind, bool msb_first = false );

} // namespace ruca
