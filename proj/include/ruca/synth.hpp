#pragma once

#include <ruca/bit_matrix.hpp>
#include <ruca/netlist.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ruca
{

/// Product term over at most 32 variables: bit j of `care` set means
/// variable j appears, with polarity given by bit j of `value`.
struct cube
{
  std::uint32_t care = 0;
  std::uint32_t value = 0;

  bool contains( std::uint32_t minterm ) const noexcept { return ( minterm & care ) == value; }
  friend bool operator==( cube const&, cube const& ) = default;
};

/*
  Two-level covers of a single-output function given as its onset over
  `vars` variables (bit r of `onset` is f(r)). All covers are exact:
  the OR of the cubes equals the function.
*/
/// Bounded Quine-McCluskey merging followed by a greedy prime cover.
std::vector<cube> qm_cover( bit_vector const& onset, unsigned vars );
/// Greedy literal dropping from each uncovered minterm (large supports).
std::vector<cube> expand_cover( bit_vector const& onset, unsigned vars );
/// Picks one of the two by support size, then removes redundant cubes.
std::vector<cube> sop_cover( bit_vector const& onset, unsigned vars );

/// Variables the function actually depends on (ascending).
std::vector<unsigned> functional_support( bit_vector const& table, unsigned vars );

enum class synth_style
{
  sop,  ///< two-level sum of products with shared products
  bdd,  ///< multi-level network mapped from a shared reduced ordered BDD
  best  ///< whichever of the two has the smaller area proxy (SOP on ties)
};

struct synth_options
{
  synth_style style = synth_style::best;
  /// Preferred BDD variable order (input indices, top first); tried next to
  /// the natural order (both also reversed) before a sifting pass.
  std::vector<unsigned> order;
};

/*
  Circuit with inputs `input_names` computing every column of `cols`
  (2^n rows, row r = input assignment r, LSB = input_names[0]). Outputs
  are named `output_names` (default y0, y1, ...).
*/
circuit synth_compressor( boolean_matrix const& cols, std::vector<std::string> const& input_names,
                          std::vector<std::string> output_names = {}, std::string name = "compressor",
                          synth_options const& options = {} );

/// Two-level form only.
circuit synth_sop( boolean_matrix const& cols, std::vector<std::string> const& input_names,
                   std::vector<std::string> output_names = {}, std::string name = "compressor" );

/// BDD-mapped form; `order` as in synth_options.
circuit synth_bdd( boolean_matrix const& cols, std::vector<std::string> const& input_names,
                   std::vector<std::string> output_names = {}, std::string name = "compressor",
                   std::vector<unsigned> const& order = {} );

/// Shared BDD node count of the columns under a variable order (top first).
std::size_t bdd_size( boolean_matrix const& cols, std::vector<unsigned> const& order );

/// Inputs in the order a depth-first walk from the outputs first reaches them
/// (unreached inputs last); interleaves the operand bits of ripple structures.
std::vector<unsigned> structural_order( circuit const& c );

/// Output j = OR of wires i with rows[i][j] = 1 (BUF for one, CONST0 for none).
circuit synth_decompressor( boolean_matrix const& rows, std::vector<std::string> const& wire_names,
                            std::vector<std::string> output_names = {}, std::string name = "decompressor" );

} // namespace ruca
