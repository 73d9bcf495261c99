#pragma once

#include <ruca/netlist.hpp>
#include <ruca/simulate.hpp>

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ruca
{

/*
  Technology-independent cost proxies in NAND2-equivalent units. A k-input
  AND/OR/NAND/NOR/XOR/XNOR costs (k - 1) times the weight of its 2-input
  form; NOT, BUF and MUX cost their weight; constants are free.
*/
struct cost_model
{
  std::array<double, 11> weights{ 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 0.5, 0.5, 2.5, 0.0, 0.0 };
  std::size_t activity_pairs = 1024; ///< random vector pairs for the power proxy
  std::uint64_t seed = 0x5eed;

  double weight( gate_kind kind ) const noexcept { return weights[static_cast<std::size_t>( kind )]; }

  /// Overrides from a JSON object such as {"AND": 1.0, "XOR": 2.2}; keys are
  /// gate kinds (case-insensitive) plus optional "activity_pairs" and "seed".
  static cost_model from_json( std::string_view text );

  /// Every weight multiplied by `factor` (> 0).
  cost_model scaled( double factor ) const;
};

double gate_area( gate_kind kind, std::size_t fanins, cost_model const& model ) noexcept;

double area_proxy( circuit const& c, cost_model const& model = {} );

/*
  Gates whose every path to a primary output is blocked by a de-asserted
  enable: either through an AND gate with a fanin pinned to 0, or through
  the unselected data input of a MUX whose select is pinned.
*/
std::vector<bool> gated_gates( circuit const& c, pin_assignment const& pins );

/// Area of the gates left active under `pins`.
double active_area( circuit const& c, pin_assignment const& pins, cost_model const& model = {} );

/// Output toggles of every gate between two stimulus batches (vector i vs vector i).
std::vector<std::uint64_t> toggle_counts( circuit const& c, bit_planes const& before, bit_planes const& after );

/// Average output toggles per vector pair for every gate (pinned inputs held).
std::vector<double> toggle_rates( circuit const& c, pin_assignment const& pins, cost_model const& model = {} );

/// Sum over active gates of toggle rate times area.
double power_proxy( circuit const& c, pin_assignment const& pins = {}, cost_model const& model = {} );

} // namespace ruca
