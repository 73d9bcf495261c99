#pragma once

#include <ruca/error.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ruca
{

enum class gate_kind : std::uint8_t
{
  AND,
  OR,
  NAND,
  NOR,
  XOR,
  XNOR,
  NOT,
  BUF,
  MUX,
  CONST0,
  CONST1
};

std::string_view to_string( gate_kind kind ) noexcept;
/// Case-insensitive.
std::optional<gate_kind> parse_gate_kind( std::string_view text ) noexcept;

/// True when `count` fanins are legal for `kind`.
bool arity_ok( gate_kind kind, std::size_t count ) noexcept;

struct gate
{
  std::string output;
  gate_kind kind;
  std::vector<std::string> fanins;
};

/*
  Combinational gate-level netlist. Immutable once built: `build` checks
  every structural invariant (unique names, defined fanins, legal arity,
  acyclicity) and stores the gates in topological order. Nets are
  numbered inputs first, then gate outputs in that order, so gate g
  drives net `num_inputs() + g`.
*/
class circuit
{
public:
  using net_id = std::uint32_t;

  circuit() = default;

  static circuit build( std::string name, std::vector<std::string> inputs, std::vector<std::string> outputs,
                        std::vector<gate> gates );

  std::string const& name() const noexcept { return name_; }
  std::vector<std::string> const& inputs() const noexcept { return inputs_; }
  std::vector<std::string> const& outputs() const noexcept { return outputs_; }
  /// Gates in topological order.
  std::vector<gate> const& gates() const noexcept { return gates_; }

  std::size_t num_inputs() const noexcept { return inputs_.size(); }
  std::size_t num_outputs() const noexcept { return outputs_.size(); }
  std::size_t num_gates() const noexcept { return gates_.size(); }
  std::size_t num_nets() const noexcept { return inputs_.size() + gates_.size(); }

  std::optional<net_id> find_net( std::string_view name ) const;
  std::string const& net_name( net_id id ) const;
  net_id gate_net( std::size_t g ) const noexcept { return static_cast<net_id>( inputs_.size() + g ); }
  /// Gate index driving `id`, or nullopt for a primary input.
  std::optional<std::size_t> driver( net_id id ) const noexcept;
  std::optional<std::size_t> find_gate( std::string_view output_net ) const;

  std::span<net_id const> fanins( std::size_t g ) const noexcept
  {
    return { fanin_ids_.data() + fanin_offsets_[g], fanin_offsets_[g + 1] - fanin_offsets_[g] };
  }
  gate_kind kind( std::size_t g ) const noexcept { return gates_[g].kind; }
  std::span<net_id const> output_ids() const noexcept { return output_ids_; }

  /// For every net, the gates reading it (ascending).
  std::vector<std::vector<std::size_t>> fanout_gates() const;

  /// Same gates with a different (super)set of primary inputs; every
  /// previously used input must still be present.
  circuit with_inputs( std::vector<std::string> inputs ) const;
  circuit renamed( std::string name ) const;

private:
  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<gate> gates_;

  std::unordered_map<std::string, net_id> net_index_;
  std::vector<net_id> fanin_ids_;
  std::vector<std::size_t> fanin_offsets_{ 0 };
  std::vector<net_id> output_ids_;
};

/// Parses the BENCH dialect described in the README.
circuit parse_bench( std::string_view text, std::string name = "top" );
/// Emits gates in topological order; re-parses to an equal circuit.
std::string emit_bench( circuit const& c );

/*
  Mutable netlist under construction. Collects inputs, outputs and gates
  by name and hands out collision-free names for inlined blocks.
*/
class netlist_builder
{
public:
  void add_input( std::string const& name );
  void add_output( std::string const& name );
  void add_gate( std::string output, gate_kind kind, std::vector<std::string> fanins );

  /// Marks a name as taken without defining it.
  void reserve( std::string const& name ) { names_.insert( name ); }
  bool has_net( std::string_view name ) const;
  bool has_input( std::string_view name ) const;
  /// `base` if unused, otherwise `base_1`, `base_2`, ...; the name is reserved.
  std::string unique_name( std::string const& base );

  /*
    Copies `sub` into the netlist. Sub input i is connected to
    `input_nets[i]`; every other sub net is renamed `<prefix>__<net>`
    (uniquified). Returns the nets carrying the sub outputs.
  */
  std::vector<std::string> inline_circuit( circuit const& sub, std::string const& prefix,
                                           std::span<std::string const> input_nets );

  std::vector<std::string> const& inputs() const noexcept { return inputs_; }
  std::vector<std::string> const& outputs() const noexcept { return outputs_; }

  circuit build( std::string name ) const;

private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<gate> gates_;
  std::unordered_set<std::string> names_;
};

/// Parent-side connection record of an extracted subcircuit.
struct boundary
{
  std::vector<std::string> inputs;  ///< parent nets feeding the subcircuit
  std::vector<std::string> outputs; ///< parent nets driven by the subcircuit
  std::vector<std::string> gates;   ///< output nets of the extracted gates
};

struct subcircuit
{
  circuit logic;
  boundary ports;
};

/*
  Cuts `gate_set` (gates named by their output nets) out of `c`. Inputs
  are the nets read by the set but driven outside it; outputs are nets
  driven inside that are read outside or are primary outputs. Both lists
  follow the parent's net order.
*/
subcircuit extract_subcircuit( circuit const& c, std::span<std::string const> gate_set, std::string name = "sub" );

/*
  Replaces the boundary's gates by `replacement`. The first
  `b.inputs.size()` replacement inputs bind positionally to the boundary
  inputs; any further replacement inputs are shared by name with the
  parent and added as primary inputs when missing (enable pins). Internal
  nets are renamed `<block>__<net>`.
*/
circuit stitch( circuit const& c, boundary const& b, circuit const& replacement, std::string const& block );

/// Renames primary inputs; unknown keys are ignored.
circuit rename_inputs( circuit const& c, std::unordered_map<std::string, std::string> const& mapping );

} // namespace ruca
