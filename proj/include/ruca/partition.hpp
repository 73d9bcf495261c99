#pragma once

#include <ruca/netlist.hpp>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ruca
{

struct partition_spec
{
  std::size_t max_inputs = 10;
  std::size_t max_outputs = 10;
  std::size_t min_gates = 3;  ///< parts smaller than this that still violate a cap are split into single gates
  double balance = 0.1;       ///< allowed deviation of each side from half the cells
};

/*
  Disjoint cover of a circuit's gates by subcircuits. `assignment[g]` is
  the part of gate g; parts are listed in an order compatible with the
  signal flow between them (no part reads a net driven by a later part).
*/
struct partition_result
{
  std::vector<subcircuit> parts;
  std::vector<std::size_t> assignment;
};

/// Recursive min-cut bipartitioning until every part meets the caps.
partition_result partition( circuit const& c, partition_spec const& spec = {} );

/// Validates a user-supplied gate -> part map (coverage, caps, acyclic part graph).
partition_result partition_from_assignment( circuit const& c, std::vector<std::size_t> const& assignment,
                                            partition_spec const& spec = {} );

/// Lines `gate_name part_id` (any non-negative ids); `#` starts a comment. Every gate must appear once.
std::vector<std::size_t> parse_partition_file( circuit const& c, std::string_view text );

/*
  Hyperedges (one per net, over its driving gate and reading gates)
  that touch more than one side. Entries of `side` must be non-negative.
*/
std::size_t cut_size( circuit const& c, std::span<int const> side );

/*
  Two-way Fiduccia-Mattheyses refinement over a subset of gates. Moves
  keep every edge of the subset pointing from side 0 to side 1, so both
  sides (and any recursive refinement of them) stay free of cycles.
*/
class fm_bipartitioner
{
public:
  fm_bipartitioner( circuit const& c, std::vector<std::size_t> cells, double balance );

  /// Side of each cell (index into `cells()`).
  std::vector<int> const& sides() const noexcept { return side_; }
  std::vector<std::size_t> const& cells() const noexcept { return cells_; }

  /// Hyperedges of the induced hypergraph cut by the current sides.
  std::size_t cut() const;

  /// One pass with best-prefix rollback; returns the cut reduction (>= 0).
  std::size_t run_pass();
  /// Passes until one brings no improvement.
  void run();

  void set_sides( std::vector<int> sides );

private:
  bool movable( std::size_t cell, std::size_t size0 ) const;
  int gain( std::size_t cell ) const;

  std::vector<std::size_t> cells_;
  std::vector<std::vector<std::size_t>> nets_;      // cells on each hyperedge
  std::vector<std::vector<std::size_t>> cell_nets_; // hyperedges of each cell
  std::vector<std::vector<std::size_t>> succ_, pred_;
  std::vector<int> side_;
  std::size_t lo_ = 0, hi_ = 0;
};

} // namespace ruca
