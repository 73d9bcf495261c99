#pragma once

#include <ruca/bit_matrix.hpp>
#include <ruca/netlist.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ruca
{

using input_vector = std::vector<bool>;
using output_vector = std::vector<bool>;

/// Named pins held at a constant value (enable inputs during simulation).
using pin_assignment = std::vector<std::pair<std::string, bool>>;

/*
  A stack of equally long bit planes: plane i holds one bit per test
  vector for signal i. `bits()` is the number of valid vectors; padding
  bits in the last word carry no meaning.
*/
class bit_planes
{
public:
  bit_planes() = default;
  bit_planes( std::size_t planes, std::size_t bits );

  std::size_t planes() const noexcept { return planes_; }
  std::size_t bits() const noexcept { return bits_; }
  std::size_t words() const noexcept { return words_; }

  std::span<word> operator[]( std::size_t i ) noexcept { return { data_.data() + i * words_, words_ }; }
  std::span<word const> operator[]( std::size_t i ) const noexcept { return { data_.data() + i * words_, words_ }; }

  /// Mask selecting the valid bits of word `w`.
  word valid_mask( std::size_t w ) const noexcept;

private:
  std::size_t planes_ = 0;
  std::size_t bits_ = 0;
  std::size_t words_ = 0;
  std::vector<word> data_;
};

/// Values of all nets (inputs first, then gate outputs) for a batch.
bit_planes simulate_nets( circuit const& c, bit_planes const& inputs );
/// Values of the primary outputs for a batch.
bit_planes simulate_outputs( circuit const& c, bit_planes const& inputs );

/// Single vector evaluation; throws netlist_error on a length mismatch.
output_vector simulate( circuit const& c, input_vector const& x );

/*
  Input planes for exhaustive rows [first_row, first_row + count): row r
  assigns bit j of r to input j (input 0 is the least significant bit).
  `first_row` must be a multiple of 64 when count > 64.
*/
bit_planes exhaustive_inputs( std::size_t num_inputs, std::uint64_t first_row, std::size_t count );

/// Deterministic uniform random planes; each input name has its own stream,
/// so circuits sharing input names see the same vectors.
bit_planes random_inputs( std::span<std::string const> names, std::size_t count, std::uint64_t seed );

/// 2^n x m truth table; row r is the input assignment encoded by r (LSB = inputs[0]).
boolean_matrix truth_table( circuit const& c, unsigned max_inputs = 20 );

/// Maps circuit inputs onto `source` planes by name; pins override.
bit_planes bind_inputs( circuit const& c, std::span<std::string const> source_names, bit_planes const& source,
                        pin_assignment const& pins = {} );

/// 64-bit FNV-1a, used to derive per-name random streams.
std::uint64_t stable_hash( std::string_view text ) noexcept;

} // namespace ruca
