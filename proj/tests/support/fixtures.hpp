#pragma once

#include <ruca/netlist.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ruca::fixtures
{

/// a0..a{w-1}, b0..b{w-1} -> s0..s{w-1}, cout (ripple carry).
circuit adder( unsigned width );
/// a - b with borrow out.
circuit subtractor( unsigned width );
/// a0.., b0.. -> p0..p{2w-1} (array multiplier).
circuit multiplier( unsigned width );
/// ISCAS-85 c17 (six NAND2 gates).
circuit c17();
/// lt, eq, gt of two unsigned words.
circuit comparator( unsigned width );
/// 4:1 multiplexer, d0..d3 and s0, s1.
circuit mux4();
circuit parity( unsigned inputs );
/// 1 when more than half of the inputs are 1 (odd input count).
circuit majority( unsigned inputs );
/// k-to-2^k one-hot decoder.
circuit decoder( unsigned k );
/// Number of ones of the inputs as an unsigned word.
circuit popcount( unsigned inputs );
circuit abs_diff( unsigned width );
/// Left rotate of a 2^k-bit word by a k-bit amount.
circuit barrel_shifter( unsigned k );
circuit maximum( unsigned width );
circuit gray_code( unsigned width );
circuit incrementer( unsigned width );
/// Random acyclic circuit over the full gate library.
circuit random_circuit( std::uint64_t seed, unsigned inputs, unsigned gates, unsigned outputs );
/// Two independent 4-gate chains.
circuit two_islands();

struct named_fixture
{
  std::string name;
  circuit logic;
};

/// Every fixture with at most `max_inputs` inputs.
std::vector<named_fixture> catalog( unsigned max_inputs = 16 );

/// Fixture by name (adder4, mult8, c17, ...); throws std::invalid_argument.
circuit by_name( std::string const& name );

} // namespace ruca::fixtures
