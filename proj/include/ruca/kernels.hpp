#pragma once

#include <cstdint>
#include <span>
#include <string_view>

/*
  Word-parallel bit kernels. Every kernel has a portable scalar reference
  and, on x86-64, an AVX2 variant. The variant is picked once at startup
  from the CPU feature bits and can be pinned with RUCA_KERNEL=scalar|avx2.
*/
namespace ruca::kernels
{

using word = std::uint64_t;

enum class isa
{
  scalar,
  avx2
};

struct kernel_table
{
  std::uint64_t ( *popcount )( word const* a, std::size_t n );
  std::uint64_t ( *popcount_and )( word const* a, word const* b, std::size_t n );
  std::uint64_t ( *popcount_xor )( word const* a, word const* b, std::size_t n );
  std::int64_t ( *cover_gain )( word const* rows, word const* covered, word basis, std::size_t n, word* selected );
};

/// The scalar reference table; always available.
kernel_table const& scalar_table() noexcept;

/// True when `which` is both compiled in and supported by this CPU.
bool isa_available( isa which ) noexcept;

/// Table for a specific variant. Throws constraint_error when unavailable.
kernel_table const& table_for( isa which );

isa active_isa() noexcept;
std::string_view isa_name( isa which ) noexcept;

/// Pins the active variant (tests and benchmarking).
void set_active_isa( isa which );

std::uint64_t popcount( std::span<word const> a );
std::uint64_t popcount_and( std::span<word const> a, std::span<word const> b );
std::uint64_t popcount_xor( std::span<word const> a, std::span<word const> b );

/*
  Single-word-row cover scoring used by the BMF solver. For every row r
  with u = basis & ~covered[r] the row gain is

      gain(r) = popcount(rows[r] & u) - popcount(~rows[r] & u)

  i.e. +1 for each 1 of the row newly covered and -1 for each 0 newly
  over-covered. Bit r of `selected` (ceil(n/64) words, overwritten) is set
  iff gain(r) > 0; the return value is the sum of the positive gains.
*/
std::int64_t cover_gain( std::span<word const> rows, std::span<word const> covered, word basis,
                         std::span<word> selected );

} // namespace ruca::kernels
