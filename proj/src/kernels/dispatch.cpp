#include "kernels_impl.hpp"

#include <ruca/error.hpp>

#include <atomic>
#include <cstdlib>
#include <string>

namespace ruca::kernels
{

namespace
{

constexpr kernel_table scalar_kernels{ &scalar::popcount, &scalar::popcount_and, &scalar::popcount_xor,
                                       &scalar::cover_gain };

#if defined( RUCA_HAVE_AVX2 )
constexpr kernel_table avx2_kernels{ &avx2::popcount, &avx2::popcount_and, &avx2::popcount_xor, &avx2::cover_gain };
#endif

bool cpu_has_avx2() noexcept
{
#if defined( RUCA_HAVE_AVX2 ) && ( defined( __GNUC__ ) || defined( __clang__ ) )
  __builtin_cpu_init();
  return __builtin_cpu_supports( "avx2" ) && __builtin_cpu_supports( "popcnt" );
#else
  return false;
#endif
}

isa detect() noexcept
{
  if ( char const* forced = std::getenv( "RUCA_KERNEL" ) )
  {
    std::string const value{ forced };
    if ( value == "scalar" )
      return isa::scalar;
    if ( value == "avx2" && cpu_has_avx2() )
      return isa::avx2;
  }
  return cpu_has_avx2() ? isa::avx2 : isa::scalar;
}

std::atomic<kernel_table const*>& active_slot() noexcept
{
  static std::atomic<kernel_table const*> slot{ nullptr };
  return slot;
}

std::atomic<isa>& active_isa_slot() noexcept
{
  static std::atomic<isa> slot{ isa::scalar };
  return slot;
}

kernel_table const& active() noexcept
{
  auto* table = active_slot().load( std::memory_order_acquire );
  if ( table == nullptr )
  {
    isa const which = detect();
    active_isa_slot().store( which );
#if defined( RUCA_HAVE_AVX2 )
    table = which == isa::avx2 ? &avx2_kernels : &scalar_kernels;
#else
    table = &scalar_kernels;
#endif
    active_slot().store( table, std::memory_order_release );
  }
  return *table;
}

} // namespace

kernel_table const& scalar_table() noexcept
{
  return scalar_kernels;
}

bool isa_available( isa which ) noexcept
{
  return which == isa::scalar || cpu_has_avx2();
}

kernel_table const& table_for( isa which )
{
  if ( !isa_available( which ) )
    throw constraint_error( "kernel variant " + std::string{ isa_name( which ) } + " is not available on this CPU" );
#if defined( RUCA_HAVE_AVX2 )
  if ( which == isa::avx2 )
    return avx2_kernels;
#endif
  return scalar_kernels;
}

isa active_isa() noexcept
{
  active();
  return active_isa_slot().load();
}

std::string_view isa_name( isa which ) noexcept
{
  return which == isa::avx2 ? "avx2" : "scalar";
}

void set_active_isa( isa which )
{
  auto const& table = table_for( which );
  active_isa_slot().store( which );
  active_slot().store( &table, std::memory_order_release );
}

std::uint64_t popcount( std::span<word const> a )
{
  return active().popcount( a.data(), a.size() );
}

std::uint64_t popcount_and( std::span<word const> a, std::span<word const> b )
{
  if ( a.size() != b.size() )
    throw dimension_error( "popcount_and: operand lengths differ" );
  return active().popcount_and( a.data(), b.data(), a.size() );
}

std::uint64_t popcount_xor( std::span<word const> a, std::span<word const> b )
{
  if ( a.size() != b.size() )
    throw dimension_error( "popcount_xor: operand lengths differ" );
  return active().popcount_xor( a.data(), b.data(), a.size() );
}

std::int64_t cover_gain( std::span<word const> rows, std::span<word const> covered, word basis,
                         std::span<word> selected )
{
  if ( rows.size() != covered.size() || selected.size() < ( rows.size() + 63 ) / 64 )
    throw dimension_error( "cover_gain: operand lengths differ" );
  return active().cover_gain( rows.data(), covered.data(), basis, rows.size(), selected.data() );
}

} // namespace ruca::kernels
