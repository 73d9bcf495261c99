#include "kernels_impl.hpp"

#include <bit>

namespace ruca::kernels::scalar
{

std::uint64_t popcount( word const* a, std::size_t n )
{
  std::uint64_t total = 0;
  for ( std::size_t i = 0; i < n; ++i )
    total += std::popcount( a[i] );
  return total;
}

std::uint64_t popcount_and( word const* a, word const* b, std::size_t n )
{
  std::uint64_t total = 0;
  for ( std::size_t i = 0; i < n; ++i )
    total += std::popcount( a[i] & b[i] );
  return total;
}

std::uint64_t popcount_xor( word const* a, word const* b, std::size_t n )
{
  std::uint64_t total = 0;
  for ( std::size_t i = 0; i < n; ++i )
    total += std::popcount( a[i] ^ b[i] );
  return total;
}

std::int64_t cover_gain( word const* rows, word const* covered, word basis, std::size_t n, word* selected )
{
  std::int64_t total = 0;
  std::size_t const nwords = ( n + 63 ) / 64;
  for ( std::size_t w = 0; w < nwords; ++w )
  {
    word bits = 0;
    std::size_t const end = std::min<std::size_t>( n, ( w + 1 ) * 64 );
    for ( std::size_t r = w * 64; r < end; ++r )
    {
      word const u = basis & ~covered[r];
      std::int64_t const gain = 2 * static_cast<std::int64_t>( std::popcount( rows[r] & u ) ) -
                                static_cast<std::int64_t>( std::popcount( u ) );
      if ( gain > 0 )
      {
        bits |= word{ 1 } << ( r - w * 64 );
        total += gain;
      }
    }
    selected[w] = bits;
  }
  return total;
}

} // namespace ruca::kernels::scalar
