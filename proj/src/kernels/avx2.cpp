#include "kernels_impl.hpp"

#include <bit>
#include <immintrin.h>

namespace ruca::kernels::avx2
{

namespace
{

/* nibble-LUT popcount, one 64-bit count per lane */
inline __m256i popcount_epi64( __m256i v )
{
  __m256i const lut = _mm256_setr_epi8( 0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4 );
  __m256i const low_mask = _mm256_set1_epi8( 0x0f );
  __m256i const lo = _mm256_and_si256( v, low_mask );
  __m256i const hi = _mm256_and_si256( _mm256_srli_epi16( v, 4 ), low_mask );
  __m256i const bytes = _mm256_add_epi8( _mm256_shuffle_epi8( lut, lo ), _mm256_shuffle_epi8( lut, hi ) );
  return _mm256_sad_epu8( bytes, _mm256_setzero_si256() );
}

inline std::uint64_t horizontal_sum( __m256i v )
{
  alignas( 32 ) std::uint64_t lanes[4];
  _mm256_store_si256( reinterpret_cast<__m256i*>( lanes ), v );
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

inline __m256i load( word const* p )
{
  return _mm256_loadu_si256( reinterpret_cast<__m256i const*>( p ) );
}

} // namespace

std::uint64_t popcount( word const* a, std::size_t n )
{
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for ( ; i + 4 <= n; i += 4 )
    acc = _mm256_add_epi64( acc, popcount_epi64( load( a + i ) ) );
  std::uint64_t total = horizontal_sum( acc );
  for ( ; i < n; ++i )
    total += std::popcount( a[i] );
  return total;
}

std::uint64_t popcount_and( word const* a, word const* b, std::size_t n )
{
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for ( ; i + 4 <= n; i += 4 )
    acc = _mm256_add_epi64( acc, popcount_epi64( _mm256_and_si256( load( a + i ), load( b + i ) ) ) );
  std::uint64_t total = horizontal_sum( acc );
  for ( ; i < n; ++i )
    total += std::popcount( a[i] & b[i] );
  return total;
}

std::uint64_t popcount_xor( word const* a, word const* b, std::size_t n )
{
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for ( ; i + 4 <= n; i += 4 )
    acc = _mm256_add_epi64( acc, popcount_epi64( _mm256_xor_si256( load( a + i ), load( b + i ) ) ) );
  std::uint64_t total = horizontal_sum( acc );
  for ( ; i < n; ++i )
    total += std::popcount( a[i] ^ b[i] );
  return total;
}

std::int64_t cover_gain( word const* rows, word const* covered, word basis, std::size_t n, word* selected )
{
  __m256i const basis_v = _mm256_set1_epi64x( static_cast<long long>( basis ) );
  __m256i const zero = _mm256_setzero_si256();
  __m256i acc = zero;

  std::size_t const nwords = ( n + 63 ) / 64;
  for ( std::size_t w = 0; w < nwords; ++w )
  {
    std::size_t const begin = w * 64;
    std::size_t const end = std::min<std::size_t>( n, begin + 64 );
    word bits = 0;
    std::size_t r = begin;
    for ( ; r + 4 <= end; r += 4 )
    {
      __m256i const u = _mm256_andnot_si256( load( covered + r ), basis_v );
      __m256i const hit = _mm256_and_si256( load( rows + r ), u );
      __m256i const gain = _mm256_sub_epi64( _mm256_slli_epi64( popcount_epi64( hit ), 1 ), popcount_epi64( u ) );
      __m256i const positive = _mm256_cmpgt_epi64( gain, zero );
      acc = _mm256_add_epi64( acc, _mm256_and_si256( gain, positive ) );
      auto const mask = static_cast<word>( _mm256_movemask_pd( _mm256_castsi256_pd( positive ) ) );
      bits |= mask << ( r - begin );
    }
    for ( ; r < end; ++r )
    {
      word const u = basis & ~covered[r];
      std::int64_t const gain = 2 * static_cast<std::int64_t>( std::popcount( rows[r] & u ) ) -
                                static_cast<std::int64_t>( std::popcount( u ) );
      if ( gain > 0 )
      {
        bits |= word{ 1 } << ( r - begin );
        acc = _mm256_add_epi64( acc, _mm256_set_epi64x( 0, 0, 0, gain ) );
      }
    }
    selected[w] = bits;
  }
  return static_cast<std::int64_t>( horizontal_sum( acc ) );
}

} // namespace ruca::kernels::avx2
