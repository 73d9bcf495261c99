#pragma once

#include <ruca/kernels.hpp>

#include <algorithm>
#include <cstddef>

namespace ruca::kernels
{

namespace scalar
{
std::uint64_t popcount( word const* a, std::size_t n );
std::uint64_t popcount_and( word const* a, word const* b, std::size_t n );
std::uint64_t popcount_xor( word const* a, word const* b, std::size_t n );
std::int64_t cover_gain( word const* rows, word const* covered, word basis, std::size_t n, word* selected );
} // namespace scalar

#if defined( RUCA_HAVE_AVX2 )
namespace avx2
{
std::uint64_t popcount( word const* a, std::size_t n );
std::uint64_t popcount_and( word const* a, word const* b, std::size_t n );
std::uint64_t popcount_xor( word const* a, word const* b, std::size_t n );
std::int64_t cover_gain( word const* rows, word const* covered, word basis, std::size_t n, word* selected );
} // namespace avx2
#endif

} // namespace ruca::kernels
