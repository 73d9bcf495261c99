#pragma once

#include <ruca/kernels.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ruca
{

using word = kernels::word;

inline constexpr std::size_t words_for( std::size_t bits ) noexcept
{
  return ( bits + 63 ) / 64;
}

/// Packed bit vector. Bits past `size()` are always zero.
class bit_vector
{
public:
  bit_vector() = default;
  explicit bit_vector( std::size_t size, bool value = false );

  std::size_t size() const noexcept { return size_; }
  bool get( std::size_t i ) const noexcept { return ( words_[i / 64] >> ( i % 64 ) ) & 1u; }
  void set( std::size_t i, bool value = true ) noexcept
  {
    word const bit = word{ 1 } << ( i % 64 );
    words_[i / 64] = value ? ( words_[i / 64] | bit ) : ( words_[i / 64] & ~bit );
  }

  std::size_t count() const noexcept;
  bool none() const noexcept;

  std::span<word const> words() const noexcept { return words_; }
  std::span<word> words() noexcept { return words_; }

  /// Clears the padding bits of the last word.
  void trim() noexcept;

  friend bool operator==( bit_vector const&, bit_vector const& ) = default;

private:
  std::size_t size_ = 0;
  std::vector<word> words_;
};

/*
  Dense p x q Boolean matrix stored row-major with each row packed into
  ceil(q/64) words. Truth tables are tall and narrow (2^n rows, m <= 64
  columns in practice), so most rows fit into a single word.
*/
class boolean_matrix
{
public:
  boolean_matrix() = default;
  /// Zero matrix; both dimensions must be at least one.
  boolean_matrix( std::size_t rows, std::size_t cols );

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool get( std::size_t r, std::size_t c ) const noexcept
  {
    return ( bits_[r * stride_ + c / 64] >> ( c % 64 ) ) & 1u;
  }
  void set( std::size_t r, std::size_t c, bool value = true ) noexcept
  {
    word& w = bits_[r * stride_ + c / 64];
    word const bit = word{ 1 } << ( c % 64 );
    w = value ? ( w | bit ) : ( w & ~bit );
  }

  std::span<word const> row( std::size_t r ) const noexcept { return { bits_.data() + r * stride_, stride_ }; }
  std::span<word> row( std::size_t r ) noexcept { return { bits_.data() + r * stride_, stride_ }; }

  /// All rows back to back (rows() * words_per_row() words).
  std::span<word const> data() const noexcept { return bits_; }

  bit_vector column( std::size_t c ) const;
  void set_column( std::size_t c, bit_vector const& values );

  /// Matrix made of columns [first, last).
  boolean_matrix column_slice( std::size_t first, std::size_t last ) const;
  /// Matrix made of rows [first, last).
  boolean_matrix row_slice( std::size_t first, std::size_t last ) const;

  static boolean_matrix from_columns( std::span<bit_vector const> columns );

  std::size_t count_ones() const noexcept;

  boolean_matrix& operator^=( boolean_matrix const& other );
  boolean_matrix& operator|=( boolean_matrix const& other );
  friend boolean_matrix operator^( boolean_matrix lhs, boolean_matrix const& rhs ) { return lhs ^= rhs; }
  friend boolean_matrix operator|( boolean_matrix lhs, boolean_matrix const& rhs ) { return lhs |= rhs; }
  friend bool operator==( boolean_matrix const&, boolean_matrix const& ) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<word> bits_;
};

/// Text fixture format: first line `p q`, then p lines of q characters in {0,1}.
boolean_matrix parse_matrix( std::string_view text );
std::string format_matrix( boolean_matrix const& m );

} // namespace ruca
