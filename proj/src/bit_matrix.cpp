#include <ruca/bit_matrix.hpp>
#include <ruca/error.hpp>

#include <algorithm>
#include <bit>
#include <sstream>

namespace ruca
{

bit_vector::bit_vector( std::size_t size, bool value )
    : size_( size ), words_( words_for( size ), value ? ~word{ 0 } : word{ 0 } )
{
  trim();
}

std::size_t bit_vector::count() const noexcept
{
  return kernels::popcount( words_ );
}

bool bit_vector::none() const noexcept
{
  return std::all_of( words_.begin(), words_.end(), []( word w ) { return w == 0; } );
}

void bit_vector::trim() noexcept
{
  if ( size_ % 64 != 0 && !words_.empty() )
    words_.back() &= ( word{ 1 } << ( size_ % 64 ) ) - 1;
}

boolean_matrix::boolean_matrix( std::size_t rows, std::size_t cols )
    : rows_( rows ), cols_( cols ), stride_( words_for( cols ) )
{
  if ( rows == 0 || cols == 0 )
    throw dimension_error( "boolean_matrix: dimensions must be positive" );
  bits_.assign( rows_ * stride_, 0 );
}

bit_vector boolean_matrix::column( std::size_t c ) const
{
  bit_vector out( rows_ );
  for ( std::size_t r = 0; r < rows_; ++r )
    if ( get( r, c ) )
      out.set( r );
  return out;
}

void boolean_matrix::set_column( std::size_t c, bit_vector const& values )
{
  if ( values.size() != rows_ )
    throw dimension_error( "set_column: length mismatch" );
  for ( std::size_t r = 0; r < rows_; ++r )
    set( r, c, values.get( r ) );
}

boolean_matrix boolean_matrix::column_slice( std::size_t first, std::size_t last ) const
{
  if ( first >= last || last > cols_ )
    throw dimension_error( "column_slice: empty or out-of-range slice" );
  boolean_matrix out( rows_, last - first );
  for ( std::size_t r = 0; r < rows_; ++r )
    for ( std::size_t c = first; c < last; ++c )
      if ( get( r, c ) )
        out.set( r, c - first );
  return out;
}

boolean_matrix boolean_matrix::row_slice( std::size_t first, std::size_t last ) const
{
  if ( first >= last || last > rows_ )
    throw dimension_error( "row_slice: empty or out-of-range slice" );
  boolean_matrix out( last - first, cols_ );
  std::copy( bits_.begin() + first * stride_, bits_.begin() + last * stride_, out.bits_.begin() );
  return out;
}

boolean_matrix boolean_matrix::from_columns( std::span<bit_vector const> columns )
{
  if ( columns.empty() )
    throw dimension_error( "from_columns: no columns" );
  boolean_matrix out( columns.front().size(), columns.size() );
  for ( std::size_t c = 0; c < columns.size(); ++c )
    out.set_column( c, columns[c] );
  return out;
}

std::size_t boolean_matrix::count_ones() const noexcept
{
  return kernels::popcount( bits_ );
}

boolean_matrix& boolean_matrix::operator^=( boolean_matrix const& other )
{
  if ( rows_ != other.rows_ || cols_ != other.cols_ )
    throw dimension_error( "xor: dimension mismatch" );
  for ( std::size_t i = 0; i < bits_.size(); ++i )
    bits_[i] ^= other.bits_[i];
  return *this;
}

boolean_matrix& boolean_matrix::operator|=( boolean_matrix const& other )
{
  if ( rows_ != other.rows_ || cols_ != other.cols_ )
    throw dimension_error( "or: dimension mismatch" );
  for ( std::size_t i = 0; i < bits_.size(); ++i )
    bits_[i] |= other.bits_[i];
  return *this;
}

boolean_matrix parse_matrix( std::string_view text )
{
  std::istringstream in{ std::string{ text } };
  std::size_t rows = 0, cols = 0;
  if ( !( in >> rows >> cols ) )
    throw netlist_error( netlist_errc::syntax, "matrix: expected `p q` header", {}, 1, 1 );
  if ( rows == 0 || cols == 0 )
    throw netlist_error( netlist_errc::syntax, "matrix: dimensions must be positive", {}, 1, 1 );
  boolean_matrix m( rows, cols );
  for ( std::size_t r = 0; r < rows; ++r )
  {
    std::string line;
    if ( !( in >> line ) )
      throw netlist_error( netlist_errc::syntax, "matrix: missing row", {}, r + 2, 1 );
    if ( line.size() != cols )
      throw netlist_error( netlist_errc::syntax, "matrix: row has wrong length", {}, r + 2, 1 );
    for ( std::size_t c = 0; c < cols; ++c )
    {
      if ( line[c] != '0' && line[c] != '1' )
        throw netlist_error( netlist_errc::syntax, "matrix: expected 0 or 1", {}, r + 2, c + 1 );
      m.set( r, c, line[c] == '1' );
    }
  }
  std::string extra;
  if ( in >> extra )
    throw netlist_error( netlist_errc::syntax, "matrix: trailing data", {}, rows + 2, 1 );
  return m;
}

std::string format_matrix( boolean_matrix const& m )
{
  std::string out = std::to_string( m.rows() ) + " " + std::to_string( m.cols() ) + "\n";
  out.reserve( out.size() + m.rows() * ( m.cols() + 1 ) );
  for ( std::size_t r = 0; r < m.rows(); ++r )
  {
    for ( std::size_t c = 0; c < m.cols(); ++c )
      out.push_back( m.get( r, c ) ? '1' : '0' );
    out.push_back( '\n' );
  }
  return out;
}

} // namespace ruca
