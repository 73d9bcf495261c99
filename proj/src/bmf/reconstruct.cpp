#include <ruca/bmf.hpp>
#include <ruca/error.hpp>

namespace ruca
{

boolean_matrix reconstruct( std::span<rank_one_pair const> pairs, std::size_t upto, std::size_t rows,
                            std::size_t cols )
{
  if ( upto > pairs.size() )
    throw constraint_error( "reconstruct: requested " + std::to_string( upto ) + " terms of " +
                            std::to_string( pairs.size() ) );
  boolean_matrix out( rows, cols );
  for ( std::size_t k = 0; k < upto; ++k )
  {
    auto const& p = pairs[k];
    if ( p.col.size() != rows || p.row.size() != cols )
      throw dimension_error( "reconstruct: pair " + std::to_string( k ) + " does not match " + std::to_string( rows ) +
                             "x" + std::to_string( cols ) );
    auto const row_words = p.row.words();
    for ( std::size_t r = 0; r < rows; ++r )
    {
      if ( !p.col.get( r ) )
        continue;
      auto dst = out.row( r );
      for ( std::size_t w = 0; w < dst.size(); ++w )
        dst[w] |= row_words[w];
    }
  }
  return out;
}

boolean_matrix reconstruct( factorization const& f, std::size_t upto )
{
  return reconstruct( f.pairs, upto, f.rows, f.cols );
}

std::size_t factor_error( boolean_matrix const& m, boolean_matrix const& approx )
{
  if ( m.rows() != approx.rows() || m.cols() != approx.cols() )
    throw dimension_error( "factor_error: dimension mismatch" );
  return kernels::popcount_xor( m.data(), approx.data() );
}

} // namespace ruca
