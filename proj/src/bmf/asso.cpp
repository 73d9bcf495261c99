#include <ruca/bmf.hpp>
#include <ruca/error.hpp>

#include <bit>

namespace ruca
{

namespace
{

/* multi-word fallback of kernels::cover_gain for matrices wider than 64 */
std::int64_t cover_gain_wide( boolean_matrix const& m, boolean_matrix const& covered, std::span<word const> basis,
                              bit_vector& selected )
{
  std::int64_t total = 0;
  for ( std::size_t r = 0; r < m.rows(); ++r )
  {
    auto const row = m.row( r );
    auto const cov = covered.row( r );
    std::int64_t gain = 0;
    for ( std::size_t w = 0; w < row.size(); ++w )
    {
      word const u = basis[w] & ~cov[w];
      gain += 2 * static_cast<std::int64_t>( std::popcount( row[w] & u ) ) - std::popcount( u );
    }
    selected.set( r, gain > 0 );
    if ( gain > 0 )
      total += gain;
  }
  return total;
}

} // namespace

boolean_matrix association_matrix( boolean_matrix const& m, double tau )
{
  if ( !( tau > 0.0 && tau <= 1.0 ) )
    throw constraint_error( "association_matrix: tau must lie in (0, 1]" );
  std::size_t const q = m.cols();
  std::vector<bit_vector> columns;
  columns.reserve( q );
  for ( std::size_t j = 0; j < q; ++j )
    columns.push_back( m.column( j ) );

  boolean_matrix assoc( q, q );
  for ( std::size_t i = 0; i < q; ++i )
  {
    auto const support = columns[i].count();
    if ( support == 0 )
      continue;
    for ( std::size_t j = 0; j < q; ++j )
    {
      auto const both = kernels::popcount_and( columns[i].words(), columns[j].words() );
      if ( static_cast<double>( both ) >= tau * static_cast<double>( support ) )
        assoc.set( i, j );
    }
  }
  return assoc;
}

factorization asso_factorize( boolean_matrix const& m, std::size_t degree, double tau )
{
  if ( degree < 1 || degree > m.cols() )
    throw constraint_error( "asso_factorize: degree " + std::to_string( degree ) + " outside [1, " +
                            std::to_string( m.cols() ) + "]" );
  if ( !( tau > 0.0 && tau <= 1.0 ) )
    throw constraint_error( "asso_factorize: tau must lie in (0, 1]" );

  auto const assoc = association_matrix( m, tau );
  std::vector<std::size_t> candidates;
  for ( std::size_t i = 0; i < assoc.rows(); ++i )
    if ( assoc.get( i, i ) )
      candidates.push_back( i );

  factorization f;
  f.rows = m.rows();
  f.cols = m.cols();
  boolean_matrix covered( m.rows(), m.cols() );
  bool const narrow = m.words_per_row() == 1;
  auto error = m.count_ones();

  bit_vector scratch( m.rows() );
  for ( std::size_t step = 0; step < degree; ++step )
  {
    rank_one_pair best{ bit_vector( m.rows() ), bit_vector( m.cols() ), 0 };
    for ( auto i : candidates )
    {
      auto const basis = assoc.row( i );
      std::int64_t const gain = narrow ? kernels::cover_gain( m.data(), covered.data(), basis[0], scratch.words() )
                                       : cover_gain_wide( m, covered, basis, scratch );
      if ( gain > best.gain )
      {
        best.gain = gain;
        best.col = scratch;
        best.row = bit_vector( m.cols() );
        for ( std::size_t j = 0; j < m.cols(); ++j )
          best.row.set( j, assoc.get( i, j ) );
      }
    }
    if ( best.gain > 0 )
    {
      auto const row_words = best.row.words();
      for ( std::size_t r = 0; r < m.rows(); ++r )
        if ( best.col.get( r ) )
        {
          auto dst = covered.row( r );
          for ( std::size_t w = 0; w < dst.size(); ++w )
            dst[w] |= row_words[w];
        }
      error -= static_cast<std::size_t>( best.gain );
    }
    f.pairs.push_back( std::move( best ) );
    f.err_curve.push_back( error );
  }
  return f;
}

} // namespace ruca
