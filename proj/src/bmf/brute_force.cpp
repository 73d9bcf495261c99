#include <ruca/bmf.hpp>
#include <ruca/error.hpp>

#include <bit>
#include <limits>

namespace ruca
{

namespace
{

boolean_matrix transposed( boolean_matrix const& m )
{
  boolean_matrix t( m.cols(), m.rows() );
  for ( std::size_t r = 0; r < m.rows(); ++r )
    for ( std::size_t c = 0; c < m.cols(); ++c )
      if ( m.get( r, c ) )
        t.set( c, r );
  return t;
}

/*
  Enumerates the f basis rows (each a q-bit word) as a non-decreasing
  sequence, since row order and repetition do not change the optimum.
  For fixed B every row of A is chosen independently as the best of the
  2^f OR-combinations.
*/
struct search
{
  std::vector<word> rows; // one word per row of M
  std::size_t q = 0;
  std::size_t f = 0;

  std::vector<word> basis;
  std::vector<word> combos;
  std::size_t best_error = std::numeric_limits<std::size_t>::max();
  std::vector<word> best_basis;
  std::vector<std::size_t> best_choice;

  void run() { recurse( 0, 0 ); }

  void recurse( std::size_t depth, word first )
  {
    if ( best_error == 0 )
      return;
    if ( depth == f )
    {
      evaluate();
      return;
    }
    word const limit = word{ 1 } << q;
    for ( word b = first; b < limit; ++b )
    {
      basis[depth] = b;
      recurse( depth + 1, b );
    }
  }

  void evaluate()
  {
    std::size_t const n = std::size_t{ 1 } << f;
    combos.assign( n, 0 );
    for ( std::size_t s = 1; s < n; ++s )
    {
      auto const low = static_cast<std::size_t>( std::countr_zero( s ) );
      combos[s] = combos[s & ( s - 1 )] | basis[low];
    }
    std::size_t total = 0;
    for ( auto r : rows )
    {
      int best = std::numeric_limits<int>::max();
      for ( std::size_t s = 0; s < n && best > 0; ++s )
        best = std::min( best, std::popcount( r ^ combos[s] ) );
      total += static_cast<std::size_t>( best );
      if ( total >= best_error )
        return;
    }
    best_error = total;
    best_basis = basis;
    best_choice.clear();
    for ( auto r : rows )
    {
      std::size_t pick = 0;
      int best = std::numeric_limits<int>::max();
      for ( std::size_t s = 0; s < n; ++s )
        if ( int const e = std::popcount( r ^ combos[s] ); e < best )
        {
          best = e;
          pick = s;
        }
      best_choice.push_back( pick );
    }
  }
};

} // namespace

factorization brute_force_bmf( boolean_matrix const& m, std::size_t degree )
{
  if ( degree < 1 )
    throw constraint_error( "brute_force_bmf: degree must be at least 1" );
  if ( m.rows() * degree > 20 || m.cols() * degree > 20 )
    throw constraint_error( "brute_force_bmf: " + std::to_string( m.rows() ) + "x" + std::to_string( m.cols() ) +
                            " with degree " + std::to_string( degree ) + " exceeds the enumeration guard" );

  /* enumerate over the narrower side; M^T = B^T A^T */
  bool const flip = m.rows() < m.cols();
  auto const work = flip ? transposed( m ) : m;

  search s;
  s.q = work.cols();
  s.f = degree;
  s.basis.assign( degree, 0 );
  for ( std::size_t r = 0; r < work.rows(); ++r )
    s.rows.push_back( work.row( r )[0] );
  s.run();

  factorization out;
  out.rows = m.rows();
  out.cols = m.cols();
  for ( std::size_t k = 0; k < degree; ++k )
  {
    bit_vector left( work.rows() ), right( work.cols() );
    for ( std::size_t r = 0; r < work.rows(); ++r )
      left.set( r, ( s.best_choice[r] >> k ) & 1u );
    for ( std::size_t c = 0; c < work.cols(); ++c )
      right.set( c, ( s.best_basis[k] >> c ) & 1u );
    if ( flip )
      std::swap( left, right );
    out.pairs.push_back( { std::move( left ), std::move( right ), 0 } );
  }
  for ( std::size_t k = 1; k <= degree; ++k )
    out.err_curve.push_back( factor_error( m, reconstruct( out, k ) ) );
  return out;
}

} // namespace ruca
