#pragma once

#include <ruca/bit_matrix.hpp>
#include <ruca/bmf.hpp>
#include <ruca/netlist.hpp>
#include <ruca/simulate.hpp>

#include <cstdint>
#include <random>

/* Independent reference computations used by the tests. They work entry by
   entry on plain vectors and never call the packed kernels. */
namespace ruca::oracle
{

inline boolean_matrix random_matrix( std::mt19937_64& rng, std::size_t p, std::size_t q, double density )
{
  std::bernoulli_distribution bit( density );
  boolean_matrix m( p, q );
  for ( std::size_t r = 0; r < p; ++r )
    for ( std::size_t c = 0; c < q; ++c )
      m.set( r, c, bit( rng ) );
  return m;
}

inline std::size_t hamming( boolean_matrix const& a, boolean_matrix const& b )
{
  std::size_t d = 0;
  for ( std::size_t r = 0; r < a.rows(); ++r )
    for ( std::size_t c = 0; c < a.cols(); ++c )
      d += a.get( r, c ) != b.get( r, c );
  return d;
}

/// Entry (i, j) = OR_k col_k[i] AND row_k[j].
inline boolean_matrix or_of_products( std::vector<rank_one_pair> const& pairs, std::size_t upto, std::size_t p,
                                      std::size_t q )
{
  boolean_matrix m( p, q );
  for ( std::size_t i = 0; i < p; ++i )
    for ( std::size_t j = 0; j < q; ++j )
    {
      bool v = false;
      for ( std::size_t k = 0; k < upto; ++k )
        v = v || ( pairs[k].col.get( i ) && pairs[k].row.get( j ) );
      m.set( i, j, v );
    }
  return m;
}

/// Truth table by evaluating the circuit one vector at a time.
inline boolean_matrix slow_truth_table( circuit const& c )
{
  std::size_t const rows = std::size_t{ 1 } << c.num_inputs();
  boolean_matrix m( rows, c.num_outputs() );
  for ( std::size_t r = 0; r < rows; ++r )
  {
    input_vector x( c.num_inputs() );
    for ( std::size_t j = 0; j < x.size(); ++j )
      x[j] = ( r >> j ) & 1u;
    auto const y = simulate( c, x );
    for ( std::size_t j = 0; j < y.size(); ++j )
      m.set( r, j, y[j] );
  }
  return m;
}

/// Exhaustive functional equality; `pins` fixes extra inputs of `b` (matched by name).
inline bool equivalent( circuit const& a, circuit const& b, pin_assignment const& pins = {} )
{
  if ( a.num_outputs() != b.num_outputs() )
    return false;
  std::size_t const rows = std::size_t{ 1 } << a.num_inputs();
  for ( std::size_t first = 0; first < rows; first += 4096 )
  {
    auto const count = std::min<std::size_t>( 4096, rows - first );
    auto const stim = exhaustive_inputs( a.num_inputs(), first, count );
    auto const ya = simulate_outputs( a, stim );
    auto const yb = simulate_outputs( b, bind_inputs( b, a.inputs(), stim, pins ) );
    for ( std::size_t j = 0; j < a.num_outputs(); ++j )
      for ( std::size_t w = 0; w < ya.words(); ++w )
        if ( ( ya[j][w] ^ yb[j][w] ) & ya.valid_mask( w ) )
          return false;
  }
  return true;
}

/// Random-vector equality for wide circuits.
inline bool equivalent_sampled( circuit const& a, circuit const& b, std::size_t vectors, std::uint64_t seed,
                                pin_assignment const& pins = {} )
{
  auto const stim = random_inputs( a.inputs(), vectors, seed );
  auto const ya = simulate_outputs( a, stim );
  auto const yb = simulate_outputs( b, bind_inputs( b, a.inputs(), stim, pins ) );
  for ( std::size_t j = 0; j < a.num_outputs(); ++j )
    for ( std::size_t w = 0; w < ya.words(); ++w )
      if ( ( ya[j][w] ^ yb[j][w] ) & ya.valid_mask( w ) )
        return false;
  return true;
}

/// Unsigned value of row r (LSB = column 0).
inline std::uint64_t row_value( boolean_matrix const& m, std::size_t r )
{
  std::uint64_t v = 0;
  for ( std::size_t j = 0; j < m.cols(); ++j )
    v |= std::uint64_t{ m.get( r, j ) } << j;
  return v;
}

/// Exact MAE numerator: sum over rows of |value(a) - value(b)|.
inline std::uint64_t abs_error_sum( boolean_matrix const& a, boolean_matrix const& b )
{
  std::uint64_t total = 0;
  for ( std::size_t r = 0; r < a.rows(); ++r )
  {
    auto const x = row_value( a, r ), y = row_value( b, r );
    total += x > y ? x - y : y - x;
  }
  return total;
}

} // namespace ruca::oracle
