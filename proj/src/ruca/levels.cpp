#include <ruca/ruca.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace ruca
{

std::string_view to_string( full_mode_kind kind ) noexcept
{
  return kind == full_mode_kind::xor_corrector ? "xor_corrector" : "mux_original";
}

full_mode_kind parse_full_mode_kind( std::string_view text )
{
  if ( text == "xor_corrector" || text == "xor" )
    return full_mode_kind::xor_corrector;
  if ( text == "mux_original" || text == "mux" )
    return full_mode_kind::mux_original;
  throw constraint_error( "unknown full mode kind '" + std::string( text ) + "'" );
}

std::vector<double> degree_qor( boolean_matrix const& m, factorization const& f, metric kind, bool msb_first )
{
  if ( m.rows() != f.rows || m.cols() != f.cols )
    throw dimension_error( "degree_qor: factorization does not match the matrix" );
  std::vector<double> out;
  boolean_matrix approx( m.rows(), m.cols() );
  for ( std::size_t k = 1; k <= f.degree(); ++k )
  {
    approx |= reconstruct( std::span( f.pairs ).subspan( k - 1, 1 ), 1, m.rows(), m.cols() );
    out.push_back( matrix_qor( m, approx, kind, msb_first ) );
  }
  return out;
}

level_plan plan_cuts( std::span<double const> per_degree, std::vector<double> thresholds, metric kind )
{
  if ( thresholds.empty() )
    throw constraint_error( "split_levels: empty threshold list" );
  for ( auto t : thresholds )
    if ( !( t >= 0.0 ) || std::isinf( t ) )
      throw constraint_error( "split_levels: thresholds must be finite and non-negative" );
  std::sort( thresholds.begin(), thresholds.end(), std::greater<>() );
  thresholds.erase( std::unique( thresholds.begin(), thresholds.end() ), thresholds.end() );

  level_plan plan;
  plan.kind = kind;
  std::size_t previous = 0;
  for ( std::size_t i = 0; i < thresholds.size(); ++i )
  {
    std::size_t k = previous + 1;
    while ( k <= per_degree.size() && per_degree[k - 1] > thresholds[i] )
      ++k;
    if ( k > per_degree.size() )
    {
      plan.dropped.assign( thresholds.begin() + static_cast<std::ptrdiff_t>( i ), thresholds.end() );
      break;
    }
    plan.thresholds.push_back( thresholds[i] );
    plan.cuts.push_back( k );
    plan.level_qor.push_back( per_degree[k - 1] );
    previous = k;
  }
  return plan;
}

level_plan split_levels( factorization const& f, boolean_matrix const& m, std::vector<double> thresholds, metric kind,
                         bool msb_first )
{
  auto const per_degree = degree_qor( m, f, kind, msb_first );
  return plan_cuts( per_degree, std::move( thresholds ), kind );
}

boolean_matrix corrector_matrix( boolean_matrix const& m, factorization const& f, std::size_t k )
{
  if ( m.rows() != f.rows || m.cols() != f.cols )
    throw dimension_error( "corrector_matrix: factorization does not match the matrix" );
  return m ^ reconstruct( f, k );
}

pin_assignment mode_pins( std::span<std::string const> enables, design_mode const& mode )
{
  pin_assignment pins;
  for ( auto const& en : enables )
    pins.emplace_back( en, std::find( mode.enables.begin(), mode.enables.end(), en ) != mode.enables.end() );
  return pins;
}

pin_assignment ruca_design::pins( std::size_t mode ) const
{
  return mode_pins( enables, modes.at( mode ) );
}

} // namespace ruca
