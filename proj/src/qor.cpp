#include <ruca/qor.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <string>

namespace ruca
{

std::string_view to_string( metric kind ) noexcept
{
  return kind == metric::mae ? "mae" : "nhd";
}

metric parse_metric( std::string_view text )
{
  std::string lower( text );
  std::transform( lower.begin(), lower.end(), lower.begin(), []( unsigned char ch ) { return std::tolower( ch ); } );
  if ( lower == "mae" )
    return metric::mae;
  if ( lower == "nhd" )
    return metric::nhd;
  throw constraint_error( "unknown metric '" + std::string( text ) + "' (expected mae or nhd)" );
}

namespace
{

struct accumulator
{
  std::size_t width = 0;
  bool msb_first = false;
  unsigned __int128 abs_total = 0;
  std::uint64_t diff_bits = 0;
  std::uint64_t vectors = 0;
  std::uint64_t mismatched = 0;

  std::size_t weight( std::size_t j ) const noexcept { return msb_first ? width - 1 - j : j; }

  void add_row( std::span<word const> g, std::span<word const> a )
  {
    ++vectors;
    std::uint64_t gv = 0, av = 0;
    bool differs = false;
    for ( std::size_t j = 0; j < width; ++j )
    {
      bool const gb = ( g[j / 64] >> ( j % 64 ) ) & 1u;
      bool const ab = ( a[j / 64] >> ( j % 64 ) ) & 1u;
      if ( gb != ab )
      {
        differs = true;
        ++diff_bits;
      }
      if ( width <= 64 )
      {
        gv |= std::uint64_t{ gb } << weight( j );
        av |= std::uint64_t{ ab } << weight( j );
      }
    }
    if ( differs )
    {
      ++mismatched;
      abs_total += gv > av ? gv - av : av - gv;
    }
  }

  void add_planes( bit_planes const& g, bit_planes const& a )
  {
    for ( std::size_t w = 0; w < g.words(); ++w )
    {
      word const valid = g.valid_mask( w );
      word diff = 0;
      for ( std::size_t j = 0; j < width; ++j )
      {
        word const x = ( g[j][w] ^ a[j][w] ) & valid;
        diff |= x;
        diff_bits += static_cast<std::uint64_t>( std::popcount( x ) );
      }
      vectors += static_cast<std::uint64_t>( std::popcount( valid ) );
      mismatched += static_cast<std::uint64_t>( std::popcount( diff ) );
      if ( width > 64 )
        continue;
      while ( diff )
      {
        auto const b = static_cast<unsigned>( std::countr_zero( diff ) );
        diff &= diff - 1;
        std::uint64_t gv = 0, av = 0;
        for ( std::size_t j = 0; j < width; ++j )
        {
          gv |= ( ( g[j][w] >> b ) & 1u ) << weight( j );
          av |= ( ( a[j][w] >> b ) & 1u ) << weight( j );
        }
        abs_total += gv > av ? gv - av : av - gv;
      }
    }
  }

  double value( metric kind ) const
  {
    if ( vectors == 0 )
      return 0.0;
    if ( kind == metric::nhd )
      return static_cast<double>( diff_bits ) / ( static_cast<double>( vectors ) * static_cast<double>( width ) );
    if ( width > 64 )
      throw constraint_error( "mae: output words wider than 64 bits are not supported; use nhd" );
    return std::ldexp( static_cast<double>( abs_total ) / static_cast<double>( vectors ), -static_cast<int>( width ) );
  }
};

} // namespace

qor_result compare_circuits( circuit const& golden, circuit const& approx, qor_config const& cfg,
                             pin_assignment const& pins )
{
  if ( golden.num_outputs() != approx.num_outputs() )
    throw dimension_error( "qor: golden has " + std::to_string( golden.num_outputs() ) + " outputs, approximation " +
                           std::to_string( approx.num_outputs() ) );
  if ( cfg.samples == 0 )
    throw constraint_error( "qor: sample count must be at least 1" );
  if ( cfg.kind == metric::mae && golden.num_outputs() > 64 )
    throw constraint_error( "mae: output words wider than 64 bits are not supported; use nhd" );

  accumulator acc{ golden.num_outputs(), cfg.msb_first };
  auto const& names = golden.inputs();
  auto run = [&]( bit_planes const& stimulus ) {
    auto const g = simulate_outputs( golden, stimulus );
    auto const a = simulate_outputs( approx, bind_inputs( approx, names, stimulus, pins ) );
    acc.add_planes( g, a );
  };

  qor_result result;
  constexpr std::uint64_t batch = 1u << 14;
  if ( golden.num_inputs() <= cfg.exhaustive_cap )
  {
    result.exhaustive = true;
    std::uint64_t const rows = std::uint64_t{ 1 } << golden.num_inputs();
    for ( std::uint64_t first = 0; first < rows; first += batch )
      run( exhaustive_inputs( golden.num_inputs(), first, static_cast<std::size_t>( std::min( batch, rows - first ) ) ) );
  }
  else
  {
    std::uint64_t chunk = 0;
    for ( std::uint64_t done = 0; done < cfg.samples; done += batch, ++chunk )
    {
      auto const count = static_cast<std::size_t>( std::min<std::uint64_t>( batch, cfg.samples - done ) );
      run( random_inputs( names, count, cfg.seed + chunk * 0x9e3779b97f4a7c15ull ) );
    }
  }
  result.value = acc.value( cfg.kind );
  result.vectors = acc.vectors;
  result.mismatched_vectors = acc.mismatched;
  return result;
}

double mae( circuit const& golden, circuit const& approx, qor_config cfg, pin_assignment const& pins )
{
  cfg.kind = metric::mae;
  return compare_circuits( golden, approx, cfg, pins ).value;
}

double nhd( circuit const& golden, circuit const& approx, qor_config cfg, pin_assignment const& pins )
{
  cfg.kind = metric::nhd;
  return compare_circuits( golden, approx, cfg, pins ).value;
}

double matrix_qor( boolean_matrix const& m, boolean_matrix const& approx, metric kind, bool msb_first )
{
  if ( m.rows() != approx.rows() || m.cols() != approx.cols() )
    throw dimension_error( "matrix_qor: dimension mismatch" );
  accumulator acc{ m.cols(), msb_first };
  for ( std::size_t r = 0; r < m.rows(); ++r )
    acc.add_row( m.row( r ), approx.row( r ) );
  return acc.value( kind );
}

} // namespace ruca
