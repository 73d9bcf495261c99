#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "../support/variants.hpp"

#include <ruca/error.hpp>
#include <ruca/qor.hpp>
#include <ruca/synth.hpp>

#include <bit>
#include <cmath>

using namespace ruca;

namespace
{

/// Exhaustive MAE from per-vector simulation and integer arithmetic.
double slow_mae( circuit const& a, circuit const& b, bool msb_first = false )
{
  auto const ta = oracle::slow_truth_table( a ), tb = oracle::slow_truth_table( b );
  auto value = [&]( boolean_matrix const& t, std::size_t r ) {
    std::uint64_t v = 0;
    for ( std::size_t j = 0; j < t.cols(); ++j )
    {
      auto const bit = msb_first ? t.cols() - 1 - j : j;
      v |= std::uint64_t{ t.get( r, j ) } << bit;
    }
    return v;
  };
  long double total = 0;
  for ( std::size_t r = 0; r < ta.rows(); ++r )
  {
    auto const x = value( ta, r ), y = value( tb, r );
    total += static_cast<long double>( x > y ? x - y : y - x );
  }
  return static_cast<double>( total / ta.rows() / std::ldexp( 1.0L, static_cast<int>( ta.cols() ) ) );
}

double slow_nhd( circuit const& a, circuit const& b )
{
  auto const ta = oracle::slow_truth_table( a ), tb = oracle::slow_truth_table( b );
  return static_cast<double>( oracle::hamming( ta, tb ) ) / static_cast<double>( ta.rows() * ta.cols() );
}

qor_config exhaustive( metric kind )
{
  qor_config cfg;
  cfg.kind = kind;
  return cfg;
}

} // namespace

TEST_SUITE( "qor" )
{
  TEST_CASE( "metric names" )
  {
    CHECK( parse_metric( "MAE" ) == metric::mae );
    CHECK( parse_metric( "nhd" ) == metric::nhd );
    CHECK( to_string( metric::nhd ) == "nhd" );
    CHECK_THROWS_AS( parse_metric( "er" ), constraint_error );
  }

  TEST_CASE( "identical circuits score zero" )
  {
    auto const a = fixtures::adder( 4 );
    auto const r = compare_circuits( a, a, exhaustive( metric::mae ) );
    CHECK( r.value == 0.0 );
    CHECK( r.exhaustive );
    CHECK( r.vectors == 256 );
    CHECK( r.mismatched_vectors == 0 );
    CHECK( nhd( a, a, exhaustive( metric::nhd ) ) == 0.0 );
  }

  TEST_CASE( "adder with the sum LSB forced to 0 matches integer enumeration" )
  {
    auto const golden = fixtures::adder( 4 );
    auto const forced = fixtures::with_constant_net( golden, "s0", false );
    /* |(a+b) - ((a+b) & ~1)| summed over all pairs, independent of any netlist */
    std::uint64_t total = 0;
    for ( unsigned a = 0; a < 16; ++a )
      for ( unsigned b = 0; b < 16; ++b )
      {
        unsigned const exact = a + b, approx = exact & ~1u;
        total += exact - approx;
      }
    double const oracle_value = static_cast<double>( total ) / 256.0 / 32.0;
    CHECK( total == 128 );
    CHECK( mae( golden, forced, exhaustive( metric::mae ) ) == oracle_value );
    CHECK( slow_mae( golden, forced ) == oracle_value );
    auto const r = compare_circuits( golden, forced, exhaustive( metric::mae ) );
    CHECK( r.mismatched_vectors == 128 );
  }

  TEST_CASE( "constant words" )
  {
    auto const ones = fixtures::constant_word( 2, 4, true ), zeros = fixtures::constant_word( 2, 4, false );
    CHECK( mae( ones, zeros, exhaustive( metric::mae ) ) == 0.9375 );
    CHECK( nhd( ones, zeros, exhaustive( metric::nhd ) ) == 1.0 );
  }

  TEST_CASE( "complemented outputs have distance one" )
  {
    for ( auto const& fx : fixtures::catalog( 10 ) )
    {
      CAPTURE( fx.name );
      CHECK( nhd( fx.logic, fixtures::complemented( fx.logic ), exhaustive( metric::nhd ) ) == 1.0 );
    }
  }

  TEST_CASE( "netlist metrics agree with per-vector oracles" )
  {
    for ( std::uint64_t seed = 1; seed <= 20; ++seed )
    {
      auto const a = fixtures::random_circuit( seed, 7, 30, 5 );
      auto const b = fixtures::random_circuit( seed + 100, 7, 30, 5 );
      CHECK( nhd( a, b, exhaustive( metric::nhd ) ) == doctest::Approx( slow_nhd( a, b ) ).epsilon( 1e-15 ) );
      CHECK( mae( a, b, exhaustive( metric::mae ) ) == slow_mae( a, b ) );
      auto cfg = exhaustive( metric::mae );
      cfg.msb_first = true;
      CHECK( mae( a, b, cfg ) == slow_mae( a, b, true ) );
      CHECK( mae( a, b, cfg ) == mae( b, a, cfg ) );
    }
  }

  TEST_CASE( "sampled NHD matches a popcount oracle over the same vectors" )
  {
    auto const a = fixtures::random_circuit( 3, 20, 80, 6 );
    auto const b = fixtures::random_circuit( 4, 20, 80, 6 );
    qor_config cfg = exhaustive( metric::nhd );
    cfg.samples = 3000;
    cfg.seed = 77;
    auto const r = compare_circuits( a, b, cfg );
    CHECK_FALSE( r.exhaustive );
    CHECK( r.vectors == 3000 );

    /* vectors drawn one at a time from the same named streams */
    auto const stim = random_inputs( a.inputs(), 3000, 77 );
    std::size_t diff = 0;
    for ( std::size_t v = 0; v < 3000; ++v )
    {
      input_vector x( a.num_inputs() );
      for ( std::size_t i = 0; i < x.size(); ++i )
        x[i] = ( stim[i][v / 64] >> ( v % 64 ) ) & 1u;
      auto const ya = simulate( a, x ), yb = simulate( b, x );
      for ( std::size_t j = 0; j < ya.size(); ++j )
        diff += ya[j] != yb[j];
    }
    CHECK( r.value == doctest::Approx( static_cast<double>( diff ) / ( 3000.0 * 6.0 ) ).epsilon( 1e-15 ) );
  }

  TEST_CASE( "sampling is deterministic and within three sigma of the exhaustive value" )
  {
    std::vector<std::pair<circuit, circuit>> pairs;
    pairs.emplace_back( fixtures::multiplier( 4 ), fixtures::with_constant_net( fixtures::multiplier( 4 ), "p1", false ) );
    pairs.emplace_back( fixtures::adder( 6 ), fixtures::with_constant_net( fixtures::adder( 6 ), "s2", true ) );
    pairs.emplace_back( fixtures::random_circuit( 9, 12, 60, 5 ), fixtures::random_circuit( 10, 12, 60, 5 ) );
    for ( auto const& [golden, approx] : pairs )
      for ( auto kind : { metric::mae, metric::nhd } )
      {
        auto const exact = compare_circuits( golden, approx, exhaustive( kind ) );
        REQUIRE( exact.exhaustive );
        qor_config cfg = exhaustive( kind );
        cfg.exhaustive_cap = 0;
        cfg.samples = 4096;
        cfg.seed = 11;
        auto const s1 = compare_circuits( golden, approx, cfg );
        auto const s2 = compare_circuits( golden, approx, cfg );
        CHECK_FALSE( s1.exhaustive );
        CHECK( s1.value == s2.value );
        CHECK( s1.mismatched_vectors == s2.mismatched_vectors );
        /* per-vector scores lie in [0, 1], so variance <= mu (1 - mu) */
        double const mu = exact.value;
        double const sigma = std::sqrt( mu * ( 1.0 - mu ) / 4096.0 );
        CHECK( std::abs( s1.value - mu ) <= 3.0 * sigma + 1e-12 );
        double const p = static_cast<double>( exact.mismatched_vectors ) / static_cast<double>( exact.vectors );
        double const rate = static_cast<double>( s1.mismatched_vectors ) / 4096.0;
        CHECK( std::abs( rate - p ) <= 3.0 * std::sqrt( p * ( 1.0 - p ) / 4096.0 ) + 1e-12 );
      }
  }

  TEST_CASE( "matrix metrics" )
  {
    auto const ones = parse_matrix( "2 4\n1111\n1111\n" );
    boolean_matrix zeros( 2, 4 );
    CHECK( matrix_qor( ones, zeros, metric::mae ) == 0.9375 );
    CHECK( matrix_qor( ones, zeros, metric::nhd ) == 1.0 );
    CHECK( matrix_qor( ones, ones, metric::mae ) == 0.0 );
    CHECK_THROWS_AS( matrix_qor( ones, boolean_matrix( 2, 3 ), metric::mae ), dimension_error );

    auto const m = parse_matrix( "2 3\n100\n000\n" );
    CHECK( matrix_qor( m, zeros.column_slice( 0, 3 ), metric::mae ) == 1.0 / 2.0 / 8.0 );
    CHECK( matrix_qor( m, zeros.column_slice( 0, 3 ), metric::mae, true ) == 4.0 / 2.0 / 8.0 );
  }

  TEST_CASE( "matrix metric equals the netlist metric on synthesized tables" )
  {
    std::mt19937_64 rng( 12 );
    for ( int t = 0; t < 10; ++t )
    {
      auto const golden = fixtures::random_circuit( 200 + t, 6, 25, 4 );
      auto const table = oracle::slow_truth_table( golden );
      auto approx = table;
      for ( std::size_t r = 0; r < approx.rows(); ++r )
        if ( rng() % 4 == 0 )
        {
          auto const j = rng() % 4;
          approx.set( r, j, !approx.get( r, j ) );
        }
      auto const synthesized = synth_compressor( approx, golden.inputs(), golden.outputs() );
      for ( auto kind : { metric::mae, metric::nhd } )
        CHECK( matrix_qor( table, approx, kind ) == compare_circuits( golden, synthesized, exhaustive( kind ) ).value );
    }
  }

  TEST_CASE( "width mismatch and parameter errors" )
  {
    auto const a = fixtures::adder( 2 ), b = fixtures::adder( 3 );
    CHECK_THROWS_AS( mae( a, fixtures::constant_word( 4, 2, false ), exhaustive( metric::mae ) ), dimension_error );
    CHECK_THROWS( mae( a, b, exhaustive( metric::mae ) ) );
    qor_config cfg;
    cfg.exhaustive_cap = 0;
    cfg.samples = 0;
    CHECK_THROWS_AS( mae( a, a, cfg ), constraint_error );
  }
}
