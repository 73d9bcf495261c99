#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

#include <ruca/netlist.hpp>
#include <ruca/simulate.hpp>

#include <algorithm>
#include <random>

using namespace ruca;

namespace
{

netlist_errc error_code( std::string const& text )
{
  try
  {
    parse_bench( text );
  }
  catch ( netlist_error const& e )
  {
    return e.code();
  }
  FAIL( "expected a netlist error" );
  return netlist_errc::syntax;
}

} // namespace

TEST_SUITE( "netlist" )
{
  TEST_CASE( "minimal AND file" )
  {
    auto const c = parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(z)\nz = AND(a, b)" );
    CHECK( c.num_inputs() == 2 );
    CHECK( c.num_outputs() == 1 );
    CHECK( c.num_gates() == 1 );
    CHECK( simulate( c, { true, true } ) == output_vector{ true } );
    CHECK( simulate( c, { true, false } ) == output_vector{ false } );
    auto const again = parse_bench( emit_bench( c ) );
    CHECK( again.inputs() == c.inputs() );
    CHECK( again.outputs() == c.outputs() );
    CHECK( again.num_gates() == 1 );
    CHECK( again.gates()[0].kind == gate_kind::AND );
  }

  TEST_CASE( "grammar details" )
  {
    auto const c = parse_bench( "# comment\n  input( a )  # trailing\nINPUT(b[0])\nOUTPUT(y.q)\n"
                                "y.q = xor(t, b[0])\nt = Buff(a)\nk = CONST1()\nOUTPUT(k)\n" );
    CHECK( c.num_gates() == 3 );
    CHECK( c.find_net( "b[0]" ) );
    CHECK( simulate( c, { true, true } ) == output_vector{ false, true } );
  }

  TEST_CASE( "structural errors" )
  {
    CHECK( error_code( "INPUT(a)\nOUTPUT(z)\nz = AND(a)" ) == netlist_errc::arity );
    CHECK( error_code( "INPUT(a)\nOUTPUT(z)\nz = NOT(q)" ) == netlist_errc::undefined_net );
    CHECK( error_code( "INPUT(a)\nOUTPUT(z)\nz = NOT(a)\nz = BUF(a)" ) == netlist_errc::duplicate_definition );
    CHECK( error_code( "INPUT(a)\nOUTPUT(z)\nz = AND(a, y)\ny = AND(a, z)" ) == netlist_errc::cyclic_dependency );
    CHECK( error_code( "INPUT(a)\nOUTPUT(z)\nz = FOO(a)" ) == netlist_errc::syntax );
    CHECK( error_code( "INPUT(a)\nOUTPUT(z)\nz = AND(a, a" ) == netlist_errc::syntax );
    CHECK( error_code( "INPUT(a)\nOUTPUT(q)\nz = NOT(a)" ) == netlist_errc::undefined_net );
    CHECK( error_code( "INPUT(a)\nOUTPUT(z)\nz = MUX(a, a)" ) == netlist_errc::arity );
  }

  TEST_CASE( "syntax errors carry line and column" )
  {
    try
    {
      parse_bench( "INPUT(a)\nOUTPUT(z)\nz = AND(a, $b)\n" );
      FAIL( "expected a syntax error" );
    }
    catch ( netlist_error const& e )
    {
      CHECK( e.code() == netlist_errc::syntax );
      CHECK( e.line() == 3 );
      CHECK( e.column() == 12 );
    }
  }

  TEST_CASE( "c17 round-trips through emit" )
  {
    auto const c = fixtures::c17();
    CHECK( c.num_inputs() == 5 );
    CHECK( c.num_outputs() == 2 );
    CHECK( c.num_gates() == 6 );
    auto const again = parse_bench( emit_bench( c ) );
    CHECK( oracle::slow_truth_table( again ) == oracle::slow_truth_table( c ) );
  }

  TEST_CASE( "buffer-only circuit emits BUF lines" )
  {
    auto const c = parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(x)\nOUTPUT(y)\nx = BUF(a)\ny = BUF(b)\n" );
    auto const text = emit_bench( c );
    CHECK( text.find( "x = BUF(a)" ) != std::string::npos );
    CHECK( text.find( "y = BUF(b)" ) != std::string::npos );
  }

  TEST_CASE( "4-bit adder semantics and round trip" )
  {
    auto const c = fixtures::adder( 4 );
    /* inputs a0..a3, b0..b3 */
    input_vector x{ true, true, true, true, true, false, false, false };
    auto const y = simulate( c, x );
    CHECK( y == output_vector{ false, false, false, false, true } );
    auto const again = parse_bench( emit_bench( c ) );
    CHECK( truth_table( again ) == truth_table( c ) );
    auto const t = truth_table( c );
    bool all = true;
    for ( std::size_t r = 0; r < 256; ++r )
      all = all && oracle::row_value( t, r ) == ( r & 15 ) + ( r >> 4 );
    CHECK( all );
  }

  TEST_CASE( "simulate checks vector length" )
  {
    auto const c = fixtures::c17();
    CHECK_THROWS_AS( simulate( c, { true } ), netlist_error );
  }

  TEST_CASE( "truth table row order" )
  {
    auto const buf = parse_bench( "INPUT(a)\nOUTPUT(z)\nz = BUF(a)\n" );
    CHECK( format_matrix( truth_table( buf ) ) == "2 1\n0\n1\n" );
    auto const and2 = parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(z)\nz = AND(a, b)\n" );
    CHECK( format_matrix( truth_table( and2 ) ) == "4 1\n0\n0\n0\n1\n" );
    auto const five = fixtures::random_circuit( 7, 5, 20, 5 );
    auto const t = truth_table( five );
    CHECK( t.rows() == 32 );
    CHECK( t.cols() == 5 );
    CHECK( t == oracle::slow_truth_table( five ) );
    CHECK_THROWS_AS( truth_table( fixtures::adder( 8 ), 12 ), netlist_error );
  }

  TEST_CASE( "declaration order does not change behavior" )
  {
    auto const c = fixtures::random_circuit( 11, 7, 40, 6 );
    auto gates = c.gates();
    std::mt19937_64 rng( 5 );
    for ( int trial = 0; trial < 5; ++trial )
    {
      std::shuffle( gates.begin(), gates.end(), rng );
      auto const shuffled = circuit::build( "s", c.inputs(), c.outputs(), gates );
      CHECK( truth_table( shuffled ) == truth_table( c ) );
    }
  }

  TEST_CASE( "extract whole circuit and single gate" )
  {
    auto const c = fixtures::adder( 2 );
    std::vector<std::string> all;
    for ( auto const& g : c.gates() )
      all.push_back( g.output );
    auto const whole = extract_subcircuit( c, all );
    CHECK( whole.ports.inputs == c.inputs() );
    CHECK( truth_table( whole.logic ) == truth_table( c ) );

    auto const chain = parse_bench( "INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(z)\nx = AND(a, b)\nz = OR(x, c)\n" );
    std::vector<std::string> one{ "x" };
    auto const sub = extract_subcircuit( chain, one );
    CHECK( sub.logic.num_inputs() == 2 );
    CHECK( sub.logic.num_outputs() == 1 );
    CHECK( sub.ports.outputs == std::vector<std::string>{ "x" } );
    std::vector<std::string> none;
    CHECK_THROWS_AS( extract_subcircuit( chain, none ), netlist_error );
  }

  TEST_CASE( "identity stitch of any bipartition preserves the adder" )
  {
    auto const c = fixtures::adder( 4 );
    std::mt19937_64 rng( 9 );
    for ( int trial = 0; trial < 20; ++trial )
    {
      std::vector<std::string> left, right;
      for ( auto const& g : c.gates() )
        ( rng() % 2 ? left : right ).push_back( g.output );
      if ( left.empty() || right.empty() )
        continue;
      auto const a = extract_subcircuit( c, left, "left" );
      auto const b = extract_subcircuit( c, right, "right" );
      /* a renamed copy of each part exercises the uniquified naming */
      auto const stitched = stitch( stitch( c, a.ports, a.logic, "L" ), b.ports, b.logic, "R" );
      CHECK( truth_table( stitched ) == truth_table( c ) );
    }
  }

  TEST_CASE( "stitch shares extra inputs and checks arity" )
  {
    auto const chain = parse_bench( "INPUT(a)\nINPUT(b)\nOUTPUT(z)\nx = AND(a, b)\nz = NOT(x)\n" );
    std::vector<std::string> one{ "x" };
    auto const sub = extract_subcircuit( chain, one );
    auto const gated = parse_bench( "INPUT(p)\nINPUT(q)\nINPUT(en)\nOUTPUT(r)\nt = AND(p, q)\nr = AND(t, en)\n" );
    auto const s = stitch( chain, sub.ports, gated, "blk" );
    CHECK( s.num_inputs() == 3 );
    CHECK( s.inputs().back() == "en" );
    CHECK( oracle::equivalent( chain, s, { { "en", true } } ) );
    auto const wrong = parse_bench( "INPUT(p)\nOUTPUT(r)\nr = NOT(p)\n" );
    CHECK_THROWS_AS( stitch( chain, sub.ports, wrong, "blk" ), netlist_error );
  }

  TEST_CASE( "builder hands out unique names" )
  {
    netlist_builder nb;
    nb.add_input( "a" );
    CHECK( nb.unique_name( "a" ) == "a_1" );
    CHECK( nb.unique_name( "a" ) == "a_2" );
    CHECK( nb.unique_name( "b" ) == "b" );
    CHECK_THROWS_AS( nb.add_input( "a" ), netlist_error );
  }
}
