#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <random>
#include <stdexcept>

namespace ruca::fixtures
{

namespace
{

using word_t = std::vector<std::string>;

struct gen
{
  netlist_builder nb;
  std::size_t counter = 0;

  std::string in( std::string const& name )
  {
    nb.add_input( name );
    return name;
  }
  word_t word( std::string const& stem, unsigned width )
  {
    word_t w;
    for ( unsigned i = 0; i < width; ++i )
      w.push_back( in( stem + std::to_string( i ) ) );
    return w;
  }
  std::string g( gate_kind kind, std::vector<std::string> fanins, std::string name = {} )
  {
    if ( name.empty() )
      name = nb.unique_name( "g" + std::to_string( counter++ ) );
    nb.add_gate( name, kind, std::move( fanins ) );
    return name;
  }
  void out( std::string const& net, std::string const& name )
  {
    /* outputs get their own name through a buffer unless already named */
    if ( net == name )
      nb.add_output( name );
    else
      nb.add_output( g( gate_kind::BUF, { net }, name ) );
  }
  void outs( word_t const& w, std::string const& stem )
  {
    for ( std::size_t i = 0; i < w.size(); ++i )
      out( w[i], stem + std::to_string( i ) );
  }
  std::string zero()
  {
    return g( gate_kind::CONST0, {} );
  }

  /// Full adder; returns {sum, carry}.
  std::pair<std::string, std::string> full_add( std::string const& a, std::string const& b, std::string const& c )
  {
    auto const p = g( gate_kind::XOR, { a, b } );
    auto const s = g( gate_kind::XOR, { p, c } );
    auto const t1 = g( gate_kind::AND, { a, b } );
    auto const t2 = g( gate_kind::AND, { p, c } );
    return { s, g( gate_kind::OR, { t1, t2 } ) };
  }
  std::pair<std::string, std::string> half_add( std::string const& a, std::string const& b )
  {
    return { g( gate_kind::XOR, { a, b } ), g( gate_kind::AND, { a, b } ) };
  }
  /// Sum of two words of possibly different widths; result has max+1 bits.
  word_t add( word_t a, word_t b )
  {
    if ( a.size() < b.size() )
      std::swap( a, b );
    word_t s;
    std::string carry;
    for ( std::size_t i = 0; i < a.size(); ++i )
    {
      if ( i < b.size() )
      {
        auto [x, c] = carry.empty() ? half_add( a[i], b[i] ) : full_add( a[i], b[i], carry );
        s.push_back( x );
        carry = c;
      }
      else if ( !carry.empty() )
      {
        auto [x, c] = half_add( a[i], carry );
        s.push_back( x );
        carry = c;
      }
      else
        s.push_back( a[i] );
    }
    s.push_back( carry.empty() ? zero() : carry );
    return s;
  }
  /// a - b: difference bits and borrow.
  std::pair<word_t, std::string> sub( word_t const& a, word_t const& b )
  {
    word_t d;
    std::string borrow;
    for ( std::size_t i = 0; i < a.size(); ++i )
    {
      auto const x = g( gate_kind::XOR, { a[i], b[i] } );
      if ( borrow.empty() )
      {
        d.push_back( x );
        auto const na = g( gate_kind::NOT, { a[i] } );
        borrow = g( gate_kind::AND, { na, b[i] } );
        continue;
      }
      d.push_back( g( gate_kind::XOR, { x, borrow } ) );
      auto const na = g( gate_kind::NOT, { a[i] } );
      auto const t1 = g( gate_kind::AND, { na, b[i] } );
      auto const nx = g( gate_kind::NOT, { x } );
      auto const t2 = g( gate_kind::AND, { nx, borrow } );
      borrow = g( gate_kind::OR, { t1, t2 } );
    }
    return { d, borrow };
  }
  /// a < b, a == b, a > b.
  std::array<std::string, 3> compare( word_t const& a, word_t const& b )
  {
    std::string lt, eq;
    for ( std::size_t i = 0; i < a.size(); ++i )
    {
      auto const na = g( gate_kind::NOT, { a[i] } );
      auto const l = g( gate_kind::AND, { na, b[i] } );
      auto const e = g( gate_kind::XNOR, { a[i], b[i] } );
      if ( lt.empty() )
      {
        lt = l;
        eq = e;
        continue;
      }
      /* higher bit decides unless equal */
      auto const keep = g( gate_kind::AND, { e, lt } );
      lt = g( gate_kind::OR, { l, keep } );
      eq = g( gate_kind::AND, { e, eq } );
    }
    auto const gt = g( gate_kind::NOR, { lt, eq } );
    return { lt, eq, gt };
  }

  circuit build( std::string const& name ) { return nb.build( name ); }
};

} // namespace

circuit adder( unsigned width )
{
  gen x;
  auto const a = x.word( "a", width );
  auto const b = x.word( "b", width );
  auto s = x.add( a, b );
  auto const cout = s.back();
  s.pop_back();
  x.outs( s, "s" );
  x.out( cout, "cout" );
  return x.build( "adder" + std::to_string( width ) );
}

circuit subtractor( unsigned width )
{
  gen x;
  auto const a = x.word( "a", width );
  auto const b = x.word( "b", width );
  auto const [d, borrow] = x.sub( a, b );
  x.outs( d, "d" );
  x.out( borrow, "bout" );
  return x.build( "sub" + std::to_string( width ) );
}

circuit multiplier( unsigned width )
{
  gen x;
  auto const a = x.word( "a", width );
  auto const b = x.word( "b", width );
  word_t acc;
  for ( unsigned i = 0; i < width; ++i )
  {
    word_t row;
    for ( unsigned j = 0; j < width; ++j )
      row.push_back( x.g( gate_kind::AND, { a[j], b[i] } ) );
    if ( i == 0 )
    {
      acc = row;
      continue;
    }
    /* add the row shifted by i: low i bits of acc are final */
    word_t high( acc.begin() + i, acc.end() );
    auto sum = x.add( high, row );
    acc.resize( i );
    acc.insert( acc.end(), sum.begin(), sum.end() );
  }
  acc.resize( 2 * width );
  x.outs( acc, "p" );
  return x.build( "mult" + std::to_string( width ) );
}

circuit c17()
{
  return parse_bench( "# c17\n"
                      "INPUT(N1)\nINPUT(N2)\nINPUT(N3)\nINPUT(N6)\nINPUT(N7)\n"
                      "OUTPUT(N22)\nOUTPUT(N23)\n"
                      "N10 = NAND(N1, N3)\nN11 = NAND(N3, N6)\nN16 = NAND(N2, N11)\n"
                      "N19 = NAND(N11, N7)\nN22 = NAND(N10, N16)\nN23 = NAND(N16, N19)\n",
                      "c17" );
}

circuit comparator( unsigned width )
{
  gen x;
  auto const a = x.word( "a", width );
  auto const b = x.word( "b", width );
  auto const [lt, eq, gt] = x.compare( a, b );
  x.out( lt, "lt" );
  x.out( eq, "eq" );
  x.out( gt, "gt" );
  return x.build( "cmp" + std::to_string( width ) );
}

circuit mux4()
{
  gen x;
  auto const d = x.word( "d", 4 );
  auto const s = x.word( "s", 2 );
  auto const lo = x.g( gate_kind::MUX, { s[0], d[1], d[0] } );
  auto const hi = x.g( gate_kind::MUX, { s[0], d[3], d[2] } );
  x.g( gate_kind::MUX, { s[1], hi, lo }, "y" );
  x.nb.add_output( "y" );
  return x.build( "mux4" );
}

circuit parity( unsigned inputs )
{
  gen x;
  auto const v = x.word( "x", inputs );
  auto acc = v[0];
  for ( unsigned i = 1; i < inputs; ++i )
    acc = x.g( gate_kind::XOR, { acc, v[i] } );
  x.out( acc, "p" );
  return x.build( "parity" + std::to_string( inputs ) );
}

circuit majority( unsigned inputs )
{
  gen x;
  auto const v = x.word( "x", inputs );
  unsigned const need = inputs / 2 + 1;
  std::vector<std::string> terms;
  for ( unsigned mask = 0; mask < ( 1u << inputs ); ++mask )
  {
    if ( static_cast<unsigned>( std::popcount( mask ) ) != need )
      continue;
    std::vector<std::string> lits;
    for ( unsigned i = 0; i < inputs; ++i )
      if ( ( mask >> i ) & 1u )
        lits.push_back( v[i] );
    terms.push_back( x.g( gate_kind::AND, lits ) );
  }
  x.g( gate_kind::OR, terms, "maj" );
  x.nb.add_output( "maj" );
  return x.build( "maj" + std::to_string( inputs ) );
}

circuit decoder( unsigned k )
{
  gen x;
  auto const s = x.word( "s", k );
  word_t neg;
  for ( auto const& b : s )
    neg.push_back( x.g( gate_kind::NOT, { b } ) );
  for ( unsigned v = 0; v < ( 1u << k ); ++v )
  {
    std::vector<std::string> lits;
    for ( unsigned i = 0; i < k; ++i )
      lits.push_back( ( ( v >> i ) & 1u ) ? s[i] : neg[i] );
    auto const name = "y" + std::to_string( v );
    x.g( k == 1 ? gate_kind::BUF : gate_kind::AND, k == 1 ? std::vector<std::string>{ lits[0] } : lits, name );
    x.nb.add_output( name );
  }
  return x.build( "dec" + std::to_string( k ) );
}

circuit popcount( unsigned inputs )
{
  gen x;
  auto const v = x.word( "x", inputs );
  std::vector<word_t> words;
  for ( auto const& b : v )
    words.push_back( { b } );
  while ( words.size() > 1 )
  {
    std::vector<word_t> next;
    for ( std::size_t i = 0; i + 1 < words.size(); i += 2 )
      next.push_back( x.add( words[i], words[i + 1] ) );
    if ( words.size() % 2 )
      next.push_back( words.back() );
    words = std::move( next );
  }
  auto result = words.front();
  unsigned width = 0;
  while ( ( 1u << width ) <= inputs )
    ++width;
  result.resize( width );
  x.outs( result, "c" );
  return x.build( "popcount" + std::to_string( inputs ) );
}

circuit abs_diff( unsigned width )
{
  gen x;
  auto const a = x.word( "a", width );
  auto const b = x.word( "b", width );
  auto const [d, borrow] = x.sub( a, b );
  /* negate when a < b: (d xor borrow) + borrow */
  word_t flipped;
  for ( auto const& bit : d )
    flipped.push_back( x.g( gate_kind::XOR, { bit, borrow } ) );
  auto sum = x.add( flipped, { borrow } );
  sum.resize( width );
  x.outs( sum, "d" );
  return x.build( "absdiff" + std::to_string( width ) );
}

circuit barrel_shifter( unsigned k )
{
  gen x;
  unsigned const width = 1u << k;
  auto v = x.word( "d", width );
  auto const s = x.word( "s", k );
  for ( unsigned stage = 0; stage < k; ++stage )
  {
    unsigned const shift = 1u << stage;
    word_t next;
    for ( unsigned i = 0; i < width; ++i )
      next.push_back( x.g( gate_kind::MUX, { s[stage], v[( i + width - shift ) % width], v[i] } ) );
    v = std::move( next );
  }
  x.outs( v, "y" );
  return x.build( "barrel" + std::to_string( width ) );
}

circuit maximum( unsigned width )
{
  gen x;
  auto const a = x.word( "a", width );
  auto const b = x.word( "b", width );
  auto const cmp = x.compare( a, b );
  word_t m;
  for ( unsigned i = 0; i < width; ++i )
    m.push_back( x.g( gate_kind::MUX, { cmp[0], b[i], a[i] } ) );
  x.outs( m, "m" );
  return x.build( "max" + std::to_string( width ) );
}

circuit gray_code( unsigned width )
{
  gen x;
  auto const b = x.word( "b", width );
  word_t out;
  for ( unsigned i = 0; i + 1 < width; ++i )
    out.push_back( x.g( gate_kind::XOR, { b[i], b[i + 1] } ) );
  out.push_back( b.back() );
  x.outs( out, "g" );
  return x.build( "gray" + std::to_string( width ) );
}

circuit incrementer( unsigned width )
{
  gen x;
  auto const a = x.word( "a", width );
  word_t out;
  std::string carry;
  for ( unsigned i = 0; i < width; ++i )
  {
    if ( carry.empty() )
    {
      out.push_back( x.g( gate_kind::NOT, { a[i] } ) );
      carry = a[i];
      continue;
    }
    out.push_back( x.g( gate_kind::XOR, { a[i], carry } ) );
    carry = x.g( gate_kind::AND, { a[i], carry } );
  }
  out.push_back( carry );
  x.outs( out, "y" );
  return x.build( "inc" + std::to_string( width ) );
}

circuit random_circuit( std::uint64_t seed, unsigned inputs, unsigned gates, unsigned outputs )
{
  std::mt19937_64 rng( seed );
  gen x;
  auto nets = x.word( "i", inputs );
  static constexpr gate_kind kinds[] = { gate_kind::AND, gate_kind::OR,  gate_kind::NAND, gate_kind::NOR,
                                         gate_kind::XOR, gate_kind::XNOR, gate_kind::NOT, gate_kind::BUF,
                                         gate_kind::MUX };
  for ( unsigned k = 0; k < gates; ++k )
  {
    auto const kind = kinds[rng() % std::size( kinds )];
    std::size_t arity = kind == gate_kind::NOT || kind == gate_kind::BUF ? 1 : kind == gate_kind::MUX ? 3 : 2 + rng() % 2;
    std::vector<std::string> fanins;
    /* bias towards recent nets to get some depth */
    for ( std::size_t a = 0; a < arity; ++a )
    {
      std::size_t const window = std::min<std::size_t>( nets.size(), 8 );
      std::size_t const pick = rng() % 2 ? nets.size() - 1 - rng() % window : rng() % nets.size();
      fanins.push_back( nets[pick] );
    }
    nets.push_back( x.g( kind, fanins ) );
  }
  for ( unsigned o = 0; o < outputs; ++o )
    x.out( nets[nets.size() - 1 - ( o * 3 ) % gates], "o" + std::to_string( o ) );
  return x.build( "rand" + std::to_string( seed ) );
}

circuit two_islands()
{
  return parse_bench( "INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\n"
                      "OUTPUT(x4)\nOUTPUT(y4)\n"
                      "x1 = AND(a, b)\nx2 = OR(x1, a)\nx3 = XOR(x2, b)\nx4 = NOT(x3)\n"
                      "y1 = AND(c, d)\ny2 = OR(y1, c)\ny3 = XOR(y2, d)\ny4 = NOT(y3)\n",
                      "islands" );
}

std::vector<named_fixture> catalog( unsigned max_inputs )
{
  std::vector<named_fixture> all;
  for ( unsigned w = 2; w <= 8; ++w )
    all.push_back( { "adder" + std::to_string( w ), adder( w ) } );
  for ( unsigned w = 2; w <= 4; ++w )
    all.push_back( { "mult" + std::to_string( w ), multiplier( w ) } );
  all.push_back( { "c17", c17() } );
  all.push_back( { "cmp4", comparator( 4 ) } );
  all.push_back( { "mux4", mux4() } );
  all.push_back( { "parity8", parity( 8 ) } );
  all.push_back( { "maj5", majority( 5 ) } );
  all.push_back( { "dec3", decoder( 3 ) } );
  all.push_back( { "popcount6", popcount( 6 ) } );
  all.push_back( { "absdiff4", abs_diff( 4 ) } );
  all.push_back( { "sub4", subtractor( 4 ) } );
  all.push_back( { "barrel4", barrel_shifter( 2 ) } );
  all.push_back( { "max4", maximum( 4 ) } );
  all.push_back( { "gray6", gray_code( 6 ) } );
  all.push_back( { "inc6", incrementer( 6 ) } );
  for ( std::uint64_t s = 1; s <= 3; ++s )
    all.push_back( { "rand" + std::to_string( s ), random_circuit( s, 6 + static_cast<unsigned>( s ), 24, 5 ) } );
  std::erase_if( all, [&]( auto const& f ) { return f.logic.num_inputs() > max_inputs; } );
  return all;
}

circuit by_name( std::string const& name )
{
  if ( name == "mult8" )
    return multiplier( 8 );
  for ( auto& f : catalog( 32 ) )
    if ( f.name == name )
      return f.logic;
  throw std::invalid_argument( "unknown fixture '" + name + "'" );
}

} // namespace ruca::fixtures
