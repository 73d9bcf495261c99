#include <ruca/simulate.hpp>

#include <algorithm>
#include <random>

namespace ruca
{

bit_planes::bit_planes( std::size_t planes, std::size_t bits )
    : planes_( planes ), bits_( bits ), words_( words_for( bits ) ), data_( planes * words_, 0 )
{
}

word bit_planes::valid_mask( std::size_t w ) const noexcept
{
  if ( w + 1 < words_ || bits_ % 64 == 0 )
    return ~word{ 0 };
  return ( word{ 1 } << ( bits_ % 64 ) ) - 1;
}

namespace
{

void evaluate_gate( gate_kind kind, std::span<circuit::net_id const> fanins, bit_planes& nets, std::span<word> out )
{
  std::size_t const n = out.size();
  auto in = [&]( std::size_t k ) { return nets[fanins[k]]; };
  switch ( kind )
  {
  case gate_kind::CONST0:
    std::fill( out.begin(), out.end(), word{ 0 } );
    return;
  case gate_kind::CONST1:
    std::fill( out.begin(), out.end(), ~word{ 0 } );
    return;
  case gate_kind::BUF:
  {
    auto a = in( 0 );
    std::copy( a.begin(), a.end(), out.begin() );
    return;
  }
  case gate_kind::NOT:
  {
    auto a = in( 0 );
    for ( std::size_t w = 0; w < n; ++w )
      out[w] = ~a[w];
    return;
  }
  case gate_kind::MUX:
  {
    auto s = in( 0 ), a = in( 1 ), b = in( 2 );
    for ( std::size_t w = 0; w < n; ++w )
      out[w] = ( s[w] & a[w] ) | ( ~s[w] & b[w] );
    return;
  }
  default:
    break;
  }

  auto first = in( 0 );
  std::copy( first.begin(), first.end(), out.begin() );
  for ( std::size_t k = 1; k < fanins.size(); ++k )
  {
    auto b = in( k );
    switch ( kind )
    {
    case gate_kind::AND:
    case gate_kind::NAND:
      for ( std::size_t w = 0; w < n; ++w )
        out[w] &= b[w];
      break;
    case gate_kind::OR:
    case gate_kind::NOR:
      for ( std::size_t w = 0; w < n; ++w )
        out[w] |= b[w];
      break;
    default:
      for ( std::size_t w = 0; w < n; ++w )
        out[w] ^= b[w];
      break;
    }
  }
  if ( kind == gate_kind::NAND || kind == gate_kind::NOR || kind == gate_kind::XNOR )
    for ( std::size_t w = 0; w < n; ++w )
      out[w] = ~out[w];
}

} // namespace

bit_planes simulate_nets( circuit const& c, bit_planes const& inputs )
{
  if ( inputs.planes() != c.num_inputs() )
    throw netlist_error( netlist_errc::length_mismatch, "simulate: expected " + std::to_string( c.num_inputs() ) +
                                                            " input planes, got " + std::to_string( inputs.planes() ) );
  bit_planes nets( c.num_nets(), inputs.bits() );
  for ( std::size_t i = 0; i < c.num_inputs(); ++i )
    std::copy( inputs[i].begin(), inputs[i].end(), nets[i].begin() );
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    evaluate_gate( c.kind( g ), c.fanins( g ), nets, nets[c.gate_net( g )] );
  return nets;
}

bit_planes simulate_outputs( circuit const& c, bit_planes const& inputs )
{
  auto const nets = simulate_nets( c, inputs );
  bit_planes outs( c.num_outputs(), inputs.bits() );
  for ( std::size_t j = 0; j < c.num_outputs(); ++j )
  {
    auto src = nets[c.output_ids()[j]];
    std::copy( src.begin(), src.end(), outs[j].begin() );
  }
  return outs;
}

output_vector simulate( circuit const& c, input_vector const& x )
{
  if ( x.size() != c.num_inputs() )
    throw netlist_error( netlist_errc::length_mismatch, "simulate: expected " + std::to_string( c.num_inputs() ) +
                                                            " input bits, got " + std::to_string( x.size() ) );
  bit_planes in( c.num_inputs(), 1 );
  for ( std::size_t i = 0; i < x.size(); ++i )
    in[i][0] = x[i] ? 1 : 0;
  auto const outs = simulate_outputs( c, in );
  output_vector y( c.num_outputs() );
  for ( std::size_t j = 0; j < y.size(); ++j )
    y[j] = outs[j][0] & 1u;
  return y;
}

bit_planes exhaustive_inputs( std::size_t num_inputs, std::uint64_t first_row, std::size_t count )
{
  static constexpr word patterns[6] = { 0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull };
  bit_planes planes( num_inputs, count );
  if ( count <= 64 && first_row % 64 != 0 )
  {
    for ( std::size_t b = 0; b < count; ++b )
      for ( std::size_t j = 0; j < num_inputs; ++j )
        if ( ( ( first_row + b ) >> j ) & 1u )
          planes[j][0] |= word{ 1 } << b;
    return planes;
  }
  std::uint64_t const base_word = first_row / 64;
  for ( std::size_t j = 0; j < num_inputs; ++j )
  {
    auto plane = planes[j];
    for ( std::size_t w = 0; w < plane.size(); ++w )
    {
      if ( j < 6 )
        plane[w] = patterns[j];
      else
        plane[w] = ( ( ( base_word + w ) >> ( j - 6 ) ) & 1u ) ? ~word{ 0 } : word{ 0 };
      plane[w] &= planes.valid_mask( w );
    }
  }
  return planes;
}

std::uint64_t stable_hash( std::string_view text ) noexcept
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for ( unsigned char ch : text )
  {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

bit_planes random_inputs( std::span<std::string const> names, std::size_t count, std::uint64_t seed )
{
  bit_planes planes( names.size(), count );
  for ( std::size_t i = 0; i < names.size(); ++i )
  {
    std::seed_seq seq{ static_cast<std::uint32_t>( seed ), static_cast<std::uint32_t>( seed >> 32 ),
                       static_cast<std::uint32_t>( stable_hash( names[i] ) ),
                       static_cast<std::uint32_t>( stable_hash( names[i] ) >> 32 ) };
    std::mt19937_64 rng( seq );
    auto plane = planes[i];
    for ( std::size_t w = 0; w < plane.size(); ++w )
      plane[w] = rng() & planes.valid_mask( w );
  }
  return planes;
}

bit_planes bind_inputs( circuit const& c, std::span<std::string const> source_names, bit_planes const& source,
                        pin_assignment const& pins )
{
  bit_planes in( c.num_inputs(), source.bits() );
  for ( std::size_t i = 0; i < c.num_inputs(); ++i )
  {
    auto const& name = c.inputs()[i];
    auto pin = std::find_if( pins.begin(), pins.end(), [&]( auto const& p ) { return p.first == name; } );
    auto plane = in[i];
    if ( pin != pins.end() )
    {
      for ( std::size_t w = 0; w < plane.size(); ++w )
        plane[w] = pin->second ? in.valid_mask( w ) : 0;
      continue;
    }
    auto src = std::find( source_names.begin(), source_names.end(), name );
    if ( src == source_names.end() )
      throw netlist_error( netlist_errc::length_mismatch, "input '" + name + "' has no stimulus", name );
    auto const from = source[static_cast<std::size_t>( src - source_names.begin() )];
    std::copy( from.begin(), from.end(), plane.begin() );
  }
  return in;
}

boolean_matrix truth_table( circuit const& c, unsigned max_inputs )
{
  if ( c.num_inputs() > max_inputs )
    throw netlist_error( netlist_errc::capacity, "truth_table: " + std::to_string( c.num_inputs() ) +
                                                     " inputs exceed the cap of " + std::to_string( max_inputs ) );
  if ( c.num_outputs() == 0 )
    throw netlist_error( netlist_errc::capacity, "truth_table: circuit has no outputs" );
  std::uint64_t const rows = std::uint64_t{ 1 } << c.num_inputs();
  boolean_matrix tt( rows, c.num_outputs() );
  constexpr std::uint64_t batch = 1u << 14;
  for ( std::uint64_t first = 0; first < rows; first += batch )
  {
    auto const count = static_cast<std::size_t>( std::min( batch, rows - first ) );
    auto const outs = simulate_outputs( c, exhaustive_inputs( c.num_inputs(), first, count ) );
    for ( std::size_t j = 0; j < c.num_outputs(); ++j )
    {
      auto plane = outs[j];
      for ( std::size_t r = 0; r < count; ++r )
        if ( ( plane[r / 64] >> ( r % 64 ) ) & 1u )
          tt.set( first + r, j );
    }
  }
  return tt;
}

} // namespace ruca
