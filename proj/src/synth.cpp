#include <ruca/cost.hpp>
#include <ruca/synth.hpp>

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace ruca
{

namespace
{

constexpr unsigned qm_support_limit = 10;
constexpr std::size_t qm_level_limit = 200000;

std::uint32_t full_mask( unsigned vars ) noexcept
{
  return vars >= 32 ? ~std::uint32_t{ 0 } : ( std::uint32_t{ 1 } << vars ) - 1;
}

template<typename Fn>
void for_each_minterm( cube const& c, unsigned vars, Fn&& fn )
{
  std::uint32_t const free = full_mask( vars ) & ~c.care;
  std::uint32_t sub = 0;
  do
  {
    fn( c.value | sub );
    sub = ( sub - free ) & free;
  } while ( sub != 0 );
}

std::uint64_t key( cube const& c ) noexcept
{
  return ( std::uint64_t{ c.care } << 32 ) | c.value;
}

void check_vars( bit_vector const& onset, unsigned vars )
{
  if ( vars > 31 || onset.size() != ( std::size_t{ 1 } << vars ) )
    throw dimension_error( "cover: onset size does not match 2^" + std::to_string( vars ) );
}

std::vector<cube> greedy_cover( std::vector<cube> const& primes, bit_vector const& onset, unsigned vars )
{
  bit_vector covered( onset.size() );
  std::vector<cube> out;
  for ( std::uint32_t m = 0; m < onset.size(); ++m )
  {
    if ( !onset.get( m ) || covered.get( m ) )
      continue;
    std::size_t best = primes.size();
    int best_size = -1;
    for ( std::size_t i = 0; i < primes.size(); ++i )
      if ( primes[i].contains( m ) )
      {
        int const size = std::popcount( full_mask( vars ) & ~primes[i].care );
        if ( size > best_size )
        {
          best_size = size;
          best = i;
        }
      }
    out.push_back( primes[best] );
    for_each_minterm( primes[best], vars, [&]( std::uint32_t x ) { covered.set( x ); } );
  }
  return out;
}

void remove_redundant( std::vector<cube>& cubes, unsigned vars, std::size_t table_size )
{
  std::vector<std::uint32_t> count( table_size, 0 );
  for ( auto const& c : cubes )
    for_each_minterm( c, vars, [&]( std::uint32_t x ) { ++count[x]; } );
  for ( std::size_t i = cubes.size(); i-- > 0; )
  {
    bool redundant = true;
    for_each_minterm( cubes[i], vars, [&]( std::uint32_t x ) { redundant = redundant && count[x] >= 2; } );
    if ( !redundant )
      continue;
    for_each_minterm( cubes[i], vars, [&]( std::uint32_t x ) { --count[x]; } );
    cubes.erase( cubes.begin() + static_cast<std::ptrdiff_t>( i ) );
  }
}

} // namespace

std::vector<cube> qm_cover( bit_vector const& onset, unsigned vars )
{
  check_vars( onset, vars );
  std::vector<cube> level;
  for ( std::uint32_t m = 0; m < onset.size(); ++m )
    if ( onset.get( m ) )
      level.push_back( { full_mask( vars ), m } );

  std::vector<cube> primes;
  while ( !level.empty() )
  {
    if ( level.size() > qm_level_limit )
    {
      primes.insert( primes.end(), level.begin(), level.end() );
      break;
    }
    std::unordered_set<std::uint64_t> present;
    for ( auto const& c : level )
      present.insert( key( c ) );
    std::unordered_set<std::uint64_t> merged, emitted;
    std::vector<cube> next;
    for ( auto const& c : level )
      for ( std::uint32_t bits = c.care & ~c.value; bits; bits &= bits - 1 )
      {
        std::uint32_t const bit = bits & ( ~bits + 1 );
        cube const partner{ c.care, c.value | bit };
        if ( !present.contains( key( partner ) ) )
          continue;
        merged.insert( key( c ) );
        merged.insert( key( partner ) );
        cube const joined{ c.care & ~bit, c.value };
        if ( emitted.insert( key( joined ) ).second )
          next.push_back( joined );
      }
    for ( auto const& c : level )
      if ( !merged.contains( key( c ) ) )
        primes.push_back( c );
    level = std::move( next );
  }
  return greedy_cover( primes, onset, vars );
}

std::vector<cube> expand_cover( bit_vector const& onset, unsigned vars )
{
  check_vars( onset, vars );
  bit_vector covered( onset.size() );
  std::vector<cube> out;
  for ( std::uint32_t m = 0; m < onset.size(); ++m )
  {
    if ( !onset.get( m ) || covered.get( m ) )
      continue;
    cube c{ full_mask( vars ), m };
    for ( unsigned j = 0; j < vars; ++j )
    {
      std::uint32_t const bit = std::uint32_t{ 1 } << j;
      cube const flipped{ c.care, c.value ^ bit };
      bool inside = true;
      for_each_minterm( flipped, vars, [&]( std::uint32_t x ) { inside = inside && onset.get( x ); } );
      if ( inside )
        c = { c.care & ~bit, c.value & ~bit };
    }
    out.push_back( c );
    for_each_minterm( c, vars, [&]( std::uint32_t x ) { covered.set( x ); } );
  }
  return out;
}

std::vector<cube> sop_cover( bit_vector const& onset, unsigned vars )
{
  auto cubes = vars <= qm_support_limit ? qm_cover( onset, vars ) : expand_cover( onset, vars );
  remove_redundant( cubes, vars, onset.size() );
  return cubes;
}

std::vector<unsigned> functional_support( bit_vector const& table, unsigned vars )
{
  std::vector<unsigned> support;
  for ( unsigned j = 0; j < vars; ++j )
  {
    std::size_t const bit = std::size_t{ 1 } << j;
    for ( std::size_t r = 0; r < table.size(); ++r )
      if ( !( r & bit ) && table.get( r ) != table.get( r | bit ) )
      {
        support.push_back( j );
        break;
      }
  }
  return support;
}

namespace
{

std::vector<std::string> default_names( std::vector<std::string> names, std::size_t count, char const* stem )
{
  if ( names.empty() )
    for ( std::size_t j = 0; j < count; ++j )
      names.push_back( stem + std::to_string( j ) );
  if ( names.size() != count )
    throw dimension_error( std::string( "synth: expected " ) + std::to_string( count ) + " output names, got " +
                           std::to_string( names.size() ) );
  return names;
}

/// A cube over circuit inputs: literal (input index, polarity) list.
using product = std::vector<std::pair<unsigned, bool>>;

} // namespace

circuit synth_sop( boolean_matrix const& cols, std::vector<std::string> const& input_names,
                   std::vector<std::string> output_names, std::string name )
{
  auto const n = static_cast<unsigned>( input_names.size() );
  if ( n > 31 || cols.rows() != ( std::size_t{ 1 } << n ) )
    throw dimension_error( "synth_compressor: " + std::to_string( cols.rows() ) +
                           " rows is not 2^" + std::to_string( n ) );
  output_names = default_names( std::move( output_names ), cols.cols(), "y" );

  /* per output: constant, or a list of products */
  std::vector<int> constant( cols.cols(), -1 );
  std::vector<std::vector<product>> sops( cols.cols() );
  for ( std::size_t j = 0; j < cols.cols(); ++j )
  {
    auto const table = cols.column( j );
    auto const ones = table.count();
    if ( ones == 0 || ones == table.size() )
    {
      constant[j] = ones == 0 ? 0 : 1;
      continue;
    }
    auto const support = functional_support( table, n );
    auto const s = static_cast<unsigned>( support.size() );
    bit_vector projected( std::size_t{ 1 } << s );
    for ( std::size_t idx = 0; idx < projected.size(); ++idx )
    {
      std::size_t r = 0;
      for ( unsigned k = 0; k < s; ++k )
        if ( ( idx >> k ) & 1u )
          r |= std::size_t{ 1 } << support[k];
      projected.set( idx, table.get( r ) );
    }
    for ( auto const& c : sop_cover( projected, s ) )
    {
      product p;
      for ( unsigned k = 0; k < s; ++k )
        if ( ( c.care >> k ) & 1u )
          p.emplace_back( support[k], ( c.value >> k ) & 1u );
      sops[j].push_back( std::move( p ) );
    }
  }

  netlist_builder nb;
  for ( auto const& in : input_names )
    nb.add_input( in );
  for ( auto const& out : output_names )
    nb.reserve( out );

  std::vector<std::string> negated( n );
  auto literal = [&]( std::pair<unsigned, bool> const& lit ) -> std::string {
    if ( lit.second )
      return input_names[lit.first];
    if ( negated[lit.first].empty() )
    {
      negated[lit.first] = nb.unique_name( "n_" + input_names[lit.first] );
      nb.add_gate( negated[lit.first], gate_kind::NOT, { input_names[lit.first] } );
    }
    return negated[lit.first];
  };

  /* products shared between outputs (or used inside an OR) become named AND gates */
  std::unordered_map<std::string, std::size_t> uses;
  auto product_key = []( product const& p ) {
    std::string k;
    for ( auto const& [v, pol] : p )
      k += std::to_string( v ) + ( pol ? "+" : "-" );
    return k;
  };
  for ( auto const& sop : sops )
    for ( auto const& p : sop )
      ++uses[product_key( p )];
  std::unordered_map<std::string, std::string> product_net;
  auto product_signal = [&]( product const& p ) -> std::string {
    if ( p.size() == 1 )
      return literal( p.front() );
    auto const k = product_key( p );
    if ( auto it = product_net.find( k ); it != product_net.end() )
      return it->second;
    std::vector<std::string> fanins;
    for ( auto const& lit : p )
      fanins.push_back( literal( lit ) );
    auto net = nb.unique_name( "p" + std::to_string( product_net.size() ) );
    nb.add_gate( net, gate_kind::AND, std::move( fanins ) );
    product_net.emplace( k, net );
    return net;
  };

  for ( std::size_t j = 0; j < cols.cols(); ++j )
  {
    auto const& out = output_names[j];
    if ( constant[j] >= 0 )
    {
      nb.add_gate( out, constant[j] ? gate_kind::CONST1 : gate_kind::CONST0, {} );
    }
    else if ( sops[j].size() == 1 && sops[j].front().size() == 1 )
    {
      auto const& lit = sops[j].front().front();
      nb.add_gate( out, lit.second ? gate_kind::BUF : gate_kind::NOT, { input_names[lit.first] } );
    }
    else if ( sops[j].size() == 1 && uses[product_key( sops[j].front() )] == 1 )
    {
      std::vector<std::string> fanins;
      for ( auto const& lit : sops[j].front() )
        fanins.push_back( literal( lit ) );
      nb.add_gate( out, gate_kind::AND, std::move( fanins ) );
    }
    else if ( sops[j].size() == 1 )
    {
      nb.add_gate( out, gate_kind::BUF, { product_signal( sops[j].front() ) } );
    }
    else
    {
      std::vector<std::string> fanins;
      for ( auto const& p : sops[j] )
        fanins.push_back( product_signal( p ) );
      nb.add_gate( out, gate_kind::OR, std::move( fanins ) );
    }
    nb.add_output( out );
  }
  return nb.build( std::move( name ) );
}

circuit synth_compressor( boolean_matrix const& cols, std::vector<std::string> const& input_names,
                          std::vector<std::string> output_names, std::string name, synth_options const& options )
{
  switch ( options.style )
  {
  case synth_style::sop:
    return synth_sop( cols, input_names, std::move( output_names ), std::move( name ) );
  case synth_style::bdd:
    return synth_bdd( cols, input_names, std::move( output_names ), std::move( name ), options.order );
  default:
    break;
  }
  auto sop = synth_sop( cols, input_names, output_names, name );
  auto bdd = synth_bdd( cols, input_names, std::move( output_names ), std::move( name ), options.order );
  return area_proxy( bdd ) < area_proxy( sop ) ? std::move( bdd ) : std::move( sop );
}

std::vector<unsigned> structural_order( circuit const& c )
{
  std::vector<unsigned> order;
  std::vector<bool> seen( c.num_nets(), false );
  std::vector<circuit::net_id> stack;
  for ( auto root : c.output_ids() )
  {
    stack.push_back( root );
    while ( !stack.empty() )
    {
      auto const id = stack.back();
      stack.pop_back();
      if ( seen[id] )
        continue;
      seen[id] = true;
      if ( auto const g = c.driver( id ) )
      {
        auto const fanins = c.fanins( *g );
        for ( auto it = fanins.rbegin(); it != fanins.rend(); ++it )
          if ( !seen[*it] )
            stack.push_back( *it );
      }
      else
        order.push_back( id );
    }
  }
  for ( unsigned i = 0; i < c.num_inputs(); ++i )
    if ( !seen[i] )
      order.push_back( i );
  return order;
}

circuit synth_decompressor( boolean_matrix const& rows, std::vector<std::string> const& wire_names,
                            std::vector<std::string> output_names, std::string name )
{
  if ( rows.rows() != wire_names.size() )
    throw dimension_error( "synth_decompressor: " + std::to_string( rows.rows() ) + " rows for " +
                           std::to_string( wire_names.size() ) + " wires" );
  output_names = default_names( std::move( output_names ), rows.cols(), "z" );
  netlist_builder nb;
  for ( auto const& w : wire_names )
    nb.add_input( w );
  for ( std::size_t j = 0; j < rows.cols(); ++j )
  {
    std::vector<std::string> fanins;
    for ( std::size_t i = 0; i < rows.rows(); ++i )
      if ( rows.get( i, j ) )
        fanins.push_back( wire_names[i] );
    auto const kind = fanins.empty() ? gate_kind::CONST0 : fanins.size() == 1 ? gate_kind::BUF : gate_kind::OR;
    nb.add_gate( output_names[j], kind, std::move( fanins ) );
    nb.add_output( output_names[j] );
  }
  return nb.build( std::move( name ) );
}

} // namespace ruca
