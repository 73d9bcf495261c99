#include <ruca/netlist.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <queue>

namespace ruca
{

netlist_error::netlist_error( netlist_errc code, std::string const& message, std::string net, std::size_t line,
                              std::size_t column )
    : error( line > 0 ? "line " + std::to_string( line ) + ":" + std::to_string( column ) + ": " + message : message ),
      code_( code ), net_( std::move( net ) ), line_( line ), column_( column )
{
}

namespace
{

constexpr std::array<std::string_view, 11> kind_names{ "AND", "OR",  "NAND", "NOR",    "XOR",   "XNOR",
                                                        "NOT", "BUF", "MUX",  "CONST0", "CONST1" };

} // namespace

std::string_view to_string( gate_kind kind ) noexcept
{
  return kind_names[static_cast<std::size_t>( kind )];
}

std::optional<gate_kind> parse_gate_kind( std::string_view text ) noexcept
{
  std::string upper( text );
  std::transform( upper.begin(), upper.end(), upper.begin(),
                  []( unsigned char ch ) { return static_cast<char>( std::toupper( ch ) ); } );
  if ( upper == "BUFF" )
    return gate_kind::BUF;
  for ( std::size_t i = 0; i < kind_names.size(); ++i )
    if ( kind_names[i] == upper )
      return static_cast<gate_kind>( i );
  return std::nullopt;
}

bool arity_ok( gate_kind kind, std::size_t count ) noexcept
{
  switch ( kind )
  {
  case gate_kind::NOT:
  case gate_kind::BUF:
    return count == 1;
  case gate_kind::MUX:
    return count == 3;
  case gate_kind::CONST0:
  case gate_kind::CONST1:
    return count == 0;
  default:
    return count >= 2;
  }
}

circuit circuit::build( std::string name, std::vector<std::string> inputs, std::vector<std::string> outputs,
                        std::vector<gate> gates )
{
  circuit c;
  c.name_ = std::move( name );

  std::unordered_map<std::string, std::size_t> defined; // net -> gate index, or npos for inputs
  constexpr auto primary = static_cast<std::size_t>( -1 );
  for ( auto const& in : inputs )
    if ( !defined.emplace( in, primary ).second )
      throw netlist_error( netlist_errc::duplicate_definition, "duplicate definition of net '" + in + "'", in );
  for ( std::size_t g = 0; g < gates.size(); ++g )
  {
    auto const& gt = gates[g];
    if ( !arity_ok( gt.kind, gt.fanins.size() ) )
      throw netlist_error( netlist_errc::arity,
                           "gate '" + gt.output + "': " + std::string( to_string( gt.kind ) ) + " cannot take " +
                               std::to_string( gt.fanins.size() ) + " fanin(s)",
                           gt.output );
    if ( !defined.emplace( gt.output, g ).second )
      throw netlist_error( netlist_errc::duplicate_definition, "duplicate definition of net '" + gt.output + "'",
                           gt.output );
  }
  for ( auto const& gt : gates )
    for ( auto const& fi : gt.fanins )
      if ( !defined.contains( fi ) )
        throw netlist_error( netlist_errc::undefined_net, "undefined net '" + fi + "'", fi );
  for ( auto const& out : outputs )
    if ( !defined.contains( out ) )
      throw netlist_error( netlist_errc::undefined_net, "undefined output net '" + out + "'", out );

  /* Kahn's algorithm, ties broken by declaration order */
  std::vector<std::size_t> pending( gates.size(), 0 );
  std::vector<std::vector<std::size_t>> readers( gates.size() );
  for ( std::size_t g = 0; g < gates.size(); ++g )
    for ( auto const& fi : gates[g].fanins )
      if ( auto const src = defined.at( fi ); src != primary )
      {
        ++pending[g];
        readers[src].push_back( g );
      }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for ( std::size_t g = 0; g < gates.size(); ++g )
    if ( pending[g] == 0 )
      ready.push( g );
  std::vector<std::size_t> order;
  order.reserve( gates.size() );
  while ( !ready.empty() )
  {
    auto const g = ready.top();
    ready.pop();
    order.push_back( g );
    for ( auto r : readers[g] )
      if ( --pending[r] == 0 )
        ready.push( r );
  }
  if ( order.size() != gates.size() )
  {
    auto const stuck = std::find_if( pending.begin(), pending.end(), []( std::size_t p ) { return p > 0; } );
    auto const& net = gates[static_cast<std::size_t>( stuck - pending.begin() )].output;
    throw netlist_error( netlist_errc::cyclic_dependency, "combinational cycle through net '" + net + "'", net );
  }

  c.inputs_ = std::move( inputs );
  c.outputs_ = std::move( outputs );
  c.gates_.reserve( gates.size() );
  for ( auto g : order )
    c.gates_.push_back( std::move( gates[g] ) );

  c.net_index_.reserve( c.num_nets() );
  for ( std::size_t i = 0; i < c.inputs_.size(); ++i )
    c.net_index_.emplace( c.inputs_[i], static_cast<net_id>( i ) );
  for ( std::size_t g = 0; g < c.gates_.size(); ++g )
    c.net_index_.emplace( c.gates_[g].output, c.gate_net( g ) );
  for ( auto const& gt : c.gates_ )
  {
    for ( auto const& fi : gt.fanins )
      c.fanin_ids_.push_back( c.net_index_.at( fi ) );
    c.fanin_offsets_.push_back( c.fanin_ids_.size() );
  }
  for ( auto const& out : c.outputs_ )
    c.output_ids_.push_back( c.net_index_.at( out ) );
  return c;
}

std::optional<circuit::net_id> circuit::find_net( std::string_view name ) const
{
  if ( auto it = net_index_.find( std::string( name ) ); it != net_index_.end() )
    return it->second;
  return std::nullopt;
}

std::string const& circuit::net_name( net_id id ) const
{
  return id < inputs_.size() ? inputs_[id] : gates_[id - inputs_.size()].output;
}

std::optional<std::size_t> circuit::driver( net_id id ) const noexcept
{
  if ( id < inputs_.size() )
    return std::nullopt;
  return id - inputs_.size();
}

std::optional<std::size_t> circuit::find_gate( std::string_view output_net ) const
{
  if ( auto id = find_net( output_net ) )
    return driver( *id );
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> circuit::fanout_gates() const
{
  std::vector<std::vector<std::size_t>> out( num_nets() );
  for ( std::size_t g = 0; g < gates_.size(); ++g )
    for ( auto fi : fanins( g ) )
      if ( out[fi].empty() || out[fi].back() != g )
        out[fi].push_back( g );
  return out;
}

circuit circuit::with_inputs( std::vector<std::string> inputs ) const
{
  return build( name_, std::move( inputs ), outputs_, gates_ );
}

circuit circuit::renamed( std::string name ) const
{
  circuit copy = *this;
  copy.name_ = std::move( name );
  return copy;
}

circuit rename_inputs( circuit const& c, std::unordered_map<std::string, std::string> const& mapping )
{
  auto map_net = [&]( std::string const& net ) {
    if ( auto it = mapping.find( net ); it != mapping.end() && c.find_net( net ) && !c.driver( *c.find_net( net ) ) )
      return it->second;
    return net;
  };
  std::vector<std::string> inputs;
  for ( auto const& in : c.inputs() )
    inputs.push_back( map_net( in ) );
  std::vector<std::string> outputs;
  for ( auto const& out : c.outputs() )
    outputs.push_back( map_net( out ) );
  std::vector<gate> gates = c.gates();
  for ( auto& g : gates )
    for ( auto& fi : g.fanins )
      fi = map_net( fi );
  return circuit::build( c.name(), std::move( inputs ), std::move( outputs ), std::move( gates ) );
}

} // namespace ruca
