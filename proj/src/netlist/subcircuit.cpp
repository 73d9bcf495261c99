#include <ruca/netlist.hpp>

#include <algorithm>

namespace ruca
{

subcircuit extract_subcircuit( circuit const& c, std::span<std::string const> gate_set, std::string name )
{
  if ( gate_set.empty() )
    throw netlist_error( netlist_errc::empty_selection, "extract_subcircuit: empty gate set" );

  std::vector<bool> selected( c.num_gates(), false );
  for ( auto const& net : gate_set )
  {
    auto const g = c.find_gate( net );
    if ( !g )
      throw netlist_error( netlist_errc::undefined_net, "extract_subcircuit: '" + net + "' is not a gate output", net );
    selected[*g] = true;
  }

  std::vector<bool> is_input( c.num_nets(), false );
  std::vector<bool> is_output( c.num_nets(), false );
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
  {
    for ( auto fi : c.fanins( g ) )
    {
      auto const src = c.driver( fi );
      bool const inside_src = src && selected[*src];
      if ( selected[g] && !inside_src )
        is_input[fi] = true;
      if ( !selected[g] && inside_src )
        is_output[fi] = true;
    }
  }
  for ( auto id : c.output_ids() )
    if ( auto src = c.driver( id ); src && selected[*src] )
      is_output[id] = true;

  subcircuit sub;
  std::vector<gate> gates;
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    if ( selected[g] )
    {
      gates.push_back( c.gates()[g] );
      sub.ports.gates.push_back( c.gates()[g].output );
    }
  for ( circuit::net_id id = 0; id < c.num_nets(); ++id )
  {
    if ( is_input[id] )
      sub.ports.inputs.push_back( c.net_name( id ) );
    if ( is_output[id] )
      sub.ports.outputs.push_back( c.net_name( id ) );
  }
  sub.logic = circuit::build( std::move( name ), sub.ports.inputs, sub.ports.outputs, std::move( gates ) );
  return sub;
}

circuit stitch( circuit const& c, boundary const& b, circuit const& replacement, std::string const& block )
{
  if ( replacement.num_inputs() < b.inputs.size() || replacement.num_outputs() != b.outputs.size() )
    throw netlist_error( netlist_errc::arity, "stitch: replacement has " + std::to_string( replacement.num_inputs() ) +
                                                  "/" + std::to_string( replacement.num_outputs() ) +
                                                  " inputs/outputs, boundary expects " +
                                                  std::to_string( b.inputs.size() ) + "/" +
                                                  std::to_string( b.outputs.size() ) );

  std::vector<bool> removed( c.num_gates(), false );
  for ( auto const& net : b.gates )
  {
    auto const g = c.find_gate( net );
    if ( !g )
      throw netlist_error( netlist_errc::undefined_net, "stitch: boundary gate '" + net + "' not in circuit", net );
    removed[*g] = true;
  }

  netlist_builder nb;
  for ( auto const& in : c.inputs() )
    nb.add_input( in );
  for ( std::size_t i = b.inputs.size(); i < replacement.num_inputs(); ++i )
  {
    auto const& shared = replacement.inputs()[i];
    if ( auto id = c.find_net( shared ); id && c.driver( *id ) )
      throw netlist_error( netlist_errc::duplicate_definition,
                           "stitch: shared input '" + shared + "' collides with an internal net", shared );
    if ( !nb.has_input( shared ) )
      nb.add_input( shared );
  }
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    if ( !removed[g] )
      nb.add_gate( c.gates()[g].output, c.kind( g ), c.gates()[g].fanins );
  for ( auto const& out : b.outputs )
    nb.reserve( out );

  /* replacement outputs driven by a gate used once are renamed in place;
     the rest get a buffer onto the parent net */
  std::vector<int> uses( replacement.num_nets(), 0 );
  for ( auto id : replacement.output_ids() )
    ++uses[id];
  std::vector<std::string> names( replacement.num_nets() );
  for ( std::size_t i = 0; i < replacement.num_inputs(); ++i )
    names[i] = i < b.inputs.size() ? b.inputs[i] : replacement.inputs()[i];
  std::vector<bool> direct( replacement.num_outputs(), false );
  for ( std::size_t j = 0; j < replacement.num_outputs(); ++j )
  {
    auto const id = replacement.output_ids()[j];
    if ( replacement.driver( id ) && uses[id] == 1 )
    {
      names[id] = b.outputs[j];
      direct[j] = true;
    }
  }
  for ( std::size_t g = 0; g < replacement.num_gates(); ++g )
  {
    auto const id = replacement.gate_net( g );
    if ( names[id].empty() )
      names[id] = nb.unique_name( block + "__" + replacement.gates()[g].output );
  }
  for ( std::size_t g = 0; g < replacement.num_gates(); ++g )
  {
    std::vector<std::string> fanins;
    for ( auto fi : replacement.fanins( g ) )
      fanins.push_back( names[fi] );
    nb.add_gate( names[replacement.gate_net( g )], replacement.kind( g ), std::move( fanins ) );
  }
  for ( std::size_t j = 0; j < replacement.num_outputs(); ++j )
    if ( !direct[j] )
      nb.add_gate( b.outputs[j], gate_kind::BUF, { names[replacement.output_ids()[j]] } );

  for ( auto const& out : c.outputs() )
    nb.add_output( out );
  return nb.build( c.name() );
}

} // namespace ruca
