#include <ruca/netlist.hpp>

#include <unordered_map>

namespace ruca
{

void netlist_builder::add_input( std::string const& name )
{
  if ( !names_.insert( name ).second )
    throw netlist_error( netlist_errc::duplicate_definition, "duplicate definition of net '" + name + "'", name );
  inputs_.push_back( name );
}

void netlist_builder::add_output( std::string const& name )
{
  outputs_.push_back( name );
}

void netlist_builder::add_gate( std::string output, gate_kind kind, std::vector<std::string> fanins )
{
  names_.insert( output );
  gates_.push_back( { std::move( output ), kind, std::move( fanins ) } );
}

bool netlist_builder::has_net( std::string_view name ) const
{
  return names_.contains( std::string( name ) );
}

bool netlist_builder::has_input( std::string_view name ) const
{
  for ( auto const& in : inputs_ )
    if ( in == name )
      return true;
  return false;
}

std::string netlist_builder::unique_name( std::string const& base )
{
  if ( names_.insert( base ).second )
    return base;
  for ( std::size_t i = 1;; ++i )
  {
    auto candidate = base + "_" + std::to_string( i );
    if ( names_.insert( candidate ).second )
      return candidate;
  }
}

std::vector<std::string> netlist_builder::inline_circuit( circuit const& sub, std::string const& prefix,
                                                          std::span<std::string const> input_nets )
{
  if ( input_nets.size() != sub.num_inputs() )
    throw netlist_error( netlist_errc::arity, "inline_circuit: expected " + std::to_string( sub.num_inputs() ) +
                                                  " input nets, got " + std::to_string( input_nets.size() ) );
  std::vector<std::string> names( sub.num_nets() );
  for ( std::size_t i = 0; i < sub.num_inputs(); ++i )
    names[i] = input_nets[i];
  for ( std::size_t g = 0; g < sub.num_gates(); ++g )
    names[sub.gate_net( g )] = unique_name( prefix + "__" + sub.gates()[g].output );
  for ( std::size_t g = 0; g < sub.num_gates(); ++g )
  {
    std::vector<std::string> fanins;
    for ( auto fi : sub.fanins( g ) )
      fanins.push_back( names[fi] );
    gates_.push_back( { names[sub.gate_net( g )], sub.kind( g ), std::move( fanins ) } );
  }
  std::vector<std::string> outs;
  for ( auto id : sub.output_ids() )
    outs.push_back( names[id] );
  return outs;
}

circuit netlist_builder::build( std::string name ) const
{
  return circuit::build( std::move( name ), inputs_, outputs_, gates_ );
}

} // namespace ruca
