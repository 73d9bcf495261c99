#include <ruca/partition.hpp>

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace ruca
{

namespace
{

void check_spec( partition_spec const& spec )
{
  if ( spec.max_inputs < 2 || spec.max_outputs < 1 )
    throw constraint_error( "partition: caps must satisfy max_inputs >= 2 and max_outputs >= 1" );
  if ( !( spec.balance >= 0.0 && spec.balance < 0.5 ) )
    throw constraint_error( "partition: balance tolerance must lie in [0, 0.5)" );
}

std::size_t distinct_fanins( circuit const& c, std::size_t g )
{
  std::set<circuit::net_id> nets( c.fanins( g ).begin(), c.fanins( g ).end() );
  return nets.size();
}

/// Boundary input/output counts of a gate set.
struct port_counter
{
  circuit const& c;
  std::vector<std::vector<std::size_t>> fanouts;
  std::vector<bool> is_po;

  explicit port_counter( circuit const& c_ ) : c( c_ ), fanouts( c_.fanout_gates() ), is_po( c_.num_nets(), false )
  {
    for ( auto id : c.output_ids() )
      is_po[id] = true;
  }

  std::pair<std::size_t, std::size_t> count( std::vector<std::size_t> const& gates ) const
  {
    std::vector<bool> inside( c.num_gates(), false );
    for ( auto g : gates )
      inside[g] = true;
    std::set<circuit::net_id> inputs;
    std::size_t outputs = 0;
    for ( auto g : gates )
    {
      for ( auto fi : c.fanins( g ) )
        if ( auto d = c.driver( fi ); !d || !inside[*d] )
          inputs.insert( fi );
      auto const net = c.gate_net( g );
      bool const external = is_po[net] || std::any_of( fanouts[net].begin(), fanouts[net].end(),
                                                        [&]( auto r ) { return !inside[r]; } );
      outputs += external;
    }
    return { inputs.size(), outputs };
  }
};

void split( circuit const& c, partition_spec const& spec, port_counter const& ports, std::vector<std::size_t> gates,
            std::vector<std::vector<std::size_t>>& leaves )
{
  auto const [ins, outs] = ports.count( gates );
  if ( ( ins <= spec.max_inputs && outs <= spec.max_outputs ) || gates.size() == 1 )
  {
    leaves.push_back( std::move( gates ) );
    return;
  }
  if ( gates.size() < spec.min_gates )
  {
    std::sort( gates.begin(), gates.end() );
    for ( auto g : gates )
      leaves.push_back( { g } );
    return;
  }
  fm_bipartitioner fm( c, std::move( gates ), spec.balance );
  fm.run();
  std::vector<std::size_t> halves[2];
  for ( std::size_t i = 0; i < fm.cells().size(); ++i )
    halves[fm.sides()[i]].push_back( fm.cells()[i] );
  split( c, spec, ports, std::move( halves[0] ), leaves );
  split( c, spec, ports, std::move( halves[1] ), leaves );
}

partition_result materialize( circuit const& c, std::vector<std::vector<std::size_t>> const& parts )
{
  partition_result result;
  result.assignment.assign( c.num_gates(), 0 );
  for ( std::size_t p = 0; p < parts.size(); ++p )
  {
    std::vector<std::string> names;
    for ( auto g : parts[p] )
    {
      result.assignment[g] = p;
      names.push_back( c.gates()[g].output );
    }
    result.parts.push_back( extract_subcircuit( c, names, "s" + std::to_string( p ) ) );
  }
  return result;
}

} // namespace

partition_result partition( circuit const& c, partition_spec const& spec )
{
  check_spec( spec );
  std::ostringstream offenders;
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    if ( auto k = distinct_fanins( c, g ); k > spec.max_inputs )
      offenders << ( offenders.tellp() > 0 ? ", " : "" ) << c.gates()[g].output << " (" << k << " inputs)";
  if ( offenders.tellp() > 0 )
    throw constraint_error( "partition: gates exceed max_inputs = " + std::to_string( spec.max_inputs ) + ": " +
                            offenders.str() );
  if ( c.num_gates() == 0 )
    return {};

  port_counter const ports( c );
  std::vector<std::size_t> all( c.num_gates() );
  for ( std::size_t g = 0; g < all.size(); ++g )
    all[g] = g;
  std::vector<std::vector<std::size_t>> leaves;
  split( c, spec, ports, std::move( all ), leaves );
  for ( auto& leaf : leaves )
    std::sort( leaf.begin(), leaf.end() );
  return materialize( c, leaves );
}

partition_result partition_from_assignment( circuit const& c, std::vector<std::size_t> const& assignment,
                                            partition_spec const& spec )
{
  check_spec( spec );
  if ( assignment.size() != c.num_gates() )
    throw dimension_error( "partition: assignment covers " + std::to_string( assignment.size() ) + " of " +
                           std::to_string( c.num_gates() ) + " gates" );

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for ( std::size_t g = 0; g < assignment.size(); ++g )
    groups[assignment[g]].push_back( g );
  std::vector<std::size_t> ids;
  std::map<std::size_t, std::size_t> dense;
  for ( auto const& [id, gates] : groups )
  {
    dense[id] = ids.size();
    ids.push_back( id );
  }

  /* part graph must be acyclic; order parts topologically (smallest id first on ties) */
  std::size_t const k = ids.size();
  std::vector<std::set<std::size_t>> succ( k );
  std::vector<std::size_t> indegree( k, 0 );
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    for ( auto fi : c.fanins( g ) )
      if ( auto d = c.driver( fi ); d )
      {
        auto const from = dense[assignment[*d]], to = dense[assignment[g]];
        if ( from != to && succ[from].insert( to ).second )
          ++indegree[to];
      }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for ( std::size_t p = 0; p < k; ++p )
    if ( indegree[p] == 0 )
      ready.push( p );
  std::vector<std::size_t> order;
  while ( !ready.empty() )
  {
    auto const p = ready.top();
    ready.pop();
    order.push_back( p );
    for ( auto s : succ[p] )
      if ( --indegree[s] == 0 )
        ready.push( s );
  }
  if ( order.size() != k )
    throw constraint_error( "partition: parts depend on each other cyclically" );

  port_counter const ports( c );
  std::vector<std::vector<std::size_t>> parts;
  for ( auto p : order )
  {
    auto const& gates = groups[ids[p]];
    auto const [ins, outs] = ports.count( gates );
    if ( ins > spec.max_inputs || outs > spec.max_outputs )
      throw constraint_error( "partition: part " + std::to_string( ids[p] ) + " has " + std::to_string( ins ) +
                              " inputs and " + std::to_string( outs ) + " outputs, exceeding the caps" );
    parts.push_back( gates );
  }
  return materialize( c, parts );
}

std::vector<std::size_t> parse_partition_file( circuit const& c, std::string_view text )
{
  std::vector<long long> raw( c.num_gates(), -1 );
  std::istringstream in{ std::string( text ) };
  std::string line;
  std::size_t line_no = 0;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( auto hash = line.find( '#' ); hash != std::string::npos )
      line.erase( hash );
    std::istringstream fields( line );
    std::string name;
    if ( !( fields >> name ) )
      continue;
    long long id = -1;
    std::string extra;
    if ( !( fields >> id ) || id < 0 || ( fields >> extra ) )
      throw netlist_error( netlist_errc::syntax, "partition file: expected `gate_name part_id`", name, line_no, 1 );
    auto const g = c.find_gate( name );
    if ( !g )
      throw netlist_error( netlist_errc::undefined_net, "partition file: '" + name + "' is not a gate", name, line_no,
                           1 );
    if ( raw[*g] >= 0 )
      throw netlist_error( netlist_errc::duplicate_definition, "partition file: gate '" + name + "' assigned twice",
                           name, line_no, 1 );
    raw[*g] = id;
  }
  std::vector<std::size_t> assignment;
  for ( std::size_t g = 0; g < raw.size(); ++g )
  {
    if ( raw[g] < 0 )
      throw constraint_error( "partition file: gate '" + c.gates()[g].output + "' is not assigned" );
    assignment.push_back( static_cast<std::size_t>( raw[g] ) );
  }
  return assignment;
}

std::size_t cut_size( circuit const& c, std::span<int const> side )
{
  if ( side.size() != c.num_gates() )
    throw dimension_error( "cut_size: assignment covers " + std::to_string( side.size() ) + " of " +
                           std::to_string( c.num_gates() ) + " gates" );
  if ( std::any_of( side.begin(), side.end(), []( int s ) { return s < 0; } ) )
    throw constraint_error( "cut_size: incomplete assignment" );
  auto const fanouts = c.fanout_gates();
  std::size_t cut = 0;
  for ( circuit::net_id id = 0; id < c.num_nets(); ++id )
  {
    std::set<int> sides;
    if ( auto d = c.driver( id ); d )
      sides.insert( side[*d] );
    for ( auto r : fanouts[id] )
      sides.insert( side[r] );
    cut += sides.size() > 1;
  }
  return cut;
}

} // namespace ruca
