#include <ruca/cost.hpp>

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cctype>

namespace ruca
{

cost_model cost_model::from_json( std::string_view text )
{
  nlohmann::json doc;
  try
  {
    doc = nlohmann::json::parse( text );
  }
  catch ( nlohmann::json::parse_error const& e )
  {
    throw netlist_error( netlist_errc::syntax, std::string( "cost model: " ) + e.what() );
  }
  if ( !doc.is_object() )
    throw netlist_error( netlist_errc::syntax, "cost model: expected a JSON object" );

  cost_model model;
  for ( auto const& [key, value] : doc.items() )
  {
    if ( !value.is_number() )
      throw netlist_error( netlist_errc::syntax, "cost model: '" + key + "' must be a number" );
    if ( key == "activity_pairs" )
    {
      if ( value.get<double>() < 1 )
        throw constraint_error( "cost model: activity_pairs must be at least 1" );
      model.activity_pairs = value.get<std::size_t>();
      continue;
    }
    if ( key == "seed" )
    {
      model.seed = value.get<std::uint64_t>();
      continue;
    }
    auto const kind = parse_gate_kind( key );
    if ( !kind )
      throw netlist_error( netlist_errc::syntax, "cost model: unknown gate kind '" + key + "'" );
    double const w = value.get<double>();
    bool const is_const = *kind == gate_kind::CONST0 || *kind == gate_kind::CONST1;
    if ( is_const ? w != 0.0 : !( w > 0.0 ) )
      throw constraint_error( "cost model: weight of " + key + ( is_const ? " must be 0" : " must be positive" ) );
    model.weights[static_cast<std::size_t>( *kind )] = w;
  }
  return model;
}

cost_model cost_model::scaled( double factor ) const
{
  if ( !( factor > 0.0 ) )
    throw constraint_error( "cost model: scale factor must be positive" );
  cost_model out = *this;
  for ( auto& w : out.weights )
    w *= factor;
  return out;
}

double gate_area( gate_kind kind, std::size_t fanins, cost_model const& model ) noexcept
{
  switch ( kind )
  {
  case gate_kind::AND:
  case gate_kind::OR:
  case gate_kind::NAND:
  case gate_kind::NOR:
  case gate_kind::XOR:
  case gate_kind::XNOR:
    return static_cast<double>( fanins - 1 ) * model.weight( kind );
  default:
    return model.weight( kind );
  }
}

double area_proxy( circuit const& c, cost_model const& model )
{
  double total = 0.0;
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    total += gate_area( c.kind( g ), c.fanins( g ).size(), model );
  return total;
}

namespace
{

/// -1 for free inputs, otherwise the pinned value.
std::vector<int> pinned_values( circuit const& c, pin_assignment const& pins )
{
  std::vector<int> value( c.num_nets(), -1 );
  for ( auto const& [name, v] : pins )
    if ( auto id = c.find_net( name ); id && !c.driver( *id ) )
      value[*id] = v ? 1 : 0;
  return value;
}

} // namespace

std::vector<bool> gated_gates( circuit const& c, pin_assignment const& pins )
{
  auto const pinned = pinned_values( c, pins );
  std::vector<bool> live( c.num_nets(), false );
  for ( auto id : c.output_ids() )
    live[id] = true;
  for ( std::size_t g = c.num_gates(); g-- > 0; )
  {
    if ( !live[c.gate_net( g )] )
      continue;
    auto const fanins = c.fanins( g );
    if ( c.kind( g ) == gate_kind::AND &&
         std::any_of( fanins.begin(), fanins.end(), [&]( auto fi ) { return pinned[fi] == 0; } ) )
      continue;
    if ( c.kind( g ) == gate_kind::MUX && pinned[fanins[0]] >= 0 )
    {
      live[fanins[0]] = true;
      live[fanins[pinned[fanins[0]] == 1 ? 1 : 2]] = true;
      continue;
    }
    for ( auto fi : fanins )
      live[fi] = true;
  }
  std::vector<bool> gated( c.num_gates() );
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    gated[g] = !live[c.gate_net( g )];
  return gated;
}

double active_area( circuit const& c, pin_assignment const& pins, cost_model const& model )
{
  auto const gated = gated_gates( c, pins );
  double total = 0.0;
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    if ( !gated[g] )
      total += gate_area( c.kind( g ), c.fanins( g ).size(), model );
  return total;
}

std::vector<std::uint64_t> toggle_counts( circuit const& c, bit_planes const& before, bit_planes const& after )
{
  if ( before.planes() != c.num_inputs() || after.planes() != c.num_inputs() || before.bits() != after.bits() )
    throw dimension_error( "toggle_counts: stimulus does not match the circuit inputs" );
  auto const v0 = simulate_nets( c, before );
  auto const v1 = simulate_nets( c, after );
  std::vector<std::uint64_t> counts( c.num_gates(), 0 );
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
  {
    auto const id = c.gate_net( g );
    for ( std::size_t w = 0; w < v0.words(); ++w )
      counts[g] += static_cast<std::uint64_t>( std::popcount( ( v0[id][w] ^ v1[id][w] ) & v0.valid_mask( w ) ) );
  }
  return counts;
}

std::vector<double> toggle_rates( circuit const& c, pin_assignment const& pins, cost_model const& model )
{
  std::vector<double> rates( c.num_gates(), 0.0 );
  if ( c.num_gates() == 0 || model.activity_pairs == 0 )
    return rates;
  auto const& names = c.inputs();
  auto const before = bind_inputs( c, names, random_inputs( names, model.activity_pairs, model.seed ), pins );
  auto const after = bind_inputs( c, names, random_inputs( names, model.activity_pairs, model.seed ^ 0xa5a5a5a5ull ),
                                  pins );
  auto const counts = toggle_counts( c, before, after );
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    rates[g] = static_cast<double>( counts[g] ) / static_cast<double>( model.activity_pairs );
  return rates;
}

double power_proxy( circuit const& c, pin_assignment const& pins, cost_model const& model )
{
  auto const gated = gated_gates( c, pins );
  auto const rates = toggle_rates( c, pins, model );
  double total = 0.0;
  for ( std::size_t g = 0; g < c.num_gates(); ++g )
    if ( !gated[g] )
      total += rates[g] * gate_area( c.kind( g ), c.fanins( g ).size(), model );
  return total;
}

} // namespace ruca
