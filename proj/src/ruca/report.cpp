#include <ruca/report.hpp>

#include <fmt/format.h>

namespace ruca
{

nlohmann::json modes_json( mode_report const& report )
{
  auto modes = nlohmann::json::array();
  for ( auto const& m : report.modes )
    modes.push_back( { { "name", m.mode.name },
                       { "enables", m.mode.enables },
                       { "threshold", m.mode.threshold },
                       { "qor", m.qor.value },
                       { "vectors", m.qor.vectors },
                       { "mismatched_vectors", m.qor.mismatched_vectors },
                       { "exhaustive", m.qor.exhaustive },
                       { "power_proxy", m.power_proxy },
                       { "area_proxy", m.area_proxy },
                       { "within_threshold", m.within_threshold } } );
  return modes;
}

nlohmann::json design_report( ruca_design const& design, mode_report const& report, circuit const& golden,
                              report_context const& context )
{
  nlohmann::json blocks = nlohmann::json::array();
  for ( std::size_t b = 0; b < design.blocks.size(); ++b )
    blocks.push_back( { { "name", design.blocks[b] }, { "enable", design.enables[b] } } );
  return { { "schema", report_schema_version },
           { "flow", context.flow },
           { "metric", std::string( to_string( design.plan.kind ) ) },
           { "msb_first", context.msb_first },
           { "tau", context.tau },
           { "seed", context.seed },
           { "thresholds", design.plan.thresholds },
           { "dropped_thresholds", design.plan.dropped },
           { "cuts", design.plan.cuts },
           { "level_qor", design.plan.level_qor },
           { "full_mode_kind", std::string( to_string( design.full_kind ) ) },
           { "enables", design.enables },
           { "blocks", blocks },
           { "modes", modes_json( report ) },
           { "full_exact", report.full_exact },
           { "golden",
             { { "name", golden.name() },
               { "inputs", golden.num_inputs() },
               { "outputs", golden.num_outputs() },
               { "gates", golden.num_gates() },
               { "power_proxy", report.golden_power },
               { "area_proxy", report.golden_area } } },
           { "design",
             { { "inputs", design.netlist.num_inputs() },
               { "outputs", design.netlist.num_outputs() },
               { "gates", design.netlist.num_gates() },
               { "area_proxy", report.design_area } } } };
}

std::string report_csv( mode_report const& report )
{
  std::string out = "mode,enables,threshold,qor,vectors,exhaustive,power_proxy,area_proxy,within_threshold\n";
  for ( auto const& m : report.modes )
  {
    std::string enables;
    for ( auto const& e : m.mode.enables )
      enables += ( enables.empty() ? "" : ";" ) + e;
    out += fmt::format( "{},{},{},{},{},{},{},{},{}\n", m.mode.name, enables, m.mode.threshold, m.qor.value,
                        m.qor.vectors, m.qor.exhaustive ? 1 : 0, m.power_proxy, m.area_proxy,
                        m.within_threshold ? 1 : 0 );
  }
  return out;
}

mode_table parse_mode_table( std::string_view json_text )
{
  mode_table table;
  try
  {
    auto const doc = nlohmann::json::parse( json_text );
    if ( doc.at( "schema" ).get<int>() != report_schema_version )
      throw netlist_error( netlist_errc::syntax, "report: unsupported schema version" );
    table.kind = parse_metric( doc.at( "metric" ).get<std::string>() );
    table.msb_first = doc.value( "msb_first", false );
    table.enables = doc.at( "enables" ).get<std::vector<std::string>>();
    for ( auto const& m : doc.at( "modes" ) )
      table.modes.push_back(
          { m.at( "name" ).get<std::string>(), m.at( "enables" ).get<std::vector<std::string>>(),
            m.at( "threshold" ).get<double>() } );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw netlist_error( netlist_errc::syntax, std::string( "report: " ) + e.what() );
  }
  if ( table.modes.empty() )
    throw netlist_error( netlist_errc::syntax, "report: no modes listed" );
  return table;
}

} // namespace ruca
