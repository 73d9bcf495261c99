#include <ruca/ruca.hpp>

namespace ruca
{

bool mode_report::ok() const noexcept
{
  if ( !full_exact )
    return false;
  for ( auto const& m : modes )
    if ( !m.within_threshold )
      return false;
  return true;
}

mode_report verify_modes( circuit const& design, std::span<std::string const> enables,
                          std::span<design_mode const> modes, circuit const& golden, qor_config const& cfg,
                          cost_model const& model )
{
  if ( modes.empty() )
    throw constraint_error( "verify_modes: design has no modes" );
  if ( design.num_outputs() != golden.num_outputs() )
    throw dimension_error( "verify_modes: design and golden differ in output count" );
  for ( auto const& in : golden.inputs() )
    if ( !design.find_net( in ) )
      throw netlist_error( netlist_errc::undefined_net, "verify_modes: golden input '" + in + "' missing in design",
                           in );

  mode_report report;
  report.kind = cfg.kind;
  report.golden_power = power_proxy( golden, {}, model );
  report.golden_area = area_proxy( golden, model );
  report.design_area = area_proxy( design, model );
  for ( auto const& mode : modes )
  {
    mode_result r;
    r.mode = mode;
    auto const pins = mode_pins( enables, mode );
    r.qor = compare_circuits( golden, design, cfg, pins );
    r.power_proxy = power_proxy( design, pins, model );
    r.area_proxy = active_area( design, pins, model );
    r.within_threshold = r.qor.value <= mode.threshold;
    report.modes.push_back( std::move( r ) );
  }
  auto const& full = report.modes.back();
  report.full_exact = full.qor.mismatched_vectors == 0;
  report.modes.back().within_threshold = report.full_exact;
  return report;
}

mode_report verify_modes( ruca_design const& design, circuit const& golden, qor_config const& cfg,
                          cost_model const& model )
{
  return verify_modes( design.netlist, design.enables, design.modes, golden, cfg, model );
}

} // namespace ruca
