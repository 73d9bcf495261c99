#pragma once

#include <ruca/ruca.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ruca
{

inline constexpr int report_schema_version = 1;

struct report_context
{
  std::string flow; ///< "direct" or "dse"
  double tau = 0.9;
  bool msb_first = false;
  std::uint64_t seed = 1;
};

/// JSON sidecar of an assembled design (validated by schema/report.schema.json).
nlohmann::json design_report( ruca_design const& design, mode_report const& report, circuit const& golden,
                              report_context const& context );

/// Per-mode measurements as a JSON array.
nlohmann::json modes_json( mode_report const& report );

/// One line per mode: name,enables,threshold,qor,vectors,exhaustive,power_proxy,area_proxy,within_threshold.
std::string report_csv( mode_report const& report );

/// Enables and modes read back from a report, for re-verification.
struct mode_table
{
  metric kind = metric::mae;
  bool msb_first = false;
  std::vector<std::string> enables;
  std::vector<design_mode> modes;
};

mode_table parse_mode_table( std::string_view json_text );

} // namespace ruca
