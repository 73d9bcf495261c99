#pragma once

#include <ruca/bmf.hpp>
#include <ruca/cost.hpp>
#include <ruca/netlist.hpp>
#include <ruca/qor.hpp>
#include <ruca/simulate.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ruca
{

enum class full_mode_kind
{
  xor_corrector, ///< corrector logic XOR-ed onto the approximate outputs
  mux_original   ///< original logic selected by a per-output multiplexer
};

std::string_view to_string( full_mode_kind kind ) noexcept;
full_mode_kind parse_full_mode_kind( std::string_view text );

/*
  Accuracy levels of one factorization. `cuts[i]` is the degree whose
  prefix reconstruction meets `thresholds[i]`; thresholds run from the
  loosest to the tightest and cuts strictly increase. Thresholds that no
  admissible degree meets are moved to `dropped`.
*/
struct level_plan
{
  metric kind = metric::mae;
  std::vector<double> thresholds;
  std::vector<std::size_t> cuts;
  std::vector<double> level_qor; ///< matrix-level QoR at each cut
  std::vector<double> dropped;
};

/// QoR of every prefix reconstruction: entry k - 1 belongs to degree k.
std::vector<double> degree_qor( boolean_matrix const& m, factorization const& f, metric kind, bool msb_first = false );

/// Cut selection from a per-degree QoR list (entry k - 1 is degree k).
level_plan plan_cuts( std::span<double const> per_degree, std::vector<double> thresholds, metric kind );

level_plan split_levels( factorization const& f, boolean_matrix const& m, std::vector<double> thresholds, metric kind,
                         bool msb_first = false );

/// C = M xor reconstruct(f, k).
boolean_matrix corrector_matrix( boolean_matrix const& m, factorization const& f, std::size_t k );

struct design_mode
{
  std::string name;
  std::vector<std::string> enables; ///< asserted enables; all others are 0
  double threshold = 0.0;           ///< QoR bound the mode must meet (0 for full accuracy)
};

/*
  Multi-level netlist. Blocks are `base`, `l2`, ..., `full`; each is
  controlled by the primary input `en_<block>` and contributes zeros
  when disabled. Modes run from base-only to all-enabled.
*/
struct ruca_design
{
  circuit netlist;
  std::vector<std::string> blocks;
  std::vector<std::string> enables;
  std::vector<design_mode> modes;
  full_mode_kind full_kind = full_mode_kind::xor_corrector;
  level_plan plan;

  /// Enable values for `mode`.
  pin_assignment pins( std::size_t mode ) const;
  std::size_t full_mode() const noexcept { return modes.size() - 1; }
};

pin_assignment mode_pins( std::span<std::string const> enables, design_mode const& mode );

struct assemble_options
{
  cost_model model;
  std::optional<full_mode_kind> force_kind;
  std::string full_block = "full"; ///< name of the full-accuracy block
  bool verify = true;              ///< check full-mode exactness before returning
  qor_config check;                ///< vectors used by that check
};

/// Full-accuracy connection with the lower power proxy (corrector on ties).
full_mode_kind choose_full_mode( circuit const& corrector, circuit const& original, cost_model const& model = {} );

/*
  Builds the multi-level netlist for `source` from its truth table `m`, a
  factorization of it and a level plan. Throws error if the full mode is
  not exact (internal consistency guard).
*/
ruca_design assemble( circuit const& source, boolean_matrix const& m, factorization const& f, level_plan const& plan,
                      assemble_options const& options = {} );

struct direct_options
{
  metric kind = metric::mae;
  double tau = 0.9;
  bool msb_first = false;
  unsigned truth_table_cap = 20;
  assemble_options assembly;
};

/// truth table -> factorization at degree m - 1 -> levels -> corrector -> netlist.
ruca_design ruca_direct( circuit const& source, std::vector<double> thresholds, direct_options const& options = {} );

struct mode_result
{
  design_mode mode;
  qor_result qor;
  double power_proxy = 0.0;
  double area_proxy = 0.0; ///< area of the gates active in this mode
  bool within_threshold = false;
};

struct mode_report
{
  metric kind = metric::mae;
  std::vector<mode_result> modes;
  double golden_power = 0.0;
  double golden_area = 0.0;
  double design_area = 0.0;
  bool full_exact = false;

  bool ok() const noexcept;
};

/*
  Measures every mode against `golden` (exhaustive up to the configured
  input count, sampled beyond). The last mode is the full-accuracy mode
  and must show no mismatching vector.
*/
mode_report verify_modes( circuit const& design, std::span<std::string const> enables,
                          std::span<design_mode const> modes, circuit const& golden, qor_config const& cfg,
                          cost_model const& model = {} );
mode_report verify_modes( ruca_design const& design, circuit const& golden, qor_config const& cfg,
                          cost_model const& model = {} );

} // namespace ruca
