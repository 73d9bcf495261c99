#pragma once

#include <ruca/bmf.hpp>
#include <ruca/cost.hpp>
#include <ruca/partition.hpp>
#include <ruca/qor.hpp>
#include <ruca/ruca.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace ruca
{

struct dse_config
{
  qor_config qor; ///< metric and vectors for trial and final evaluation
  double tau = 0.9;
  partition_spec spec;
  cost_model model;
  std::optional<std::vector<std::size_t>> assignment; ///< user partition (gate -> part)
  std::optional<full_mode_kind> force_kind;
  unsigned threads = 1;
};

struct candidate_eval
{
  std::size_t id = 0;     ///< subcircuit index
  std::size_t degree = 0; ///< degree tried (current degree - 1)
  double qor = 0.0;       ///< top-level QoR of the trial in approximate mode
  double p_acc = 0.0;     ///< power proxy with every enable asserted
  double p_app = 0.0;     ///< power proxy in approximate mode
  double loss = 0.0;      ///< qor * (p_acc + p_app)
};

/// Ranking key of a candidate: its error weighted by the power of both modes.
inline double candidate_loss( double qor, double p_acc, double p_app ) noexcept
{
  return qor * ( p_acc + p_app );
}

struct dse_iteration
{
  double threshold = 0.0; ///< tightest threshold still open
  std::vector<candidate_eval> candidates;
  std::size_t selected = 0; ///< index into `candidates`
  bool committed = false;   ///< the selected trial reached the threshold
};

/// Degrees per subcircuit committed for one threshold (degree = output count means exact).
struct dse_commit
{
  double threshold = 0.0;
  std::vector<std::size_t> degrees;
  double qor = 0.0; ///< measured QoR of the committed configuration
};

struct subcircuit_summary
{
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::size_t gates = 0;
  std::size_t degree = 0;            ///< final degree (outputs when untouched)
  std::optional<std::string> block;  ///< block holding its corrector, if approximated
  full_mode_kind kind = full_mode_kind::xor_corrector;
};

/*
  Greedy exploration state for one circuit: its partition, the truth table
  and factorization of every part, and a cache of two-level part designs.
*/
class dse_engine
{
public:
  dse_engine( circuit const& c, dse_config cfg );

  circuit const& source() const noexcept { return source_; }
  partition_result const& parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.parts.size(); }
  /// Output count of part i (its exact degree).
  std::size_t exact_degree( std::size_t i ) const { return tables_[i].cols(); }
  std::size_t max_table_rows() const noexcept { return max_rows_; }
  std::size_t max_table_cols() const noexcept { return max_cols_; }

  /// Parent circuit with each part i replaced by its two-level design at degrees[i] (when below exact).
  circuit trial( std::vector<std::size_t> const& degrees ) const;

  /// Effect of lowering part i by one degree; requires degrees[i] > 1.
  candidate_eval evaluate( std::vector<std::size_t> const& degrees, std::size_t i ) const;

  /// Evaluates several candidates with the configured thread count.
  std::vector<candidate_eval> evaluate_all( std::vector<std::size_t> const& degrees,
                                            std::vector<std::size_t> const& ids ) const;

  /// Top-level design whose modes reproduce the committed configurations (loosest first).
  ruca_design group_blocks( std::vector<dse_commit> const& commits,
                            std::vector<subcircuit_summary>* summary = nullptr ) const;

  /// Two-level design of part i at `degree` (enables en_base and en_full).
  circuit const& part_design( std::size_t i, std::size_t degree ) const;
  full_mode_kind part_kind( std::size_t i, std::size_t degree ) const;

private:
  struct cached
  {
    circuit netlist;
    full_mode_kind kind;
  };
  cached const& lookup( std::size_t i, std::size_t degree ) const;
  circuit substitute( std::vector<std::size_t> const& degrees, std::vector<std::string> const& full_blocks,
                      std::vector<std::string> const& enables ) const;

  circuit source_;
  dse_config cfg_;
  partition_result parts_;
  std::vector<boolean_matrix> tables_;
  std::vector<factorization> factors_;
  std::size_t max_rows_ = 0, max_cols_ = 0;

  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<cached const>> cache_;
};

struct dse_result
{
  ruca_design design;
  mode_report report;
  std::vector<subcircuit_summary> subcircuits;
  std::vector<dse_iteration> iterations;
  std::vector<dse_commit> commits; ///< in processing order (tightest threshold first)
  std::vector<double> unreachable;
  std::size_t max_table_rows = 0;
  std::size_t max_table_cols = 0;
};

/// Partition, explore and regroup; thresholds may be given in any order.
dse_result dse( circuit const& c, std::vector<double> thresholds, dse_config const& cfg = {} );

/// Runs `fn(i)` for i in [0, n) on up to `threads` workers.
void parallel_for( std::size_t n, unsigned threads, std::function<void( std::size_t )> const& fn );

} // namespace ruca
