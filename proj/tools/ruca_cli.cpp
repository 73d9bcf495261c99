#include <ruca/bmf.hpp>
#include <ruca/dse.hpp>
#include <ruca/error.hpp>
#include <ruca/netlist.hpp>
#include <ruca/report.hpp>
#include <ruca/ruca.hpp>
#include <ruca/simulate.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using namespace ruca;

enum exit_code : int
{
  exit_ok = 0,
  exit_input = 2,
  exit_constraint = 3,
  exit_verify = 4
};

/// Unreadable or unwritable files count as input errors.
class io_error : public ruca::error
{
public:
  using ruca::error::error;
};

std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw io_error( "cannot read '" + path + "'" );
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file( std::string const& path, std::string const& text )
{
  std::ofstream out( path, std::ios::binary );
  if ( !out || !( out << text ) )
    throw io_error( "cannot write '" + path + "'" );
}

/// `-` or empty means standard output.
void emit( std::string const& path, std::string const& text )
{
  if ( path.empty() || path == "-" )
    std::cout << text;
  else
    write_file( path, text );
}

circuit load_bench( std::string const& path )
{
  return parse_bench( read_file( path ), std::filesystem::path( path ).stem().string() );
}

std::string bits( bit_vector const& v, std::size_t n )
{
  std::string s( n, '0' );
  for ( std::size_t i = 0; i < n; ++i )
    if ( v.get( i ) )
      s[i] = '1';
  return s;
}

struct global_options
{
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

unsigned resolve_threads( unsigned flag )
{
  if ( char const* env = std::getenv( "RUCA_THREADS" ); env && *env )
  {
    char* end = nullptr;
    auto const v = std::strtoul( env, &end, 10 );
    if ( *end != '\0' || v == 0 )
      throw constraint_error( fmt::format( "RUCA_THREADS must be a positive integer, got '{}'", env ) );
    return static_cast<unsigned>( v );
  }
  return flag == 0 ? 1u : flag;
}

/* ---- factor ---- */

struct factor_options
{
  std::string input;
  std::size_t degree = 0;
  double tau = 0.9;
  std::string out;
  std::string csv;
  unsigned max_inputs = 20;
};

int run_factor( factor_options const& o )
{
  boolean_matrix m;
  if ( std::filesystem::path( o.input ).extension() == ".bench" )
    m = truth_table( load_bench( o.input ), o.max_inputs );
  else
    m = parse_matrix( read_file( o.input ) );
  if ( o.degree == 0 )
    throw constraint_error( "factor: degree must be at least 1" );
  if ( o.degree > m.cols() )
    throw constraint_error( fmt::format( "factor: degree {} exceeds the {} columns", o.degree, m.cols() ) );

  auto const f = asso_factorize( m, o.degree, o.tau );
  nlohmann::json pairs = nlohmann::json::array();
  for ( auto const& p : f.pairs )
    pairs.push_back( { { "col", bits( p.col, f.rows ) }, { "row", bits( p.row, f.cols ) }, { "gain", p.gain } } );
  nlohmann::json const doc{ { "schema", report_schema_version },
                            { "rows", f.rows },
                            { "cols", f.cols },
                            { "ones", m.count_ones() },
                            { "degree", f.degree() },
                            { "tau", o.tau },
                            { "pairs", pairs },
                            { "err_curve", f.err_curve } };
  emit( o.out, doc.dump( 2 ) + "\n" );
  if ( !o.csv.empty() )
  {
    std::string csv = "degree,error\n";
    for ( std::size_t k = 0; k < f.err_curve.size(); ++k )
      csv += fmt::format( "{},{}\n", k + 1, f.err_curve[k] );
    write_file( o.csv, csv );
  }
  return exit_ok;
}

/* ---- shared by synth and dse ---- */

struct design_options
{
  std::string input;
  std::vector<double> thresholds;
  std::string metric_name = "mae";
  double tau = 0.9;
  bool msb_first = false;
  std::size_t samples = 4096;
  unsigned exhaustive_cap = 14;
  std::string cost_model_file;
  std::string full_kind;
  std::string out;
  std::string report;
  std::string csv;
};

qor_config make_qor( design_options const& o, std::uint64_t seed )
{
  qor_config q;
  q.kind = parse_metric( o.metric_name );
  q.samples = o.samples;
  q.exhaustive_cap = o.exhaustive_cap;
  q.seed = seed;
  q.msb_first = o.msb_first;
  return q;
}

cost_model make_model( design_options const& o )
{
  return o.cost_model_file.empty() ? cost_model{} : cost_model::from_json( read_file( o.cost_model_file ) );
}

std::optional<full_mode_kind> make_kind( design_options const& o )
{
  if ( o.full_kind.empty() || o.full_kind == "auto" )
    return std::nullopt;
  return parse_full_mode_kind( o.full_kind );
}

void print_modes( mode_report const& r )
{
  fmt::print( "{:<8} {:>10} {:>12} {:>12} {:>10}  {}\n", "mode", "threshold", to_string( r.kind ), "power", "area",
              "status" );
  for ( auto const& m : r.modes )
    fmt::print( "{:<8} {:>10.6g} {:>12.6g} {:>12.4f} {:>10.2f}  {}\n", m.mode.name, m.mode.threshold, m.qor.value,
                m.power_proxy, m.area_proxy, m.within_threshold ? "ok" : "VIOLATED" );
  fmt::print( "golden   power {:.4f}  area {:.2f}; design area {:.2f}; full mode {}\n", r.golden_power,
              r.golden_area, r.design_area, r.full_exact ? "exact" : "INEXACT" );
}

int finish( design_options const& o, ruca_design const& design, mode_report const& report, nlohmann::json doc )
{
  if ( !o.out.empty() )
    write_file( o.out, emit_bench( design.netlist ) );
  if ( !o.report.empty() )
    write_file( o.report, doc.dump( 2 ) + "\n" );
  if ( !o.csv.empty() )
    write_file( o.csv, report_csv( report ) );
  for ( auto t : design.plan.dropped )
    fmt::print( stderr, "warning: threshold {} cannot be met and was dropped\n", t );
  print_modes( report );
  if ( !report.full_exact )
    return exit_verify;
  for ( auto const& m : report.modes )
    if ( !m.within_threshold )
      return exit_constraint;
  return exit_ok;
}

/* ---- synth ---- */

int run_synth( design_options const& o, global_options const& g )
{
  auto const golden = load_bench( o.input );
  auto const qor = make_qor( o, g.seed );
  direct_options d;
  d.kind = qor.kind;
  d.tau = o.tau;
  d.msb_first = o.msb_first;
  d.assembly.model = make_model( o );
  d.assembly.force_kind = make_kind( o );
  d.assembly.check = qor;
  auto const design = ruca_direct( golden, o.thresholds, d );
  auto const report = verify_modes( design, golden, qor, d.assembly.model );
  auto doc = design_report( design, report, golden, { "direct", o.tau, o.msb_first, g.seed } );
  return finish( o, design, report, std::move( doc ) );
}

/* ---- dse ---- */

struct dse_options
{
  std::size_t max_in = 10;
  std::size_t max_out = 10;
  std::size_t min_gates = 3;
  double balance = 0.1;
  std::string partition_file;
};

nlohmann::json dse_json( dse_result const& r )
{
  auto subs = nlohmann::json::array();
  for ( auto const& s : r.subcircuits )
    subs.push_back( { { "inputs", s.inputs },
                      { "outputs", s.outputs },
                      { "gates", s.gates },
                      { "degree", s.degree },
                      { "block", s.block ? nlohmann::json( *s.block ) : nlohmann::json( nullptr ) },
                      { "full_mode_kind", std::string( to_string( s.kind ) ) } } );
  auto iters = nlohmann::json::array();
  for ( auto const& it : r.iterations )
  {
    auto cands = nlohmann::json::array();
    for ( auto const& c : it.candidates )
      cands.push_back( { { "id", c.id },
                         { "degree", c.degree },
                         { "qor", c.qor },
                         { "p_acc", c.p_acc },
                         { "p_app", c.p_app },
                         { "loss", c.loss } } );
    iters.push_back( { { "threshold", it.threshold },
                       { "selected", it.selected },
                       { "committed", it.committed },
                       { "candidates", cands } } );
  }
  auto commits = nlohmann::json::array();
  for ( auto const& c : r.commits )
    commits.push_back( { { "threshold", c.threshold }, { "qor", c.qor }, { "degrees", c.degrees } } );
  return { { "subcircuits", subs },
           { "iterations", iters },
           { "commits", commits },
           { "unreachable", r.unreachable },
           { "max_table_rows", r.max_table_rows },
           { "max_table_cols", r.max_table_cols } };
}

int run_dse( design_options const& o, dse_options const& x, global_options const& g )
{
  auto const golden = load_bench( o.input );
  dse_config cfg;
  cfg.qor = make_qor( o, g.seed );
  cfg.tau = o.tau;
  cfg.spec.max_inputs = x.max_in;
  cfg.spec.max_outputs = x.max_out;
  cfg.spec.min_gates = x.min_gates;
  cfg.spec.balance = x.balance;
  cfg.model = make_model( o );
  cfg.force_kind = make_kind( o );
  cfg.threads = g.threads;
  if ( !x.partition_file.empty() )
    cfg.assignment = parse_partition_file( golden, read_file( x.partition_file ) );
  auto const r = dse( golden, o.thresholds, cfg );
  auto doc = design_report( r.design, r.report, golden, { "dse", o.tau, o.msb_first, g.seed } );
  doc["dse"] = dse_json( r );
  for ( auto t : r.unreachable )
    fmt::print( stderr, "warning: threshold {} is unreachable with the available subcircuits\n", t );
  return finish( o, r.design, r.report, std::move( doc ) );
}

/* ---- verify ---- */

struct verify_options
{
  std::string design;
  std::string golden;
  std::string modes;
  std::size_t budget = 4096;
  unsigned exhaustive_cap = 14;
  std::string cost_model_file;
  std::string out;
  std::string csv;
};

int run_verify( verify_options const& o, global_options const& g )
{
  auto const design = load_bench( o.design );
  auto const golden = load_bench( o.golden );
  auto const table = parse_mode_table( read_file( o.modes ) );
  qor_config q;
  q.kind = table.kind;
  q.msb_first = table.msb_first;
  q.samples = o.budget;
  q.exhaustive_cap = o.exhaustive_cap;
  q.seed = g.seed;
  auto const model = o.cost_model_file.empty() ? cost_model{} : cost_model::from_json( read_file( o.cost_model_file ) );
  auto const report = verify_modes( design, table.enables, table.modes, golden, q, model );
  nlohmann::json const doc{ { "schema", report_schema_version },
                            { "metric", std::string( to_string( report.kind ) ) },
                            { "full_exact", report.full_exact },
                            { "golden_power_proxy", report.golden_power },
                            { "golden_area_proxy", report.golden_area },
                            { "design_area_proxy", report.design_area },
                            { "modes", modes_json( report ) } };
  if ( !o.out.empty() )
    write_file( o.out, doc.dump( 2 ) + "\n" );
  if ( !o.csv.empty() )
    write_file( o.csv, report_csv( report ) );
  print_modes( report );
  return report.full_exact ? exit_ok : exit_verify;
}

void add_design_flags( CLI::App* cmd, design_options& o )
{
  cmd->add_option( "input", o.input, "golden circuit (.bench)" )->required();
  cmd->add_option( "-t,--thresholds", o.thresholds, "QoR thresholds, comma separated, any order" )
      ->required()
      ->delimiter( ',' );
  cmd->add_option( "-m,--metric", o.metric_name, "mae or nhd" )->capture_default_str();
  cmd->add_option( "--tau", o.tau, "association confidence" )->capture_default_str();
  cmd->add_flag( "--msb-first", o.msb_first, "outputs listed most significant bit first" );
  cmd->add_option( "--samples", o.samples, "random vectors when inputs exceed the exhaustive cap" )
      ->capture_default_str();
  cmd->add_option( "--exhaustive-cap", o.exhaustive_cap, "largest input count evaluated exhaustively" )
      ->capture_default_str();
  cmd->add_option( "--cost-model", o.cost_model_file, "JSON gate weights" );
  cmd->add_option( "--full-kind", o.full_kind, "auto, xor or mux" );
  cmd->add_option( "-o,--out", o.out, "design netlist (.bench)" );
  cmd->add_option( "-r,--report", o.report, "JSON report" );
  cmd->add_option( "--csv", o.csv, "CSV mirror of the mode table" );
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Multi-level approximate circuits with self-correction" };
  app.require_subcommand( 1 );
  global_options g;
  unsigned threads_flag = 1;
  app.add_option( "--seed", g.seed, "seed for sampled evaluation" )->capture_default_str();
  app.add_option( "-j,--threads", threads_flag, "worker threads (RUCA_THREADS overrides)" )->capture_default_str();

  factor_options fo;
  auto* factor = app.add_subcommand( "factor", "Boolean matrix factorization of a truth table or matrix file" );
  factor->add_option( "input", fo.input, ".bench circuit or matrix file" )->required();
  factor->add_option( "-f,--degree", fo.degree, "factorization degree" )->required();
  factor->add_option( "--tau", fo.tau, "association confidence" )->capture_default_str();
  factor->add_option( "-o,--out", fo.out, "JSON dump (default stdout)" );
  factor->add_option( "--csv", fo.csv, "error curve as CSV" );
  factor->add_option( "--max-inputs", fo.max_inputs, "largest circuit accepted" )->capture_default_str();

  design_options so;
  auto* synth = app.add_subcommand( "synth", "Direct flow on the whole truth table" );
  add_design_flags( synth, so );

  design_options dopt;
  dse_options xo;
  auto* dse_cmd = app.add_subcommand( "dse", "Partition-based design space exploration" );
  add_design_flags( dse_cmd, dopt );
  dse_cmd->add_option( "--max-in", xo.max_in, "subcircuit input cap" )->capture_default_str();
  dse_cmd->add_option( "--max-out", xo.max_out, "subcircuit output cap" )->capture_default_str();
  dse_cmd->add_option( "--min-gates", xo.min_gates, "smallest part split further" )->capture_default_str();
  dse_cmd->add_option( "--balance", xo.balance, "bisection balance tolerance" )->capture_default_str();
  dse_cmd->add_option( "--partition-file", xo.partition_file, "lines of `gate_name part_id`" );

  verify_options vo;
  auto* verify = app.add_subcommand( "verify", "Re-measure a design against its golden circuit" );
  verify->add_option( "design", vo.design, "design netlist (.bench)" )->required();
  verify->add_option( "golden", vo.golden, "golden netlist (.bench)" )->required();
  verify->add_option( "modes", vo.modes, "report JSON listing enables and modes" )->required();
  verify->add_option( "--budget", vo.budget, "random vectors beyond the exhaustive cap" )->capture_default_str();
  verify->add_option( "--exhaustive-cap", vo.exhaustive_cap, "largest input count evaluated exhaustively" )
      ->capture_default_str();
  verify->add_option( "--cost-model", vo.cost_model_file, "JSON gate weights" );
  verify->add_option( "-o,--out", vo.out, "JSON mode report" );
  verify->add_option( "--csv", vo.csv, "CSV mirror of the mode table" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? exit_ok : exit_input;
  }

  try
  {
    g.threads = resolve_threads( threads_flag );
    if ( *factor )
      return run_factor( fo );
    if ( *synth )
      return run_synth( so, g );
    if ( *dse_cmd )
      return run_dse( dopt, xo, g );
    return run_verify( vo, g );
  }
  catch ( constraint_error const& e )
  {
    fmt::print( stderr, "error: {}\n", e.what() );
    return exit_constraint;
  }
  catch ( ruca::error const& e )
  {
    fmt::print( stderr, "error: {}\n", e.what() );
    return exit_input;
  }
  catch ( std::exception const& e )
  {
    fmt::print( stderr, "error: {}\n", e.what() );
    return exit_input;
  }
}
