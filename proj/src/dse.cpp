#include <ruca/dse.hpp>
#include <ruca/simulate.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ruca
{

void parallel_for( std::size_t n, unsigned threads, std::function<void( std::size_t )> const& fn )
{
  std::size_t const workers = std::min<std::size_t>( std::max( 1u, threads ), n );
  if ( workers <= 1 )
  {
    for ( std::size_t i = 0; i < n; ++i )
      fn( i );
    return;
  }
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for ( std::size_t w = 0; w < workers; ++w )
    pool.emplace_back( [&] {
      for ( std::size_t i; ( i = next++ ) < n; )
      {
        try
        {
          fn( i );
        }
        catch ( ... )
        {
          std::lock_guard lock( failure_mutex );
          if ( !failure )
            failure = std::current_exception();
        }
      }
    } );
  for ( auto& t : pool )
    t.join();
  if ( failure )
    std::rethrow_exception( failure );
}

dse_engine::dse_engine( circuit const& c, dse_config cfg ) : source_( c ), cfg_( std::move( cfg ) )
{
  for ( std::string const en : { "en_base", "en_full" } )
    if ( c.find_net( en ) )
      throw constraint_error( "dse: circuit already uses the reserved net name '" + en + "'" );
  parts_ = cfg_.assignment ? partition_from_assignment( c, *cfg_.assignment, cfg_.spec ) : partition( c, cfg_.spec );
  for ( auto const& part : parts_.parts )
  {
    auto const& logic = part.logic;
    if ( logic.num_outputs() == 0 )
    {
      /* only dead gates: nothing observable to approximate, exact degree 0 */
      tables_.emplace_back();
      factors_.emplace_back();
      continue;
    }
    auto table = truth_table( logic, static_cast<unsigned>( std::max<std::size_t>( cfg_.spec.max_inputs, 1 ) ) );
    max_rows_ = std::max( max_rows_, table.rows() );
    max_cols_ = std::max( max_cols_, table.cols() );
    factorization f;
    if ( table.cols() >= 2 )
      f = asso_factorize( table, table.cols() - 1, cfg_.tau );
    tables_.push_back( std::move( table ) );
    factors_.push_back( std::move( f ) );
  }
}

dse_engine::cached const& dse_engine::lookup( std::size_t i, std::size_t degree ) const
{
  if ( i >= size() || degree < 1 || degree >= exact_degree( i ) )
    throw constraint_error( "dse: part " + std::to_string( i ) + " has no approximation of degree " +
                            std::to_string( degree ) );
  auto const key = std::make_pair( i, degree );
  {
    std::lock_guard lock( mutex_ );
    if ( auto it = cache_.find( key ); it != cache_.end() )
      return *it->second;
  }
  level_plan plan;
  plan.kind = cfg_.qor.kind;
  plan.thresholds = { 1.0 };
  plan.cuts = { degree };
  plan.level_qor = { matrix_qor( tables_[i], reconstruct( factors_[i], degree ), cfg_.qor.kind, cfg_.qor.msb_first ) };
  assemble_options options;
  options.model = cfg_.model;
  options.force_kind = cfg_.force_kind;
  options.check = cfg_.qor;
  auto design = assemble( parts_.parts[i].logic, tables_[i], factors_[i], plan, options );
  auto entry = std::make_shared<cached const>( cached{ std::move( design.netlist ), design.full_kind } );
  std::lock_guard lock( mutex_ );
  return *cache_.emplace( key, std::move( entry ) ).first->second;
}

circuit const& dse_engine::part_design( std::size_t i, std::size_t degree ) const
{
  return lookup( i, degree ).netlist;
}

full_mode_kind dse_engine::part_kind( std::size_t i, std::size_t degree ) const
{
  return lookup( i, degree ).kind;
}

/*
  Replaces every part below its exact degree in one rebuild. Part design
  inputs past the boundary are the enables en_base / en_full; en_full is
  routed to the enable of the part's full block.
*/
circuit dse_engine::substitute( std::vector<std::size_t> const& degrees, std::vector<std::string> const& full_blocks,
                                std::vector<std::string> const& enables ) const
{
  if ( degrees.size() != size() )
    throw dimension_error( "dse: degree vector does not match the part count" );
  std::vector<bool> removed( source_.num_gates(), false );
  std::vector<std::size_t> replaced;
  for ( std::size_t i = 0; i < size(); ++i )
    if ( degrees[i] < exact_degree( i ) )
    {
      replaced.push_back( i );
      for ( auto const& net : parts_.parts[i].ports.gates )
        removed[*source_.find_gate( net )] = true;
    }

  netlist_builder nb;
  for ( auto const& in : source_.inputs() )
    nb.add_input( in );
  for ( auto const& en : enables )
    nb.add_input( en );
  for ( std::size_t g = 0; g < source_.num_gates(); ++g )
    if ( !removed[g] )
      nb.add_gate( source_.gates()[g].output, source_.kind( g ), source_.gates()[g].fanins );
  for ( auto i : replaced )
    for ( auto const& out : parts_.parts[i].ports.outputs )
      nb.reserve( out );

  for ( auto i : replaced )
  {
    auto const& b = parts_.parts[i].ports;
    auto const& rep = part_design( i, degrees[i] );
    std::string const prefix = "s" + std::to_string( i );

    std::vector<int> uses( rep.num_nets(), 0 );
    for ( auto id : rep.output_ids() )
      ++uses[id];
    std::vector<std::string> names( rep.num_nets() );
    for ( std::size_t k = 0; k < rep.num_inputs(); ++k )
    {
      if ( k < b.inputs.size() )
        names[k] = b.inputs[k];
      else
        names[k] = rep.inputs()[k] == "en_full" ? "en_" + full_blocks[i] : rep.inputs()[k];
    }
    std::vector<bool> direct( rep.num_outputs(), false );
    for ( std::size_t j = 0; j < rep.num_outputs(); ++j )
    {
      auto const id = rep.output_ids()[j];
      if ( rep.driver( id ) && uses[id] == 1 )
      {
        names[id] = b.outputs[j];
        direct[j] = true;
      }
    }
    for ( std::size_t g = 0; g < rep.num_gates(); ++g )
      if ( auto& name = names[rep.gate_net( g )]; name.empty() )
        name = nb.unique_name( prefix + "__" + rep.gates()[g].output );
    for ( std::size_t g = 0; g < rep.num_gates(); ++g )
    {
      std::vector<std::string> fanins;
      for ( auto fi : rep.fanins( g ) )
        fanins.push_back( names[fi] );
      nb.add_gate( names[rep.gate_net( g )], rep.kind( g ), std::move( fanins ) );
    }
    for ( std::size_t j = 0; j < rep.num_outputs(); ++j )
      if ( !direct[j] )
        nb.add_gate( b.outputs[j], gate_kind::BUF, { names[rep.output_ids()[j]] } );
  }
  for ( auto const& out : source_.outputs() )
    nb.add_output( out );
  return nb.build( source_.name() + "_ruca" );
}

circuit dse_engine::trial( std::vector<std::size_t> const& degrees ) const
{
  return substitute( degrees, std::vector<std::string>( size(), "full" ), { "en_base", "en_full" } );
}

candidate_eval dse_engine::evaluate( std::vector<std::size_t> const& degrees, std::size_t i ) const
{
  if ( i >= size() || degrees.size() != size() || degrees[i] <= 1 )
    throw constraint_error( "dse: part " + std::to_string( i ) + " cannot be lowered below degree 1" );
  auto trial_degrees = degrees;
  --trial_degrees[i];
  auto const netlist = trial( trial_degrees );
  pin_assignment const approximate{ { "en_base", true }, { "en_full", false } };
  pin_assignment const accurate{ { "en_base", true }, { "en_full", true } };

  candidate_eval e;
  e.id = i;
  e.degree = trial_degrees[i];
  e.qor = compare_circuits( source_, netlist, cfg_.qor, approximate ).value;
  e.p_acc = power_proxy( netlist, accurate, cfg_.model );
  e.p_app = power_proxy( netlist, approximate, cfg_.model );
  e.loss = candidate_loss( e.qor, e.p_acc, e.p_app );
  return e;
}

std::vector<candidate_eval> dse_engine::evaluate_all( std::vector<std::size_t> const& degrees,
                                                      std::vector<std::size_t> const& ids ) const
{
  std::vector<candidate_eval> out( ids.size() );
  parallel_for( ids.size(), cfg_.threads, [&]( std::size_t k ) { out[k] = evaluate( degrees, ids[k] ); } );
  return out;
}

ruca_design dse_engine::group_blocks( std::vector<dse_commit> const& commits,
                                      std::vector<subcircuit_summary>* summary ) const
{
  if ( commits.empty() )
    throw constraint_error( "group_blocks: no committed configuration" );
  std::size_t const levels = commits.size();
  for ( std::size_t j = 0; j < levels; ++j )
  {
    if ( commits[j].degrees.size() != size() )
      throw constraint_error( "group_blocks: commit " + std::to_string( j ) + " does not cover every part" );
    if ( j > 0 && !( commits[j].threshold > commits[j - 1].threshold ) )
      throw constraint_error( "group_blocks: commit thresholds must be strictly ascending" );
  }

  ruca_design d;
  d.blocks.push_back( "base" );
  for ( std::size_t b = 1; b < levels; ++b )
    d.blocks.push_back( "l" + std::to_string( b + 1 ) );
  d.blocks.push_back( "full" );
  for ( auto const& b : d.blocks )
    d.enables.push_back( "en_" + b );

  /* part i joins the corrector block of the tightest commit approximating it */
  auto const& loosest = commits.back().degrees;
  std::vector<std::string> full_blocks( size(), "full" );
  std::vector<subcircuit_summary> parts( size() );
  std::size_t approximated = 0, muxed = 0;
  for ( std::size_t i = 0; i < size(); ++i )
  {
    auto& s = parts[i];
    s.inputs = parts_.parts[i].logic.num_inputs();
    s.outputs = exact_degree( i );
    s.gates = parts_.parts[i].logic.num_gates();
    s.degree = loosest[i];
    std::optional<std::size_t> first;
    for ( std::size_t j = 0; j < levels; ++j )
    {
      auto const dj = commits[j].degrees[i];
      if ( dj > exact_degree( i ) || ( dj == 0 && exact_degree( i ) > 0 ) )
        throw constraint_error( "group_blocks: degree out of range for part " + std::to_string( i ) );
      if ( dj < exact_degree( i ) && !first )
        first = j;
      if ( first && dj != commits[*first].degrees[i] )
        throw constraint_error( "group_blocks: part " + std::to_string( i ) + " changes degree after its commit" );
    }
    if ( !first )
      continue;
    full_blocks[i] = d.blocks[levels - *first];
    s.block = full_blocks[i];
    s.kind = part_kind( i, s.degree );
    ++approximated;
    muxed += s.kind == full_mode_kind::mux_original;
  }

  d.netlist = substitute( loosest, full_blocks, d.enables );
  d.full_kind = approximated > 0 && muxed == approximated ? full_mode_kind::mux_original
                                                         : full_mode_kind::xor_corrector;
  d.plan.kind = cfg_.qor.kind;
  for ( std::size_t t = 0; t < levels; ++t )
  {
    auto const& commit = commits[levels - 1 - t];
    d.plan.thresholds.push_back( commit.threshold );
    d.plan.level_qor.push_back( commit.qor );
    design_mode mode;
    mode.name = d.blocks[t];
    mode.enables.assign( d.enables.begin(), d.enables.begin() + static_cast<std::ptrdiff_t>( t + 1 ) );
    mode.threshold = commit.threshold;
    d.modes.push_back( std::move( mode ) );
  }
  d.modes.push_back( { "full", d.enables, 0.0 } );
  if ( summary )
    *summary = std::move( parts );
  return d;
}

dse_result dse( circuit const& c, std::vector<double> thresholds, dse_config const& cfg )
{
  if ( thresholds.empty() )
    throw constraint_error( "dse: empty threshold list" );
  for ( auto t : thresholds )
    if ( !( t >= 0.0 ) || std::isinf( t ) )
      throw constraint_error( "dse: thresholds must be finite and non-negative" );
  std::sort( thresholds.begin(), thresholds.end() );
  thresholds.erase( std::unique( thresholds.begin(), thresholds.end() ), thresholds.end() );

  dse_engine engine( c, cfg );
  dse_result result;
  std::vector<std::size_t> degrees( engine.size() );
  for ( std::size_t i = 0; i < engine.size(); ++i )
    degrees[i] = engine.exact_degree( i );
  std::vector<bool> committed( engine.size(), false );
  double current_qor = 0.0;
  std::size_t next = 0;

  auto commit = [&]( double threshold ) {
    result.commits.push_back( { threshold, degrees, current_qor } );
    for ( std::size_t i = 0; i < engine.size(); ++i )
      if ( degrees[i] < engine.exact_degree( i ) )
        committed[i] = true;
  };

  while ( next < thresholds.size() )
  {
    std::vector<std::size_t> ids;
    for ( std::size_t i = 0; i < engine.size(); ++i )
      if ( !committed[i] && degrees[i] > 1 )
        ids.push_back( i );
    if ( ids.empty() )
      break;

    dse_iteration it;
    it.threshold = thresholds[next];
    it.candidates = engine.evaluate_all( degrees, ids );
    for ( std::size_t k = 1; k < it.candidates.size(); ++k )
      if ( it.candidates[k].loss < it.candidates[it.selected].loss )
        it.selected = k;
    auto const& best = it.candidates[it.selected];
    if ( best.qor >= thresholds[next] )
    {
      it.committed = true;
      commit( thresholds[next] );
      ++next;
    }
    else
    {
      degrees[best.id] = best.degree;
      current_qor = best.qor;
    }
    result.iterations.push_back( std::move( it ) );
  }
  if ( next < thresholds.size() )
  {
    if ( result.commits.empty() || result.commits.back().degrees != degrees )
    {
      commit( thresholds[next] );
      ++next;
    }
    result.unreachable.assign( thresholds.begin() + static_cast<std::ptrdiff_t>( next ), thresholds.end() );
  }

  result.design = engine.group_blocks( result.commits, &result.subcircuits );
  result.design.plan.dropped = result.unreachable;
  result.report = verify_modes( result.design, c, cfg.qor, cfg.model );
  if ( !result.report.full_exact )
    throw error( "dse: full-accuracy mode of the regrouped design is not exact" );
  result.max_table_rows = engine.max_table_rows();
  result.max_table_cols = engine.max_table_cols();
  return result;
}

} // namespace ruca
