#include <ruca/ruca.hpp>
#include <ruca/synth.hpp>

#include <algorithm>

namespace ruca
{

full_mode_kind choose_full_mode( circuit const& corrector, circuit const& original, cost_model const& model )
{
  return power_proxy( corrector, {}, model ) <= power_proxy( original, {}, model ) ? full_mode_kind::xor_corrector
                                                                                  : full_mode_kind::mux_original;
}

namespace
{

/// Net of `c`'s output j, or empty when it is driven by CONST0.
bool is_const0_output( circuit const& c, std::size_t j )
{
  auto const g = c.driver( c.output_ids()[j] );
  return g && c.kind( *g ) == gate_kind::CONST0;
}

} // namespace

ruca_design assemble( circuit const& source, boolean_matrix const& m, factorization const& f, level_plan const& plan,
                      assemble_options const& options )
{
  std::size_t const n = source.num_inputs();
  std::size_t const outs = source.num_outputs();
  if ( m.rows() != ( std::size_t{ 1 } << n ) || m.cols() != outs || f.rows != m.rows() || f.cols != m.cols() )
    throw dimension_error( "assemble: truth table, factorization and circuit disagree in shape" );
  for ( std::size_t i = 0; i < plan.cuts.size(); ++i )
    if ( plan.cuts[i] > f.degree() || plan.cuts[i] == 0 || ( i > 0 && plan.cuts[i] <= plan.cuts[i - 1] ) )
      throw constraint_error( "assemble: level plan does not fit the factorization" );

  ruca_design d;
  d.plan = plan;
  for ( std::size_t i = 0; i < plan.cuts.size(); ++i )
    d.blocks.push_back( i == 0 ? "base" : "l" + std::to_string( i + 1 ) );
  d.blocks.push_back( options.full_block );
  for ( auto const& b : d.blocks )
    d.enables.push_back( "en_" + b );
  for ( std::size_t t = 0; t < d.blocks.size(); ++t )
  {
    design_mode mode;
    mode.name = d.blocks[t];
    mode.enables.assign( d.enables.begin(), d.enables.begin() + static_cast<std::ptrdiff_t>( t + 1 ) );
    mode.threshold = t < plan.thresholds.size() ? plan.thresholds[t] : 0.0;
    d.modes.push_back( std::move( mode ) );
  }

  netlist_builder nb;
  for ( auto const& in : source.inputs() )
    nb.add_input( in );
  for ( auto const& en : d.enables )
  {
    if ( nb.has_net( en ) )
      throw netlist_error( netlist_errc::duplicate_definition, "assemble: enable '" + en + "' collides with an input",
                           en );
    nb.add_input( en );
  }
  std::vector<std::string> out_names;
  for ( auto const& o : source.outputs() )
    out_names.push_back( nb.unique_name( o ) );

  synth_options synth;
  synth.order = structural_order( source );

  /* approximate levels joined by gate a */
  std::vector<std::vector<std::string>> contributions( outs );
  std::size_t lo = 0;
  for ( std::size_t i = 0; i < plan.cuts.size(); ++i )
  {
    auto const& block = d.blocks[i];
    std::vector<bit_vector> cols;
    std::vector<std::size_t> used;
    for ( std::size_t k = lo; k < plan.cuts[i]; ++k )
      if ( !f.pairs[k].col.none() && !f.pairs[k].row.none() )
      {
        cols.push_back( f.pairs[k].col );
        used.push_back( k );
      }
    lo = plan.cuts[i];
    if ( used.empty() )
      continue;

    auto const comp = synth_compressor( boolean_matrix::from_columns( cols ), source.inputs(), {}, block + "_comp", synth );
    auto const wires = nb.inline_circuit( comp, block, source.inputs() );
    std::vector<std::string> masked;
    for ( std::size_t w = 0; w < wires.size(); ++w )
    {
      masked.push_back( nb.unique_name( block + "__w" + std::to_string( w ) ) );
      nb.add_gate( masked.back(), gate_kind::AND, { "en_" + block, wires[w] } );
    }
    boolean_matrix rows( used.size(), outs );
    for ( std::size_t r = 0; r < used.size(); ++r )
      for ( std::size_t j = 0; j < outs; ++j )
        rows.set( r, j, f.pairs[used[r]].row.get( j ) );
    auto const decomp = synth_decompressor( rows, std::vector<std::string>( masked ), {}, block + "_decomp" );
    auto const block_outs = nb.inline_circuit( decomp, block, masked );
    for ( std::size_t j = 0; j < outs; ++j )
      if ( !is_const0_output( decomp, j ) )
        contributions[j].push_back( block_outs[j] );
  }

  std::vector<std::string> approx( outs );
  for ( std::size_t j = 0; j < outs; ++j )
  {
    if ( contributions[j].size() == 1 )
      approx[j] = contributions[j].front();
    else if ( contributions[j].size() > 1 )
    {
      approx[j] = nb.unique_name( "a__" + std::to_string( j ) );
      nb.add_gate( approx[j], gate_kind::OR, contributions[j] );
    }
  }

  /* full-accuracy block */
  auto const& full = d.blocks.back();
  auto const enable = "en_" + full;
  auto const c = corrector_matrix( m, f, plan.cuts.empty() ? 0 : plan.cuts.back() );
  auto const corrector = synth_compressor( c, source.inputs(), {}, full + "_corr", synth );
  d.full_kind = options.force_kind ? *options.force_kind : choose_full_mode( corrector, source, options.model );

  if ( d.full_kind == full_mode_kind::xor_corrector )
  {
    auto const corr = nb.inline_circuit( corrector, full, source.inputs() );
    for ( std::size_t j = 0; j < outs; ++j )
    {
      bool const has_corr = !is_const0_output( corrector, j );
      if ( !has_corr )
      {
        if ( approx[j].empty() )
          nb.add_gate( out_names[j], gate_kind::CONST0, {} );
        else
          nb.add_gate( out_names[j], gate_kind::BUF, { approx[j] } );
        continue;
      }
      if ( approx[j].empty() )
      {
        nb.add_gate( out_names[j], gate_kind::AND, { enable, corr[j] } );
        continue;
      }
      auto const masked = nb.unique_name( full + "__c" + std::to_string( j ) );
      nb.add_gate( masked, gate_kind::AND, { enable, corr[j] } );
      nb.add_gate( out_names[j], gate_kind::XOR, { approx[j], masked } );
    }
  }
  else
  {
    auto const orig = nb.inline_circuit( source, full, source.inputs() );
    std::string zero;
    for ( std::size_t j = 0; j < outs; ++j )
    {
      if ( approx[j].empty() )
      {
        if ( zero.empty() )
        {
          zero = nb.unique_name( full + "__zero" );
          nb.add_gate( zero, gate_kind::CONST0, {} );
        }
        approx[j] = zero;
      }
      nb.add_gate( out_names[j], gate_kind::MUX, { enable, orig[j], approx[j] } );
    }
  }
  for ( auto const& o : out_names )
    nb.add_output( o );
  d.netlist = nb.build( source.name() + "_ruca" );

  if ( options.verify )
  {
    auto const r = compare_circuits( source, d.netlist, options.check, d.pins( d.full_mode() ) );
    if ( r.mismatched_vectors != 0 )
      throw error( "assemble: full-accuracy mode differs from the source on " +
                   std::to_string( r.mismatched_vectors ) + " vectors" );
  }
  return d;
}

ruca_design ruca_direct( circuit const& source, std::vector<double> thresholds, direct_options const& options )
{
  auto const m = truth_table( source, options.truth_table_cap );
  std::size_t const degree = std::max<std::size_t>( 1, m.cols() - 1 );
  auto const f = asso_factorize( m, degree, options.tau );
  auto const plan = split_levels( f, m, std::move( thresholds ), options.kind, options.msb_first );
  return assemble( source, m, f, plan, options.assembly );
}

} // namespace ruca
