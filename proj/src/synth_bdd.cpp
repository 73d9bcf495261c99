#include <ruca/cost.hpp>
#include <ruca/error.hpp>
#include <ruca/synth.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

namespace ruca
{

namespace
{

/* edge into the node table; node 0 is the constant-0 terminal */
struct edge
{
  std::uint32_t node = 0;
  bool complement = false;

  edge operator!() const noexcept { return { node, !complement }; }
  friend bool operator==( edge const&, edge const& ) = default;
};

struct node
{
  unsigned var = 0; ///< input index
  edge lo;          ///< always regular
  edge hi;
};

/*
  Shared ROBDD with complement edges, built from truth tables permuted so
  that the top variable is the most significant row bit. Every stored
  function is normalized to f(0..0) = 0.
*/
class bdd_builder
{
public:
  bdd_builder( boolean_matrix const& cols, std::vector<unsigned> order ) : order_( std::move( order ) )
  {
    n_ = static_cast<unsigned>( order_.size() );
    nodes_.push_back( {} );
    big_.resize( n_ + 1 );
    small_.resize( n_ + 1 );

    /* r' -> r via two lookup halves */
    unsigned const low_bits = n_ / 2;
    std::vector<std::size_t> low( std::size_t{ 1 } << low_bits, 0 ), high( std::size_t{ 1 } << ( n_ - low_bits ), 0 );
    auto deposit = [&]( std::size_t value, unsigned first, unsigned count ) {
      std::size_t r = 0;
      for ( unsigned b = 0; b < count; ++b )
        if ( ( value >> b ) & 1u )
          r |= std::size_t{ 1 } << order_[n_ - 1 - ( first + b )];
      return r;
    };
    for ( std::size_t v = 0; v < low.size(); ++v )
      low[v] = deposit( v, 0, low_bits );
    for ( std::size_t v = 0; v < high.size(); ++v )
      high[v] = deposit( v, low_bits, n_ - low_bits );

    std::size_t const rows = std::size_t{ 1 } << n_;
    std::vector<word> permuted( words_for( rows ) );
    for ( std::size_t j = 0; j < cols.cols(); ++j )
    {
      std::fill( permuted.begin(), permuted.end(), 0 );
      for ( std::size_t rp = 0; rp < rows; ++rp )
        if ( cols.get( low[rp & ( low.size() - 1 )] | high[rp >> low_bits], j ) )
          permuted[rp / 64] |= word{ 1 } << ( rp % 64 );
      roots_.push_back( rows > 64 ? build_big( 0, permuted ) : build_small( 0, permuted[0], rows ) );
    }
  }

  std::vector<edge> const& roots() const noexcept { return roots_; }
  std::vector<node> const& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size() - 1; }

private:
  edge build_small( unsigned level, word f, std::size_t bits )
  {
    bool const complement = f & 1u;
    if ( complement )
      f = ~f & ( bits == 64 ? ~word{ 0 } : ( word{ 1 } << bits ) - 1 );
    if ( f == 0 )
      return { 0, complement };
    auto& table = small_[level];
    if ( auto it = table.find( f ); it != table.end() )
      return complement ? !it->second : it->second;
    std::size_t const half = bits / 2;
    auto const lo = build_small( level + 1, f & ( ( word{ 1 } << half ) - 1 ), half );
    auto const hi = build_small( level + 1, f >> half, half );
    auto const e = make( level, lo, hi );
    table.emplace( f, e );
    return complement ? !e : e;
  }

  edge build_big( unsigned level, std::vector<word> f )
  {
    bool const complement = f[0] & 1u;
    if ( complement )
      for ( auto& w : f )
        w = ~w;
    if ( std::all_of( f.begin(), f.end(), []( word w ) { return w == 0; } ) )
      return { 0, complement };
    std::string key( reinterpret_cast<char const*>( f.data() ), f.size() * sizeof( word ) );
    auto& table = big_[level];
    if ( auto it = table.find( key ); it != table.end() )
      return complement ? !it->second : it->second;
    std::size_t const half = f.size() / 2;
    edge lo, hi;
    if ( half == 1 )
    {
      lo = build_small( level + 1, f[0], 64 );
      hi = build_small( level + 1, f[1], 64 );
    }
    else
    {
      lo = build_big( level + 1, std::vector<word>( f.begin(), f.begin() + half ) );
      hi = build_big( level + 1, std::vector<word>( f.begin() + half, f.end() ) );
    }
    auto const e = make( level, lo, hi );
    table.emplace( std::move( key ), e );
    return complement ? !e : e;
  }

  edge make( unsigned level, edge lo, edge hi )
  {
    if ( lo == hi )
      return lo;
    nodes_.push_back( { order_[level], lo, hi } );
    return { static_cast<std::uint32_t>( nodes_.size() - 1 ), false };
  }

  std::vector<unsigned> order_;
  unsigned n_ = 0;
  std::vector<node> nodes_;
  std::vector<edge> roots_;
  std::vector<std::unordered_map<std::string, edge>> big_;
  std::vector<std::unordered_map<word, edge>> small_;
};

/// Area of the gate a node maps to (inputs and inverted inputs are nearly free).
double node_cost( node const& nd )
{
  edge const zero{ 0, false }, one{ 0, true };
  if ( nd.lo == zero && nd.hi == one )
    return 0.0;
  if ( nd.lo == one && nd.hi == zero )
    return 0.5;
  if ( nd.hi == !nd.lo )
    return 2.0;
  if ( nd.lo == zero || nd.hi == zero || nd.lo == one || nd.hi == one )
    return 1.0;
  return 2.5;
}

double bdd_cost( bdd_builder const& b )
{
  double total = 0.0;
  for ( std::size_t i = 1; i < b.nodes().size(); ++i )
    total += node_cost( b.nodes()[i] );
  for ( auto const& r : b.roots() )
    if ( r.complement && r.node != 0 )
      total += 0.5;
  return total;
}

double order_cost( boolean_matrix const& cols, std::vector<unsigned> const& order )
{
  return bdd_cost( bdd_builder( cols, order ) );
}

/// Natural and hinted orders, each also reversed, then one sifting pass when affordable.
std::vector<unsigned> choose_order( boolean_matrix const& cols, unsigned n, std::vector<unsigned> const& hint )
{
  std::vector<unsigned> natural( n );
  std::iota( natural.begin(), natural.end(), 0u );
  std::vector<std::vector<unsigned>> starts{ natural };
  starts.emplace_back( natural.rbegin(), natural.rend() );
  if ( hint.size() == n )
  {
    starts.push_back( hint );
    starts.emplace_back( hint.rbegin(), hint.rend() );
  }

  auto best = starts.front();
  double best_cost = order_cost( cols, best );
  for ( std::size_t i = 1; i < starts.size(); ++i )
    if ( double const c = order_cost( cols, starts[i] ); c < best_cost )
    {
      best_cost = c;
      best = starts[i];
    }

  double const work = static_cast<double>( n ) * n * static_cast<double>( cols.cols() ) * std::ldexp( 1.0, n );
  if ( n < 3 || work > std::ldexp( 1.0, 28 ) )
    return best;
  for ( unsigned v = 0; v < n; ++v )
  {
    auto base = best;
    base.erase( std::find( base.begin(), base.end(), v ) );
    for ( unsigned pos = 0; pos <= base.size(); ++pos )
    {
      auto trial = base;
      trial.insert( trial.begin() + pos, v );
      if ( trial == best )
        continue;
      if ( double const c = order_cost( cols, trial ); c < best_cost )
      {
        best_cost = c;
        best = std::move( trial );
      }
    }
  }
  return best;
}

void check_shape( boolean_matrix const& cols, std::vector<std::string> const& input_names )
{
  auto const n = input_names.size();
  if ( n > 24 || cols.rows() != ( std::size_t{ 1 } << n ) )
    throw dimension_error( "synth_bdd: " + std::to_string( cols.rows() ) + " rows is not 2^" + std::to_string( n ) );
}

} // namespace

std::size_t bdd_size( boolean_matrix const& cols, std::vector<unsigned> const& order )
{
  if ( cols.rows() != ( std::size_t{ 1 } << order.size() ) )
    throw dimension_error( "bdd_size: order does not match the row count" );
  return bdd_builder( cols, order ).size();
}

circuit synth_bdd( boolean_matrix const& cols, std::vector<std::string> const& input_names,
                   std::vector<std::string> output_names, std::string name, std::vector<unsigned> const& order )
{
  check_shape( cols, input_names );
  auto const n = static_cast<unsigned>( input_names.size() );
  if ( output_names.empty() )
    for ( std::size_t j = 0; j < cols.cols(); ++j )
      output_names.push_back( "y" + std::to_string( j ) );
  if ( output_names.size() != cols.cols() )
    throw dimension_error( "synth_bdd: expected " + std::to_string( cols.cols() ) + " output names" );
  if ( !order.empty() )
  {
    auto sorted = order;
    std::sort( sorted.begin(), sorted.end() );
    for ( unsigned i = 0; i < sorted.size(); ++i )
      if ( sorted.size() != n || sorted[i] != i )
        throw constraint_error( "synth_bdd: variable order is not a permutation of the inputs" );
  }

  bdd_builder const b( cols, choose_order( cols, n, order ) );
  auto const& nodes = b.nodes();

  netlist_builder nb;
  for ( auto const& in : input_names )
    nb.add_input( in );
  for ( auto const& out : output_names )
    nb.reserve( out );

  /* a node referenced regularly by an output takes that output's name */
  std::vector<std::string> net( nodes.size() );
  std::vector<bool> named_by_output( cols.cols(), false );
  for ( std::size_t j = 0; j < cols.cols(); ++j )
  {
    auto const r = b.roots()[j];
    if ( r.node == 0 || r.complement || !net[r.node].empty() || node_cost( nodes[r.node] ) == 0.0 )
      continue;
    net[r.node] = output_names[j];
    named_by_output[j] = true;
  }

  std::vector<std::string> negated_input( n ), negated_node( nodes.size() );
  auto not_input = [&]( unsigned v ) -> std::string const& {
    if ( negated_input[v].empty() )
    {
      negated_input[v] = nb.unique_name( "n_" + input_names[v] );
      nb.add_gate( negated_input[v], gate_kind::NOT, { input_names[v] } );
    }
    return negated_input[v];
  };
  std::string const_net[2];
  auto constant = [&]( bool value ) -> std::string const& {
    if ( const_net[value].empty() )
    {
      const_net[value] = nb.unique_name( value ? "one" : "zero" );
      nb.add_gate( const_net[value], value ? gate_kind::CONST1 : gate_kind::CONST0, {} );
    }
    return const_net[value];
  };
  /* nodes are created children first, so one forward sweep suffices */
  auto signal = [&]( edge e ) -> std::string {
    if ( e.node == 0 )
      return constant( e.complement );
    if ( !e.complement )
      return net[e.node];
    if ( negated_node[e.node].empty() )
    {
      negated_node[e.node] = nb.unique_name( "nb" + std::to_string( e.node ) );
      nb.add_gate( negated_node[e.node], gate_kind::NOT, { net[e.node] } );
    }
    return negated_node[e.node];
  };

  edge const zero{ 0, false }, one{ 0, true };
  for ( std::size_t i = 1; i < nodes.size(); ++i )
  {
    auto const& nd = nodes[i];
    auto const& x = input_names[nd.var];
    if ( nd.lo == zero && nd.hi == one )
    {
      net[i] = x;
      continue;
    }
    if ( net[i].empty() )
      net[i] = nb.unique_name( "b" + std::to_string( i ) );
    if ( nd.lo == one && nd.hi == zero )
      nb.add_gate( net[i], gate_kind::NOT, { x } );
    else if ( nd.hi == !nd.lo )
      nb.add_gate( net[i], gate_kind::XOR, { x, signal( nd.lo ) } );
    else if ( nd.lo == zero )
      nb.add_gate( net[i], gate_kind::AND, { x, signal( nd.hi ) } );
    else if ( nd.hi == zero )
      nb.add_gate( net[i], gate_kind::AND, { not_input( nd.var ), signal( nd.lo ) } );
    else if ( nd.hi == one )
      nb.add_gate( net[i], gate_kind::OR, { x, signal( nd.lo ) } );
    else if ( nd.lo == one )
      nb.add_gate( net[i], gate_kind::OR, { not_input( nd.var ), signal( nd.hi ) } );
    else
      nb.add_gate( net[i], gate_kind::MUX, { x, signal( nd.hi ), signal( nd.lo ) } );
  }

  for ( std::size_t j = 0; j < cols.cols(); ++j )
  {
    auto const r = b.roots()[j];
    auto const& out = output_names[j];
    if ( r.node == 0 )
      nb.add_gate( out, r.complement ? gate_kind::CONST1 : gate_kind::CONST0, {} );
    else if ( !named_by_output[j] )
    {
      if ( r.complement )
        nb.add_gate( out, gate_kind::NOT, { net[r.node] } );
      else
        nb.add_gate( out, gate_kind::BUF, { net[r.node] } );
    }
    nb.add_output( out );
  }
  return nb.build( std::move( name ) );
}

} // namespace ruca
