#include <ruca/partition.hpp>

#include <algorithm>
#include <unordered_map>

namespace ruca
{

fm_bipartitioner::fm_bipartitioner( circuit const& c, std::vector<std::size_t> cells, double balance )
    : cells_( std::move( cells ) )
{
  std::sort( cells_.begin(), cells_.end() );
  std::size_t const n = cells_.size();
  std::unordered_map<std::size_t, std::size_t> local;
  for ( std::size_t i = 0; i < n; ++i )
    local.emplace( cells_[i], i );

  cell_nets_.resize( n );
  succ_.resize( n );
  pred_.resize( n );
  std::unordered_map<circuit::net_id, std::vector<std::size_t>> members;
  std::vector<circuit::net_id> order;
  auto add_member = [&]( circuit::net_id net, std::size_t cell ) {
    auto& list = members[net];
    if ( list.empty() )
      order.push_back( net );
    if ( std::find( list.begin(), list.end(), cell ) == list.end() )
      list.push_back( cell );
  };
  for ( std::size_t i = 0; i < n; ++i )
  {
    auto const g = cells_[i];
    add_member( c.gate_net( g ), i );
    for ( auto fi : c.fanins( g ) )
    {
      add_member( fi, i );
      if ( auto d = c.driver( fi ); d )
        if ( auto it = local.find( *d ); it != local.end() && it->second != i )
        {
          auto& p = pred_[i];
          if ( std::find( p.begin(), p.end(), it->second ) == p.end() )
          {
            p.push_back( it->second );
            succ_[it->second].push_back( i );
          }
        }
    }
  }
  std::sort( order.begin(), order.end() );
  for ( auto net : order )
  {
    auto& list = members[net];
    if ( list.size() < 2 )
      continue;
    std::sort( list.begin(), list.end() );
    for ( auto cell : list )
      cell_nets_[cell].push_back( nets_.size() );
    nets_.push_back( std::move( list ) );
  }

  auto const slack = static_cast<std::size_t>( ( 0.5 - balance ) * static_cast<double>( n ) );
  lo_ = std::max<std::size_t>( n >= 2 ? 1 : 0, slack );
  hi_ = n - lo_;
  side_.assign( n, 1 );
  for ( std::size_t i = 0; i < n / 2; ++i )
    side_[i] = 0;
}

void fm_bipartitioner::set_sides( std::vector<int> sides )
{
  if ( sides.size() != cells_.size() )
    throw dimension_error( "fm_bipartitioner: side vector does not match the cell count" );
  side_ = std::move( sides );
}

std::size_t fm_bipartitioner::cut() const
{
  std::size_t total = 0;
  for ( auto const& net : nets_ )
  {
    bool zero = false, one = false;
    for ( auto cell : net )
      ( side_[cell] == 0 ? zero : one ) = true;
    total += zero && one;
  }
  return total;
}

int fm_bipartitioner::gain( std::size_t cell ) const
{
  int g = 0;
  int const from = side_[cell];
  for ( auto e : cell_nets_[cell] )
  {
    std::size_t same = 0, other = 0;
    for ( auto x : nets_[e] )
      ( side_[x] == from ? same : other ) += 1;
    if ( same == 1 )
      ++g;
    if ( other == 0 )
      --g;
  }
  return g;
}

bool fm_bipartitioner::movable( std::size_t cell, std::size_t size0 ) const
{
  std::size_t const from_size = side_[cell] == 0 ? size0 : side_.size() - size0;
  if ( from_size <= lo_ )
    return false;
  if ( side_[cell] == 0 )
    return std::all_of( succ_[cell].begin(), succ_[cell].end(), [&]( auto s ) { return side_[s] == 1; } );
  return std::all_of( pred_[cell].begin(), pred_[cell].end(), [&]( auto p ) { return side_[p] == 0; } );
}

namespace
{

/// Cells bucketed by gain; each bucket is a doubly linked list (newest first).
class gain_buckets
{
public:
  gain_buckets( std::size_t cells, int max_gain )
      : offset_( max_gain ), head_( 2 * static_cast<std::size_t>( max_gain ) + 1, npos ), next_( cells, npos ),
        prev_( cells, npos ), gain_( cells, 0 ), in_( cells, false )
  {
  }

  void insert( std::size_t cell, int gain )
  {
    auto const b = static_cast<std::size_t>( gain + offset_ );
    gain_[cell] = gain;
    in_[cell] = true;
    prev_[cell] = npos;
    next_[cell] = head_[b];
    if ( head_[b] != npos )
      prev_[head_[b]] = cell;
    head_[b] = cell;
  }

  void remove( std::size_t cell )
  {
    if ( !in_[cell] )
      return;
    auto const b = static_cast<std::size_t>( gain_[cell] + offset_ );
    if ( prev_[cell] != npos )
      next_[prev_[cell]] = next_[cell];
    else
      head_[b] = next_[cell];
    if ( next_[cell] != npos )
      prev_[next_[cell]] = prev_[cell];
    in_[cell] = false;
  }

  bool contains( std::size_t cell ) const { return in_[cell]; }

  /// Highest-gain cell accepted by `ok`, or npos.
  template<typename Pred>
  std::size_t best( Pred&& ok ) const
  {
    for ( std::size_t b = head_.size(); b-- > 0; )
      for ( auto cell = head_[b]; cell != npos; cell = next_[cell] )
        if ( ok( cell ) )
          return cell;
    return npos;
  }

  int gain( std::size_t cell ) const { return gain_[cell]; }

  static constexpr std::size_t npos = static_cast<std::size_t>( -1 );

private:
  int offset_;
  std::vector<std::size_t> head_, next_, prev_;
  std::vector<int> gain_;
  std::vector<bool> in_;
};

} // namespace

std::size_t fm_bipartitioner::run_pass()
{
  std::size_t const n = cells_.size();
  if ( n < 2 )
    return 0;
  int max_degree = 1;
  for ( auto const& nets : cell_nets_ )
    max_degree = std::max( max_degree, static_cast<int>( nets.size() ) );

  gain_buckets buckets( n, max_degree );
  for ( std::size_t i = 0; i < n; ++i )
    buckets.insert( i, gain( i ) );

  auto size0 = static_cast<std::size_t>( std::count( side_.begin(), side_.end(), 0 ) );
  std::vector<std::size_t> moves;
  long running = 0, best = 0;
  std::size_t best_prefix = 0;
  while ( true )
  {
    auto const cell = buckets.best( [&]( std::size_t x ) { return movable( x, size0 ); } );
    if ( cell == gain_buckets::npos )
      break;
    running += buckets.gain( cell );
    buckets.remove( cell );
    size0 = side_[cell] == 0 ? size0 - 1 : size0 + 1;
    side_[cell] = 1 - side_[cell];
    moves.push_back( cell );
    if ( running > best )
    {
      best = running;
      best_prefix = moves.size();
    }
    for ( auto e : cell_nets_[cell] )
      for ( auto x : nets_[e] )
        if ( buckets.contains( x ) )
        {
          buckets.remove( x );
          buckets.insert( x, gain( x ) );
        }
  }
  for ( std::size_t i = moves.size(); i-- > best_prefix; )
    side_[moves[i]] = 1 - side_[moves[i]];
  return static_cast<std::size_t>( best );
}

void fm_bipartitioner::run()
{
  while ( run_pass() > 0 )
  {
  }
}

} // namespace ruca
