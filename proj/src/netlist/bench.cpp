#include <ruca/netlist.hpp>

#include <cctype>
#include <sstream>
#include <unordered_map>

namespace ruca
{

namespace
{

struct location
{
  std::size_t line = 0;
  std::size_t column = 0;
};

bool name_start( char ch )
{
  // leading digits are accepted so that original ISCAS files (INPUT(1)) load
  return std::isalnum( static_cast<unsigned char>( ch ) ) || ch == '_';
}

bool name_char( char ch )
{
  return std::isalnum( static_cast<unsigned char>( ch ) ) || ch == '_' || ch == '.' || ch == '[' || ch == ']';
}

class line_scanner
{
public:
  line_scanner( std::string_view text, std::size_t line ) : text_( text ), line_( line ) {}

  void skip_space()
  {
    while ( pos_ < text_.size() && std::isspace( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
  }

  bool at_end()
  {
    skip_space();
    return pos_ >= text_.size();
  }

  location here() const { return { line_, pos_ + 1 }; }

  std::string name( char const* what )
  {
    skip_space();
    if ( pos_ >= text_.size() || !name_start( text_[pos_] ) )
      fail( std::string( "expected " ) + what );
    auto const begin = pos_;
    while ( pos_ < text_.size() && name_char( text_[pos_] ) )
      ++pos_;
    return std::string( text_.substr( begin, pos_ - begin ) );
  }

  void expect( char ch )
  {
    skip_space();
    if ( pos_ >= text_.size() || text_[pos_] != ch )
      fail( std::string( "expected '" ) + ch + "'" );
    ++pos_;
  }

  bool accept( char ch )
  {
    skip_space();
    if ( pos_ < text_.size() && text_[pos_] == ch )
    {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail( std::string const& message ) const
  {
    throw netlist_error( netlist_errc::syntax, message, {}, line_, pos_ + 1 );
  }

private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

bool iequals( std::string_view a, std::string_view b )
{
  if ( a.size() != b.size() )
    return false;
  for ( std::size_t i = 0; i < a.size(); ++i )
    if ( std::toupper( static_cast<unsigned char>( a[i] ) ) != std::toupper( static_cast<unsigned char>( b[i] ) ) )
      return false;
  return true;
}

} // namespace

circuit parse_bench( std::string_view text, std::string name )
{
  std::vector<std::string> inputs, outputs;
  std::vector<gate> gates;
  std::unordered_map<std::string, location> definitions;
  std::unordered_map<std::string, location> first_use;

  auto define = [&]( std::string const& net, location at ) {
    if ( !definitions.emplace( net, at ).second )
      throw netlist_error( netlist_errc::duplicate_definition, "duplicate definition of net '" + net + "'", net,
                           at.line, at.column );
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while ( start <= text.size() )
  {
    auto end = text.find( '\n', start );
    if ( end == std::string_view::npos )
      end = text.size();
    auto line = text.substr( start, end - start );
    start = end + 1;
    ++line_no;
    if ( auto hash = line.find( '#' ); hash != std::string_view::npos )
      line = line.substr( 0, hash );

    line_scanner scan( line, line_no );
    if ( scan.at_end() )
    {
      if ( end == text.size() )
        break;
      continue;
    }
    auto const head_at = scan.here();
    auto const head = scan.name( "INPUT, OUTPUT or a net name" );
    if ( scan.accept( '(' ) )
    {
      auto const net_at = scan.here();
      auto const net = scan.name( "net name" );
      scan.expect( ')' );
      if ( !scan.at_end() )
        scan.fail( "unexpected trailing text" );
      if ( iequals( head, "INPUT" ) )
      {
        define( net, net_at );
        inputs.push_back( net );
      }
      else if ( iequals( head, "OUTPUT" ) )
      {
        first_use.emplace( net, net_at );
        outputs.push_back( net );
      }
      else
        throw netlist_error( netlist_errc::syntax, "unknown declaration '" + head + "'", {}, head_at.line,
                             head_at.column );
    }
    else
    {
      scan.expect( '=' );
      auto const kind_at = scan.here();
      auto const kind_text = scan.name( "gate kind" );
      auto const kind = parse_gate_kind( kind_text );
      if ( !kind )
        throw netlist_error( netlist_errc::syntax, "unknown gate kind '" + kind_text + "'", {}, kind_at.line,
                             kind_at.column );
      scan.expect( '(' );
      std::vector<std::string> fanins;
      if ( !scan.accept( ')' ) )
      {
        do
        {
          auto const at = scan.here();
          fanins.push_back( scan.name( "net name" ) );
          first_use.emplace( fanins.back(), at );
        } while ( scan.accept( ',' ) );
        scan.expect( ')' );
      }
      if ( !scan.at_end() )
        scan.fail( "unexpected trailing text" );
      if ( !arity_ok( *kind, fanins.size() ) )
        throw netlist_error( netlist_errc::arity,
                             std::string( to_string( *kind ) ) + " cannot take " + std::to_string( fanins.size() ) +
                                 " fanin(s)",
                             head, kind_at.line, kind_at.column );
      define( head, head_at );
      gates.push_back( { head, *kind, std::move( fanins ) } );
    }
    if ( end == text.size() )
      break;
  }

  try
  {
    return circuit::build( std::move( name ), std::move( inputs ), std::move( outputs ), std::move( gates ) );
  }
  catch ( netlist_error const& e )
  {
    location at;
    if ( e.code() == netlist_errc::undefined_net )
      at = first_use[e.net()];
    else if ( auto it = definitions.find( e.net() ); it != definitions.end() )
      at = it->second;
    throw netlist_error( e.code(), e.what(), e.net(), at.line, at.column );
  }
}

std::string emit_bench( circuit const& c )
{
  std::ostringstream out;
  out << "# " << c.name() << "\n";
  out << "# " << c.num_inputs() << " inputs, " << c.num_outputs() << " outputs, " << c.num_gates() << " gates\n";
  for ( auto const& in : c.inputs() )
    out << "INPUT(" << in << ")\n";
  out << "\n";
  for ( auto const& o : c.outputs() )
    out << "OUTPUT(" << o << ")\n";
  out << "\n";
  for ( auto const& g : c.gates() )
  {
    out << g.output << " = " << to_string( g.kind ) << "(";
    for ( std::size_t i = 0; i < g.fanins.size(); ++i )
      out << ( i ? ", " : "" ) << g.fanins[i];
    out << ")\n";
  }
  return out.str();
}

} // namespace ruca
