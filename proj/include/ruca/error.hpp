#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ruca
{

/// Base class of every error thrown by the toolkit.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class netlist_errc
{
  syntax,
  undefined_net,
  duplicate_definition,
  cyclic_dependency,
  arity,
  length_mismatch,
  capacity,
  empty_selection
};

/// Structural problem with a netlist or its textual form. `line`/`column`
/// are 1-based and zero when the error does not come from a file.
class netlist_error : public error
{
public:
  netlist_error( netlist_errc code, std::string const& message, std::string net = {},
                 std::size_t line = 0, std::size_t column = 0 );

  netlist_errc code() const noexcept { return code_; }
  std::string const& net() const noexcept { return net_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  netlist_errc code_;
  std::string net_;
  std::size_t line_;
  std::size_t column_;
};

/// An argument outside the documented range (degree, threshold, caps, ...).
class constraint_error : public error
{
public:
  using error::error;
};

/// Operands whose shapes do not agree.
class dimension_error : public error
{
public:
  using error::error;
};

} // namespace ruca
