#ifndef KONTACT_ERROR_HPP
#define KONTACT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kontact {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Expression syntax error; offset is the byte position in the source string.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& msg)
      : Error(msg + " (at offset " + std::to_string(offset) + ")"),
        m_offset(offset) {}

  std::size_t offset() const { return m_offset; }

private:
  std::size_t m_offset;
};

/// Evaluation left the domain of an expression node (division by zero,
/// sqrt of a negative, ...). Carries the offending subexpression.
class DomainError : public Error {
public:
  DomainError(std::size_t offset, const std::string& subexpr, const std::string& msg)
      : Error(msg + " in subexpression '" + subexpr + "' (at offset " +
              std::to_string(offset) + ")"),
        m_offset(offset), m_subexpr(subexpr) {}

  std::size_t offset() const { return m_offset; }
  const std::string& subexpression() const { return m_subexpr; }

private:
  std::size_t m_offset;
  std::string m_subexpr;
};

/// A construction or deformation was requested outside its regime of
/// validity (wrong Boeckx regime, non-constant fit, ...).
class RegimeError : public Error {
public:
  explicit RegimeError(const std::string& msg) : Error(msg) {}
};

} // namespace kontact

#endif
