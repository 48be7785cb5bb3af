#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pilme {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (formula DSL, DIMACS, hex, ANF text).
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " at position " + std::to_string(position)),
        position_(position) {}

  explicit parse_error(const std::string& what)
      : error(what), position_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Character offset (formula) or line number (DIMACS/ANF); npos if unknown.
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// A table-producing operation was asked for more variables than allowed.
class arity_error : public error {
public:
  using error::error;
};

/// Index or dimension outside the valid range for an object.
class range_error : public error {
public:
  using error::error;
};

/// A precondition of a domain operation does not hold (e.g. factorizing an
/// entangled state, Deutsch-Jozsa on a function outside the promise).
class domain_error : public error {
public:
  using error::error;
};

} // namespace pilme
