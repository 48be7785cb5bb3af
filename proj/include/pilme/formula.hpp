#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pilme/bit_table.hpp"
#include "pilme/boolean_function.hpp"
#include "pilme/error.hpp"

namespace pilme {

enum class Op : std::uint8_t { var, constant, not_, and_, or_, xor_, implies, iff };

/// Boolean formula stored as a flat node array; children always precede
/// their parent and the root is the last node.
class Formula {
public:
  struct Node {
    Op op;
    unsigned value;  // variable index (1-based) or constant bit
    std::uint32_t lhs;
    std::uint32_t rhs;
  };

  Formula() = default;

  unsigned arity() const noexcept { return arity_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  bool empty() const noexcept { return nodes_.empty(); }
  std::uint32_t root() const noexcept { return static_cast<std::uint32_t>(nodes_.size() - 1); }

  // Builders. Each returns the index of the new node.
  std::uint32_t add_var(unsigned j) { return push({Op::var, j, 0, 0}); }
  std::uint32_t add_const(bool b) { return push({Op::constant, b ? 1u : 0u, 0, 0}); }
  std::uint32_t add_not(std::uint32_t a) { return push({Op::not_, 0, a, 0}); }
  std::uint32_t add_binary(Op op, std::uint32_t a, std::uint32_t b) { return push({op, 0, a, b}); }

  /// Declares the arity; every variable index must lie in 1..arity.
  void set_arity(unsigned arity) {
    for (const auto& node : nodes_) {
      if (node.op == Op::var && (node.value == 0 || node.value > arity)) {
        throw range_error("variable x" + std::to_string(node.value) + " out of range for arity " +
                          std::to_string(arity));
      }
    }
    arity_ = arity;
  }

  /// Largest variable index used (0 if none).
  unsigned max_variable() const noexcept {
    unsigned m = 0;
    for (const auto& node : nodes_) {
      if (node.op == Op::var && node.value > m) m = node.value;
    }
    return m;
  }

  /// Prefix rendering, e.g. "XOR(NOT(x1),OR(x2,1))".
  std::string to_string() const { return empty() ? std::string() : render(root()); }

private:
  std::uint32_t push(Node node) {
    nodes_.push_back(node);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  std::string render(std::uint32_t i) const {
    const Node& node = nodes_[i];
    switch (node.op) {
      case Op::var: return "x" + std::to_string(node.value);
      case Op::constant: return node.value ? "1" : "0";
      case Op::not_: return "NOT(" + render(node.lhs) + ")";
      default: break;
    }
    const char* name = "";
    switch (node.op) {
      case Op::and_: name = "AND"; break;
      case Op::or_: name = "OR"; break;
      case Op::xor_: name = "XOR"; break;
      case Op::implies: name = "IMPLIES"; break;
      case Op::iff: name = "IFF"; break;
      default: break;
    }
    return std::string(name) + "(" + render(node.lhs) + "," + render(node.rhs) + ")";
  }

  std::vector<Node> nodes_;
  unsigned arity_ = 0;
};

namespace detail {

// Recursive descent, lowest precedence first:
//   iff     := implies ("<->" implies)*          left-assoc
//   implies := or ("->" implies)?                right-assoc
//   or      := xor ("|" xor)*
//   xor     := and ("^" and)*
//   and     := unary ("&" unary)*
//   unary   := "!" unary | atom
//   atom    := "x" digits | "0" | "1" | "(" iff ")"
class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    skip_ws();
    if (at_end()) throw parse_error("empty formula", pos_);
    parse_iff();
    skip_ws();
    if (!at_end()) throw parse_error(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return std::move(out_);
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  std::uint32_t parse_iff() {
    auto lhs = parse_implies();
    while (accept("<->")) lhs = out_.add_binary(Op::iff, lhs, parse_implies());
    return lhs;
  }

  std::uint32_t parse_implies() {
    auto lhs = parse_or();
    if (accept("->")) return out_.add_binary(Op::implies, lhs, parse_implies());
    return lhs;
  }

  std::uint32_t parse_or() {
    auto lhs = parse_xor();
    while (accept("|")) lhs = out_.add_binary(Op::or_, lhs, parse_xor());
    return lhs;
  }

  std::uint32_t parse_xor() {
    auto lhs = parse_and();
    while (accept("^")) lhs = out_.add_binary(Op::xor_, lhs, parse_and());
    return lhs;
  }

  std::uint32_t parse_and() {
    auto lhs = parse_unary();
    while (accept("&")) lhs = out_.add_binary(Op::and_, lhs, parse_unary());
    return lhs;
  }

  std::uint32_t parse_unary() {
    if (accept("!")) return out_.add_not(parse_unary());
    return parse_atom();
  }

  std::uint32_t parse_atom() {
    skip_ws();
    if (at_end()) throw parse_error("unexpected end of formula", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      auto inner = parse_iff();
      if (!accept(")")) throw parse_error("unbalanced '(' opened at " + std::to_string(open), pos_);
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return out_.add_const(c == '1');
    }
    if (c == 'x' || c == 'X') {
      const std::size_t start = pos_++;
      std::size_t digits = 0;
      unsigned long value = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
        if (value > 1000000) throw parse_error("variable index too large", start);
        ++pos_;
        ++digits;
      }
      if (digits == 0 || value == 0) throw parse_error("expected variable index x1, x2, ...", start);
      return out_.add_var(static_cast<unsigned>(value));
    }
    throw parse_error(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Formula out_;
};

} // namespace detail

/// Parses the formula DSL; every variable must satisfy 1 <= j <= arity.
inline Formula parse_formula(std::string_view text, unsigned arity) {
  Formula f = detail::FormulaParser(text).parse();
  f.set_arity(arity);
  return f;
}

/// Parses with the arity inferred as the largest variable index (at least 1).
inline Formula parse_formula(std::string_view text) {
  Formula f = detail::FormulaParser(text).parse();
  f.set_arity(std::max(1u, f.max_variable()));
  return f;
}

// ---------------------------------------------------------------------------
// DIMACS CNF

struct Cnf {
  unsigned num_vars = 0;
  std::vector<std::vector<int>> clauses;

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// Comment lines ("c ...") and a trailing "%" terminator are ignored.
/// Clauses may span lines; each ends at a literal 0. The clause count in the
/// header is informational only.
inline Cnf parse_dimacs_cnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long declared_clauses = 0;
  Cnf cnf;
  std::vector<int> current;
  bool open_clause = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') continue;
    if (line[first] == '%') break;
    if (line[first] == 'p') {
      if (have_header) throw parse_error("duplicate 'p' header", line_no);
      std::istringstream fields(line.substr(first));
      std::string p, fmt, extra;
      long vars = -1;
      if (!(fields >> p >> fmt >> vars >> declared_clauses) || p != "p" || fmt != "cnf" ||
          vars < 0 || declared_clauses < 0 || (fields >> extra)) {
        throw parse_error("malformed header, expected 'p cnf <vars> <clauses>'", line_no);
      }
      cnf.num_vars = static_cast<unsigned>(vars);
      have_header = true;
      continue;
    }
    if (!have_header) throw parse_error("clause before 'p cnf' header", line_no);
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      long lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw parse_error("invalid literal '" + token + "'", line_no);
      }
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        open_clause = false;
        continue;
      }
      if (static_cast<unsigned long>(lit < 0 ? -lit : lit) > cnf.num_vars) {
        throw parse_error("literal " + token + " exceeds declared variable count " +
                          std::to_string(cnf.num_vars), line_no);
      }
      current.push_back(static_cast<int>(lit));
      open_clause = true;
    }
  }
  if (!have_header) throw parse_error("missing 'p cnf' header");
  if (open_clause) throw parse_error("last clause is missing its terminating 0", line_no);
  return cnf;
}

inline std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

/// Conjunction of clauses (left-nested AND), each a left-nested OR of
/// literals. An empty clause is constant 0; an empty clause list is constant 1.
inline Formula to_formula(const Cnf& cnf) {
  Formula f;
  std::uint32_t conj = 0;
  bool have_conj = false;
  for (const auto& clause : cnf.clauses) {
    std::uint32_t disj = 0;
    bool have_disj = false;
    for (int lit : clause) {
      std::uint32_t node = f.add_var(static_cast<unsigned>(lit < 0 ? -lit : lit));
      if (lit < 0) node = f.add_not(node);
      disj = have_disj ? f.add_binary(Op::or_, disj, node) : node;
      have_disj = true;
    }
    if (!have_disj) disj = f.add_const(false);
    conj = have_conj ? f.add_binary(Op::and_, conj, disj) : disj;
    have_conj = true;
  }
  if (!have_conj) f.add_const(true);
  f.set_arity(cnf.num_vars);
  return f;
}

inline Formula parse_dimacs(std::string_view text) { return to_formula(parse_dimacs_cnf(text)); }

/// Materializes the truth table by evaluating every node over whole 64-bit
/// words of assignments at once.
inline BooleanFunction compile(const Formula& formula, unsigned arity, unsigned max_n = kDefaultMaxN) {
  if (arity == 0) throw arity_error("a Boolean function needs at least one variable");
  check_arity(arity, max_n);
  if (formula.empty()) throw parse_error("cannot compile an empty formula");
  if (formula.max_variable() > arity) {
    throw range_error("formula uses x" + std::to_string(formula.max_variable()) +
                      " but arity is " + std::to_string(arity));
  }
  const auto& nodes = formula.nodes();
  std::vector<std::uint32_t> uses(nodes.size(), 0);
  for (const auto& node : nodes) {
    if (node.op == Op::var || node.op == Op::constant) continue;
    ++uses[node.lhs];
    if (node.op != Op::not_) ++uses[node.rhs];
  }
  // Children referenced once are consumed in place; shared ones are copied.
  auto take = [&](std::vector<BitTable>& tables, std::uint32_t i) {
    return --uses[i] == 0 ? std::move(tables[i]) : tables[i];
  };
  std::vector<BitTable> tables;
  tables.reserve(nodes.size());
  for (const auto& node : nodes) {
    switch (node.op) {
      case Op::var: tables.push_back(detail::projection(node.value - 1, arity)); break;
      case Op::constant: tables.push_back(BooleanFunction::constant(arity, node.value != 0).table()); break;
      default: {
        BitTable t = take(tables, node.lhs);
        BitTable rhs = node.op == Op::not_ ? BitTable() : take(tables, node.rhs);
        auto out = t.words();
        const auto b = rhs.words();
        for (std::size_t j = 0; j < out.size(); ++j) {
          switch (node.op) {
            case Op::not_: out[j] = ~out[j]; break;
            case Op::and_: out[j] &= b[j]; break;
            case Op::or_: out[j] |= b[j]; break;
            case Op::xor_: out[j] ^= b[j]; break;
            case Op::implies: out[j] = ~out[j] | b[j]; break;
            case Op::iff: out[j] = ~(out[j] ^ b[j]); break;
            default: break;
          }
        }
        out.back() &= t.tail_mask();
        tables.push_back(std::move(t));
      }
    }
  }
  return BooleanFunction(std::move(tables.back()));
}

inline BooleanFunction compile(const Formula& formula) { return compile(formula, formula.arity()); }

} // namespace pilme
