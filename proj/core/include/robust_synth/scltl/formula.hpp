#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "robust_synth/common/errors.hpp"

namespace robust_synth::scltl {

enum class Op { True, False, Atom, NotAtom, And, Or, Until, Next };

/// Immutable scLTL syntax tree in canonical form.
///
/// Negation only occurs on atoms. The factories keep every tree canonical:
/// nested conjunctions and disjunctions are flattened, their operands sorted
/// by `compare` and deduplicated, and true/false constants are absorbed. As a
/// result two formulas are structurally equal iff `compare` returns 0.
class Formula {
public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(std::size_t prop);
  static Formula not_atom(std::size_t prop);
  static Formula conj(std::vector<Formula> operands);
  static Formula disj(std::vector<Formula> operands);
  static Formula until(Formula lhs, Formula rhs);
  static Formula next(Formula operand);
  /// Sugar for `true U operand`.
  static Formula eventually(Formula operand);

  Op op() const;
  /// Proposition index for Atom / NotAtom.
  std::size_t prop() const;
  std::span<const Formula> operands() const;
  const Formula& lhs() const { return operands()[0]; }
  const Formula& rhs() const { return operands()[1]; }

  std::size_t size() const;
  std::size_t depth() const;
  /// Largest proposition index used plus one.
  std::size_t props_used() const;

  std::string to_string(const std::vector<std::string>& ap) const;

  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::size_t prop, std::vector<Formula> operands);

  std::shared_ptr<const Node> node_;
};

/// Syntax error; `position` is the 0-based character offset in the input.
class ParseError : public InputError {
public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Parses an scLTL formula over the ordered proposition list `ap`.
///
/// Operators, loosest to tightest: `|` (or `||`), `&` (or `&&`), `U`
/// (right associative), and the prefix operators `!`, `X`, `F`. `!` may only
/// be applied to a proposition. `true`, `false` and parentheses are accepted.
Formula parse_formula(std::string_view text, const std::vector<std::string>& ap);

}  // namespace robust_synth::scltl
