#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace crncex {

/// Symbolic population of one species at one unrolling step.
struct Var {
  std::uint32_t step = 0;
  std::uint32_t species = 0;

  /// SMT-LIB symbol, "v<step>_<species>".
  std::string name() const;
  auto operator<=>(const Var&) const = default;
};

enum class Rel { Eq, Ne, Gt, Ge };

/// lhs REL (rhs + offset), or lhs REL offset when rhs is empty.
struct Atom {
  Var lhs;
  Rel rel = Rel::Eq;
  std::optional<Var> rhs;
  std::int64_t offset = 0;

  bool operator==(const Atom&) const = default;
};

using Assignment = std::function<std::int64_t(const Var&)>;

/// Immutable constraint tree over integer step variables. Copies share structure.
class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  /// Default-constructed formula is `true`.
  Formula();

  static Formula top();
  static Formula bottom();
  static Formula atom(Atom a);
  static Formula negate(Formula f);
  /// Conjunction; the empty conjunction is true. Nested ands are not flattened.
  static Formula all(std::vector<Formula> parts);
  /// Disjunction; the empty disjunction is false.
  static Formula any(std::vector<Formula> parts);

  Kind kind() const;
  const Atom& as_atom() const;
  const std::vector<Formula>& children() const;

  bool evaluate(const Assignment& value) const;
  void collect_vars(std::set<Var>& out) const;
  /// Number of atoms in the tree, counting shared subtrees once per occurrence.
  std::size_t atom_count() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Atom builders.
Formula eq(Var v, std::int64_t c);
Formula eq(Var v, Var u, std::int64_t offset = 0);  // v = u + offset
Formula ne(Var v, std::int64_t c);
Formula ne(Var v, Var u);
Formula gt(Var v, std::int64_t c);
Formula ge(Var v, std::int64_t c);

inline Formula operator&&(Formula a, Formula b) { return Formula::all({std::move(a), std::move(b)}); }
inline Formula operator||(Formula a, Formula b) { return Formula::any({std::move(a), std::move(b)}); }
inline Formula operator!(Formula a) { return Formula::negate(std::move(a)); }

}  // namespace crncex
