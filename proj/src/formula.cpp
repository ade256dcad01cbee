#include "crncex/formula.hpp"

#include <fmt/format.h>

#include "crncex/errors.hpp"

namespace crncex {

std::string Var::name() const { return fmt::format("v{}_{}", step, species); }

struct Formula::Node {
  Kind kind;
  Atom atom;
  std::vector<Formula> children;
};

namespace {
const std::vector<Formula> kNoChildren;
}

Formula::Formula() : Formula(top()) {}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::top() {
  static const auto node = std::make_shared<const Node>(Node{Kind::True, {}, {}});
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node = std::make_shared<const Node>(Node{Kind::False, {}, {}});
  return Formula(node);
}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, a, {}}));
}

Formula Formula::negate(Formula f) {
  if (f.kind() == Kind::True) return bottom();
  if (f.kind() == Kind::False) return top();
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(f)}}));
}

Formula Formula::all(std::vector<Formula> parts) {
  std::vector<Formula> kept;
  kept.reserve(parts.size());
  for (Formula& p : parts) {
    if (p.kind() == Kind::False) return bottom();
    if (p.kind() != Kind::True) kept.push_back(std::move(p));
  }
  if (kept.empty()) return top();
  if (kept.size() == 1) return kept.front();
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(kept)}));
}

Formula Formula::any(std::vector<Formula> parts) {
  std::vector<Formula> kept;
  kept.reserve(parts.size());
  for (Formula& p : parts) {
    if (p.kind() == Kind::True) return top();
    if (p.kind() != Kind::False) kept.push_back(std::move(p));
  }
  if (kept.empty()) return bottom();
  if (kept.size() == 1) return kept.front();
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(kept)}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Atom& Formula::as_atom() const {
  if (node_->kind != Kind::Atom) throw ContractError("formula is not an atom");
  return node_->atom;
}

const std::vector<Formula>& Formula::children() const {
  return node_->kind == Kind::True || node_->kind == Kind::False || node_->kind == Kind::Atom
             ? kNoChildren
             : node_->children;
}

bool Formula::evaluate(const Assignment& value) const {
  switch (node_->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Atom: {
      const Atom& a = node_->atom;
      const std::int64_t lhs = value(a.lhs);
      const std::int64_t rhs = (a.rhs ? value(*a.rhs) : 0) + a.offset;
      switch (a.rel) {
        case Rel::Eq: return lhs == rhs;
        case Rel::Ne: return lhs != rhs;
        case Rel::Gt: return lhs > rhs;
        case Rel::Ge: return lhs >= rhs;
      }
      return false;
    }
    case Kind::Not:
      return !node_->children.front().evaluate(value);
    case Kind::And:
      for (const Formula& c : node_->children) {
        if (!c.evaluate(value)) return false;
      }
      return true;
    case Kind::Or:
      for (const Formula& c : node_->children) {
        if (c.evaluate(value)) return true;
      }
      return false;
  }
  return false;
}

void Formula::collect_vars(std::set<Var>& out) const {
  if (node_->kind == Kind::Atom) {
    out.insert(node_->atom.lhs);
    if (node_->atom.rhs) out.insert(*node_->atom.rhs);
    return;
  }
  for (const Formula& c : children()) c.collect_vars(out);
}

std::size_t Formula::atom_count() const {
  if (node_->kind == Kind::Atom) return 1;
  std::size_t n = 0;
  for (const Formula& c : children()) n += c.atom_count();
  return n;
}

Formula eq(Var v, std::int64_t c) { return Formula::atom({v, Rel::Eq, std::nullopt, c}); }
Formula eq(Var v, Var u, std::int64_t offset) { return Formula::atom({v, Rel::Eq, u, offset}); }
Formula ne(Var v, std::int64_t c) { return Formula::atom({v, Rel::Ne, std::nullopt, c}); }
Formula ne(Var v, Var u) { return Formula::atom({v, Rel::Ne, u, 0}); }
Formula gt(Var v, std::int64_t c) { return Formula::atom({v, Rel::Gt, std::nullopt, c}); }
Formula ge(Var v, std::int64_t c) { return Formula::atom({v, Rel::Ge, std::nullopt, c}); }

}  // namespace crncex
