#include "crncex/smt.hpp"

#include <cctype>

#include <fmt/format.h>

#include "crncex/errors.hpp"

namespace crncex {
namespace {

std::string literal(std::int64_t c) {
  if (c >= 0) return std::to_string(c);
  return fmt::format("(- {})", 0ULL - static_cast<unsigned long long>(c));
}

std::string rhs_term(const Atom& a) {
  if (!a.rhs) return literal(a.offset);
  if (a.offset == 0) return a.rhs->name();
  if (a.offset > 0) return fmt::format("(+ {} {})", a.rhs->name(), a.offset);
  return fmt::format("(- {} {})", a.rhs->name(), -a.offset);
}

void append_term(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::True:
      out += "true";
      return;
    case Formula::Kind::False:
      out += "false";
      return;
    case Formula::Kind::Atom: {
      const Atom& a = f.as_atom();
      const std::string lhs = a.lhs.name();
      const std::string rhs = rhs_term(a);
      switch (a.rel) {
        case Rel::Eq: out += fmt::format("(= {} {})", lhs, rhs); break;
        case Rel::Ne: out += fmt::format("(not (= {} {}))", lhs, rhs); break;
        case Rel::Gt: out += fmt::format("(> {} {})", lhs, rhs); break;
        case Rel::Ge: out += fmt::format("(>= {} {})", lhs, rhs); break;
      }
      return;
    }
    case Formula::Kind::Not:
      out += "(not ";
      append_term(f.children().front(), out);
      out += ')';
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      out += f.kind() == Formula::Kind::And ? "(and" : "(or";
      for (const Formula& c : f.children()) {
        out += ' ';
        append_term(c, out);
      }
      out += ')';
      return;
  }
}

}  // namespace

std::string to_smtlib_term(const Formula& f) {
  std::string out;
  append_term(f, out);
  return out;
}

std::string emit_smtlib(const Formula& f) { return "(assert " + to_smtlib_term(f) + ")"; }

std::int64_t SolverModel::value(const Var& v) const {
  auto it = values_.find(v);
  if (it == values_.end()) throw DecodeError(fmt::format("model has no value for {}", v.name()));
  return it->second;
}

namespace {

struct SexprReader {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  void expect(char c) {
    if (!peek(c)) {
      throw DecodeError(fmt::format("malformed solver model near offset {}: expected '{}'", pos, c));
    }
    ++pos;
  }
  std::string atom() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')') {
      ++pos;
    }
    if (start == pos) throw DecodeError(fmt::format("malformed solver model near offset {}", pos));
    return text.substr(start, pos - start);
  }
  std::int64_t integer() {
    bool negative = false;
    if (peek('(')) {
      ++pos;
      if (atom() != "-") throw DecodeError("unsupported value term in solver model");
      negative = true;
    }
    const std::string digits = atom();
    std::int64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
      throw DecodeError(fmt::format("non-integer value '{}' in solver model", digits));
    }
    if (negative) {
      expect(')');
      v = -v;
    }
    return v;
  }
};

Var parse_var(const std::string& name) {
  unsigned step = 0;
  unsigned species = 0;
  char tail = 0;
  if (std::sscanf(name.c_str(), "v%u_%u%c", &step, &species, &tail) != 2) {
    throw DecodeError(fmt::format("unexpected symbol '{}' in solver model", name));
  }
  return Var{step, species};
}

}  // namespace

SolverModel parse_model(const std::string& response) {
  SexprReader r{response};
  std::map<Var, std::int64_t> values;
  r.expect('(');
  while (!r.peek(')')) {
    r.expect('(');
    const Var v = parse_var(r.atom());
    values[v] = r.integer();
    r.expect(')');
  }
  r.expect(')');
  return SolverModel(std::move(values));
}

Witness extract_witness(const SolverModel& model, const UnrollContext& ctx) {
  Witness w;
  w.states.reserve(ctx.bound() + 1);
  for (std::uint32_t k = 0; k <= ctx.bound(); ++k) {
    std::vector<Population> pops(ctx.species_count());
    for (SpeciesIndex s = 0; s < pops.size(); ++s) {
      pops[s] = model.value(ctx.var(k, s));
      if (pops[s] < 0) {
        throw EncodingError(fmt::format("negative population in model at v{}_{}", k, s));
      }
    }
    w.states.emplace_back(std::move(pops));
  }
  for (std::uint32_t k = 1; k <= ctx.bound(); ++k) {
    auto r = explaining_reaction(ctx.crn(), w.states[k - 1], w.states[k]);
    if (!r) {
      throw EncodingError(fmt::format("no reaction explains step {}: {} -> {}", k,
                                      w.states[k - 1].to_string(), w.states[k].to_string()));
    }
    w.reactions.push_back(*r);
  }
  return w;
}

}  // namespace crncex
