#include "crncex/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "crncex/errors.hpp"

namespace crncex {
namespace {

enum class Tok { Ident, Number, Equals, Plus, Arrow, At };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

using Statement = std::vector<Token>;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Splits the text into statements of tokens; ';', newlines and comments separate statements.
std::vector<Statement> tokenize(std::string_view text) {
  std::vector<Statement> statements;
  Statement current;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto flush = [&] {
    if (!current.empty()) statements.push_back(std::move(current));
    current.clear();
  };
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t start_col = col;
    if (c == '\n') {
      flush();
      ++line;
      col = 1;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == ';') {
      flush();
      ++i;
      ++col;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      current.push_back({Tok::Arrow, "->", line, start_col});
      i += 2;
      col += 2;
    } else if (c == '=' || c == '+' || c == '@') {
      const Tok kind = c == '=' ? Tok::Equals : (c == '+' ? Tok::Plus : Tok::At);
      current.push_back({kind, std::string(1, c), line, start_col});
      ++i;
      ++col;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      current.push_back({Tok::Ident, std::string(text.substr(i, j - i)), line, start_col});
      col += j - i;
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      std::size_t j = i + 1;
      while (j < text.size()) {
        const char d = text[j];
        const bool exponent_sign = (d == '-' || d == '+') && (text[j - 1] == 'e' || text[j - 1] == 'E');
        if (std::isdigit(static_cast<unsigned char>(d)) || d == '.' || d == 'e' || d == 'E' ||
            exponent_sign) {
          ++j;
        } else {
          break;
        }
      }
      current.push_back({Tok::Number, std::string(text.substr(i, j - i)), line, start_col});
      col += j - i;
      i = j;
    } else {
      throw ParseError(line, col, fmt::format("unexpected character '{}'", c));
    }
  }
  flush();
  return statements;
}

[[noreturn]] void fail(const Token& t, const std::string& message) {
  throw ParseError(t.line, t.column, message);
}

Population parse_population(const Token& t) {
  Population value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) fail(t, "population out of range");
  if (ec != std::errc() || ptr != last) fail(t, fmt::format("expected an integer, got '{}'", t.text));
  if (value < 0) fail(t, "initial population must be non-negative");
  return value;
}

double parse_rate(const Token& t) {
  // std::from_chars for double is not available in every libstdc++ we target.
  char* end = nullptr;
  const double value = std::strtod(t.text.c_str(), &end);
  if (end != t.text.c_str() + t.text.size() || !std::isfinite(value)) {
    fail(t, fmt::format("malformed rate '{}'", t.text));
  }
  if (!(value > 0.0)) fail(t, fmt::format("reaction rate must be positive, got {}", t.text));
  return value;
}

struct PendingReaction {
  std::vector<Token> reactants;
  std::vector<Token> products;
  double rate;
};

/// Parses "A + B" up to (not including) the token of kind `stop`.
std::vector<Token> parse_side(const Statement& st, std::size_t& pos, Tok stop) {
  std::vector<Token> names;
  if (pos < st.size() && st[pos].kind == stop) return names;
  while (true) {
    if (pos >= st.size()) fail(st.back(), "unexpected end of reaction");
    const Token& t = st[pos];
    if (t.kind == Tok::Number) {
      fail(t, "stoichiometric coefficients are not supported (unit stoichiometry only)");
    }
    if (t.kind != Tok::Ident) fail(t, fmt::format("expected a species name, got '{}'", t.text));
    names.push_back(t);
    ++pos;
    if (pos < st.size() && st[pos].kind == Tok::Plus) {
      ++pos;
      continue;
    }
    if (pos < st.size() && st[pos].kind == stop) return names;
    if (pos >= st.size()) fail(t, "unexpected end of reaction");
    fail(st[pos], fmt::format("unexpected '{}'", st[pos].text));
  }
}

PendingReaction parse_reaction(const Statement& st) {
  std::size_t pos = 0;
  PendingReaction r;
  r.reactants = parse_side(st, pos, Tok::Arrow);
  if (pos >= st.size() || st[pos].kind != Tok::Arrow) fail(st[0], "expected '->'");
  ++pos;
  if (pos >= st.size()) fail(st[pos - 1], "expected products or '@' after '->'");
  r.products = parse_side(st, pos, Tok::At);
  ++pos;  // '@'
  if (pos >= st.size()) fail(st[pos - 1], "expected a rate after '@'");
  if (st[pos].kind != Tok::Number) fail(st[pos], "expected a numeric rate");
  r.rate = parse_rate(st[pos]);
  if (pos + 1 != st.size()) fail(st[pos + 1], "trailing tokens after rate");
  return r;
}

}  // namespace

Crn parse_crn(std::string_view text) {
  std::vector<Species> species;
  std::vector<Population> initial;
  std::unordered_map<std::string, SpeciesIndex> index;
  std::vector<PendingReaction> pending;

  for (const Statement& st : tokenize(text)) {
    if (st[0].kind == Tok::Ident && st[0].text == "species") {
      if (st.size() != 4 || st[1].kind != Tok::Ident || st[2].kind != Tok::Equals ||
          st[3].kind != Tok::Number) {
        fail(st[0], "expected 'species <name>=<population>'");
      }
      const Token& name = st[1];
      if (name.text == "species") fail(name, "'species' is reserved");
      if (index.contains(name.text)) {
        fail(name, fmt::format("duplicate species declaration '{}'", name.text));
      }
      index.emplace(name.text, species.size());
      species.push_back({name.text, species.size()});
      initial.push_back(parse_population(st[3]));
    } else {
      pending.push_back(parse_reaction(st));
    }
  }

  auto resolve = [&](const std::vector<Token>& names) {
    std::vector<SpeciesIndex> out;
    for (const Token& t : names) {
      auto it = index.find(t.text);
      if (it == index.end()) fail(t, fmt::format("unknown species '{}'", t.text));
      for (SpeciesIndex seen : out) {
        if (seen == it->second) {
          fail(t, fmt::format("species '{}' repeated on one side (unit stoichiometry only)", t.text));
        }
      }
      out.push_back(it->second);
    }
    return out;
  };

  std::vector<Reaction> reactions;
  reactions.reserve(pending.size());
  for (const PendingReaction& p : pending) {
    reactions.emplace_back(resolve(p.reactants), resolve(p.products), p.rate);
  }
  return Crn(std::move(species), std::move(reactions), State(std::move(initial)));
}

Crn load_crn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open model file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_crn(buf.str());
}

std::string pretty_print(const Crn& crn) {
  std::string out;
  for (const Species& s : crn.species()) {
    out += fmt::format("species {}={};\n", s.name, crn.initial()[s.index]);
  }
  auto side = [&](const std::vector<SpeciesIndex>& idx) {
    std::string text;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0) text += " + ";
      text += crn.species()[idx[i]].name;
    }
    return text;
  };
  for (const Reaction& r : crn.reactions()) {
    std::string lhs = side(r.reactants);
    std::string rhs = side(r.products);
    out += fmt::format("{}{}->{}{} @ {};\n", lhs, lhs.empty() ? "" : " ", rhs.empty() ? "" : " ",
                       rhs, r.rate_constant);
  }
  return out;
}

}  // namespace crncex
