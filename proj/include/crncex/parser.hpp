#pragma once

#include <string>
#include <string_view>

#include "crncex/crn.hpp"

namespace crncex {

/// Parses the line-oriented model format:
///
///   # comment
///   species S1=1;
///   S1 -> S1 + S2 @ 1.0
///   -> R @ 0.0038
///
/// Statements end at ';' or newline. Species order follows declaration order.
/// Throws ParseError with the 1-based line/column of the offending token.
Crn parse_crn(std::string_view text);

Crn load_crn(const std::string& path);

/// Inverse of parse_crn; rates are printed with round-trip precision.
std::string pretty_print(const Crn& crn);

}  // namespace crncex
