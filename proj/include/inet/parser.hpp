#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inet/core.hpp"

namespace inet {

struct Program {
  std::vector<Rule> rules;  // source order
  std::optional<Net> initialNet;
  SourceSpan netSpan;
  SymbolTable symbols;
};

/// Parses a `.inet` program.
///
/// Rules are `pattern >< pattern [=> equations]`. With an explicit `=>`, agents
/// nested in the left side are patterns (INP). Without it, the rule is an
/// optimised ordinary rule written in folded form: nested agents move to the
/// right side and a variable repeated on the left side becomes a wire there.
/// Right sides and nets are stored flattened: every agent argument is a variable.
///
/// Throws inet::Error with code SYNTAX, ARITY, LINEARITY, INTERFACE or UNSUPPORTED.
Program parseProgram(std::string_view text);

/// Parses a bare equation list (no `net` keyword) into a flattened Net.
Net parseNet(std::string_view text);

/// Flattens nested agent arguments into fresh `_k` variables.
Net flatten(const Net& net);

}  // namespace inet
