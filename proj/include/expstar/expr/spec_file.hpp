#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "expstar/expr/ast.hpp"

namespace expstar::expr {

/// Parsed, not yet evaluated, realization spec file. Indices are stored 0-based.
struct RealizationSpecFile {
  struct StructureEntry {
    int i, j, k;
    ExprPtr coefficient;
    int line;
  };

  int n = 0;
  mpq_class kappa = 1;
  std::vector<std::pair<std::string, mpq_class>> parameters;
  std::vector<StructureEntry> structure;
  /// phi[a][j]; null entries mean the Kronecker delta.
  std::vector<std::vector<ExprPtr>> phi;
};

/// Line-oriented grammar:
///
///   dim = <positive integer>
///   kappa = <rational>
///   param <name> = <rational>
///   C <i> <j> <k> = <constant expression>
///   phi <a> <j> = <expression>
///
/// '#' starts a comment. Errors are ParseError with the offset into the whole text.
RealizationSpecFile parse_spec_file(std::string_view text);

}  // namespace expstar::expr
