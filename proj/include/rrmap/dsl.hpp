#pragma once

#include <stdexcept>
#include <string>

#include "rrmap/program.hpp"

namespace rrmap {

/// Syntax error with source position (1-based line and column).
struct DslError : std::runtime_error {
  int line;
  int column;
  DslError(int l, int c, const std::string& what)
      : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) +
                           ": " + what),
        line(l),
        column(c) {}
};

/// Parses the whitespace-insensitive rule grammar
///   program = rule *(";" rule)
///   rule    = guard ":" action
///   guard   = "even" | "mod" INT | "else"
///   action  = "/2" | "(" INT "n" ["/" INT] ("+"|"-") "1" ")/2"
/// and validates the result. Throws DslError on syntax problems and
/// std::invalid_argument on semantic violations.
Program parse_program_dsl(const std::string& text);

/// Canonical text form; parse_program_dsl(print_program(p)) == p.
std::string print_program(const Program& prog);

}  // namespace rrmap
