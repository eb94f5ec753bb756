#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fragmerge/merge.hpp"

namespace fragmerge::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kWitnessOrMismatch = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInconsistentBase = 3;
inline constexpr int kNotExpressible = 4;

struct NamedBase {
  std::string name;
  Base base;
};

// Parsed problem file:
//   atoms: a b c
//   base K1: a | b          (repeated names add formulas to the same base)
//   base K2: models {a} {a,b}
//   constraint: !a | !b     (repeated lines are conjoined; default T)
// '#' starts a comment.
struct ProblemFile {
  UniversePtr universe;
  std::vector<NamedBase> bases;
  ModelSet constraint;

  Profile profile() const;
};

// Throws SyntaxError / UnknownAtom / Error on malformed input and
// InconsistentBase on bases without models.
ProblemFile parse_problem(std::string_view text);

// Entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fragmerge::cli
