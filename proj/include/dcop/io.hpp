#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dcop/model.hpp"

namespace dcop {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Line-oriented problem format, version-tagged:
///   DCOP 1
///   agents <n>
///   domain <var> <size>        (one per variable)
///   constraint <i> <j>         (followed by d_i rows of d_j integers)
/// Lines starting with '#' are ignored. Indices are 0-based.
void writeProblem(const Problem& p, std::ostream& os);
Problem readProblem(std::istream& is);

void writeProblemFile(const Problem& p, const std::string& path);
Problem readProblemFile(const std::string& path);

}  // namespace dcop
