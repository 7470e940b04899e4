#pragma once

// Plain-text state files: one line per nonzero amplitude,
//   <bitstring> <re> <im>
// whitespace separated, '#' starts a comment. Qubit 1 is the leftmost bit.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qprotect/states.hpp"

namespace qprotect {

struct LoadedState {
  JointPureState state;
  double input_norm;
  std::optional<std::string> warning;  // set when the input was not normalized
};

LoadedState parse_state(std::istream& in);
LoadedState load_state_file(const std::filesystem::path& path);

void write_state(std::ostream& out, const JointPureState& state);

}  // namespace qprotect
