#pragma once

#include <iosfwd>

namespace ctfuse::cli {

  // Exit codes.
  inline constexpr int ok             = 0;
  inline constexpr int mismatch       = 1;  // verify-models / facts-diff differences, aborted search
  inline constexpr int invalid_input  = 2;  // unreadable or invalid files, bad flags
  inline constexpr int ambiguous      = 3;  // more than one fusion remains
  inline constexpr int no_match       = 4;  // no fusion, or no class matches

  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctfuse::cli
