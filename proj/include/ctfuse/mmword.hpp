#pragma once

// Words in the "M<y_3dch*x_57fh*...>" element format.  Digits are kept
// verbatim so printing reproduces the input byte for byte.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctfuse {

  struct Atom {
    char        tag;     // one of y x d p t l
    std::string digits;  // without the trailing 'h' for hex tags

    static bool is_hex_tag(char tag) noexcept {
      return tag == 'y' || tag == 'x' || tag == 'd';
    }
    bool hex() const noexcept {
      return is_hex_tag(tag);
    }
    // Throws PreconditionError if the value does not fit.
    std::uint64_t value() const;

    bool operator==(Atom const&) const = default;
  };

  struct MmWord {
    std::vector<Atom>          atoms;
    std::optional<std::string> label;

    std::size_t size() const noexcept {
      return atoms.size();
    }
  };

  // Strict parse; ParseError carries the byte offset of the first deviation.
  MmWord parse_word(std::string_view s);

  // Refuses the empty word (PreconditionError).
  std::string print_word(MmWord const& w);

  MmWord concat(MmWord const& a, MmWord const& b);

  // "label = M<...>" per line; blank lines and '#' comments are skipped.
  // ParseError offsets are relative to the whole text.
  std::vector<MmWord> parse_listing(std::string_view text);
  std::vector<MmWord> load_listing(std::filesystem::path const& path);

  // Product expression over listing labels, e.g. "x4*(x3*x5)^2", expanded by
  // concatenation.  Only non-negative exponents; there is no syntactic
  // inverse.  Unknown labels raise ParseError.
  MmWord expand_expression(std::string_view expr, std::map<std::string, MmWord> const& words);

}  // namespace ctfuse
