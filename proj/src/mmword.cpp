#include "ctfuse/mmword.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

#include "ctfuse/error.hpp"

namespace ctfuse {

  namespace {

    bool is_lower_hex(char c) {
      return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    }

    bool is_dec(char c) {
      return c >= '0' && c <= '9';
    }

    class WordParser {
     public:
      explicit WordParser(std::string_view s, std::size_t base = 0) : _s(s), _base(base) {}

      MmWord parse() {
        expect('M');
        expect('<');
        MmWord w;
        w.atoms.push_back(atom());
        while (peek() == '*') {
          ++_pos;
          w.atoms.push_back(atom());
        }
        expect('>');
        if (_pos != _s.size()) {
          fail("trailing characters after '>'");
        }
        return w;
      }

     private:
      char peek() const {
        return _pos < _s.size() ? _s[_pos] : '\0';
      }

      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError(what, _base + _pos);
      }

      void expect(char c) {
        if (_pos >= _s.size() || _s[_pos] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++_pos;
      }

      Atom atom() {
        char const tag = peek();
        if (tag != 'y' && tag != 'x' && tag != 'd' && tag != 'p' && tag != 't' && tag != 'l') {
          fail("expected an atom tag");
        }
        ++_pos;
        expect('_');
        Atom        a{tag, {}};
        std::size_t start = _pos;
        if (a.hex()) {
          while (is_lower_hex(peek())) {
            ++_pos;
          }
          if (_pos == start) {
            fail("expected hex digits");
          }
          a.digits = std::string(_s.substr(start, _pos - start));
          expect('h');
        } else {
          while (is_dec(peek())) {
            ++_pos;
          }
          if (_pos == start) {
            fail("expected decimal digits");
          }
          a.digits = std::string(_s.substr(start, _pos - start));
        }
        return a;
      }

      std::string_view _s;
      std::size_t      _base;
      std::size_t      _pos = 0;
    };

    class ExprParser {
     public:
      ExprParser(std::string_view s, std::map<std::string, MmWord> const& words)
          : _s(s), _words(words) {}

      MmWord parse() {
        MmWord w = product();
        skip_space();
        if (_pos != _s.size()) {
          throw ParseError("unexpected character in expression", _pos);
        }
        return w;
      }

     private:
      void skip_space() {
        while (_pos < _s.size() && _s[_pos] == ' ') {
          ++_pos;
        }
      }

      MmWord product() {
        MmWord w = power();
        skip_space();
        while (_pos < _s.size() && _s[_pos] == '*') {
          ++_pos;
          w = concat(w, power());
          skip_space();
        }
        return w;
      }

      MmWord power() {
        MmWord base = primary();
        skip_space();
        if (_pos < _s.size() && _s[_pos] == '^') {
          ++_pos;
          skip_space();
          std::size_t start = _pos;
          while (_pos < _s.size() && is_dec(_s[_pos])) {
            ++_pos;
          }
          if (start == _pos || _pos - start > 6) {
            throw ParseError("expected a non-negative exponent", start);
          }
          int    k = std::stoi(std::string(_s.substr(start, _pos - start)));
          MmWord r;
          for (int i = 0; i < k; ++i) {
            r = concat(r, base);
          }
          return r;
        }
        return base;
      }

      MmWord primary() {
        skip_space();
        if (_pos < _s.size() && _s[_pos] == '(') {
          ++_pos;
          MmWord w = product();
          skip_space();
          if (_pos >= _s.size() || _s[_pos] != ')') {
            throw ParseError("expected ')'", _pos);
          }
          ++_pos;
          return w;
        }
        std::size_t start = _pos;
        while (_pos < _s.size()
               && (std::isalnum(static_cast<unsigned char>(_s[_pos])) || _s[_pos] == '_')) {
          ++_pos;
        }
        if (start == _pos) {
          throw ParseError("expected a label", _pos);
        }
        std::string name(_s.substr(start, _pos - start));
        auto        it = _words.find(name);
        if (it == _words.end()) {
          throw ParseError("unknown label " + name, start);
        }
        MmWord w = it->second;
        w.label.reset();
        return w;
      }

      std::string_view                     _s;
      std::map<std::string, MmWord> const& _words;
      std::size_t                          _pos = 0;
    };

  }  // namespace

  std::uint64_t Atom::value() const {
    std::uint64_t       v     = 0;
    std::uint64_t const radix = hex() ? 16 : 10;
    for (char c : digits) {
      std::uint64_t const d = is_dec(c) ? c - '0' : c - 'a' + 10;
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / radix) {
        throw PreconditionError("atom value does not fit in 64 bits");
      }
      v = v * radix + d;
    }
    return v;
  }

  MmWord parse_word(std::string_view s) {
    return WordParser(s).parse();
  }

  std::string print_word(MmWord const& w) {
    if (w.atoms.empty()) {
      throw PreconditionError("the empty word has no printed form");
    }
    std::string s = "M<";
    for (std::size_t i = 0; i < w.atoms.size(); ++i) {
      if (i != 0) {
        s += '*';
      }
      s += w.atoms[i].tag;
      s += '_';
      s += w.atoms[i].digits;
      if (w.atoms[i].hex()) {
        s += 'h';
      }
    }
    s += '>';
    return s;
  }

  MmWord concat(MmWord const& a, MmWord const& b) {
    MmWord w;
    w.atoms = a.atoms;
    w.atoms.insert(w.atoms.end(), b.atoms.begin(), b.atoms.end());
    return w;
  }

  std::vector<MmWord> parse_listing(std::string_view text) {
    std::vector<MmWord> words;
    std::size_t         line_start = 0;
    while (line_start < text.size()) {
      std::size_t end = text.find('\n', line_start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string_view line = text.substr(line_start, end - line_start);
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      if (!line.empty() && line.front() != '#') {
        std::size_t const eq = line.find(" = ");
        if (eq == std::string_view::npos || eq == 0) {
          throw ParseError("expected 'label = M<...>'", line_start);
        }
        std::string_view label = line.substr(0, eq);
        for (std::size_t i = 0; i < label.size(); ++i) {
          char c = label[i];
          if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
            throw ParseError("invalid label character", line_start + i);
          }
        }
        MmWord w = WordParser(line.substr(eq + 3), line_start + eq + 3).parse();
        w.label  = std::string(label);
        words.push_back(std::move(w));
      }
      line_start = end + 1;
    }
    return words;
  }

  std::vector<MmWord> load_listing(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw FormatError("cannot open listing " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return parse_listing(os.str());
  }

  MmWord expand_expression(std::string_view expr, std::map<std::string, MmWord> const& words) {
    return ExprParser(expr, words).parse();
  }

}  // namespace ctfuse
