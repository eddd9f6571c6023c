#include "ctfuse/groupcore/words.hpp"

#include <algorithm>

#include "ctfuse/error.hpp"

namespace ctfuse::groupcore {

  namespace {

    constexpr std::size_t max_word_length = 1'000'000;

    void append_reduced(Word& w, std::pair<std::size_t, int> letter) {
      if (!w.empty() && w.back().first == letter.first && w.back().second == -letter.second) {
        w.pop_back();
      } else {
        w.push_back(letter);
      }
    }

    Word invert(Word const& w) {
      Word r;
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        r.emplace_back(it->first, -it->second);
      }
      return r;
    }

    class Parser {
     public:
      Parser(std::string_view s, std::string_view alphabet) : _s(s), _alphabet(alphabet) {}

      Word parse() {
        skip();
        if (_pos == _s.size()) {
          throw ParseError("empty word", _pos);
        }
        Word w = product();
        skip();
        if (_pos != _s.size()) {
          throw ParseError("unexpected character", _pos);
        }
        return w;
      }

     private:
      void skip() {
        while (_pos < _s.size() && _s[_pos] == ' ') {
          ++_pos;
        }
      }

      bool at_factor_start() {
        skip();
        return _pos < _s.size()
               && (_s[_pos] == '(' || _s[_pos] == '1'
                   || _alphabet.find(_s[_pos]) != std::string_view::npos);
      }

      Word product() {
        Word w = factor();
        while (true) {
          skip();
          if (_pos < _s.size() && _s[_pos] == '*') {
            ++_pos;
            if (!at_factor_start()) {
              throw ParseError("expected a factor after '*'", _pos);
            }
          } else if (!at_factor_start()) {
            return w;
          }
          for (auto const& l : factor()) {
            append_reduced(w, l);
          }
          if (w.size() > max_word_length) {
            throw ParseError("word too long", _pos);
          }
        }
      }

      Word factor() {
        skip();
        Word base;
        if (_pos >= _s.size()) {
          throw ParseError("unexpected end of word", _pos);
        }
        char const c = _s[_pos];
        if (c == '(') {
          ++_pos;
          base = product();
          skip();
          if (_pos >= _s.size() || _s[_pos] != ')') {
            throw ParseError("expected ')'", _pos);
          }
          ++_pos;
        } else if (c == '1') {
          ++_pos;
        } else if (auto i = _alphabet.find(c); i != std::string_view::npos) {
          ++_pos;
          base.emplace_back(i, 1);
        } else {
          throw ParseError(std::string("unexpected character '") + c + "'", _pos);
        }
        skip();
        if (_pos < _s.size() && _s[_pos] == '^') {
          ++_pos;
          skip();
          bool negative = false;
          if (_pos < _s.size() && _s[_pos] == '-') {
            negative = true;
            ++_pos;
          }
          std::size_t const start = _pos;
          while (_pos < _s.size() && _s[_pos] >= '0' && _s[_pos] <= '9') {
            ++_pos;
          }
          if (start == _pos || _pos - start > 7) {
            throw ParseError("expected an exponent", start);
          }
          long const k = std::stol(std::string(_s.substr(start, _pos - start)));
          if (static_cast<std::size_t>(k) * base.size() > max_word_length) {
            throw ParseError("word too long", start);
          }
          Word const unit = negative ? invert(base) : base;
          Word       r;
          for (long i = 0; i < k; ++i) {
            for (auto const& l : unit) {
              append_reduced(r, l);
            }
          }
          return r;
        }
        return base;
      }

      std::string_view _s;
      std::string_view _alphabet;
      std::size_t      _pos = 0;
    };

  }  // namespace

  Word parse_word(std::string_view s, std::string_view alphabet) {
    return Parser(s, alphabet).parse();
  }

  std::vector<Word> parse_relations(std::string_view s, std::string_view alphabet) {
    std::vector<std::string_view> parts;
    std::size_t                   start = 0;
    while (true) {
      std::size_t const eq = s.find('=', start);
      parts.push_back(s.substr(start, eq == std::string_view::npos ? s.npos : eq - start));
      if (eq == std::string_view::npos) {
        break;
      }
      start = eq + 1;
    }
    std::vector<Word> words;
    std::size_t       offset = 0;
    for (auto p : parts) {
      try {
        words.push_back(parse_word(p, alphabet));
      } catch (ParseError const& e) {
        throw ParseError("in relation: malformed side", offset + e.offset());
      }
      offset += p.size() + 1;
    }
    std::vector<Word> relators;
    if (words.size() == 1) {
      return words;
    }
    if (words.back().empty()) {
      words.pop_back();
      return words;
    }
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
      Word r = words[i];
      for (auto const& l : invert(words[i + 1])) {
        append_reduced(r, l);
      }
      relators.push_back(std::move(r));
    }
    return relators;
  }

  Perm evaluate(Word const& w, std::vector<Perm> const& gens) {
    if (gens.empty()) {
      throw PreconditionError("no generators");
    }
    std::vector<Perm> inv;
    for (auto const& g : gens) {
      inv.push_back(inverse(g));
    }
    Perm result = identity_perm(gens[0].size());
    Perm buf(result.size());
    for (auto const& [i, e] : w) {
      if (i >= gens.size()) {
        throw PreconditionError("word uses generator " + std::to_string(i)
                                + " of only " + std::to_string(gens.size()));
      }
      compose(result.data(), (e > 0 ? gens[i] : inv[i]).data(), buf.data(), result.size());
      std::swap(result, buf);
    }
    return result;
  }

  RelatorCheck check_relators(std::vector<Perm> const& gens, std::vector<Word> const& relators) {
    for (std::size_t i = 0; i < relators.size(); ++i) {
      if (!is_identity(evaluate(relators[i], gens))) {
        return {false, i};
      }
    }
    return {};
  }

  RelatorCheck check_relators_modulo(std::vector<Perm> const& gens,
                                     std::vector<Word> const& relators,
                                     std::vector<Perm> const& allowed) {
    for (std::size_t i = 0; i < relators.size(); ++i) {
      Perm const v = evaluate(relators[i], gens);
      if (!is_identity(v) && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        return {false, i};
      }
    }
    return {};
  }

}  // namespace ctfuse::groupcore
