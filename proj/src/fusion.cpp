#include "ctfuse/fusion.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <unordered_map>

namespace ctfuse {

  namespace {

    bool propagate_in_place(CandidateSets&        cand,
                            CharacterTable const& sub,
                            CharacterTable const& amb) {
      std::size_t const n_amb   = amb.num_classes();
      bool              changed = true;
      std::vector<char> mask(n_amb);
      while (changed) {
        changed = false;
        for (auto const& [p, sub_map] : sub.power_maps) {
          auto it = amb.power_maps.find(p);
          if (it == amb.power_maps.end()) {
            throw DataIncompleteError("ambient table " + amb.name + " lacks the "
                                      + std::to_string(p) + "-power map");
          }
          auto const& amb_map = it->second;
          for (std::size_t c = 0; c < cand.size(); ++c) {
            std::size_t const img = sub_map[c];
            // forward: x survives only if x^p is a candidate for c^p
            std::fill(mask.begin(), mask.end(), 0);
            for (auto y : cand[img]) {
              mask[y] = 1;
            }
            auto& cs   = cand[c];
            auto  keep = std::remove_if(cs.begin(), cs.end(), [&](std::size_t x) {
              return !mask[amb_map[x]];
            });
            if (keep != cs.end()) {
              cs.erase(keep, cs.end());
              changed = true;
            }
            if (cs.empty()) {
              return false;
            }
            // backward: a candidate for c^p must be the p-th power of some
            // candidate for c
            std::fill(mask.begin(), mask.end(), 0);
            for (auto x : cs) {
              mask[amb_map[x]] = 1;
            }
            auto& ci    = cand[img];
            auto  keep2 = std::remove_if(ci.begin(), ci.end(), [&](std::size_t y) {
              return !mask[y];
            });
            if (keep2 != ci.end()) {
              ci.erase(keep2, ci.end());
              changed = true;
            }
            if (ci.empty()) {
              return false;
            }
          }
        }
      }
      return true;
    }

    // Multiplicity check: value = |S| <theta, psi>; returns true when value/|S|
    // is a non-negative rational integer.
    bool is_character_multiplicity(Cyclotomic const& scaled, mpz_class const& order) {
      auto v = scaled.as_integer();
      return v && sgn(*v) >= 0 && mpz_divisible_p(v->get_mpz_t(), order.get_mpz_t());
    }

    class FusionSearch {
     public:
      FusionSearch(CharacterTable const& sub, CharacterTable const& amb, FusionOptions const& opts)
          : _sub(sub), _amb(amb), _opts(opts) {
        _chars = opts.ambient_characters;
        if (_chars.empty()) {
          for (std::size_t i = 0; i < amb.irreducibles.size(); ++i) {
            _chars.push_back(i);
          }
        }
        std::size_t const n_sub = sub.num_classes();
        std::size_t const n_amb = amb.num_classes();

        _ids.assign(_chars.size(), std::vector<std::uint8_t>(n_amb));
        _values.resize(_chars.size());
        _rational_values.resize(_chars.size());
        for (std::size_t k = 0; k < _chars.size(); ++k) {
          auto const& chi = amb.irreducibles.at(_chars[k]);
          for (std::size_t x = 0; x < n_amb; ++x) {
            auto it = std::find(_values[k].begin(), _values[k].end(), chi[x]);
            if (it == _values[k].end()) {
              _values[k].push_back(chi[x]);
              it = _values[k].end() - 1;
            }
            _ids[k][x] = static_cast<std::uint8_t>(it - _values[k].begin());
          }
          if (_values[k].size() > 255) {
            throw PreconditionError("too many distinct character values");
          }
          for (auto const& v : _values[k]) {
            _rational_values[k].push_back(v.is_rational() ? *v.as_integer() : mpz_class(0));
          }
        }

        _psi_conj.assign(sub.irreducibles.size(), ClassFunction(n_sub));
        for (std::size_t j = 0; j < sub.irreducibles.size(); ++j) {
          bool rational = true;
          for (std::size_t c = 0; c < n_sub; ++c) {
            auto const& v    = sub.irreducibles[j][c];
            _psi_conj[j][c]  = v.is_rational() ? v : v.conj();
            rational        &= v.is_rational();
          }
          if (rational) {
            std::vector<mpz_class> weights(n_sub);
            for (std::size_t c = 0; c < n_sub; ++c) {
              weights[c] = *sub.irreducibles[j][c].as_integer() * sub.classes[c].size;
            }
            _rational_psi.push_back(j);
            _rational_psi_weights.push_back(std::move(weights));
          }
        }
        _cache.resize(_chars.size());
      }

      SearchResult run(CandidateSets const& start) {
        std::vector<char> verified(_chars.size(), 0);
        dfs(start, verified);
        std::sort(_results.begin(), _results.end());
        _results.erase(std::unique(_results.begin(), _results.end()), _results.end());
        return {std::move(_results), _stats};
      }

     private:
      bool determined(CandidateSets const& cand, std::size_t k) const {
        auto const& ids = _ids[k];
        for (auto const& cs : cand) {
          for (std::size_t i = 1; i < cs.size(); ++i) {
            if (ids[cs[i]] != ids[cs[0]]) {
              return false;
            }
          }
        }
        return true;
      }

      bool restriction_decomposes(CandidateSets const& cand, std::size_t k) {
        std::string key(cand.size(), '\0');
        for (std::size_t c = 0; c < cand.size(); ++c) {
          key[c] = static_cast<char>(_ids[k][cand[c][0]]);
        }
        auto [it, inserted] = _cache[k].emplace(std::move(key), false);
        if (!inserted) {
          return it->second;
        }
        bool ok = true;
        for (std::size_t j = 0; j < _psi_conj.size() && ok; ++j) {
          CyclotomicAccumulator acc;
          for (std::size_t c = 0; c < cand.size(); ++c) {
            acc.add_product(_values[k][_ids[k][cand[c][0]]], _psi_conj[j][c], _sub.classes[c].size);
          }
          ok = is_character_multiplicity(acc.total(), _sub.group_order);
        }
        it->second = ok;
        return ok;
      }

      // For characters rational on every remaining candidate, bound the
      // multiplicity of each rational subgroup irreducible from above.
      bool bounds_allow(CandidateSets const& cand, std::size_t k) const {
        for (auto const& cs : cand) {
          for (auto x : cs) {
            if (!_values[k][_ids[k][x]].is_rational()) {
              return true;
            }
          }
        }
        mpz_class upper, term;
        for (std::size_t r = 0; r < _rational_psi.size(); ++r) {
          auto const& w = _rational_psi_weights[r];
          upper         = 0;
          for (std::size_t c = 0; c < cand.size(); ++c) {
            bool first = true;
            mpz_class best;
            for (auto x : cand[c]) {
              term = _rational_values[k][_ids[k][x]] * w[c];
              if (first || term > best) {
                best  = term;
                first = false;
              }
            }
            upper += best;
          }
          if (sgn(upper) < 0) {
            return false;
          }
        }
        return true;
      }

      void dfs(CandidateSets const& cand, std::vector<char> verified) {
        ++_stats.nodes;
        if (_opts.max_nodes != 0 && _stats.nodes > _opts.max_nodes) {
          std::sort(_results.begin(), _results.end());
          throw SearchAborted(_stats, _results);
        }
        for (std::size_t k = 0; k < _chars.size(); ++k) {
          if (verified[k]) {
            continue;
          }
          if (determined(cand, k)) {
            if (!restriction_decomposes(cand, k)) {
              ++_stats.decomposition_prunes;
              return;
            }
            verified[k] = 1;
          } else if (_opts.partial_sum_bounds && !bounds_allow(cand, k)) {
            ++_stats.bound_prunes;
            return;
          }
        }
        std::size_t branch = cand.size();
        for (std::size_t c = 0; c < cand.size(); ++c) {
          if (cand[c].size() > 1
              && (branch == cand.size() || cand[c].size() < cand[branch].size())) {
            branch = c;
          }
        }
        if (branch == cand.size()) {
          ++_stats.leaves;
          FusionMap f(cand.size());
          for (std::size_t c = 0; c < cand.size(); ++c) {
            f[c] = cand[c][0];
          }
          _results.push_back(std::move(f));
          return;
        }
        for (auto x : cand[branch]) {
          CandidateSets next = cand;
          next[branch]       = {x};
          if (!propagate_in_place(next, _sub, _amb)) {
            ++_stats.propagation_failures;
            continue;
          }
          dfs(next, verified);
        }
      }

      CharacterTable const&                               _sub;
      CharacterTable const&                               _amb;
      FusionOptions const&                                _opts;
      std::vector<std::size_t>                            _chars;
      std::vector<std::vector<std::uint8_t>>              _ids;
      std::vector<std::vector<Cyclotomic>>                _values;
      std::vector<std::vector<mpz_class>>                 _rational_values;
      std::vector<ClassFunction>                          _psi_conj;
      std::vector<std::size_t>                            _rational_psi;
      std::vector<std::vector<mpz_class>>                 _rational_psi_weights;
      std::vector<std::unordered_map<std::string, bool>> _cache;
      std::vector<FusionMap>                              _results;
      SearchStats                                         _stats;
    };

  }  // namespace

  CandidateSets init_candidates(CharacterTable const& sub, CharacterTable const& amb) {
    CandidateSets cand(sub.num_classes());
    for (std::size_t c = 0; c < sub.num_classes(); ++c) {
      auto const& info = sub.classes[c];
      if (c == 0) {
        cand[c] = {0};
        continue;
      }
      for (std::size_t x = 1; x < amb.num_classes(); ++x) {
        auto const& ainfo = amb.classes[x];
        if (ainfo.element_order == info.element_order
            && mpz_divisible_p(ainfo.centralizer_order.get_mpz_t(),
                               info.centralizer_order.get_mpz_t())) {
          cand[c].push_back(x);
        }
      }
      if (cand[c].empty()) {
        throw NoFusionPossible("no ambient class of " + amb.name + " can contain class "
                               + info.name + " of " + sub.name);
      }
    }
    return cand;
  }

  CandidateSets propagate(CandidateSets c, CharacterTable const& sub, CharacterTable const& amb) {
    if (!propagate_in_place(c, sub, amb)) {
      throw NoFusionPossible("power maps of " + sub.name + " and " + amb.name
                             + " admit no consistent fusion");
    }
    return c;
  }

  CandidateSets intersect(CandidateSets const& a, CandidateSets const& b) {
    if (a.size() != b.size()) {
      throw PreconditionError("candidate sets of different length");
    }
    CandidateSets out(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) {
      std::vector<std::size_t> x = a[c], y = b[c];
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out[c]));
    }
    return out;
  }

  SearchResult search(CharacterTable const& sub,
                      CharacterTable const& amb,
                      CandidateSets const&  candidates,
                      FusionOptions const&  opts) {
    if (candidates.size() != sub.num_classes()) {
      throw PreconditionError("candidate sets do not match the subgroup table");
    }
    CandidateSets start = candidates;
    for (auto& cs : start) {
      std::sort(cs.begin(), cs.end());
      if (cs.empty()) {
        return {};
      }
    }
    if (!propagate_in_place(start, sub, amb)) {
      return {};
    }
    FusionSearch engine(sub, amb, opts);
    return engine.run(start);
  }

  SearchResult possible_class_fusions(CharacterTable const& sub,
                                      CharacterTable const& amb,
                                      FusionOptions const&  opts) {
    return search(sub, amb, propagate(init_candidates(sub, amb), sub, amb), opts);
  }

  ClassFunction restrict_character(ClassFunction const& chi, FusionMap const& f) {
    ClassFunction theta;
    theta.reserve(f.size());
    for (auto x : f) {
      theta.push_back(chi.at(x));
    }
    return theta;
  }

  DecompositionResult decomposition_test(FusionMap const&                f,
                                         CharacterTable const&           sub,
                                         CharacterTable const&           amb,
                                         std::vector<std::size_t> const& characters) {
    if (f.size() != sub.num_classes()) {
      throw PreconditionError("fusion map length does not match " + sub.name);
    }
    std::vector<std::size_t> chars = characters;
    if (chars.empty()) {
      for (std::size_t i = 0; i < amb.irreducibles.size(); ++i) {
        chars.push_back(i);
      }
    }
    for (auto i : chars) {
      ClassFunction theta = restrict_character(amb.irreducibles.at(i), f);
      for (std::size_t j = 0; j < sub.irreducibles.size(); ++j) {
        CyclotomicAccumulator acc;
        auto const&           psi = sub.irreducibles[j];
        for (std::size_t c = 0; c < f.size(); ++c) {
          acc.add_product(theta[c], psi[c].is_rational() ? psi[c] : psi[c].conj(),
                          sub.classes[c].size);
        }
        Cyclotomic scaled = acc.total();
        if (!is_character_multiplicity(scaled, sub.group_order)) {
          auto v         = scaled.as_integer();
          bool integral  = v && mpz_divisible_p(v->get_mpz_t(), sub.group_order.get_mpz_t());
          Cyclotomic val = integral ? scaled.divide_exact(sub.group_order) : scaled;
          return {false, DecompositionWitness{i, j, val, integral}};
        }
      }
    }
    return {};
  }

  bool commutes_with_power_maps(FusionMap const&      f,
                                CharacterTable const& sub,
                                CharacterTable const& amb) {
    for (auto const& [p, sub_map] : sub.power_maps) {
      auto it = amb.power_maps.find(p);
      if (it == amb.power_maps.end()) {
        return false;
      }
      for (std::size_t c = 0; c < f.size(); ++c) {
        if (f[sub_map[c]] != it->second[f[c]]) {
          return false;
        }
      }
    }
    return true;
  }

  nlohmann::json fusion_result_json(CharacterTable const&         sub,
                                    CharacterTable const&         amb,
                                    std::vector<FusionMap> const& maps) {
    return {{"sub", sub.name}, {"amb", amb.name}, {"maps", maps}, {"count", maps.size()}};
  }

  std::vector<FusionMap> fusion_maps_from_json(nlohmann::json const& j) {
    if (!j.is_object() || !j.contains("maps") || !j["maps"].is_array()) {
      throw FormatError("fusion result must contain a \"maps\" array");
    }
    std::vector<FusionMap> maps;
    for (auto const& m : j["maps"]) {
      if (!m.is_array()) {
        throw FormatError("fusion map must be an array");
      }
      FusionMap f;
      for (auto const& x : m) {
        if (!x.is_number_unsigned()) {
          throw FormatError("fusion map entries must be class indices");
        }
        f.push_back(x.get<std::size_t>());
      }
      maps.push_back(std::move(f));
    }
    if (j.contains("count") && j["count"] != maps.size()) {
      throw FormatError("fusion result count does not match its maps");
    }
    return maps;
  }

  std::vector<std::string> render_fusion(CharacterTable const& sub,
                                         CharacterTable const& amb,
                                         FusionMap const&      f) {
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t c = 0; c < f.size(); ++c) {
      groups[f[c]].push_back(c);
    }
    struct Line {
      std::uint32_t order;
      std::string   first;
      std::string   text;
    };
    std::vector<Line> lines;
    for (auto& [x, members] : groups) {
      std::vector<std::string> names;
      for (auto c : members) {
        names.push_back(sub.classes[c].name);
      }
      std::sort(names.begin(), names.end(), [](auto const& a, auto const& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
      std::string const prefix  = std::to_string(sub.classes[members[0]].element_order);
      bool              compact = true;
      for (auto const& s : names) {
        compact &= s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0
                   && std::none_of(s.begin() + prefix.size(), s.end(),
                                   [](char ch) { return ch >= '0' && ch <= '9'; });
      }
      std::string lhs;
      if (compact) {
        lhs = prefix;
        for (auto const& s : names) {
          lhs += s.substr(prefix.size());
        }
      } else {
        for (std::size_t i = 0; i < names.size(); ++i) {
          lhs += (i == 0 ? "" : ",") + names[i];
        }
      }
      lines.push_back({sub.classes[members[0]].element_order, names[0],
                       lhs + " → " + amb.classes[x].name});
    }
    std::sort(lines.begin(), lines.end(), [](Line const& a, Line const& b) {
      if (a.order != b.order) {
        return a.order < b.order;
      }
      return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
    });
    std::vector<std::string> out;
    for (auto& l : lines) {
      out.push_back(std::move(l.text));
    }
    return out;
  }

}  // namespace ctfuse
