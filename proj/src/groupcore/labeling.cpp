#include "ctfuse/groupcore/labeling.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ctfuse/error.hpp"

namespace ctfuse::groupcore {

  namespace {

    using Key = std::vector<std::string>;

    std::size_t color_of(std::map<Key, std::size_t>& ids, Key const& k) {
      return ids.emplace(k, ids.size()).first->second;
    }

  }  // namespace

  Labeling label_classes(PermGroup& g, CharacterTable const& t) {
    auto const&       cls = g.conjugacy_classes();
    std::size_t const nm  = cls.size();
    std::size_t const nt  = t.num_classes();
    auto const        ps  = t.primes();

    std::vector<std::vector<std::size_t>> model_pow(nm), table_pow(nt);
    for (std::size_t c = 0; c < nm; ++c) {
      for (auto p : ps) {
        model_pow[c].push_back(g.class_power(c, p));
      }
    }
    for (std::size_t c = 0; c < nt; ++c) {
      for (auto p : ps) {
        table_pow[c].push_back(power_class(t, c, p));
      }
    }

    Labeling                    out;
    std::map<Key, std::size_t>  ids;
    std::vector<std::size_t>&   mc = out.model_color;
    std::vector<std::size_t>&   tc = out.table_color;
    for (std::size_t c = 0; c < nm; ++c) {
      mc.push_back(color_of(ids, {std::to_string(cls[c].element_order), std::to_string(cls[c].size)}));
    }
    for (std::size_t c = 0; c < nt; ++c) {
      tc.push_back(color_of(ids, {std::to_string(t.element_order(c)), t.classes[c].size.get_str()}));
    }
    std::size_t distinct = 0;
    while (true) {
      std::set<std::size_t> used(mc.begin(), mc.end());
      used.insert(tc.begin(), tc.end());
      if (used.size() == distinct) {
        break;
      }
      distinct = used.size();
      std::map<Key, std::size_t> next;
      auto refine = [&](std::vector<std::size_t> const& col,
                        std::vector<std::vector<std::size_t>> const& pow) {
        std::vector<std::size_t> fresh;
        for (std::size_t c = 0; c < col.size(); ++c) {
          Key k{std::to_string(col[c])};
          for (auto img : pow[c]) {
            k.push_back(std::to_string(col[img]));
          }
          fresh.push_back(color_of(next, k));
        }
        return fresh;
      };
      auto new_mc = refine(mc, model_pow);
      auto new_tc = refine(tc, table_pow);
      mc          = std::move(new_mc);
      tc          = std::move(new_tc);
    }

    std::map<std::size_t, std::vector<std::size_t>> by_color;
    for (std::size_t c = 0; c < nt; ++c) {
      by_color[tc[c]].push_back(c);
    }
    std::map<std::size_t, std::size_t> model_count;
    for (auto c : mc) {
      ++model_count[c];
    }
    out.matches = nm == nt;
    for (std::size_t c = 0; c < nm; ++c) {
      auto it = by_color.find(mc[c]);
      out.candidates.push_back(it == by_color.end() ? std::vector<std::size_t>{} : it->second);
      if (it == by_color.end()) {
        out.matches = false;
        out.mismatches.push_back("model class " + std::to_string(c) + " (order "
                                 + std::to_string(cls[c].element_order) + ", size "
                                 + std::to_string(cls[c].size) + ") has no table counterpart");
      }
    }
    for (auto const& [color, members] : by_color) {
      if (model_count[color] != members.size()) {
        out.matches = false;
        out.mismatches.push_back("table class " + t.classes[members[0]].name + ": "
                                 + std::to_string(members.size()) + " table vs "
                                 + std::to_string(model_count[color]) + " model classes");
      }
      if (members.size() > 1) {
        out.ambiguous.push_back(members);
      }
    }
    return out;
  }

  bool class_multiset_matches(PermGroup& g, CharacterTable const& t, std::string* detail) {
    std::map<std::pair<std::uint32_t, std::string>, long> count;
    for (auto const& c : g.conjugacy_classes()) {
      ++count[{c.element_order, std::to_string(c.size)}];
    }
    for (auto const& c : t.classes) {
      --count[{c.element_order, c.size.get_str()}];
    }
    for (auto const& [k, v] : count) {
      if (v != 0) {
        if (detail != nullptr) {
          *detail = "order " + std::to_string(k.first) + ", size " + k.second + ": "
                    + (v > 0 ? "extra in model" : "missing in model");
        }
        return false;
      }
    }
    return true;
  }

  bool oracle_agrees(std::vector<std::size_t> const& oracle,
                     Labeling const&                 sub_labels,
                     Labeling const&                 amb_labels,
                     FusionMap const&                f) {
    if (!sub_labels.matches || !amb_labels.matches || oracle.size() != sub_labels.model_color.size()
        || f.size() != sub_labels.table_color.size()) {
      return false;
    }
    std::map<std::size_t, std::vector<std::size_t>> sub_model_groups, sub_table_groups;
    for (std::size_t s = 0; s < oracle.size(); ++s) {
      sub_model_groups[sub_labels.model_color[s]].push_back(s);
    }
    for (std::size_t t = 0; t < f.size(); ++t) {
      sub_table_groups[sub_labels.table_color[t]].push_back(t);
    }

    std::vector<std::size_t> images(oracle.begin(), oracle.end());
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());

    std::map<std::size_t, std::size_t> sigma;  // ambient model class -> table class
    std::set<std::size_t>              taken;
    std::uint64_t                      budget = 10'000'000;

    auto consistent = [&]() {
      for (auto const& [color, models] : sub_model_groups) {
        std::vector<std::size_t> lhs, rhs;
        for (auto s : models) {
          lhs.push_back(sigma.at(oracle[s]));
        }
        for (auto t : sub_table_groups[color]) {
          rhs.push_back(f[t]);
        }
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        if (lhs != rhs) {
          return false;
        }
      }
      return true;
    };

    auto assign = [&](auto&& self, std::size_t i) -> bool {
      if (budget-- == 0) {
        throw ResourceError("label assignment search exhausted");
      }
      if (i == images.size()) {
        return consistent();
      }
      for (auto x : amb_labels.candidates[images[i]]) {
        if (taken.count(x) != 0) {
          continue;
        }
        sigma[images[i]] = x;
        taken.insert(x);
        if (self(self, i + 1)) {
          return true;
        }
        taken.erase(x);
      }
      sigma.erase(images[i]);
      return false;
    };
    return assign(assign, 0);
  }

  CandidateSets oracle_candidates(std::vector<std::size_t> const& oracle,
                                  Labeling const&                 sub_labels,
                                  Labeling const&                 amb_labels) {
    if (oracle.size() != sub_labels.model_color.size()) {
      throw PreconditionError("oracle and labeling sizes differ");
    }
    std::map<std::size_t, std::set<std::size_t>> by_color;
    for (std::size_t s = 0; s < oracle.size(); ++s) {
      auto const& c = amb_labels.candidates.at(oracle[s]);
      by_color[sub_labels.model_color[s]].insert(c.begin(), c.end());
    }
    CandidateSets out;
    for (auto color : sub_labels.table_color) {
      auto const& xs = by_color[color];
      out.emplace_back(xs.begin(), xs.end());
    }
    return out;
  }

}  // namespace ctfuse::groupcore
