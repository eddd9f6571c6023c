#include "ctfuse/facts.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "ctfuse/error.hpp"

namespace ctfuse {

  namespace {

    std::vector<std::uint32_t> prime_divisors(std::uint32_t n) {
      std::vector<std::uint32_t> ps;
      for (std::uint32_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
          ps.push_back(p);
          while (n % p == 0) {
            n /= p;
          }
        }
      }
      if (n > 1) {
        ps.push_back(n);
      }
      return ps;
    }

    std::string trim(std::string s) {
      auto const b = s.find_first_not_of(' ');
      auto const e = s.find_last_not_of(' ');
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }

    std::string powers_string(std::vector<std::pair<std::int64_t, std::string>> const& ps) {
      std::string s = "[";
      for (std::size_t i = 0; i < ps.size(); ++i) {
        s += (i == 0 ? "" : ", ") + std::to_string(ps[i].first) + "->" + ps[i].second;
      }
      return s + "]";
    }

  }  // namespace

  std::string fact_source_name(FactSource s) {
    return s == FactSource::paper_fixture ? "paper-fixture" : "bridge-computed";
  }

  std::string FusionFact::name() const {
    return trim(label.substr(0, label.find('=')));
  }

  std::vector<std::size_t> identify_class(CharacterTable const& amb, FusionFact const& f) {
    if (f.chi && !amb.distinguished) {
      throw PreconditionError("table " + amb.name + " has no distinguished character");
    }
    std::vector<std::pair<std::int64_t, std::size_t>> powers;
    for (auto const& [k, label] : f.powers) {
      powers.emplace_back(k, amb.require_class(label));
    }
    std::vector<std::size_t> result;
    for (std::size_t x = 0; x < amb.num_classes(); ++x) {
      if (amb.element_order(x) != f.element_order) {
        continue;
      }
      if (f.chi && amb.irreducibles[*amb.distinguished][x] != *f.chi) {
        continue;
      }
      bool ok = std::all_of(powers.begin(), powers.end(), [&](auto const& kp) {
        return power_class(amb, x, kp.first) == kp.second;
      });
      if (ok) {
        result.push_back(x);
      }
    }
    if (result.empty()) {
      throw InconsistentFact("no class of " + amb.name + " matches fact " + f.label);
    }
    return result;
  }

  std::vector<FusionMap> apply_facts(std::vector<FusionMap> const&  maps,
                                     CharacterTable const&          sub,
                                     CharacterTable const&          amb,
                                     std::vector<FusionFact> const& facts) {
    struct Compiled {
      std::optional<std::size_t> sub_class;
      std::vector<char>          allowed;
    };
    std::vector<Compiled> compiled;
    for (auto const& f : facts) {
      Compiled c;
      if (f.subgroup_class) {
        c.sub_class = sub.require_class(*f.subgroup_class);
        if (sub.element_order(*c.sub_class) != f.element_order) {
          throw InconsistentFact("fact " + f.label + " has order "
                                 + std::to_string(f.element_order) + " but class "
                                 + *f.subgroup_class + " has order "
                                 + std::to_string(sub.element_order(*c.sub_class)));
        }
      }
      c.allowed.assign(amb.num_classes(), 0);
      for (auto x : identify_class(amb, f)) {
        c.allowed[x] = 1;
      }
      compiled.push_back(std::move(c));
    }
    std::vector<FusionMap> kept;
    for (auto const& m : maps) {
      bool ok = std::all_of(compiled.begin(), compiled.end(), [&](Compiled const& c) {
        if (c.sub_class) {
          return c.allowed.at(m.at(*c.sub_class)) != 0;
        }
        return std::any_of(m.begin(), m.end(), [&](std::size_t x) { return c.allowed.at(x) != 0; });
      });
      if (ok) {
        kept.push_back(m);
      }
    }
    if (!maps.empty() && kept.empty()) {
      throw InconsistentFact("the facts exclude every candidate fusion");
    }
    return kept;
  }

  std::vector<FusionFact> chain_power_facts(CharacterTable const&          amb,
                                            std::vector<FusionFact> const& facts) {
    std::vector<FusionFact> result = facts;
    for (auto const& f : facts) {
      std::string const n     = f.name();
      auto const        caret = n.find('^');
      if (caret == std::string::npos) {
        continue;
      }
      std::string const base = n.substr(0, caret);
      std::int64_t      k    = 0;
      try {
        std::size_t pos = 0;
        k               = std::stoll(n.substr(caret + 1), &pos);
        if (pos != n.size() - caret - 1) {
          continue;
        }
      } catch (std::exception const&) {
        continue;
      }
      auto const classes = identify_class(amb, f);
      if (classes.size() != 1) {
        continue;
      }
      for (auto& g : result) {
        if (g.name() == base) {
          std::pair<std::int64_t, std::string> c{k, amb.classes[classes[0]].name};
          if (std::find(g.powers.begin(), g.powers.end(), c) == g.powers.end()) {
            g.powers.push_back(std::move(c));
          }
        }
      }
    }
    return result;
  }

  std::vector<FusionFact> expand_rational(CharacterTable const& sub,
                                          CharacterTable const& amb,
                                          FusionFact const&     f) {
    std::vector<FusionFact> derived;
    if (!f.subgroup_class) {
      return derived;
    }
    auto const classes = identify_class(amb, f);
    if (classes.size() != 1 || !is_rational_class(amb, classes[0])) {
      return derived;
    }
    std::size_t const c = sub.require_class(*f.subgroup_class);
    std::uint32_t const o = sub.element_order(c);
    std::set<std::size_t> seen{c};
    for (std::uint32_t k = 2; k < o; ++k) {
      if (std::gcd(k, o) != 1) {
        continue;
      }
      std::size_t const d = power_class(sub, c, k);
      if (!seen.insert(d).second) {
        continue;
      }
      FusionFact g;
      g.label          = f.name() + "^" + std::to_string(k);
      g.element_order  = o;
      g.powers         = {{1, amb.classes[classes[0]].name}};
      g.source         = f.source;
      g.subgroup_class = sub.classes[d].name;
      derived.push_back(std::move(g));
    }
    return derived;
  }

  ClassSetConclusion closure_deduction(CharacterTable const&             amb,
                                       std::vector<std::size_t> const&   seeds,
                                       std::vector<std::uint32_t> const& orders) {
    std::set<std::size_t> have{0};
    std::vector<std::size_t> stack(seeds.begin(), seeds.end());
    auto close = [&]() {
      while (!stack.empty()) {
        std::size_t const x = stack.back();
        stack.pop_back();
        if (x >= amb.num_classes()) {
          throw PreconditionError("seed class index out of range");
        }
        if (!have.insert(x).second) {
          continue;
        }
        for (auto const& [p, map] : amb.power_maps) {
          stack.push_back(map.at(x));
        }
      }
    };
    close();

    ClassSetConclusion out;
    bool               progress = true;
    while (progress) {
      progress = false;
      out.unresolved.clear();
      for (auto o : orders) {
        bool const represented = std::any_of(have.begin(), have.end(), [&](std::size_t x) {
          return amb.element_order(x) == o;
        });
        if (represented) {
          continue;
        }
        std::vector<std::size_t> cands;
        for (std::size_t x = 0; x < amb.num_classes(); ++x) {
          if (amb.element_order(x) != o) {
            continue;
          }
          auto const ps = prime_divisors(o);
          bool       ok = std::all_of(ps.begin(), ps.end(), [&](std::uint32_t p) {
            return have.count(power_class(amb, x, p)) != 0;
          });
          if (ok) {
            cands.push_back(x);
          }
        }
        if (cands.empty()) {
          throw InconsistentFact("no class of order " + std::to_string(o)
                                 + " has all its prime powers in the deduced set");
        }
        if (cands.size() == 1) {
          stack.push_back(cands[0]);
          close();
          progress = true;
        } else {
          out.unresolved.push_back(o);
        }
      }
    }
    out.classes.assign(have.begin(), have.end());
    return out;
  }

  std::vector<std::string> class_labels(CharacterTable const&           t,
                                        std::vector<std::size_t> const& classes) {
    std::vector<std::string> out;
    for (auto c : classes) {
      out.push_back(t.classes.at(c).name);
    }
    return out;
  }

  nlohmann::json to_json(FusionFact const& f) {
    nlohmann::json powers = nlohmann::json::array();
    for (auto const& [k, label] : f.powers) {
      powers.push_back({k, label});
    }
    return {{"label", f.label},
            {"order", f.element_order},
            {"chi", f.chi ? to_json(*f.chi) : nlohmann::json()},
            {"powers", powers},
            {"class", f.subgroup_class ? nlohmann::json(*f.subgroup_class) : nlohmann::json()},
            {"source", fact_source_name(f.source)}};
  }

  FusionFact fact_from_json(nlohmann::json const& j) {
    if (!j.is_object()) {
      throw FormatError("fact must be an object");
    }
    FusionFact f;
    if (!j.contains("label") || !j["label"].is_string()) {
      throw FormatError("fact needs a string \"label\"");
    }
    f.label = j["label"].get<std::string>();
    if (!j.contains("order") || !j["order"].is_number_unsigned() || j["order"] == 0) {
      throw FormatError("fact " + f.label + " needs a positive \"order\"");
    }
    f.element_order = j["order"].get<std::uint32_t>();
    if (j.contains("chi") && !j["chi"].is_null()) {
      f.chi = cyclotomic_from_json(j["chi"]);
    }
    if (j.contains("powers")) {
      if (!j["powers"].is_array()) {
        throw FormatError("fact " + f.label + ": \"powers\" must be an array");
      }
      for (auto const& p : j["powers"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_string()) {
          throw FormatError("fact " + f.label + ": power entries are [k, \"class\"]");
        }
        f.powers.emplace_back(p[0].get<std::int64_t>(), p[1].get<std::string>());
      }
    }
    if (j.contains("class") && !j["class"].is_null()) {
      if (!j["class"].is_string()) {
        throw FormatError("fact " + f.label + ": \"class\" must be a string");
      }
      f.subgroup_class = j["class"].get<std::string>();
    }
    std::string const source = j.value("source", std::string("paper-fixture"));
    if (source == "paper-fixture") {
      f.source = FactSource::paper_fixture;
    } else if (source == "bridge-computed") {
      f.source = FactSource::bridge_computed;
    } else {
      throw FormatError("fact " + f.label + ": unknown source " + source);
    }
    return f;
  }

  nlohmann::json facts_to_json(std::vector<FusionFact> const& facts) {
    nlohmann::json j = nlohmann::json::array();
    for (auto const& f : facts) {
      j.push_back(to_json(f));
    }
    return j;
  }

  std::vector<FusionFact> facts_from_json(nlohmann::json const& j) {
    if (!j.is_array()) {
      throw FormatError("facts file must be a JSON array");
    }
    std::vector<FusionFact> facts;
    for (auto const& x : j) {
      facts.push_back(fact_from_json(x));
    }
    return facts;
  }

  std::vector<FusionFact> load_facts(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw FormatError("cannot open facts file " + path.string());
    }
    try {
      return facts_from_json(nlohmann::json::parse(in));
    } catch (nlohmann::json::exception const& e) {
      throw FormatError("malformed JSON in " + path.string() + ": " + e.what());
    }
  }

  void save_facts(std::vector<FusionFact> const& facts, std::filesystem::path const& path) {
    std::ofstream out(path);
    if (!out) {
      throw FormatError("cannot write facts file " + path.string());
    }
    out << facts_to_json(facts).dump(2) << '\n';
  }

  std::vector<std::string> facts_diff(std::vector<FusionFact> const& a,
                                      std::vector<FusionFact> const& b) {
    std::map<std::string, FusionFact const*> lookup_b;
    for (auto const& f : b) {
      lookup_b.emplace(f.label, &f);
    }
    std::vector<std::string> out;
    auto opt = [](auto const& o, auto&& str) { return o ? str(*o) : std::string("none"); };
    for (auto const& f : a) {
      auto it = lookup_b.find(f.label);
      if (it == lookup_b.end()) {
        out.push_back("absent in second file: " + f.label);
        continue;
      }
      FusionFact const& g = *it->second;
      if (f.element_order != g.element_order) {
        out.push_back(f.label + ": order " + std::to_string(f.element_order) + " != "
                      + std::to_string(g.element_order));
      }
      auto chi_str = [](Cyclotomic const& c) { return c.to_string(); };
      if (f.chi != g.chi) {
        out.push_back(f.label + ": chi " + opt(f.chi, chi_str) + " != " + opt(g.chi, chi_str));
      }
      if (f.powers != g.powers) {
        out.push_back(f.label + ": powers " + powers_string(f.powers)
                      + " != " + powers_string(g.powers));
      }
      auto id = [](std::string const& s) { return s; };
      if (f.subgroup_class != g.subgroup_class) {
        out.push_back(f.label + ": class " + opt(f.subgroup_class, id)
                      + " != " + opt(g.subgroup_class, id));
      }
      lookup_b.erase(it);
    }
    for (auto const& f : b) {
      if (lookup_b.count(f.label) != 0) {
        out.push_back("absent in first file: " + f.label);
      }
    }
    return out;
  }

}  // namespace ctfuse
