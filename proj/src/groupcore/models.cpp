#include "ctfuse/groupcore/models.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ctfuse/error.hpp"
#include "ctfuse/groupcore/labeling.hpp"

namespace ctfuse::groupcore {

  namespace {

    std::set<Mat2> mat_closure(std::vector<Mat2> const& gens, std::int64_t p) {
      std::set<Mat2>    seen{{1, 0, 0, 1}};
      std::vector<Mat2> queue{{1, 0, 0, 1}};
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (auto const& g : gens) {
          Mat2 const y = mat_mul(queue[i], g, p);
          if (seen.insert(y).second) {
            queue.push_back(y);
          }
        }
      }
      return seen;
    }

    bool commute(Mat2 const& a, Mat2 const& b, std::int64_t p) {
      return mat_mul(a, b, p) == mat_mul(b, a, p);
    }

    std::uint64_t generated_order(std::size_t degree, std::vector<Perm> gens, std::uint64_t bound) {
      PermGroup h(degree, std::move(gens));
      try {
        return h.enumerate(bound);
      } catch (ResourceError const&) {
        return bound + 1;
      }
    }

    std::vector<Word> relations(char const* s) {
      return parse_relations(s, "ab");
    }

    Perm affine_translation(PermGroup const& g, std::size_t i) {
      return g.generators().at(i);
    }

  }  // namespace

  std::vector<ModelSpec> const& model_specs() {
    static std::vector<ModelSpec> const specs{
        {"l2_11_sq4", 4ull * 660 * 660,
         "two projective-line copies of PSL2(11) on 24 points, swapped by an element of order 4"},
        {"sylow11", 121ull * 5 * 120, "affine 11^2:(5x2A5) on 121 points"},
        {"7b_pure", 49ull * 336, "affine 7^2:SL2(7) on 49 points"},
        {"pgl2_19", 19ull * 18 * 20, "PGL2(19) on the 20 points of the projective line"},
    };
    return specs;
  }

  ModelSpec const& model_spec(std::string const& id) {
    for (auto const& s : model_specs()) {
      if (s.id == id) {
        return s;
      }
    }
    throw PreconditionError("unknown model " + id);
  }

  Sylow11Linear sylow11_linear() {
    constexpr std::int64_t p = 11;
    std::vector<Mat2>      order4, order3;
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        for (std::int64_t c = 0; c < p; ++c) {
          for (std::int64_t d = 0; d < p; ++d) {
            Mat2 const m{a, b, c, d};
            if (mat_det(m, p) != 1) {
              continue;
            }
            // in SL2 the trace fixes the order of semisimple elements
            if ((a + d) % p == 0) {
              order4.push_back(m);
            } else if ((a + d) % p == p - 1) {
              order3.push_back(m);
            }
          }
        }
      }
    }
    for (auto const& x4 : order4) {
      for (auto const& x3 : order3) {
        if (mat_order(mat_mul(x4, x3, p), p) == 5 && mat_closure({x4, x3}, p).size() == 120) {
          return {x3, x4, {3, 0, 0, 3}};
        }
      }
    }
    throw Error("no 2A5 found in SL2(11)");
  }

  PermGroup build_model(std::string const& id) {
    if (id == "l2_11_sq4") {
      Perm const shift = mobius_perm(1, 1, 0, 1, 11);
      Perm const inv   = mobius_perm(0, 10, 1, 0, 11);
      Perm const neg   = mobius_perm(10, 0, 0, 1, 11);
      Perm       g1 = identity_perm(24), g2 = identity_perm(24), t(24);
      for (std::size_t i = 0; i < 12; ++i) {
        g1[i]      = shift[i];
        g2[i]      = inv[i];
        t[i]       = static_cast<Point>(12 + i);
        t[12 + i]  = neg[i];
      }
      return PermGroup(24, {g1, g2, t});
    }
    if (id == "sylow11") {
      auto const l = sylow11_linear();
      return build_affine(11, {l.x3, l.x4, l.x5});
    }
    if (id == "7b_pure") {
      return build_affine(7, {{1, 1, 0, 1}, {0, 6, 1, 0}});
    }
    if (id == "pgl2_19") {
      return build_projective(19, true);
    }
    if (id == "l2_11") {
      return build_projective(11, false);
    }
    throw PreconditionError("unknown model " + id);
  }

  std::optional<Perm> find_presentation_partner(PermGroup&                              g,
                                                Perm const&                             b,
                                                std::vector<Word> const&                relators,
                                                std::function<bool(Perm const&)> const& filter) {
    std::uint64_t const n = g.enumerate();
    for (std::size_t i = 0; i < n; ++i) {
      Perm a = g.element_perm(i);
      if (filter && !filter(a)) {
        continue;
      }
      if (!check_relators({a, b}, relators).ok) {
        continue;
      }
      if (generated_order(g.degree(), {a, b}, n) == n) {
        return a;
      }
    }
    return std::nullopt;
  }

  std::vector<OraclePair> oracle_pairs() {
    auto sym = [](std::size_t n, std::size_t k) {
      // S_k on the first k of n points
      std::vector<std::size_t> cyc(k);
      std::iota(cyc.begin(), cyc.end(), 1);
      return std::vector<Perm>{from_cycles(n, {cyc}), from_cycles(n, {{1, 2}})};
    };
    auto alt = [](std::size_t n, std::size_t k) {
      std::vector<Perm> gens;
      for (std::size_t i = 3; i <= k; ++i) {
        gens.push_back(from_cycles(n, {{1, 2, i}}));
      }
      return gens;
    };
    PermGroup seven = build_model("7b_pure");
    PermGroup translations(49, {seven.generators()[0], seven.generators()[1]});

    std::vector<OraclePair> pairs;
    pairs.push_back({"a5", "s5", PermGroup(5, alt(5, 5)), PermGroup(5, sym(5, 5))});
    pairs.push_back({"s4", "s5", PermGroup(5, sym(5, 4)), PermGroup(5, sym(5, 5))});
    pairs.push_back({"a4", "a5", PermGroup(5, alt(5, 4)), PermGroup(5, alt(5, 5))});
    pairs.push_back({"s3", "s4", PermGroup(4, sym(4, 3)), PermGroup(4, sym(4, 4))});
    pairs.push_back({"c7xc7", "7b_pure", std::move(translations), std::move(seven)});
    return pairs;
  }

  CheckResult check_psl2_11_presentation() {
    PermGroup  g = build_model("l2_11");
    Perm const b = mobius_perm(1, 1, 0, 1, 11);
    CheckResult r{"PSL2(11) presentation " + std::string(psl2_11_relations), false, {}};
    auto a = find_presentation_partner(g, b, relations(psl2_11_relations));
    if (!a) {
      r.detail = "no generating pair with b = x+1";
      return r;
    }
    std::uint64_t const o5 = perm_order(evaluate(parse_word("ab^3"), {*a, b}));
    r.ok     = g.order() == 660 && o5 == 5;
    r.detail = "order " + std::to_string(g.order()) + ", ab^3 has order " + std::to_string(o5);
    return r;
  }

  CheckResult check_pgl2_19_presentation(PermGroup& g) {
    Perm const  b = mobius_perm(1, 1, 0, 1, 19);
    CheckResult r{"PGL2(19) presentation " + std::string(pgl2_19_relations), false, {}};
    auto        a = find_presentation_partner(g, b, relations(pgl2_19_relations));
    r.ok          = a.has_value();
    r.detail      = r.ok ? "generating pair found with b = x+1" : "no generating pair with b = x+1";
    return r;
  }

  CheckResult check_type_b_a5(PermGroup& g) {
    Perm const  b = mobius_perm(1, 1, 0, 1, 19);
    CheckResult r{"A5 from g2 = (b^2a)^2, g3 = ab^2ab", false, {}};
    auto        a = find_presentation_partner(g, b, relations(pgl2_19_relations));
    if (!a) {
      r.detail = "no generating pair";
      return r;
    }
    Perm const g2 = evaluate(parse_word("(b^2a)^2"), {*a, b});
    Perm const g3 = evaluate(parse_word("ab^2ab"), {*a, b});
    bool const rel = check_relators({g2, g3}, relations(a5_relations)).ok;
    std::uint64_t const order = generated_order(g.degree(), {g2, g3}, g.order());
    r.ok     = rel && order == 60;
    r.detail = std::string(rel ? "relations hold" : "relations fail") + ", order "
               + std::to_string(order);
    return r;
  }

  CheckResult check_sl2_7_presentation(PermGroup& g) {
    CheckResult r{"SL2(7) presentation " + std::string(sl2_7_relations), false, {}};
    PermGroup   lin(g.degree(), {g.generators().at(2), g.generators().at(3)});
    lin.enumerate();
    auto const rels = relations(sl2_7_relations);
    for (auto c : classes_of_order(lin, 14)) {
      Perm const b = lin.element_perm(lin.conjugacy_classes()[c].representative);
      auto a = find_presentation_partner(lin, b, rels, [](Perm const& x) { return perm_order(x) == 4; });
      if (a) {
        r.ok     = lin.order() == 336;
        r.detail = "linear part of order " + std::to_string(lin.order())
                   + ", |a| = 4, |b| = 14";
        return r;
      }
    }
    r.detail = "no generating pair with |a| = 4, |b| = 14";
    return r;
  }

  CheckResult check_order7_class_count(PermGroup& g) {
    auto const n = classes_of_order(g, 7).size();
    return {"classes of elements of order 7", n == 9, std::to_string(n) + " classes"};
  }

  CheckResult check_normal_7_squared_pure(PermGroup& g) {
    PermGroup a(g.degree(), {affine_translation(g, 0), affine_translation(g, 1)});
    a.enumerate();
    auto const f = fusion_oracle(a, g);
    std::set<std::size_t> images;
    bool                  ok = a.order() == 49;
    for (std::size_t c = 1; c < f.size(); ++c) {
      images.insert(f[c]);
      ok &= g.conjugacy_classes()[f[c]].element_order == 7;
    }
    ok &= images.size() == 1 && g.conjugacy_classes()[*images.begin()].size == 48;
    return {"normal 7^2 meets one class of order 7", ok,
            std::to_string(images.size()) + " ambient class(es)"};
  }

  CheckResult check_representative_set(PermGroup& g) {
    CheckResult r{"z7^i z14^2 and cubes represent the classes with centraliser 49", false, {}};
    auto const& cls = g.conjugacy_classes();
    std::set<std::size_t> target;
    for (std::size_t c = 0; c < cls.size(); ++c) {
      if (cls[c].element_order == 7 && g.order() / cls[c].size == 49) {
        target.insert(c);
      }
    }
    PermGroup a(g.degree(), {affine_translation(g, 0), affine_translation(g, 1)});
    a.enumerate();
    std::vector<Perm> z14s;
    for (std::size_t i = 0; i < g.order(); ++i) {
      Perm x = g.element_perm(i);
      if (perm_order(x) == 14) {
        z14s.push_back(std::move(x));
      }
    }
    std::uint64_t pairs = 0;
    for (std::size_t i = 1; i < a.order(); ++i) {
      Perm const        z7 = a.element_perm(i);
      std::vector<Perm> cyclic;
      for (int k = 0; k < 7; ++k) {
        cyclic.push_back(power(z7, k));
      }
      for (auto const& z14 : z14s) {
        Perm const conj = compose(compose(inverse(z14), z7), z14);
        if (std::find(cyclic.begin(), cyclic.end(), conj) != cyclic.end()) {
          continue;
        }
        Perm const            sq = compose(z14, z14);
        std::set<std::size_t> hit;
        for (int k = 1; k <= 3; ++k) {
          Perm const e = compose(cyclic[k], sq);
          hit.insert(g.class_of(*g.index_of(e)));
          hit.insert(g.class_of(*g.index_of(power(e, 3))));
        }
        ++pairs;
        if (hit != target || hit.size() != 6) {
          r.detail = "pair " + std::to_string(pairs) + " hits " + std::to_string(hit.size())
                     + " classes";
          return r;
        }
      }
    }
    r.ok     = pairs > 0 && target.size() == 6;
    r.detail = std::to_string(pairs) + " pairs (z7, z14), " + std::to_string(target.size())
               + " target classes";
    return r;
  }

  std::vector<CheckResult> check_sylow11_structure() {
    constexpr std::int64_t   p = 11;
    auto const               l = sylow11_linear();
    Mat2 const               x2 = mat_mul(l.x4, l.x4, p);
    std::vector<CheckResult> out;

    out.push_back({"x5 commutes with x3 and x4",
                   commute(l.x5, l.x3, p) && commute(l.x5, l.x4, p), {}});
    out.push_back({"x2 = x4^2 central in <x3, x4>",
                   commute(x2, l.x3, p) && commute(x2, l.x4, p) && x2 != Mat2{1, 0, 0, 1}, {}});

    auto const two_a5 = mat_closure({l.x3, l.x4}, p);
    auto const b      = mat_closure({l.x3, l.x4, l.x5}, p);
    out.push_back({"|<x3, x4>| = 120 and |<x3, x4, x5>| = 600",
                   two_a5.size() == 120 && b.size() == 600,
                   std::to_string(two_a5.size()) + ", " + std::to_string(b.size())});

    std::vector<Perm> const gens{linear_perm(l.x4, p), linear_perm(l.x3, p)};
    std::vector<Perm> const centre{linear_perm(x2, p)};
    bool const a5_ok = check_relators_modulo(gens, relations(a5_relations), centre).ok;
    out.push_back({"a = x4, b = x3 satisfy " + std::string(a5_relations) + " modulo <x2>", a5_ok, {}});

    // The relations a^2 = b^2 = (ab)^5 = 1 describe a dihedral group of
    // order 10: no pair satisfying them modulo <x2> generates 2A5.
    auto in_centre = [&](Mat2 const& m) { return m == Mat2{1, 0, 0, 1} || m == x2; };
    std::size_t best = 0, pairs = 0;
    for (auto const& a : two_a5) {
      if (!in_centre(mat_mul(a, a, p))) {
        continue;
      }
      for (auto const& c : two_a5) {
        if (!in_centre(mat_mul(c, c, p))) {
          continue;
        }
        Mat2 ab = mat_mul(a, c, p), x = ab;
        for (int k = 1; k < 5; ++k) {
          x = mat_mul(x, ab, p);
        }
        if (!in_centre(x)) {
          continue;
        }
        ++pairs;
        best = std::max(best, mat_closure({a, c, x2}, p).size());
      }
    }
    out.push_back({"pairs satisfying " + std::string(dihedral_relations)
                       + " modulo <x2> never generate 2A5",
                   pairs > 0 && best < 120,
                   std::to_string(pairs) + " pairs, largest subgroup " + std::to_string(best)});
    return out;
  }

  ModelReport verify_model(std::string const& id, CharacterTable const& table) {
    ModelSpec const& spec = model_spec(id);
    ModelReport      report{id, {}};
    PermGroup        g = build_model(id);
    std::uint64_t    n = 0;
    try {
      n = g.enumerate(spec.expected_order + 1);
    } catch (ResourceError const& e) {
      report.checks.push_back({"order", false, e.what()});
      return report;
    }
    report.checks.push_back({"order", n == spec.expected_order,
                             std::to_string(n) + ", expected "
                                 + std::to_string(spec.expected_order)});
    std::string detail;
    bool const  multiset = class_multiset_matches(g, table, &detail);
    report.checks.push_back({"class (order, size) multiset vs " + table.name, multiset,
                             multiset ? std::to_string(g.conjugacy_classes().size()) + " classes"
                                      : detail});
    Labeling const lab = label_classes(g, table);
    report.checks.push_back({"power-map fingerprints vs " + table.name, lab.matches,
                             lab.matches ? std::to_string(lab.ambiguous.size())
                                               + " indistinguishable group(s)"
                                         : lab.mismatches.front()});
    if (id == "l2_11_sq4") {
      report.checks.push_back(check_psl2_11_presentation());
    } else if (id == "sylow11") {
      for (auto& c : check_sylow11_structure()) {
        report.checks.push_back(std::move(c));
      }
    } else if (id == "7b_pure") {
      report.checks.push_back(check_order7_class_count(g));
      report.checks.push_back(check_normal_7_squared_pure(g));
      report.checks.push_back(check_representative_set(g));
      report.checks.push_back(check_sl2_7_presentation(g));
    } else if (id == "pgl2_19") {
      report.checks.push_back(check_pgl2_19_presentation(g));
      report.checks.push_back(check_type_b_a5(g));
    }
    return report;
  }

}  // namespace ctfuse::groupcore
