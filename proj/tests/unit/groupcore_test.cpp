#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ctfuse/error.hpp"
#include "ctfuse/fusion.hpp"
#include "ctfuse/groupcore/builders.hpp"
#include "ctfuse/groupcore/labeling.hpp"
#include "ctfuse/groupcore/models.hpp"
#include "ctfuse/groupcore/perm.hpp"
#include "ctfuse/groupcore/perm_group.hpp"
#include "ctfuse/groupcore/words.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ctfuse;
using namespace ctfuse::groupcore;
using ctfuse::test::fixture;
using ctfuse::test::uniform;

namespace {

  Perm random_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), ctfuse::test::rng());
    return p;
  }

  Perm naive_compose(Perm const& a, Perm const& b) {
    Perm out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i] = b[a[i]];
    }
    return out;
  }

  std::uint64_t naive_order(Perm const& p) {
    Perm          x = p;
    std::uint64_t k = 1;
    while (!is_identity(x)) {
      x = naive_compose(x, p);
      ++k;
    }
    return k;
  }

  std::size_t partitions(std::size_t n, std::size_t max) {
    if (n == 0) {
      return 1;
    }
    std::size_t total = 0;
    for (std::size_t k = 1; k <= std::min(n, max); ++k) {
      total += partitions(n - k, k);
    }
    return total;
  }

  std::vector<Kernel> supported_kernels() {
    std::vector<Kernel> ks;
    for (Kernel k : {Kernel::scalar, Kernel::ssse3, Kernel::avx2}) {
      if (kernel_supported(k)) {
        ks.push_back(k);
      }
    }
    return ks;
  }

  struct KernelGuard {
    Kernel saved = active_kernel();
    ~KernelGuard() {
      set_kernel(saved);
    }
  };

}  // namespace

TEST_SUITE("groupcore") {
  TEST_CASE("compose kernels agree with the reference") {
    CHECK(kernel_supported(Kernel::scalar));
    for (std::size_t n = 1; n <= max_degree; ++n) {
      for (int trial = 0; trial < 4; ++trial) {
        Perm const a = random_perm(n), b = random_perm(n);
        Perm const expected = naive_compose(a, b);
        for (Kernel k : supported_kernels()) {
          Perm out(n);
          compose_fn(k)(a.data(), b.data(), out.data(), n);
          CAPTURE(n);
          CAPTURE(kernel_name(k));
          CHECK(out == expected);
        }
      }
    }
  }

  TEST_CASE("kernel selection") {
    KernelGuard guard;
    for (Kernel k : supported_kernels()) {
      set_kernel(k);
      CHECK(active_kernel() == k);
      PermGroup g(5, {from_cycles(5, {{1, 2, 3, 4, 5}}), from_cycles(5, {{1, 2}})});
      CHECK(g.enumerate() == 120);
      CHECK(g.conjugacy_classes().size() == 7);
    }
    for (Kernel k : {Kernel::ssse3, Kernel::avx2}) {
      if (!kernel_supported(k)) {
        CHECK_THROWS_AS(set_kernel(k), PreconditionError);
      }
    }
  }

  TEST_CASE("permutation helpers") {
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t const n = static_cast<std::size_t>(uniform(1, 40));
      Perm const a = random_perm(n), b = random_perm(n);
      CHECK(is_permutation(a));
      CHECK(compose(a, b) == naive_compose(a, b));
      CHECK(is_identity(compose(a, inverse(a))));
      CHECK(perm_order(a) == naive_order(a));
      std::int64_t const k = uniform(-30, 30);
      Perm               expected = identity_perm(n);
      for (std::int64_t i = 0; i < std::abs(k); ++i) {
        expected = naive_compose(expected, k < 0 ? inverse(a) : a);
      }
      CHECK(power(a, k) == expected);
    }
    CHECK(from_cycles(5, {{1, 2, 3}, {4, 5}}) == Perm{1, 2, 0, 4, 3});
    CHECK_THROWS_AS(from_cycles(3, {{1, 2}, {2, 3}}), PreconditionError);
    CHECK_THROWS_AS(from_cycles(3, {{1, 4}}), PreconditionError);
    CHECK_FALSE(is_permutation(Perm{0, 0, 1}));
  }

  TEST_CASE("symmetric and alternating groups") {
    for (std::size_t n = 2; n <= 7; ++n) {
      std::vector<std::size_t> cyc(n);
      std::iota(cyc.begin(), cyc.end(), 1);
      PermGroup sym(n, {from_cycles(n, {cyc}), from_cycles(n, {{1, 2}})});
      std::uint64_t fact = 1;
      for (std::size_t i = 2; i <= n; ++i) {
        fact *= i;
      }
      CHECK(sym.enumerate() == fact);
      CHECK(sym.conjugacy_classes().size() == partitions(n, n));
      std::uint64_t total = 0;
      for (std::size_t c = 0; c < sym.conjugacy_classes().size(); ++c) {
        auto const& cl = sym.conjugacy_classes()[c];
        total += cl.size;
        CHECK(fact % cl.size == 0);
        for (std::int64_t k = 1; k <= 6; ++k) {
          auto const& pc = sym.conjugacy_classes()[sym.class_power(c, k)];
          CHECK(pc.element_order == cl.element_order / std::gcd<std::uint32_t>(cl.element_order, k));
        }
      }
      CHECK(total == fact);
    }
    PermGroup a5(5, {from_cycles(5, {{1, 2, 3}}), from_cycles(5, {{1, 2, 4}}), from_cycles(5, {{1, 2, 5}})});
    CHECK(a5.enumerate() == 60);
    CHECK(a5.conjugacy_classes().size() == 5);
    CHECK(classes_of_order(a5, 5).size() == 2);
    PermGroup s7(7, {from_cycles(7, {{1, 2, 3, 4, 5, 6, 7}}), from_cycles(7, {{1, 2}})});
    CHECK_THROWS_AS(s7.enumerate(1000), ResourceError);
    CHECK_THROWS_AS(PermGroup(3, {Perm{0, 1}}), PreconditionError);
  }

  TEST_CASE("projective and affine builders") {
    auto psl11 = build_projective(11, false);
    CHECK(psl11.degree() == 12);
    CHECK(psl11.enumerate() == 11 * (121 - 1) / 2);
    auto pgl19 = build_projective(19, true);
    CHECK(pgl19.degree() == 20);
    CHECK(pgl19.enumerate() == 19 * (361 - 1));
    auto s3 = build_projective(2, false);
    CHECK(s3.degree() == 3);
    CHECK(s3.enumerate() == 6);
    for (std::int64_t q : {3, 5, 7, 13}) {
      CHECK(build_projective(q, true).enumerate() == static_cast<std::uint64_t>(q * (q * q - 1)));
    }
    CHECK_THROWS_AS(build_projective(29, true), PreconditionError);
    CHECK_THROWS_AS(build_projective(9, true), PreconditionError);

    // SL2(p) has order p(p^2 - 1)
    auto sl27 = build_affine(7, {{1, 1, 0, 1}, {0, 6, 1, 0}});
    CHECK(sl27.degree() == 49);
    CHECK(sl27.enumerate() == 49 * 7 * 48);
    CHECK_THROWS_AS(build_affine(17, {}), PreconditionError);

    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(19) == 2);
    CHECK(mat_order({0, 6, 1, 0}, 7) == 4);
    CHECK(mat_det({1, 2, 3, 4}, 7) == 5);
    CHECK(mat_mul({1, 1, 0, 1}, {1, 1, 0, 1}, 7) == Mat2{1, 2, 0, 1});
    CHECK(is_permutation(linear_perm({2, 0, 0, 4}, 7)));
    CHECK(mobius_perm(1, 1, 0, 1, 5) == Perm{1, 2, 3, 4, 0, 5});
    CHECK_THROWS_AS(mobius_perm(1, 1, 1, 1, 5), PreconditionError);
  }

  TEST_CASE("words and relators") {
    CHECK(parse_word("ab") == Word{{0, 1}, {1, 1}});
    CHECK(parse_word("a*b") == parse_word("ab"));
    CHECK(parse_word("aa^-1b") == Word{{1, 1}});
    CHECK(parse_word("(ab)^-1") == Word{{1, -1}, {0, -1}});
    CHECK(parse_word("1").empty());
    CHECK(parse_word("(ab^2)^2").size() == 6);
    CHECK_THROWS_AS(parse_word("ac"), ParseError);
    CHECK_THROWS_AS(parse_word("(ab"), ParseError);
    CHECK_THROWS_AS(parse_word("a*"), ParseError);
    CHECK_THROWS_AS(parse_word(""), ParseError);
    CHECK(parse_relations("a^2 = b^3 = (ab)^5 = 1").size() == 3);
    CHECK(parse_relations("ab = ba").size() == 1);

    Perm const a = from_cycles(5, {{1, 2}, {3, 4}});
    Perm const b = from_cycles(5, {{1, 3, 5}});
    CHECK(evaluate(parse_word("ab"), {a, b}) == compose(a, b));
    auto const rels = parse_relations(a5_relations);
    auto const check = check_relators({a, b}, rels);
    CHECK(check.ok == (perm_order(compose(a, b)) == 5));
    auto const bad = check_relators({a, a}, rels);
    CHECK_FALSE(bad.ok);
    CHECK(bad.first_failure == std::size_t{1});
    CHECK(check_relators_modulo({a, a}, parse_relations("b^3 = 1"), {a}).ok);
  }

  TEST_CASE("A5 presentation holds on a generating pair, the dihedral one does not") {
    PermGroup a5(5, {from_cycles(5, {{1, 2, 3}}), from_cycles(5, {{1, 2, 4}}), from_cycles(5, {{1, 2, 5}})});
    a5.enumerate();
    Perm const b = from_cycles(5, {{1, 2, 3}});
    auto const a = find_presentation_partner(a5, b, parse_relations(a5_relations));
    REQUIRE(a.has_value());
    CHECK(perm_order(*a) == 2);
    // a^2 = b^2 = (ab)^5 = 1 only ever generates a dihedral group of order <= 10
    std::size_t largest = 0;
    for (std::size_t i = 0; i < a5.order(); ++i) {
      for (std::size_t j = 0; j < a5.order(); ++j) {
        Perm const x = a5.element_perm(i), y = a5.element_perm(j);
        if (check_relators({x, y}, parse_relations(dihedral_relations)).ok) {
          PermGroup h(5, {x, y});
          largest = std::max<std::size_t>(largest, h.enumerate());
        }
      }
    }
    CHECK(largest == 10);
  }

  TEST_CASE("labeling small groups") {
    PermGroup s5(5, {from_cycles(5, {{1, 2, 3, 4, 5}}), from_cycles(5, {{1, 2}})});
    auto const ls = label_classes(s5, fixture("s5"));
    CHECK(ls.unique());
    PermGroup a5(5, {from_cycles(5, {{1, 2, 3}}), from_cycles(5, {{1, 2, 4}}), from_cycles(5, {{1, 2, 5}})});
    auto const la = label_classes(a5, fixture("a5"));
    CHECK(la.matches);
    REQUIRE(la.ambiguous.size() == 1);
    CHECK(la.ambiguous[0] == std::vector<std::size_t>{3, 4});
    CHECK_FALSE(label_classes(a5, fixture("s5")).matches);
    std::string detail;
    CHECK_FALSE(class_multiset_matches(a5, fixture("a4"), &detail));
    CHECK(!detail.empty());
  }

  TEST_CASE("oracle fusions lie in the search results") {
    for (auto& pair : oracle_pairs()) {
      auto const& st = fixture(pair.sub_table);
      auto const& at = fixture(pair.amb_table);
      auto const  oracle = fusion_oracle(pair.sub, pair.amb);
      auto const  sl     = label_classes(pair.sub, st);
      auto const  al     = label_classes(pair.amb, at);
      REQUIRE(sl.matches);
      REQUIRE(al.matches);
      // narrowing to the oracle's images keeps exactly the agreeing maps of
      // the full result, and keeps the 7^2 case small
      auto const narrow = intersect(init_candidates(st, at), oracle_candidates(oracle, sl, al));
      auto const maps   = search(st, at, propagate(narrow, st, at)).maps;
      std::size_t agreeing = 0;
      for (auto const& f : maps) {
        agreeing += oracle_agrees(oracle, sl, al, f) ? 1 : 0;
      }
      CAPTURE(pair.sub_table);
      CHECK(agreeing >= 1);
      // a map sending everything to the identity class is never the oracle
      FusionMap trivial(st.num_classes(), 0);
      CHECK_FALSE(oracle_agrees(oracle, sl, al, trivial));
      if (pair.sub_table != "c7xc7") {
        auto const full = possible_class_fusions(st, at).maps;
        for (auto const& f : maps) {
          CHECK(std::count(full.begin(), full.end(), f) == 1);
        }
      }
    }
  }

  TEST_CASE("oracle rejects foreign generators") {
    PermGroup s4(5, {from_cycles(5, {{1, 2, 3, 4}}), from_cycles(5, {{1, 2}})});
    PermGroup a5(5, {from_cycles(5, {{1, 2, 3}}), from_cycles(5, {{1, 2, 4}}), from_cycles(5, {{1, 2, 5}})});
    CHECK_THROWS_AS(fusion_oracle(s4, a5), PreconditionError);
  }

  TEST_CASE("model orders match closed forms") {
    for (auto const& spec : model_specs()) {
      auto g = build_model(spec.id);
      CAPTURE(spec.id);
      CHECK(g.enumerate() == spec.expected_order);
      CHECK(class_multiset_matches(g, fixture(spec.id)));
    }
    CHECK(model_spec("sylow11").expected_order == 11u * 11 * 5 * 120);
    CHECK_THROWS_AS(build_model("nope"), PreconditionError);
  }

  TEST_CASE("structural checks") {
    CHECK(check_psl2_11_presentation().ok);
    for (auto const& c : check_sylow11_structure()) {
      CAPTURE(c.name);
      CHECK(c.ok);
    }
    auto const l = sylow11_linear();
    CHECK(mat_order(l.x3, 11) == 3);
    CHECK(mat_order(l.x4, 11) == 4);
    CHECK(mat_order(l.x5, 11) == 5);
    auto pgl = build_model("pgl2_19");
    CHECK(check_pgl2_19_presentation(pgl).ok);
    CHECK(check_type_b_a5(pgl).ok);
  }

  TEST_CASE("model verification fails on a perturbed table") {
    CharacterTable t = fixture("pgl2_19");
    CHECK(verify_model("pgl2_19", t).ok());
    // swap the sizes of two classes of different orders
    std::size_t const i = 1, j = t.num_classes() - 1;
    REQUIRE(t.classes[i].size != t.classes[j].size);
    std::swap(t.classes[i].size, t.classes[j].size);
    CHECK_FALSE(verify_model("pgl2_19", t).ok());
  }
}
