#include <algorithm>
#include <numeric>
#include <set>

#include "ctfuse/chartab.hpp"
#include "ctfuse/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace ctfuse;
using ctfuse::test::fixture;

namespace {

  std::vector<std::string> const small_ids{"trivial", "s3", "s4", "a4", "a5", "s5", "c7xc7", "l2_11"};
  std::vector<std::string> const subgroup_ids{"l2_11_sq4", "sylow11", "7b_pure", "pgl2_19"};

  std::vector<std::string> all_ids() {
    auto ids = small_ids;
    ids.insert(ids.end(), subgroup_ids.begin(), subgroup_ids.end());
    ids.push_back("monster");
    return ids;
  }

  bool has_issue(ValidationReport const& r, std::string const& check) {
    return std::any_of(r.issues.begin(), r.issues.end(),
                       [&](ValidationIssue const& i) { return i.check == check; });
  }

}  // namespace

TEST_SUITE("chartab") {
  TEST_CASE("shipped tables validate") {
    for (auto const& id : all_ids()) {
      auto const report = validate(fixture(id));
      CAPTURE(id);
      CAPTURE(report.summary());
      CHECK(report.ok());
    }
  }

  TEST_CASE("Monster fixture shape") {
    auto const& m = fixture("monster");
    CHECK(m.num_classes() == 194);
    CHECK(m.irreducibles.size() == 194);
    CHECK(m.group_order == mpz_class("808017424794512875886459904961710757005754368000000000"));
    REQUIRE(m.distinguished.has_value());
    CHECK(m.irreducibles[*m.distinguished][0] == Cyclotomic(196883));
  }

  TEST_CASE("perturbed tables are rejected") {
    SUBCASE("character value") {
      CharacterTable t = fixture("a5");
      t.irreducibles[3][2] = Cyclotomic(2);
      auto r = validate(t);
      CHECK(has_issue(r, "row-orthogonality"));
      CHECK(has_issue(r, "column-orthogonality"));
    }
    SUBCASE("power map") {
      CharacterTable t = fixture("s5");
      auto& pm = t.power_maps.at(2);
      std::size_t const c = *t.class_index("4a");
      pm[c] = 0;
      CHECK(has_issue(validate(t), "power-map-order"));
    }
    SUBCASE("class size") {
      CharacterTable t = fixture("s4");
      t.classes[1].size += 1;
      auto r = validate(t);
      CHECK(has_issue(r, "class-size"));
      CHECK(has_issue(r, "class-equation"));
    }
    SUBCASE("Monster entry") {
      CharacterTable t = fixture("monster");
      t.irreducibles[5][7] += Cyclotomic(1);
      CHECK_FALSE(validate(t).ok());
    }
    SUBCASE("ragged row is a format error") {
      CharacterTable t = fixture("a4");
      t.irreducibles[1].pop_back();
      CHECK_THROWS_AS(validate(t), FormatError);
    }
  }

  TEST_CASE("irreducibles are orthonormal") {
    for (auto const& id : small_ids) {
      auto const& t = fixture(id);
      for (std::size_t i = 0; i < t.irreducibles.size(); ++i) {
        for (std::size_t j = 0; j < t.irreducibles.size(); ++j) {
          CHECK(scalar_product(t, t.irreducibles[i], j) == Cyclotomic(i == j ? 1 : 0));
        }
      }
    }
  }

  TEST_CASE("coprime power maps permute classes of each order") {
    for (auto const& id : all_ids()) {
      auto const& t = fixture(id);
      for (std::size_t c = 0; c < t.num_classes(); ++c) {
        std::uint32_t const o = t.element_order(c);
        std::set<std::size_t> images;
        for (std::int64_t k = 1; k <= o; ++k) {
          if (std::gcd<std::int64_t>(k, o) == 1) {
            std::size_t const d = power_class(t, c, k);
            CHECK(t.element_order(d) == o);
            images.insert(d);
          }
        }
        // the images form the Galois orbit, which contains c
        CHECK(images.count(c) == 1);
        for (auto d : images) {
          CHECK(power_class(t, d, -1) == power_class(t, d, o - 1));
        }
      }
    }
  }

  TEST_CASE("composite powers agree with repeated prime powers") {
    auto const& t = fixture("monster");
    for (std::size_t c = 0; c < t.num_classes(); ++c) {
      std::uint32_t const o = t.element_order(c);
      for (std::int64_t k : {4, 6, 9, 10, 12, 15, 30}) {
        std::size_t step = c;
        std::int64_t rest = k;
        for (std::uint32_t p : t.primes()) {
          while (rest % p == 0) {
            step = t.power_maps.at(p)[step];
            rest /= p;
          }
        }
        CHECK(power_class(t, c, k) == step);
        CHECK(t.element_order(power_class(t, c, k)) == o / std::gcd<std::uint32_t>(o, k));
      }
    }
  }

  TEST_CASE("rational classes are the classes with rational values") {
    for (auto const& id : all_ids()) {
      auto const& t = fixture(id);
      std::size_t rational_classes = 0, rational_chars = 0;
      for (std::size_t c = 0; c < t.num_classes(); ++c) {
        bool by_values = true;
        for (auto const& chi : t.irreducibles) {
          by_values = by_values && chi[c].is_rational();
        }
        CAPTURE(id);
        CAPTURE(c);
        CHECK(is_rational_class(t, c) == by_values);
        rational_classes += is_rational_class(t, c) ? 1 : 0;
      }
      for (auto const& chi : t.irreducibles) {
        rational_chars += is_rational_character(chi) ? 1 : 0;
      }
      // equal on every shipped table except (L2(11)xL2(11)):4, whose Galois
      // group is not cyclic
      if (id == "l2_11_sq4") {
        CHECK(rational_classes == 21);
        CHECK(rational_chars == 19);
      } else {
        CHECK(rational_classes == rational_chars);
      }
    }
  }

  TEST_CASE("each Galois automorphism fixes as many classes as characters") {
    for (auto const& id : all_ids()) {
      auto const& t = fixture(id);
      auto coprime = [&](std::int64_t k) {
        return std::all_of(t.classes.begin(), t.classes.end(), [&](ClassInfo const& c) {
          return std::gcd<std::int64_t>(k, c.element_order) == 1;
        });
      };
      for (std::int64_t k = -1; k < 60; ++k) {
        if (k == 0 || k == 1 || !coprime(k)) {
          continue;
        }
        std::size_t classes = 0, characters = 0;
        for (std::size_t c = 0; c < t.num_classes(); ++c) {
          classes += power_class(t, c, k) == c ? 1 : 0;
        }
        for (auto const& chi : t.irreducibles) {
          bool fixed = true;
          for (auto const& v : chi) {
            fixed = fixed && v.galois(k) == v;
          }
          characters += fixed ? 1 : 0;
        }
        CAPTURE(id);
        CAPTURE(k);
        CHECK(classes == characters);
      }
    }
  }

  TEST_CASE("Monster rationality examples") {
    auto const& m = fixture("monster");
    CHECK(is_rational_class(m, 0));
    CHECK(is_rational_class(m, m.require_class("7B")));
    for (std::size_t c = 0; c < m.num_classes(); ++c) {
      if (m.element_order(c) == 30) {
        CHECK(is_rational_class(m, c));
      }
    }
    CHECK_FALSE(is_rational_class(fixture("a5"), *fixture("a5").class_index("5a")));
  }

  TEST_CASE("queries") {
    auto const& t = fixture("s5");
    CHECK(t.primes() == std::vector<std::uint32_t>{2, 3, 5});
    CHECK(t.class_index("nope") == std::nullopt);
    CHECK_THROWS_AS(t.require_class("nope"), FormatError);
    CharacterTable broken = t;
    broken.power_maps.erase(3);
    CHECK_THROWS_AS(power_class(broken, *t.class_index("6a"), 3), DataIncompleteError);
    ClassFunction const regular = [&] {
      ClassFunction f(t.num_classes(), Cyclotomic(0));
      f[0] = Cyclotomic(120);
      return f;
    }();
    for (std::size_t i = 0; i < t.irreducibles.size(); ++i) {
      CHECK(scalar_product(t, regular, i) == t.irreducibles[i][0]);
    }
  }

  TEST_CASE("json round trip") {
    for (auto const& id : all_ids()) {
      auto const j = to_json(fixture(id));
      CHECK(to_json(table_from_json(j)) == j);
    }
    CHECK_THROWS_AS(table_from_json(nlohmann::json::parse(R"({"name": "x"})")), FormatError);
  }
}
