#include <random>
#include <set>

#include "bt/rootdata.hpp"
#include "doctest.h"

using namespace bt;

TEST_SUITE("rootdata") {
  TEST_CASE("root counts and Cartan matrices") {
    const std::pair<const char*, std::size_t> counts[] = {{"A1", 2}, {"A2", 6}, {"A3", 12}, {"B2", 8}, {"G2", 12}};
    for (auto [type, n] : counts) CHECK(RootSystem::build(type).roots().size() == n);
    RootSystem a3 = RootSystem::build("A3");
    const int cartan_a3[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(a3.cartan(i, j) == cartan_a3[i][j]);
    RootSystem g2 = RootSystem::build("G2");
    CHECK(g2.cartan(0, 1) * g2.cartan(1, 0) == 3);
    CHECK_THROWS(RootSystem::build("E8"));
  }

  TEST_CASE("roots are stable under all reflections") {
    for (const char* type : {"A1", "A2", "A3", "B2", "G2"}) {
      RootSystem rs = RootSystem::build(type);
      std::set<RootVec> all(rs.roots().begin(), rs.roots().end());
      for (const auto& a : rs.roots()) {
        CHECK(rs.pairing(a, a) == 2);
        for (const auto& b : rs.roots()) {
          RootVec s = rs.reflect(a, b);
          CHECK(all.count(s) == 1);
          CHECK(rs.reflect(a, s) == b);
        }
      }
    }
  }

  TEST_CASE("positive roots precede their negatives in height order") {
    RootSystem rs = RootSystem::build("A3");
    for (std::size_t i = 0; i < rs.num_positive(); ++i) {
      CHECK(height(rs.roots()[i]) > 0);
      CHECK(rs.roots()[i + rs.num_positive()] == -rs.roots()[i]);
      if (i > 0) CHECK(height(rs.roots()[i - 1]) <= height(rs.roots()[i]));
    }
  }

  TEST_CASE("the swap form of A2 is BC1") {
    auto form = RelativeForm::build(RootSystem::build("A2"), "swap");
    CHECK(form->rank() == 1);
    CHECK_FALSE(form->is_split());
    CHECK(form->roots().size() == 4);
    auto a = *form->index_of({1}), two_a = *form->index_of({2});
    CHECK(form->is_multipliable(a));
    CHECK(form->is_divisible(two_a));
    CHECK(form->reduced_positive_roots() == std::vector<std::size_t>{a});
    CHECK(form->ramification(a) == 2);
    CHECK(form->ramification(two_a) == 1);
    CHECK(form->preimage(a).size() == 2);
    CHECK(form->root_name(form->roots()[two_a]) == "2a");
    CHECK(form->parse_root_name("-2a") == form->index_of({-2}));
  }

  TEST_CASE("split forms restrict identically") {
    auto form = RelativeForm::build(RootSystem::build("A3"), "trivial");
    CHECK(form->is_split());
    for (std::size_t i = 0; i < form->roots().size(); ++i) {
      CHECK(form->ramification(i) == 1);
      CHECK(form->restrict(form->lift(i)) == form->roots()[i]);
    }
    CHECK_THROWS(RelativeForm::build(RootSystem::build("B2"), "swap"));
  }

  TEST_CASE("generic functionals give positive systems with rank-many simple roots") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-50, 50);
    for (const char* type : {"A2", "A3", "B2", "G2"}) {
      auto form = RelativeForm::build(RootSystem::build(type), "trivial");
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> lambda(static_cast<std::size_t>(form->rank()));
        for (auto& l : lambda) l = d(rng);
        std::vector<std::size_t> psi;
        bool generic = true;
        for (std::size_t r = 0; r < form->roots().size(); ++r) {
          int v = 0;
          for (std::size_t k = 0; k < lambda.size(); ++k) v += lambda[k] * form->roots()[r][k];
          if (v == 0) generic = false;
          if (v > 0) psi.push_back(r);
        }
        if (!generic) continue;
        CHECK(is_positive_system(*form, psi));
        CHECK(simple_roots_of(*form, psi).size() == static_cast<std::size_t>(form->rank()));
      }
      std::vector<std::size_t> not_closed{0};
      if (form->rank() > 1) CHECK_FALSE(is_positive_system(*form, not_closed));
    }
  }
}
