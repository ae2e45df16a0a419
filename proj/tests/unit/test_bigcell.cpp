#include <random>

#include "bt/action.hpp"
#include "bt/bigcell.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bt;
using oracle::frac;

namespace {

const char* kModels[] = {"PGL2", "PGL3", "PGL4", "PU3"};

ApartmentPoint random_point(const FormPtr& form, std::mt19937_64& rng) {
  std::vector<Rational> c;
  for (int k = 0; k < form->rank(); ++k) c.push_back(oracle::random_rational(rng, 2));
  return ApartmentPoint::from_coroot_coords(form, c);
}

}  // namespace

TEST_SUITE("bigcell") {
  TEST_CASE("compose then factor returns the coordinates") {
    for (const char* label : kModels) {
      GroupModel model = GroupModel::from_label(label, 5, 12);
      Rng rng(41);
      ApartmentPoint x = ApartmentPoint::base(model.form());
      ConcaveFn f = standard_concave(model.form(), ConcaveKind::zero);
      for (int i = 0; i < 20; ++i) {
        BigCellPoint p = random_big_cell_point(model, x, f, CellKind::omega, rng, 4);
        Matrix g = model.compose(p);
        CHECK(model.in_group(g));
        FactorResult fr = factor_big_cell(model, g);
        REQUIRE(fr.point);
        CHECK(equal_within_precision(*fr.point, p));
      }
    }
  }

  TEST_CASE("the Weyl element leaves the big cell at the first minor") {
    GroupModel model = GroupModel::from_label("PGL2", 5, 12);
    auto cfg = model.field();
    Matrix w = matrix_from_rows(cfg, {{FieldElem(cfg), FieldElem::from_int(cfg, 1)},
                                      {FieldElem::from_int(cfg, 1), FieldElem(cfg)}});
    FactorResult fr = factor_big_cell(model, w);
    CHECK_FALSE(fr.point);
    CHECK(fr.vanishing_minor == 1);
  }

  TEST_CASE("membership of a big-cell point agrees with the entrywise certificate") {
    std::mt19937_64 rng(42);
    for (const char* label : kModels) {
      GroupModel model = GroupModel::from_label(label, 5, 12);
      Rng lib_rng(420);
      ConcaveFn f = standard_concave(model.form(), ConcaveKind::zero);
      int members = 0;
      for (int i = 0; i < 40; ++i) {
        ApartmentPoint x = random_point(model.form(), rng);
        ApartmentPoint y = i % 2 ? x : random_point(model.form(), rng);
        BigCellPoint p = random_big_cell_point(model, y, f, CellKind::omega, lib_rng, 4);
        bool m = membership(p, x, f, CellKind::omega);
        members += m ? 1 : 0;
        CHECK(m == parahoric_certificate(model, model.compose(p), x, f));
      }
      CHECK(members > 0);
      CHECK(members < 40);
    }
  }

  TEST_CASE("torus coordinates are alpha(D)^{-1}") {
    GroupModel model = GroupModel::from_label("PGL3", 5, 12);
    auto cfg = model.field();
    std::vector<FieldElem> tb{FieldElem::parse(cfg, "1 + t"), FieldElem::parse(cfg, "2*t^2")};
    Matrix d = model.torus_slice(tb);
    auto nb = nu_bar(model, d);
    CHECK(equal_within_precision(nb[0], tb[0]));
    CHECK(equal_within_precision(nb[1], tb[1]));
    // m for -(a1 + a2) read off the diagonal: D_22 / D_00.
    FieldElem m = m_alpha(*model.form(), tb, {-1, -1});
    CHECK(equal_within_precision(m, d(2, 2) / d(0, 0)));
  }

  TEST_CASE("unitary model: group membership") {
    GroupModel model = GroupModel::from_label("PU3", 5, 12);
    auto cfg = model.field();
    Rng rng(43);
    ApartmentPoint x = ApartmentPoint::base(model.form());
    ConcaveFn f = standard_concave(model.form(), ConcaveKind::zero);
    for (int i = 0; i < 10; ++i) CHECK(model.in_group(random_parahoric(model, x, f, rng, 3)));
    FieldElem one = FieldElem::from_int(cfg, 1), z(cfg);
    Matrix not_unitary = matrix_from_rows(cfg, {{one, one, z}, {z, one, z}, {z, z, one}});
    CHECK_FALSE(model.in_group(not_unitary));
  }

  TEST_CASE("Omega-bar admits non-unit torus coordinates, Omega does not") {
    GroupModel model = GroupModel::from_label("PGL2", 5, 12);
    auto cfg = model.field();
    ApartmentPoint x = ApartmentPoint::base(model.form());
    ConcaveFn f = standard_concave(model.form(), ConcaveKind::zero);
    BigCellPoint p = model.identity_point();
    p.t_bar[0] = FieldElem::t_power(cfg, Rational(2));
    CHECK(membership(p, x, f, CellKind::omega_bar));
    CHECK_FALSE(membership(p, x, f, CellKind::omega));
    p.t_bar[0] = FieldElem::t_power(cfg, Rational(-1));
    CHECK_FALSE(membership(p, x, f, CellKind::omega_bar));
    ConcaveFn congruence = standard_concave(model.form(), ConcaveKind::moy_prasad, Rational(1));
    p.t_bar[0] = FieldElem::parse(cfg, "1 + t");
    CHECK(membership(p, x, congruence, CellKind::omega));
    p.t_bar[0] = FieldElem::parse(cfg, "2 + t");
    CHECK_FALSE(membership(p, x, congruence, CellKind::omega));
  }

  TEST_CASE("normalization puts 1 in the first entry") {
    GroupModel model = GroupModel::from_label("PGL2", 5, 12);
    auto cfg = model.field();
    Matrix g = matrix_from_rows(cfg, {{FieldElem::parse(cfg, "2*t"), FieldElem::from_int(cfg, 1)},
                                      {FieldElem(cfg), FieldElem::from_int(cfg, 3)}});
    Matrix n = model.normalize(g);
    CHECK(equal_within_precision(n(0, 0), FieldElem::from_int(cfg, 1)));
    CHECK(projectively_equal(n, g));
  }
}
