#include "doctest.h"
#include "json_io.hpp"

using namespace bt;
using btio::Json;
using btio::SchemaError;

TEST_SUITE("json") {
  TEST_CASE("emit then parse then emit is the identity") {
    for (const char* label : {"PGL2", "PGL3", "PGL4", "PU3"}) {
      GroupModel model = GroupModel::from_label(label, 5, 12);
      Rng rng(71);
      ApartmentPoint x = ApartmentPoint::base(model.form());
      ConcaveFn f = standard_concave(model.form(), ConcaveKind::zero);
      for (int i = 0; i < 5; ++i) {
        EmbeddedPoint p{random_parahoric(model, x, f, rng, 3),
                        random_big_cell_point(model, x, f, CellKind::omega, rng, 3),
                        random_parahoric(model, x, f, rng, 3), static_cast<std::uint64_t>(i)};
        Json once = btio::to_json(p);
        EmbeddedPoint back = btio::embedded_from(model, Json::parse(once.dump()));
        CHECK(btio::to_json(back).dump() == once.dump());
        CHECK(equal_within_precision(back.omega, p.omega));
      }
    }
  }

  TEST_CASE("forms, points, fields and concave functions round trip") {
    FormPtr form = btio::form_from(Json{{"type", "A2"}, {"automorphism", "swap"}});
    CHECK(form->rank() == 1);
    CHECK(btio::form_from(btio::form_to_json(*form))->name() == form->name());

    FormPtr a3 = btio::form_from(Json{{"type", "A3"}});
    ApartmentPoint x = btio::point_from(a3, Json::array({"1/3", "0", "-1/2"}));
    ApartmentPoint y = btio::point_from(a3, btio::to_json(x));
    CHECK(y.simple_pairings == x.simple_pairings);

    auto cfg = btio::field_from(Json("7,10,2"));
    CHECK(cfg->residue_char == 7);
    CHECK(cfg->precision == 10);
    CHECK(cfg->ramification == 2);
    auto cfg2 = btio::field_from(btio::to_json(cfg));
    CHECK(btio::to_json(cfg2).dump() == btio::to_json(cfg).dump());

    ConcaveFn f = btio::concave_from(a3, Json{{"kind", "moy_prasad"}, {"r", "1/2"}});
    ConcaveFn g = btio::concave_from(a3, btio::to_json(f));
    CHECK(btio::to_json(g).dump() == btio::to_json(f).dump());
    CHECK(g.at_zero() == RTilde(Rational(1, 2)));

    CHECK(btio::valuation_json(std::nullopt) == Json("inf"));
  }

  TEST_CASE("schema violations are reported") {
    GroupModel pgl2 = GroupModel::from_label("PGL2", 5, 12);
    GroupModel pu3 = GroupModel::from_label("PU3", 5, 12);
    FormPtr a2 = btio::form_from(Json{{"type", "A2"}});
    CHECK_THROWS_AS(btio::matrix_from(pgl2, Json::array({Json::array({"1", "0"})})), SchemaError);
    CHECK_THROWS_AS(btio::matrix_from(pgl2, Json::array({Json::array({"1", "1"}), Json::array({"1", "1"})})),
                    SchemaError);
    CHECK_THROWS_AS(btio::param_from(pu3, Json{{"u", "1"}, {"v", "0"}}), SchemaError);
    CHECK_THROWS_AS(btio::embedded_from(pgl2, Json::array()), SchemaError);
    CHECK_THROWS_AS(btio::embedded_from(pgl2, Json{{"omega", {{"u_minus", {"0"}}, {"t_bar", {"1", "1"}}, {"u_plus", {"0"}}}}}),
                    SchemaError);
    CHECK_THROWS_AS(btio::embedded_from(pgl2, Json{{"omega", {{"u_minus", {"0"}}, {"t_bar", {"1"}}, {"u_plus", {"0"}}}},
                                                   {"seed", -1}}),
                    SchemaError);
    CHECK_THROWS(btio::point_from(a2, Json::array({"1"})));
    CHECK_THROWS(btio::concave_from(a2, Json{{"kind", "unknown"}}));
    CHECK_THROWS(btio::concave_from(a2, Json::array({Json{{"root", "a1"}, {"value", "0"}}})));
    CHECK_THROWS(btio::form_from(Json{{"automorphism", "swap"}}));
  }
}
