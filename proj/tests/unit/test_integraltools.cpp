#include <algorithm>

#include "bt/integraltools.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bt;
using oracle::frac;

namespace {

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const FieldElem& coefficient(const Jet& j, const Exponents& e) {
  const auto& m = j.monomials();
  auto it = std::find(m.begin(), m.end(), e);
  REQUIRE(it != m.end());
  return j.coefficients()[static_cast<std::size_t>(it - m.begin())];
}

}  // namespace

TEST_SUITE("integraltools") {
  TEST_CASE("dilating the affine line at the origin") {
    auto a1 = AffinePresentation::parse("T", "");
    auto d = dilate(a1, {Poly::parse(a1.ring, "T")});
    CHECK(d.generators == std::vector<std::string>{"y1"});
    CHECK(d.relations.empty());
    CHECK(d.forward.at("T").str() == Poly::parse(d.ring, "pi*y1").str());
    CHECK(generic_round_trip(d));
    auto d2 = dilate(d, {Poly::parse(d.ring, "y1")});
    CHECK(d2.forward.at("T").str() == Poly::parse(d2.ring, "pi^2*y2").str());
    CHECK(generic_round_trip(d2));
  }

  TEST_CASE("dilatation inputs are validated") {
    auto a2 = AffinePresentation::parse("X,Y", "");
    CHECK_THROWS_AS(dilate(a2, {Poly::parse(a2.ring, "1 + pi*X")}), std::invalid_argument);
    auto ring = make_ring({"Z", "pi"});
    CHECK_THROWS_AS(dilate(a2, {Poly::parse(ring, "Z")}), std::invalid_argument);
    CHECK_THROWS_AS(AffinePresentation::make(make_ring({"X"}), {"X"}, {}), std::invalid_argument);
  }

  TEST_CASE("a dilatation with a nonlinear center keeps its relation") {
    auto a2 = AffinePresentation::parse("X,Y", "");
    auto d = dilate(a2, {Poly::parse(a2.ring, "X^2 - Y^3")});
    CHECK(d.generators.size() == 3);
    CHECK(d.relations.size() == 1);
    CHECK(generic_round_trip(d));
  }

  TEST_CASE("congruence models of the multiplicative group") {
    for (int n = 1; n <= 4; ++n) {
      CHECK(congruence_fiber_iso_check(n));
      CHECK(generic_round_trip(congruence_presentation(n)));
    }
    CHECK_THROWS_AS(congruence_fiber_iso_check(0), std::invalid_argument);
  }

  TEST_CASE("points of dilatations") {
    auto cfg = make_field(5, 12);
    auto ring = make_ring({"x0"}, 5);
    PointModel m = dilate_points(PointModel::affine_space(1), Poly::parse(ring, "x0"));
    CHECK(m.contains({FieldElem::parse(cfg, "3*t")}));
    CHECK_FALSE(m.contains({FieldElem::parse(cfg, "1 + t")}));
    CHECK_FALSE(m.contains({FieldElem::t_power(cfg, Rational(-1))}));
    auto c = m.coordinates({FieldElem::parse(cfg, "3*t + t^2")});
    REQUIRE(c.size() == 2);
    CHECK(equal_within_precision(c[1], FieldElem::parse(cfg, "3 + t")));

    PointModel gm = PointModel::multiplicative_group();
    CHECK(gm.contains({FieldElem::parse(cfg, "2 + t")}));
    CHECK_FALSE(gm.contains({FieldElem::parse(cfg, "t")}));
    PointModel g1 = dilate_points(gm, Poly::parse(ring, "x0 - 1"));
    CHECK(g1.contains({FieldElem::parse(cfg, "1 + t")}));
    CHECK_FALSE(g1.contains({FieldElem::parse(cfg, "2 + t")}));
  }

  TEST_CASE("truncated distributions have binomial dimension") {
    for (int vars = 1; vars <= 4; ++vars)
      for (int level = 1; level <= 5; ++level) {
        TruncDist d{vars, level};
        CHECK(d.dimension() == binomial(vars + level - 1, vars));
        auto b = d.basis();
        CHECK(static_cast<long>(b.size()) == d.dimension());
        for (const auto& e : b) {
          int deg = 0;
          for (int k : e) deg += k;
          CHECK(deg < level);
        }
      }
  }

  TEST_CASE("jet arithmetic") {
    auto cfg = make_field(5, 12);
    auto shape = Jet::make_shape(2, 4);
    Jet x = Jet::variable(shape, 0, FieldElem::from_int(cfg, 1));
    Jet y = Jet::variable(shape, 1, FieldElem(cfg));
    Jet p = x * x * y;
    CHECK(equal_within_precision(coefficient(p, {0, 1}), FieldElem::from_int(cfg, 1)));
    CHECK(equal_within_precision(coefficient(p, {1, 1}), FieldElem::from_int(cfg, 2)));
    CHECK(equal_within_precision(coefficient(p, {2, 1}), FieldElem::from_int(cfg, 1)));
    Jet q = (x + y) * (x + y).inverse();
    Jet one = Jet::one_like(x);
    for (std::size_t i = 0; i < q.coefficients().size(); ++i)
      CHECK(equal_within_precision(q.coefficients()[i], one.coefficients()[i]));
    CHECK_FALSE(is_invertible(y));
    // 1/(1 - y) = 1 + y + y^2 + y^3.
    Jet g = (one - y).inverse();
    for (int k = 0; k < 4; ++k)
      CHECK(equal_within_precision(coefficient(g, {0, k}), FieldElem::from_int(cfg, 1)));
  }

  TEST_CASE("extension verdicts") {
    auto cfg = make_field(5, 12);
    auto ring = make_ring({"x", "pi"}, 5);
    std::vector<FieldElem> base{FieldElem(cfg)};
    RatFunc over_pi(Poly::parse(ring, "x"), Poly::parse(ring, "pi"));
    CHECK(extension_test({over_pi}, {"x"}, base, 1).integral);
    auto v = extension_test({over_pi}, {"x"}, base, 2);
    CHECK_FALSE(v.integral);
    CHECK(v.witness.find("coefficient of X0") != std::string::npos);
    CHECK(extension_test({RatFunc(Poly::parse(ring, "pi*x"))}, {"x"}, base, 6).integral);
    // x^3/pi is integral below degree 3 only.
    RatFunc cube(Poly::parse(ring, "x^3"), Poly::parse(ring, "pi"));
    CHECK(extension_test({cube}, {"x"}, base, 3).integral);
    CHECK_FALSE(extension_test({cube}, {"x"}, base, 4).integral);
    RatFunc pole(Poly::parse(ring, "1"), Poly::parse(ring, "x"));
    CHECK_THROWS_AS(extension_test({pole}, {"x"}, base, 2), std::invalid_argument);
  }

  TEST_CASE("failure of the extension test persists at higher levels") {
    auto cfg = make_field(5, 12);
    auto ring = make_ring({"x", "y", "pi"}, 5);
    std::vector<FieldElem> base{FieldElem::from_int(cfg, 1), FieldElem(cfg)};
    for (const char* num : {"x + y^2", "x*y^3 + pi", "y^4 + pi*x", "x^2*y^2"})
      for (const char* den : {"1", "pi", "pi^2", "1 + y"}) {
        RatFunc r(Poly::parse(ring, num), Poly::parse(ring, den));
        bool failed = false;
        for (int n = 1; n <= 5; ++n) {
          bool integral = extension_test({r}, {"x", "y"}, base, n).integral;
          if (failed) CHECK_FALSE(integral);
          failed = failed || !integral;
        }
      }
  }

  TEST_CASE("the PGL2 action is integral near the identity") {
    auto cfg = make_field(5, 12);
    auto triple = pgl2_identity_triple(cfg);
    REQUIRE(triple.size() == 9);
    CHECK(extension_test(pgl2_action_jet_map(), triple, 2).integral);
  }

  TEST_CASE("dilatation compatibility") {
    GroupModel model = GroupModel::from_label("PGL2", 5, 12);
    ApartmentPoint x = ApartmentPoint::base(model.form());
    ConcaveFn zero = standard_concave(model.form(), ConcaveKind::zero);
    ConcaveFn one = standard_concave(model.form(), ConcaveKind::moy_prasad, Rational(1));
    ConcaveFn two = standard_concave(model.form(), ConcaveKind::moy_prasad, Rational(2));
    auto same = dilatation_compatibility_check(model, x, zero, zero, 20, 7);
    CHECK(same.ok());
    CHECK(same.in_f == same.samples);
    auto step = dilatation_compatibility_check(model, x, one, zero, 40, 7);
    CHECK(step.ok());
    CHECK(step.in_f > 0);
    CHECK(step.in_f < step.samples);
    CHECK_THROWS_AS(dilatation_compatibility_check(model, x, two, zero, 5, 7), std::invalid_argument);
    CHECK_THROWS_AS(dilatation_compatibility_check(model, x, zero, one, 5, 7), std::invalid_argument);
  }
}
