#include <random>

#include "bt/localfield.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bt;
using oracle::frac;

namespace {

// Dense truncated series over F_p: digits of t^0 .. t^{n-1}.
using Dense = std::vector<long>;

Dense dense_mul(const Dense& a, const Dense& b, long p) {
  Dense c(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

FieldElem from_dense(const FieldConfigPtr& cfg, const Dense& d) {
  std::vector<Coeff> c;
  for (long v : d) c.emplace_back(v, cfg->residue_char);
  return FieldElem::from_digits(cfg, 0, c, static_cast<std::int64_t>(d.size()));
}

Dense random_dense(std::mt19937_64& rng, std::size_t n, long p, bool unit) {
  std::uniform_int_distribution<long> d(0, p - 1);
  Dense v(n);
  for (auto& x : v) x = d(rng);
  if (unit && v[0] == 0) v[0] = 1;
  return v;
}

}  // namespace

TEST_SUITE("localfield") {
  TEST_CASE("products agree with schoolbook truncated multiplication") {
    auto cfg = make_field(7, 10);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
      Dense a = random_dense(rng, 8, 7, false), b = random_dense(rng, 8, 7, false);
      FieldElem prod = from_dense(cfg, a) * from_dense(cfg, b);
      Dense c = dense_mul(a, b, 7);
      for (int k = 0; k < 8; ++k) {
        if (prod.known_to() && *prod.known_to() <= k) break;
        CHECK(prod.coeff_at(Rational(k)) == Coeff(c[static_cast<std::size_t>(k)], 7u));
      }
    }
  }

  TEST_CASE("inverse of a unit times the unit is one") {
    auto cfg = make_field(5, 12);
    std::mt19937_64 rng(2);
    FieldElem one = FieldElem::from_int(cfg, 1);
    for (int i = 0; i < 100; ++i) {
      FieldElem u = from_dense(cfg, random_dense(rng, 12, 5, true));
      CHECK(equal_within_precision(u * u.inverse(), one));
    }
  }

  TEST_CASE("valuation is additive and shifts add") {
    auto cfg = make_field(5, 12);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> sh(-4, 4);
    for (int i = 0; i < 100; ++i) {
      int s1 = sh(rng), s2 = sh(rng);
      FieldElem a = from_dense(cfg, random_dense(rng, 6, 5, true)).shifted(Rational(s1));
      FieldElem b = from_dense(cfg, random_dense(rng, 6, 5, true)).shifted(Rational(s2));
      CHECK(*(a * b).valuation() == Rational(s1 + s2));
      CHECK(*a.valuation() == Rational(s1));
    }
  }

  TEST_CASE("literals round-trip") {
    auto cfg = make_field(5, 12, 2);
    for (const char* text : {"1 + 2*t + 3*t^(3/2)", "t^-1 + 4", "2*t^(1/2) + O(t^3)", "0"}) {
      FieldElem x = FieldElem::parse(cfg, text);
      FieldElem y = FieldElem::parse(cfg, x.str());
      CHECK(x.str() == y.str());
      CHECK(equal_within_precision(x, y));
    }
    CHECK(FieldElem::parse(cfg, "3*t^(3/2)").valuation() == frac(3, 2));
  }

  TEST_CASE("malformed literals are rejected") {
    auto cfg = make_field(5, 12);
    CHECK_THROWS(FieldElem::parse(cfg, "1 + t^(1/2)"));
    CHECK_THROWS(FieldElem::parse(cfg, "1 + + t"));
  }

  TEST_CASE("O-terms make questions undecidable") {
    auto cfg = make_field(5, 12);
    FieldElem o = FieldElem::big_o(cfg, Rational(3));
    CHECK(o.is_indistinguishable_from_zero());
    CHECK_FALSE(o.is_zero());
    CHECK_THROWS_AS(o.valuation(), PrecisionError);
    CHECK(o.valuation_at_least(Rational(2)));
    CHECK_THROWS_AS(o.valuation_at_least(Rational(4)), PrecisionError);
  }

  TEST_CASE("sigma is an involutive automorphism; norm and trace land in the base field") {
    auto cfg = make_field(5, 10, 2);
    std::mt19937_64 rng(4);
    auto random_elem = [&] {
      std::vector<Coeff> c;
      std::uniform_int_distribution<long> d(0, 4);
      for (int i = 0; i < 8; ++i) c.emplace_back(d(rng), 5u);
      return FieldElem::from_digits(cfg, -2, c, 20);
    };
    for (int i = 0; i < 50; ++i) {
      FieldElem x = random_elem(), y = random_elem();
      CHECK(equal_within_precision(sigma(sigma(x)), x));
      CHECK(equal_within_precision(sigma(x * y), sigma(x) * sigma(y)));
      CHECK(equal_within_precision(sigma(x + y), sigma(x) + sigma(y)));
      CHECK(lies_in_base_field(norm(x)));
      CHECK(lies_in_base_field(trace(x)));
      CHECK(equal_within_precision(norm(x * y), norm(x) * norm(y)));
      CHECK(equal_within_precision(trace(x), x + sigma(x)));
    }
    CHECK(equal_within_precision(sigma(FieldElem::parse(cfg, "t^(1/2)")), FieldElem::parse(cfg, "-t^(1/2)")));
  }

  TEST_CASE("H0 group law preserves the norm relation") {
    auto cfg = make_field(5, 10, 2);
    QuadExt ext(cfg);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> e(-2, 4);
    for (int i = 0; i < 50; ++i) {
      FieldElem u1 = FieldElem::parse(cfg, "1 + t^(1/2)").shifted(frac(e(rng), 2));
      FieldElem u2 = FieldElem::parse(cfg, "2 + 3*t").shifted(frac(e(rng), 2));
      H0Elem a = H0Elem::from_u_and_trace_zero(u1, FieldElem::parse(cfg, "t^(1/2)"));
      H0Elem b = H0Elem::from_u_and_trace_zero(u2, FieldElem::parse(cfg, "2*t^(3/2)"));
      CHECK(satisfies_h0(a));
      CHECK(satisfies_h0(h0_compose(ext, a, b)));
      H0Elem id = h0_compose(ext, a, h0_inverse(ext, a));
      CHECK(id.u.is_indistinguishable_from_zero());
      CHECK(id.v.is_indistinguishable_from_zero());
    }
    CHECK_FALSE(satisfies_h0(H0Elem{FieldElem::from_int(cfg, 1), FieldElem::from_int(cfg, 0)}));
  }

  TEST_CASE("field configurations are validated") {
    CHECK_THROWS(make_field(4, 10));
    CHECK_THROWS(make_field(5, 0));
    CHECK_THROWS(make_field(2, 10, 2));
    CHECK_NOTHROW(make_field(0, 6));
  }
}
