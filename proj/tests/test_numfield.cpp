#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"

using namespace hsig;
using fx::Q;
using fx::Q2;
using fx::Q23;

namespace {

// Double-precision value of x at the embedding with the given generator signs.
double approx(const FieldElement& x, const std::vector<double>& gens) {
  double out = 0;
  for (std::size_t s = 0; s < x.coefficients().size(); ++s) {
    double term = x.coefficient(s).get_d();
    for (std::size_t l = 0; l < gens.size(); ++l)
      if (s >> l & 1) term *= gens[l];
    out += term;
  }
  return out;
}

template <class F>
Errc code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

}  // namespace

TEST_SUITE("numfield") {
  TEST_CASE("rationals print in lowest terms") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-10/-4")) == "5/2");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK(code_of([] { parse_rational("1/0"); }) == Errc::ParseError);
  }

  TEST_CASE("canonical element strings") {
    const FieldTower f = Q23();
    const FieldElement r1 = f.generator(0), r2 = f.generator(1);
    CHECK((f.from_int(3) + f.from_int(4) * r1).to_string() == "3 + 4*r1");
    CHECK((Rational(-1, 2) * (r1 * r2)).to_string() == "-1/2*r1*r2");
    CHECK((r2 - r1).to_string() == "-r1 + r2");
    CHECK(f.zero().to_string() == "0");
  }

  TEST_CASE("square roots multiply out") {
    const FieldTower f = Q2();
    const FieldElement r = f.generator(0);
    CHECK((f.one() + r) * (f.one() - r) == f.from_int(-1));
    CHECK(r * r == f.from_int(2));
    CHECK((f.one() + r).inverse() == r - f.one());
    // (√2+√3)² = 5 + 2√6
    const FieldTower g = Q23();
    const FieldElement s = g.generator(0) + g.generator(1);
    CHECK(s * s == g.from_int(5) + g.from_int(2) * g.generator(0) * g.generator(1));
  }

  TEST_CASE("extension errors") {
    const FieldTower q = Q();
    CHECK(code_of([&] { q.extend(q.from_int(4)); }) == Errc::SquareRadicand);
    CHECK(code_of([&] { q.extend(q.zero()); }) == Errc::ZeroRadicand);
    CHECK(code_of([&] { q.extend(q.from_int(-2)); }) == Errc::NotPositiveAnywhere);
    CHECK(code_of([&] { Q2().extend(Q2().from_int(8)); }) == Errc::SquareRadicand);
    const FieldTower k = q.extend_nonreal(q.from_int(-1));
    CHECK_FALSE(k.is_real());
    CHECK(code_of([&] { orderings(k); }) == Errc::NoOrderings);
    CHECK(code_of([&] { q.base(); }) == Errc::BaseTower);
  }

  TEST_CASE("orderings are enumerated with + first") {
    CHECK(orderings(Q()).size() == 1);
    const auto o = orderings(Q23());
    REQUIRE(o.size() == 4);
    CHECK(o[0].signs_string() == "[+,+]");
    CHECK(o[1].signs_string() == "[+,-]");
    CHECK(o[2].signs_string() == "[-,+]");
    CHECK(o[3].signs_string() == "[-,-]");
    // √√2 exists only where √2 > 0
    const FieldTower f = Q2();
    const FieldTower g = f.extend(f.generator(0));
    const auto og = orderings(g);
    REQUIRE(og.size() == 2);
    for (const auto& p : og) CHECK(p.root_signs()[0] == 1);
    // restriction and extension of orderings agree
    for (const auto& p : o) CHECK(p.extends(p.restrict_to(Q2())));
  }

  TEST_CASE("signs of exact zeros and near misses") {
    const FieldTower g = Q23();
    const FieldElement r1 = g.generator(0), r2 = g.generator(1);
    const FieldElement zero = (r1 + r2) * (r1 + r2) - g.from_int(5) - g.from_int(2) * r1 * r2;
    for (const auto& p : orderings(g)) CHECK(sign_at(zero, p) == 0);
    const FieldTower f = Q2();
    const FieldElement r = f.generator(0);
    const auto o = orderings(f);
    // 665857/470832 is a convergent of √2 (error ~ 1.6e-12, from above)
    const FieldElement pell = r - f.from_rational(Rational(665857, 470832));
    CHECK(sign_at(pell, o[0]) == -1);
    CHECK(sign_at(pell, o[1]) == -1);
    // 17 digits: difference ~ 5e-17
    const FieldElement close = r - f.from_rational(Rational(mpz_class("14142135623730950"), mpz_class("10000000000000000")));
    CHECK(sign_at(close, o[0]) == 1);
    // 60 digits: beyond the first precision round
    const FieldElement far = r - f.from_rational(Rational(mpz_class("141421356237309504880168872420969807856967187537694807317667"),
                                                          mpz_class("100000000000000000000000000000000000000000000000000000000000")));
    CHECK(sign_at(far, o[0]) == 1);
  }

  TEST_CASE("property: field axioms and sign multiplicativity") {
    std::mt19937 rng(101);
    const FieldTower f = Q23();
    const auto ords = orderings(f);
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    const std::vector<std::vector<double>> gens{{s2, s3}, {s2, -s3}, {-s2, s3}, {-s2, -s3}};
    for (int it = 0; it < 150; ++it) {
      const FieldElement x = fx::random_field(rng, f, 3), y = fx::random_field(rng, f, 3), z = fx::random_field(rng, f, 3);
      CHECK(x * (y + z) == x * y + x * z);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * y == y * x);
      if (!x.is_zero()) {
        CHECK(x * x.inverse() == f.one());
        const auto root = (x * x).sqrt();
        REQUIRE(root.has_value());
        CHECK((*root == x || *root == -x));
      }
      for (std::size_t i = 0; i < ords.size(); ++i) {
        const int sx = sign_at(x, ords[i]), sy = sign_at(y, ords[i]);
        CHECK(sign_at(x * y, ords[i]) == sx * sy);
        CHECK(sign_at(x * x, ords[i]) >= 0);
        const double v = approx(x, gens[i]);
        if (std::abs(v) > 1e-9) CHECK(sx == (v > 0 ? 1 : -1));
      }
    }
  }

  TEST_CASE("lift, project and the trace step") {
    const FieldTower f = Q2(), g = Q23();
    const FieldElement a = f.from_int(3) + f.generator(0);
    const FieldElement la = a.lift(g);
    CHECK(la.tower() == g);
    CHECK(la.project(f) == a);
    CHECK(code_of([&] { g.generator(1).project(f); }) == Errc::NotAnExtension);
    // mixed towers combine by lifting into the longer one
    CHECK((a + g.generator(1)).tower() == g);
    // Tr(u + v√3) = 2u
    const FieldElement x = la + f.from_int(5).lift(g) * g.generator(1);
    CHECK(trace_step(x) == f.from_int(2) * a);
  }

  TEST_CASE("non-square detection") {
    const FieldTower f = Q2();
    CHECK_FALSE(f.from_int(3).is_square());
    CHECK(f.from_int(8).is_square());  // (2√2)²
    const FieldElement u = f.from_int(3) + f.from_int(2) * f.generator(0);  // (1+√2)²
    CHECK(u.is_square());
    CHECK_FALSE(f.generator(0).is_square());
  }
}
