#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"

using namespace hsig;

namespace {

template <class F>
Errc code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

FieldElement qi(long v) { return fx::Q().from_int(v); }

}  // namespace

TEST_SUITE("division rings") {
  TEST_CASE("quaternion status over Q via Hilbert symbols") {
    CHECK(quaternion_status(qi(-1), qi(-1)) == QuaternionStatus::Division);
    CHECK(quaternion_status(qi(-1), qi(3)) == QuaternionStatus::Division);
    CHECK(quaternion_status(qi(2), qi(-3)) == QuaternionStatus::Division);
    CHECK(quaternion_status(qi(3), qi(5)) == QuaternionStatus::Division);
    CHECK(quaternion_status(qi(2), qi(7)) == QuaternionStatus::Split);
    CHECK(quaternion_status(qi(1), qi(5)) == QuaternionStatus::Split);
    CHECK(quaternion_status(qi(5), qi(-5)) == QuaternionStatus::Split);  // −ab is a square
    CHECK(code_of([] { DivisionRing::quaternion(qi(2), qi(7)); }) == Errc::SplitQuaternion);
    CHECK(code_of([] { DivisionRing::quaternion(qi(0), qi(7)); }) == Errc::InvalidRadicand);
    CHECK(code_of([] { DivisionRing::quadratic(qi(9)); }) == Errc::SquareD);
  }

  TEST_CASE("scalar extension records splitting") {
    const auto d = DivisionRing::quaternion(qi(2), qi(-3));
    CHECK_FALSE(d.is_split());
    CHECK(d.extend_scalars(fx::Q2()).is_split());
    CHECK_FALSE(DivisionRing::quaternion(qi(-1), qi(-1)).extend_scalars(fx::Q23()).is_split());
    const auto k = DivisionRing::quadratic(qi(2));
    CHECK(code_of([&] { k.extend_scalars(fx::Q2()); }) == Errc::SquareD);
  }

  TEST_CASE("quaternion units multiply per the presentation") {
    const auto d = DivisionRing::quaternion(qi(-1), qi(3));
    const DElement i = d.unit(1), j = d.unit(2), k = d.unit(3);
    CHECK(i * i == d.from_int(-1));
    CHECK(j * j == d.from_int(3));
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK(k * k == d.from_int(3));  // −ab
    CHECK((d.from_int(1) + i).to_string() == "1 + i");
    CHECK(i.norm() == qi(1));
    CHECK((d.from_int(2) + j).trd() == qi(4));
  }

  TEST_CASE("property: norm multiplicative, conjugation anti-multiplicative") {
    std::mt19937 rng(301);
    const std::vector<DivisionRing> rings{DivisionRing::quaternion(qi(-1), qi(-1)),
                                          DivisionRing::quaternion(qi(2), qi(-3)).extend_scalars(fx::Q2()),
                                          DivisionRing::quadratic(fx::Q2().from_int(-3)),
                                          DivisionRing::quaternion(fx::Q2().from_int(-1), fx::Q2().generator(0) - fx::Q2().one())};
    for (const auto& d : rings)
      for (int it = 0; it < 40; ++it) {
        const DElement x = fx::random_element(rng, d), y = fx::random_element(rng, d);
        CHECK((x * y).norm() == x.norm() * y.norm());
        CHECK((x * y).conj() == y.conj() * x.conj());
        CHECK(x * x.conj() == d.scalar(x.norm()));
        CHECK((x * y).trd() == (y * x).trd());
        if (is_unit(x)) CHECK(x * x.inverse() == d.one());
      }
  }

  TEST_CASE("split quaternions expose zero divisors") {
    const auto d = DivisionRing::quaternion(qi(2), qi(-3)).extend_scalars(fx::Q2());
    const DElement z = d.scalar(d.field().generator(0)) - d.unit(1);  // √2 − i
    CHECK_FALSE(z.is_zero());
    CHECK(z.norm().is_zero());
    CHECK_FALSE(is_unit(z));
    CHECK(code_of([&] { z.inverse(); }) == Errc::DivisionByZero);
  }
}

TEST_SUITE("algebras") {
  TEST_CASE("build validation") {
    const auto f = DivisionRing::base_field(fx::Q());
    DMatrix x(2, 2, f.zero());
    x(0, 1) = f.one();
    x(1, 0) = f.one();
    CHECK(code_of([&] { Algebra::build(f, 2, x, -1); }) == Errc::NotEpsilonHermitian);
    CHECK(code_of([&] { Algebra::build(f, 2, DMatrix(2, 2, f.zero()), 1); }) == Errc::SingularPhi0);
    CHECK(code_of([&] { Algebra::build(f, 3, x, 1); }) == Errc::DimensionMismatch);
  }

  TEST_CASE("involution types") {
    const auto f = DivisionRing::base_field(fx::Q());
    DMatrix w(2, 2, f.zero());
    w(0, 1) = f.one();
    w(1, 0) = -f.one();
    CHECK(Algebra::build(f, 2, w, -1).type() == InvolutionType::Symplectic);
    CHECK(fx::m2_split().type() == InvolutionType::Orthogonal);
    CHECK(fx::quat_conj().type() == InvolutionType::Symplectic);
    CHECK(fx::quat_intj().type() == InvolutionType::Orthogonal);
    CHECK(fx::gauss_unitary().type() == InvolutionType::Unitary);
  }

  TEST_CASE("symmetric spaces have the expected dimension") {
    CHECK(fx::m4_example().sym_basis().size() == 10);
    CHECK(fx::quat_conj().sym_basis().size() == 1);
    CHECK(fx::quat_intj().sym_basis().size() == 3);
    CHECK(fx::gauss_unitary().sym_basis().size() == 1);
    CHECK(fx::quat_conj().sym_basis(2).size() == 6);  // M₂(H), symplectic degree 4
  }

  TEST_CASE("property: sigma is an anti-automorphism of order two") {
    std::mt19937 rng(302);
    for (const auto& [name, a] : fx::all_fixtures()) {
      for (int it = 0; it < 8; ++it) {
        const DMatrix x = fx::random_matrix(rng, a.division(), 2 * a.m());
        const DMatrix y = fx::random_matrix(rng, a.division(), 2 * a.m());
        CHECK_MESSAGE(a.apply(a.apply(x)) == x, name);
        // σ on M₂(A) reverses products
        CHECK_MESSAGE(a.apply(x * y) == a.apply(y) * a.apply(x), name);
      }
    }
  }

  TEST_CASE("trace form rejects maps that are not involutions") {
    const Algebra a = fx::quat_conj();
    Involution bad{a.division(), 1, false, [](const DMatrix& x) { return x; }};
    CHECK_NOTHROW(trace_form(bad));  // identity has order two but no anti-property check here
    Involution twice{a.division(), 1, false, [](const DMatrix& x) { return x + x; }};
    CHECK(code_of([&] { trace_form(twice); }) == Errc::NotInvolution);
  }

  TEST_CASE("quaternion splitting is a homomorphism") {
    std::mt19937 rng(303);
    const auto d = DivisionRing::quaternion(qi(2), qi(-3));
    const QuaternionSplitting s = make_splitting(d, true);
    CHECK(s.field.depth() == 1);
    for (int it = 0; it < 30; ++it) {
      const DElement x = fx::random_element(rng, d), y = fx::random_element(rng, d);
      CHECK(s.map_element(x * y) == s.map_element(x) * s.map_element(y));
    }
    const SplitAlgebra sa = split_quaternion(fx::quat_intj(), true);
    CHECK(sa.algebra.m() == 2);
    CHECK(sa.algebra.type() == InvolutionType::Orthogonal);
    CHECK(sa.algebra.epsilon0() == 1);
  }
}
