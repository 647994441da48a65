#pragma once

// Shared fixture algebras and seeded random forms for the test binaries.

#include <random>
#include <string>
#include <vector>

#include "signature.hpp"

namespace fx {

using namespace hsig;

inline FieldTower Q() { return FieldTower(); }
inline FieldTower Q2() { return Q().extend(Q().from_int(2)); }
inline FieldTower Q3() { return Q().extend(Q().from_int(3)); }
inline FieldTower Q23() { return Q2().extend(Q2().from_int(3)); }

inline DMatrix dmat(const DivisionRing& d, std::size_t n, const std::vector<long>& diag) {
  std::vector<DElement> e;
  for (long v : diag) e.push_back(d.from_int(v));
  (void)n;
  return DMatrix::diagonal(std::span<const DElement>(e), d.zero());
}

inline DMatrix one_by_one(const DElement& x) { return DMatrix(1, 1, x); }

// (M₂(ℚ), ad⟨1,−1⟩)
inline Algebra m2_split() {
  const auto d = DivisionRing::base_field(Q());
  return Algebra::build(d, 2, dmat(d, 2, {1, -1}), 1);
}
// ((−1,−1)_ℚ, conj)
inline Algebra quat_conj() {
  const auto d = DivisionRing::quaternion(Q().from_int(-1), Q().from_int(-1));
  return Algebra::build(d, 1, one_by_one(d.one()), 1);
}
// ((2,−3)_ℚ, Int(j)∘conj)
inline Algebra quat_intj() {
  const auto d = DivisionRing::quaternion(Q().from_int(2), Q().from_int(-3));
  return Algebra::build(d, 1, one_by_one(d.unit(2)), -1);
}
// (ℚ(√−1), conj)
inline Algebra gauss_unitary() {
  const auto d = DivisionRing::quadratic(Q().from_int(-1));
  return Algebra::build(d, 1, one_by_one(d.one()), 1);
}
// (M₄(ℚ), ad⟨1,−1,1,−1⟩)
inline Algebra m4_example() {
  const auto d = DivisionRing::base_field(Q());
  return Algebra::build(d, 4, dmat(d, 4, {1, -1, 1, -1}), 1);
}
// ((−1,−3)_{ℚ(√2)}, conj): ramified at both orderings of ℚ(√2)
inline Algebra quat_conj_q2() {
  const FieldTower f = Q2();
  const auto d = DivisionRing::quaternion(f.from_int(-1), f.from_int(-3));
  return Algebra::build(d, 1, one_by_one(d.one()), 1);
}
// ((−1, √2−1)_{ℚ(√2)}, conj): ramified at one ordering only
inline Algebra quat_conj_mixed() {
  const FieldTower f = Q2();
  const auto d = DivisionRing::quaternion(f.from_int(-1), f.generator(0) - f.from_int(1));
  return Algebra::build(d, 1, one_by_one(d.one()), 1);
}
// (M₂(ℚ(√2)), ad⟨1,√2⟩)
inline Algebra m2_q2() {
  const FieldTower f = Q2();
  const auto d = DivisionRing::base_field(f);
  std::vector<DElement> e{d.one(), d.scalar(f.generator(0))};
  return Algebra::build(d, 2, DMatrix::diagonal(std::span<const DElement>(e), d.zero()), 1);
}
// (ℚ(√2)(√−3), conj)
inline Algebra unitary_q2() {
  const FieldTower f = Q2();
  const auto d = DivisionRing::quadratic(f.from_int(-3));
  return Algebra::build(d, 1, one_by_one(d.one()), 1);
}

// The four fixture algebras of the trace-formula suite.
inline std::vector<std::pair<std::string, Algebra>> primary_fixtures() {
  return {{"M2(Q), ad<1,-1>", m2_split()},
          {"(-1,-1)_Q, conj", quat_conj()},
          {"(2,-3)_Q, Int(j)conj", quat_intj()},
          {"Q(sqrt-1), conj", gauss_unitary()}};
}

// Primary fixtures plus the larger-field and M₄ ones.
inline std::vector<std::pair<std::string, Algebra>> all_fixtures() {
  auto out = primary_fixtures();
  out.push_back({"M4(Q), ad<1,-1,1,-1>", m4_example()});
  out.push_back({"(-1,-3)_Q(sqrt2), conj", quat_conj_q2()});
  out.push_back({"(-1,sqrt2-1)_Q(sqrt2), conj", quat_conj_mixed()});
  out.push_back({"M2(Q(sqrt2)), ad<1,sqrt2>", m2_q2()});
  out.push_back({"Q(sqrt2)(sqrt-3), conj", unitary_q2()});
  return out;
}

inline FieldElement random_field(std::mt19937& rng, const FieldTower& f, int bound = 2) {
  std::uniform_int_distribution<int> c(-bound, bound);
  std::vector<Rational> coeffs(f.dimension());
  coeffs[0] = c(rng);
  // sparse higher terms keep the numbers small
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    if (rng() % 2) coeffs[i] = c(rng);
  return FieldElement(f, coeffs);
}

inline DElement random_element(std::mt19937& rng, const DivisionRing& d, int bound = 2) {
  std::vector<FieldElement> coords;
  for (std::size_t i = 0; i < d.dimension(); ++i)
    coords.push_back(i == 0 || rng() % 2 ? random_field(rng, d.field(), bound) : d.field().zero());
  return DElement(d, coords);
}

inline DMatrix random_matrix(std::mt19937& rng, const DivisionRing& d, std::size_t n) {
  DMatrix x(n, n, d.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng() % 3) x(i, j) = random_element(rng, d);
  return x;
}

// Random invertible hermitian Gram X + σᵗ(X) of rank k.
inline HermForm random_form(std::mt19937& rng, const Algebra& a, std::size_t k) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const DMatrix x = random_matrix(rng, a.division(), k * a.m());
    const DMatrix g = x + a.apply(x);
    if (try_inverse(g)) return HermForm::build(a, g);
  }
  fail(Errc::Internal, "could not draw an invertible hermitian form");
}

// Random σ-symmetric invertible m×m unit.
inline DMatrix random_sym_unit(std::mt19937& rng, const Algebra& a) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const DMatrix x = random_matrix(rng, a.division(), a.m());
    const DMatrix u = x + a.apply(x);
    if (try_inverse(u)) return u;
  }
  fail(Errc::Internal, "could not draw a symmetric unit");
}

inline FieldElement random_nonzero(std::mt19937& rng, const FieldTower& f) {
  while (true) {
    FieldElement x = random_field(rng, f);
    if (!x.is_zero()) return x;
  }
}

}  // namespace fx
