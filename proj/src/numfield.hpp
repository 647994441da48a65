#pragma once

// Exact arithmetic in towers of square-root extensions of the rationals.
//
// A tower of depth n is Q(√c₁)(√c₂)…(√cₙ) where each radicand cᵢ lives in
// the tower below it. Elements are stored on the power-product basis: the
// coefficient at index S (a bitmask over generators) multiplies Π_{i∈S} rᵢ.
// The generators are named r1..rn.
//
// Orderings are real embeddings, recorded as one sign choice per generator
// together with dyadic isolating intervals. Signs of elements are decided by
// interval evaluation with refinement; an element is declared zero only when
// its coefficient vector is zero.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hsig {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

class FieldElement;

class FieldTower {
 public:
  // The rationals.
  FieldTower();

  std::size_t depth() const;
  std::size_t dimension() const { return std::size_t{1} << depth(); }
  // False once a level was adjoined with extend_nonreal.
  bool is_real() const;

  // Radicand adjoined at `level` (0-based); it lives in subtower(level).
  const FieldElement& radicand(std::size_t level) const;
  FieldTower subtower(std::size_t depth) const;
  FieldTower base() const;

  // True if `f` is a prefix of this tower (including equality).
  bool extends(const FieldTower& f) const;
  friend bool operator==(const FieldTower& a, const FieldTower& b);
  friend bool operator!=(const FieldTower& a, const FieldTower& b) { return !(a == b); }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement from_int(long v) const;
  FieldElement generator(std::size_t level) const;
  static std::string generator_name(std::size_t level);

  // Adjoin √a. `a` must be a nonzero non-square of this tower that is
  // positive at one of its orderings.
  FieldTower extend(const FieldElement& a) const;
  // Adjoin √a without the ordering requirement (arithmetic-only tower).
  FieldTower extend_nonreal(const FieldElement& a) const;

  std::string describe() const;

 private:
  struct Node;
  explicit FieldTower(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node* node() const { return node_.get(); }

  std::shared_ptr<const Node> node_;

  friend class FieldElement;
  friend class Ordering;
  friend struct TowerAccess;
};

class FieldElement {
 public:
  FieldElement();  // zero of Q
  FieldElement(FieldTower tower, std::vector<Rational> coefficients);

  const FieldTower& tower() const { return tower_; }
  const std::vector<Rational>& coefficients() const { return c_; }
  const Rational& coefficient(std::size_t index) const { return c_[index]; }

  bool is_zero() const;
  bool is_rational() const;  // only the constant coefficient may be nonzero
  Rational rational_value() const;  // requires is_rational()

  FieldElement zero() const { return tower_.zero(); }
  FieldElement one() const { return tower_.one(); }

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const Rational& q, const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement inverse() const;
  FieldElement operator/(const FieldElement& b) const { return *this * b.inverse(); }

  // Re-express in a tower that extends ours.
  FieldElement lift(const FieldTower& to) const;
  // Re-express in a prefix tower; requires all coefficients above it to vanish.
  FieldElement project(const FieldTower& to) const;

  // Square root inside the tower, if one exists.
  std::optional<FieldElement> sqrt() const;
  bool is_square() const { return sqrt().has_value(); }

  std::string to_string() const;

 private:
  FieldTower tower_;
  std::vector<Rational> c_;
};

// Tr_{F(√a)/F}(u + v√a) = 2u, for the topmost step of the tower.
FieldElement trace_step(const FieldElement& x);

struct RationalInterval {
  Rational lo;
  Rational hi;
};

class Ordering {
 public:
  const FieldTower& tower() const { return tower_; }
  const std::vector<int>& root_signs() const { return signs_; }
  const std::vector<RationalInterval>& isolating_intervals() const { return intervals_; }
  unsigned precision_bits() const { return bits_; }

  // Same embedding with intervals at (at least) the requested precision.
  Ordering refined(unsigned bits) const;
  // The induced ordering on a prefix tower.
  Ordering restrict_to(const FieldTower& f) const;
  // True when this ordering restricts to `p`.
  bool extends(const Ordering& p) const;

  // Extend to tower.extend(...) by choosing the sign of the new generator;
  // nullopt when the new radicand is negative here.
  std::optional<Ordering> lift(const FieldTower& extended, int new_sign) const;

  std::string signs_string() const;  // "[+,-]"
  friend bool operator==(const Ordering& a, const Ordering& b);

  // Interval enclosure of the generators at `bits` of dyadic precision.
  std::vector<RationalInterval> generator_intervals(unsigned bits) const;

  static Ordering of_rationals();

 private:
  Ordering(FieldTower tower, std::vector<int> signs, unsigned bits);

  FieldTower tower_;
  std::vector<int> signs_;
  std::vector<RationalInterval> intervals_;
  unsigned bits_ = 0;

  friend std::vector<Ordering> orderings(const FieldTower& f);
};

// All real embeddings, ordered lexicographically with '+' before '-'.
std::vector<Ordering> orderings(const FieldTower& f);

// Exact sign of x under P. x may live in P's tower or any prefix of it.
int sign_at(const FieldElement& x, const Ordering& p);

// Enclosure of the embedded value of x given generator intervals.
RationalInterval evaluate_interval(const FieldElement& x, std::span<const RationalInterval> gens);

}  // namespace hsig
