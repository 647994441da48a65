#pragma once

// The division rings D ∈ {F, (a,b)_F, F(√d)} with their canonical involution
// ϑ (identity, quaternion conjugation, or √d ↦ −√d).

#include <memory>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "numfield.hpp"

namespace hsig {

enum class DivisionKind { BaseField, Quaternion, Quadratic };

// Outcome of the anisotropy check for the quaternion norm form.
enum class QuaternionStatus { Division, Split, Unverified };

// Decide whether (a,b)_F is a division algebra. Exact over Q (Hilbert
// symbols); over larger towers: square tests, a bounded search for zeros of
// ⟨1,−a,−b,ab⟩ and the "both negative at an ordering" criterion.
QuaternionStatus quaternion_status(const FieldElement& a, const FieldElement& b);

class DElement;

class DivisionRing {
 public:
  DivisionRing();  // Q itself

  static DivisionRing base_field(const FieldTower& f);
  // Throws SplitQuaternion when the norm form is shown to be isotropic.
  static DivisionRing quaternion(const FieldElement& a, const FieldElement& b);
  // Throws SquareD when d is a square in F.
  static DivisionRing quadratic(const FieldElement& d);

  DivisionKind kind() const;
  const FieldTower& field() const;
  std::size_t dimension() const;  // over F: 1, 4, 2
  const FieldElement& a() const;  // quaternion
  const FieldElement& b() const;  // quaternion
  const FieldElement& d() const;  // quadratic

  // Set for quaternions that became split after a scalar extension.
  bool is_split() const;
  // Set when neither division nor splitting could be certified.
  bool division_unverified() const;
  // Quaternion with a <_P 0 and b <_P 0.
  bool ramified_at(const Ordering& p) const;

  // Same presentation over an extension of F. Quaternions may become split
  // there; that is recorded rather than rejected.
  DivisionRing extend_scalars(const FieldTower& l) const;

  DElement zero() const;
  DElement one() const;
  DElement scalar(const FieldElement& x) const;
  DElement from_int(long v) const;
  DElement unit(std::size_t index) const;  // 1, i, j, k  /  1, s
  std::vector<DElement> basis() const;
  static const char* unit_name(DivisionKind kind, std::size_t index);

  std::string describe() const;

  friend bool operator==(const DivisionRing& x, const DivisionRing& y);
  friend bool operator!=(const DivisionRing& x, const DivisionRing& y) { return !(x == y); }

  struct Data;

 private:
  explicit DivisionRing(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
  friend class DElement;
  friend DElement operator*(const DElement& x, const DElement& y);
};

class DElement {
 public:
  DElement() = default;
  DElement(DivisionRing ring, std::vector<FieldElement> coords);

  const DivisionRing& ring() const { return ring_; }
  const std::vector<FieldElement>& coords() const { return x_; }
  const FieldElement& coord(std::size_t i) const { return x_[i]; }

  bool is_zero() const;
  // Lies in F·1.
  bool is_scalar() const;
  const FieldElement& scalar_part() const { return x_[0]; }

  DElement zero() const { return ring_.zero(); }
  DElement one() const { return ring_.one(); }

  DElement operator-() const;
  friend DElement operator+(const DElement& x, const DElement& y);
  friend DElement operator-(const DElement& x, const DElement& y);
  friend DElement operator*(const DElement& x, const DElement& y);
  friend DElement operator*(const FieldElement& c, const DElement& x);
  friend bool operator==(const DElement& x, const DElement& y);
  friend bool operator!=(const DElement& x, const DElement& y) { return !(x == y); }

  // ϑ
  DElement conj() const;
  // Reduced norm and trace; for D = K the norm and trace of K/F.
  FieldElement norm() const;
  FieldElement trd() const;
  DElement inverse() const;

  DElement lift(const DivisionRing& to) const;

  std::string to_string() const;

 private:
  DivisionRing ring_;
  std::vector<FieldElement> x_;
};

// Nonzero reduced norm; differs from !is_zero() only for split quaternions.
bool is_unit(const DElement& x);

using DMatrix = Matrix<DElement>;

// Entrywise ϑ followed by transpose.
DMatrix conj_transpose(const DMatrix& x);
DMatrix scalar_matrix(const DivisionRing& d, std::size_t n, const DElement& c);
DMatrix identity_matrix(const DivisionRing& d, std::size_t n);
DMatrix lift_matrix(const DMatrix& x, const DivisionRing& to);

}  // namespace hsig
