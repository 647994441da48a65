#pragma once

// Symmetric bilinear forms over a tower field, hermitian forms over (K, −),
// their signatures, Pfister forms and the trace transfer along one step.

#include <span>
#include <vector>

#include "division.hpp"
#include "matrix.hpp"
#include "numfield.hpp"

namespace hsig {

using FMatrix = Matrix<FieldElement>;

class QuadForm {
 public:
  // Throws NotHermitian for a non-symmetric Gram.
  QuadForm(FieldTower field, FMatrix gram);
  static QuadForm diagonal(const FieldTower& field, std::span<const FieldElement> entries);

  const FieldTower& field() const { return field_; }
  const FMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }

 private:
  FieldTower field_;
  FMatrix gram_;
};

struct SymDiagonalization {
  std::vector<FieldElement> entries;
  FMatrix transform;  // transformᵗ·gram·transform = diag(entries)
};

SymDiagonalization diagonalize_sym(const QuadForm& q);

// #positive − #negative at P of nonzero diagonal entries; SingularForm on zeros.
int count_signs(std::span<const FieldElement> entries, const Ordering& p);
int sylvester_signature(const QuadForm& q, const Ordering& p);

// ⟨1,a₂⟩⊗…⊗⟨1,a_r⟩
QuadForm pfister(const FieldTower& field, std::span<const FieldElement> slots);

QuadForm perp(const QuadForm& x, const QuadForm& y);
QuadForm tensor(const QuadForm& x, const QuadForm& y);
QuadForm scale(const FieldElement& c, const QuadForm& q);

// Restriction to the base of the top step, basis {e_s, e_s·√a} per slot.
QuadForm transfer_quad(const QuadForm& q);

// Hermitian form over (K, −), K = F(√d), given by a Gram matrix over the
// quadratic division ring.
class HermKForm {
 public:
  // Throws NotHermitian unless the conjugate transpose reproduces the Gram.
  HermKForm(DivisionRing k, DMatrix gram);

  const DivisionRing& ring() const { return k_; }
  const FieldTower& base() const { return k_.field(); }
  const FieldElement& d() const { return k_.d(); }
  const DMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }

 private:
  DivisionRing k_;
  DMatrix gram_;
};

// 0 when d >_P 0; otherwise the sign count of the F-valued diagonal after
// hermitian diagonalization.
int herm_k_signature(const HermKForm& h, const Ordering& p);

}  // namespace hsig
