#pragma once

// Hermitian forms over (A, σ) on free modules A^k, stored as km×km Gram
// matrices over D, plus forms given directly at the collapsed level.

#include <vector>

#include "algebra.hpp"

namespace hsig {

// ε-hermitian form over (D, ϑ): ϑᵗ(gram) = ε·gram.
struct CollapsedForm {
  DivisionRing ring;
  int epsilon = 1;
  DMatrix gram;
};

class HermForm {
 public:
  // Hermitian (σᵗ(B) = B) and invertible; throws NotHermitian, Singular.
  static HermForm build(const Algebra& a, const DMatrix& gram);
  // A form given by its collapsed Gram b (ϑᵗ(b) = ε₀·b), of any size.
  static HermForm from_collapsed(const Algebra& a, const DMatrix& b);

  const Algebra& algebra() const { return a_; }
  const DMatrix& gram() const { return gram_; }
  // Module rank k; for collapsed-only forms the size of b.
  std::size_t rank() const;
  std::size_t size() const { return gram_.rows(); }
  bool collapsed_only() const { return collapsed_; }
  // +1 for the forms of the public API; −1 only after scaling by a skew unit.
  int epsilon() const { return eps_; }

  // b = (I_k ⊗ Φ₀⁻¹)·B with ε = ε₀·epsilon().
  CollapsedForm collapse() const;

  // Re-express over an algebra obtained by extending scalars.
  HermForm base_change(const Algebra& extended) const;
  HermForm extend_scalars(const FieldTower& l) const { return base_change(a_.extend_scalars(l)); }

 private:
  HermForm(Algebra a, DMatrix gram, bool collapsed, int eps)
      : a_(std::move(a)), gram_(std::move(gram)), collapsed_(collapsed), eps_(eps) {}

  Algebra a_;
  DMatrix gram_;
  bool collapsed_ = false;
  int eps_ = 1;

  friend HermForm perp(const HermForm& x, const HermForm& y);
  friend HermForm scale_field(const FieldElement& lambda, const HermForm& h);
  friend HermForm tensor_quad(const QuadForm& q, const HermForm& h);
  friend HermForm scale_by_unit(const HermForm& h, const DMatrix& u);
  friend HermForm transfer_hermitian(const HermForm& h, const Algebra& target);
};

// ⟨u₁,…,uₙ⟩_σ; each uᵢ is m×m, σ-symmetric and invertible.
HermForm diagonal_form(const Algebra& a, const std::vector<DMatrix>& units);
HermForm unit_form(const Algebra& a);  // ⟨1⟩_σ
HermForm hyperbolic(const Algebra& a, std::size_t k);

HermForm perp(const HermForm& x, const HermForm& y);
HermForm scale_field(const FieldElement& lambda, const HermForm& h);
HermForm tensor_quad(const QuadForm& q, const HermForm& h);

// u·h over (A, Int(u)∘σ) for σ(u) = ±u; throws NotUnit, NotSemiSymmetric.
HermForm scale_by_unit(const HermForm& h, const DMatrix& u);

// X ↦ B⁻¹·σᵗ(X)·B on M_k(A), computed as b⁻¹·ϑᵗ(X)·b.
Involution adjoint_involution(const HermForm& h);

// Throws SkewSymmetricOverField for skew forms over (F, id).
Diagonalization<DElement> diagonalize_collapsed(const CollapsedForm& c, bool track_transform = true);

// Tr* along the tower from h's field down to target's field; h must live over
// target.extend_scalars(L). Basis {e_s, e_s·√a} per slot and step.
HermForm transfer_hermitian(const HermForm& h, const Algebra& target);

}  // namespace hsig
