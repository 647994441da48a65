#pragma once

// Algebras with involution (M_m(D), ad_Φ₀), σ(X) = Φ₀·ϑᵗ(X)·Φ₀⁻¹ with
// ϑᵗ(Φ₀) = ε₀·Φ₀. Elements of M_k(A) are stored as km×km matrices over D.

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "division.hpp"
#include "quadform.hpp"

namespace hsig {

enum class InvolutionType { Orthogonal, Symplectic, Unitary };
const char* involution_type_name(InvolutionType t);

// An involution on M_n(D) given as a black box.
struct Involution {
  DivisionRing ring;
  std::size_t n = 0;  // matrix size over D
  bool unitary = false;
  std::function<DMatrix(const DMatrix&)> apply;
};

class Algebra {
 public:
  // Throws NotEpsilonHermitian, SingularPhi0, DimensionMismatch.
  static Algebra build(const DivisionRing& d, std::size_t m, const DMatrix& phi0, int epsilon0);

  const DivisionRing& division() const { return d_; }
  const FieldTower& field() const { return d_.field(); }
  std::size_t m() const { return m_; }
  const DMatrix& phi0() const { return phi0_; }
  const DMatrix& phi0_inverse() const { return phi0_inv_; }
  int epsilon0() const { return eps0_; }
  InvolutionType type() const;

  DElement zero() const { return d_.zero(); }
  DElement one() const { return d_.one(); }
  DMatrix identity(std::size_t k = 1) const { return identity_matrix(d_, k * m_); }

  // σ applied blockwise to an element of M_k(A).
  DMatrix apply(const DMatrix& x) const;
  Involution involution(std::size_t k = 1) const;

  // Center-valued: F·1 for the first kind, K for the unitary case.
  DElement reduced_trace(const DMatrix& x) const;

  Algebra extend_scalars(const FieldTower& l) const;
  // Same D and m with a different Gram Φ₀ (used for Morita rescaling).
  Algebra with_phi0(const DMatrix& phi0, int epsilon0) const;

  // F-basis of Sym(M_k(A), σ).
  std::vector<DMatrix> sym_basis(std::size_t k = 1) const;

  std::string describe() const;

  friend bool operator==(const Algebra& x, const Algebra& y);
  friend bool operator!=(const Algebra& x, const Algebra& y) { return !(x == y); }

 private:
  Algebra() = default;
  DivisionRing d_;
  std::size_t m_ = 0;
  DMatrix phi0_;
  DMatrix phi0_inv_;
  int eps0_ = 1;
};

// I_k ⊗ x for an m×m matrix x.
DMatrix block_scalar(const DMatrix& x, std::size_t k);

// Trace form (x,y) ↦ Trd(τ(x)·y) over the F-basis {E_pq·u} (first kind) or
// the K-basis {E_pq} (unitary). Throws NotInvolution if τ² ≠ id on a basis.
using TraceForm = std::variant<QuadForm, HermKForm>;
TraceForm trace_form(const Involution& tau);
int trace_form_signature(const TraceForm& t, const Ordering& p);

// Quaternion splitting over F(√r), r ∈ {a, b}.
struct QuaternionSplitting {
  FieldTower field;  // F(√r), or F itself when r is already a square
  FieldElement root;  // s with s² = r
  bool use_a = true;
  DivisionRing ring;  // the base field L as a division ring
  // Entry map D → M₂(L).
  DMatrix map_element(const DElement& x) const;
  // Entrywise map M_n(D) → M_{2n}(L).
  DMatrix map_matrix(const DMatrix& x) const;
  static DMatrix j_matrix(const DivisionRing& l);
  static DMatrix j_inverse(const DivisionRing& l);
};

// Throws InvalidRadicand when r is not a or b, or F(√r) cannot be built.
// `root_sign_at`, when given, fixes the sign of an existing square root.
QuaternionSplitting make_splitting(const DivisionRing& d, bool use_a, const Ordering* root_positive_at = nullptr);

// (M_m((a,b)), ad_Φ₀) ≅ (M_{2m}(L), ad_{Φ₀'}) with Φ₀' = φ(Φ₀)(I⊗J), ε₀' = −ε₀.
struct SplitAlgebra {
  Algebra algebra;
  QuaternionSplitting splitting;
};
SplitAlgebra split_quaternion(const Algebra& a, bool use_a);

}  // namespace hsig
