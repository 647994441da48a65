#pragma once

// Nil orderings, involution signatures, M- and H-signatures, reference
// tuples and the trace formula check.

#include <optional>
#include <string>
#include <vector>

#include "hermitian.hpp"

namespace hsig {

constexpr std::size_t kDefaultPoolBudget = 400;

bool is_nil(const Algebra& a, const Ordering& p);
std::vector<Ordering> nil_orderings(const Algebra& a);
// 2 exactly when σ is symplectic and D is a quaternion ramified at P.
int lambda_at(const Algebra& a, const Ordering& p);

// Exact integer square root; NotPerfectSquare otherwise.
int exact_isqrt(int v);

// √(sign_P T_τ) from the black-box trace form.
int involution_signature(const Involution& tau, const Ordering& p);
// sign_P T_{ad_h}, computed in a basis adapted to a diagonalization of the
// collapsed form (falls back to the black-box trace form).
int adjoint_trace_signature(const HermForm& h, const Ordering& p);

int m_signature(const HermForm& h, const Ordering& p);
// √(sign_P T_{ad_h}) / λ_P
int abs_signature(const HermForm& h, const Ordering& p);

struct ReferenceTuple {
  std::vector<HermForm> forms;
};

// Throws ExhaustedReferences when some non-nil ordering is not covered.
void validate_reference_tuple(const Algebra& a, const ReferenceTuple& h);
ReferenceTuple extend_reference(const ReferenceTuple& h, const Algebra& extended);

struct SignatureReport {
  std::size_t ordering_index = 0;
  std::string signs;  // "[+,-]"
  bool nil = false;
  int value = 0;
  int lambda = 1;
  std::optional<std::size_t> reference;  // 0-based index into the tuple
};

// Index of p in orderings(p.tower()).
std::size_t ordering_index(const Ordering& p);

SignatureReport h_signature(const HermForm& h, const ReferenceTuple& refs, const Ordering& p);
std::vector<SignatureReport> total_h_signature(const HermForm& h, const ReferenceTuple& refs);

// Greedy cover of the non-nil orderings by rank-one forms ⟨u⟩_σ.
ReferenceTuple find_reference_tuple(const Algebra& a, std::size_t pool_budget = kDefaultPoolBudget);

struct TraceFormulaTerm {
  std::size_t ordering_index;  // among orderings of L
  int value;
};

struct TraceFormulaRecord {
  int lhs = 0;
  int rhs = 0;
  std::vector<TraceFormulaTerm> terms;
  bool pass() const { return lhs == rhs; }
};

// h lives over base.extend_scalars(L); refs is a tuple over base; P orders base's field.
TraceFormulaRecord verify_trace_formula(const HermForm& h, const Algebra& base, const ReferenceTuple& refs,
                                        const Ordering& p);

}  // namespace hsig
