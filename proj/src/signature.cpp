#include "signature.hpp"

#include <functional>

namespace hsig {

bool is_nil(const Algebra& a, const Ordering& p) {
  const DivisionRing& d = a.division();
  switch (a.type()) {
    case InvolutionType::Orthogonal: return d.kind() == DivisionKind::Quaternion && d.ramified_at(p);
    case InvolutionType::Symplectic: return d.kind() == DivisionKind::BaseField || !d.ramified_at(p);
    case InvolutionType::Unitary: return sign_at(d.d(), p) > 0;
  }
  return false;
}

std::vector<Ordering> nil_orderings(const Algebra& a) {
  std::vector<Ordering> out;
  for (const auto& p : orderings(a.field()))
    if (is_nil(a, p)) out.push_back(p);
  return out;
}

int lambda_at(const Algebra& a, const Ordering& p) {
  return a.type() == InvolutionType::Symplectic && a.division().ramified_at(p) ? 2 : 1;
}

int exact_isqrt(int v) {
  if (v < 0) fail(Errc::NotPerfectSquare, "trace form signature " + std::to_string(v) + " is negative");
  int r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) fail(Errc::NotPerfectSquare, "trace form signature " + std::to_string(v) + " is not a square");
  return r;
}

int involution_signature(const Involution& tau, const Ordering& p) {
  return exact_isqrt(trace_form_signature(trace_form(tau), p));
}

namespace {

int scalar_signs(const std::vector<DElement>& entries, const Ordering& p) {
  std::vector<FieldElement> e;
  e.reserve(entries.size());
  for (const auto& x : entries) {
    if (!x.is_scalar()) fail(Errc::Internal, "diagonal entry " + x.to_string() + " is not central");
    e.push_back(x.scalar_part());
  }
  return count_signs(e, p);
}

// sign_P T_{ad_h} from δ = diag(θᵗ(C)·b·C): in the basis C·E_pq·u·C⁻¹ the
// trace form is block diagonal, block (p,q) being (u,v) ↦ Trd(δ_q⁻¹ϑ(u)δ_p v).
std::optional<int> adapted_trace_signature(const CollapsedForm& c, bool unitary, const Ordering& p) {
  std::vector<DElement> delta;
  try {
    delta = diagonalize_collapsed(c, false).entries;
  } catch (const Error& e) {
    if (e.code() == Errc::SkewSymmetricOverField || e.code() == Errc::DivisionByZero) return std::nullopt;
    throw;
  }
  for (const auto& x : delta)
    if (!is_unit(x)) return std::nullopt;
  const DivisionRing& d = c.ring;
  const std::size_t n = delta.size();
  std::vector<DElement> inv;
  for (const auto& x : delta) inv.push_back(x.inverse());
  int total = 0;
  if (unitary) {
    if (sign_at(d.d(), p) > 0) return 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        DElement v = inv[b] * delta[a];
        if (!v.is_scalar()) fail(Errc::Internal, "adapted trace form entry is not in F");
        int s = sign_at(v.scalar_part(), p);
        if (s == 0) fail(Errc::SingularForm, "adapted trace form is singular");
        total += s;
      }
    return total;
  }
  const auto units = d.basis();
  const std::size_t dd = units.size();
  const FieldTower& f = d.field();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      FMatrix g(dd, dd, f.zero());
      for (std::size_t u = 0; u < dd; ++u) {
        const DElement left = inv[b] * units[u].conj() * delta[a];
        for (std::size_t v = 0; v < dd; ++v) g(u, v) = (left * units[v]).trd();
      }
      total += sylvester_signature(QuadForm(f, std::move(g)), p);
    }
  return total;
}

}  // namespace

int adjoint_trace_signature(const HermForm& h, const Ordering& p) {
  const bool unitary = h.algebra().type() == InvolutionType::Unitary;
  if (auto s = adapted_trace_signature(h.collapse(), unitary, p)) return *s;
  return trace_form_signature(trace_form(adjoint_involution(h)), p);
}

int abs_signature(const HermForm& h, const Ordering& p) {
  const int s = exact_isqrt(adjoint_trace_signature(h, p));
  const int lambda = lambda_at(h.algebra(), p);
  if (s % lambda != 0)
    fail(Errc::NonIntegerQuotient, "sign ad_h = " + std::to_string(s) + " is not divisible by lambda = 2");
  return s / lambda;
}

int m_signature(const HermForm& h, const Ordering& p) {
  const CollapsedForm c = h.collapse();
  const DivisionRing& d = c.ring;
  switch (d.kind()) {
    case DivisionKind::BaseField: {
      if (c.epsilon < 0) return 0;
      FMatrix g = c.gram.map([](const DElement& x) { return x.scalar_part(); });
      return sylvester_signature(QuadForm(d.field(), std::move(g)), p);
    }
    case DivisionKind::Quaternion: {
      if (d.ramified_at(p)) {
        if (c.epsilon < 0) return 0;
        return scalar_signs(diagonalize_collapsed(c, false).entries, p);
      }
      if (c.epsilon > 0) return 0;
      // Split at P: pass to M₂(F(√r)) and read the symmetric form (I⊗J⁻¹)·φ(b).
      const bool use_a = sign_at(d.a(), p) > 0;
      QuaternionSplitting s = make_splitting(d, use_a, &p);
      Ordering q = p;
      if (s.field.depth() > d.field().depth()) {
        auto lifted = p.lift(s.field, +1);
        if (!lifted) fail(Errc::Internal, "split radicand is not positive at the ordering");
        q = *lifted;
      }
      DMatrix g = block_scalar(QuaternionSplitting::j_inverse(s.ring), c.gram.rows()) * s.map_matrix(c.gram);
      FMatrix gf = g.map([](const DElement& x) { return x.scalar_part(); });
      return sylvester_signature(QuadForm(s.field, std::move(gf)), q);
    }
    case DivisionKind::Quadratic: {
      if (sign_at(d.d(), p) > 0) return 0;
      DMatrix g = c.gram;
      if (c.epsilon < 0) g = d.unit(1) * g;
      return herm_k_signature(HermKForm(d, std::move(g)), p);
    }
  }
  fail(Errc::Internal, "unknown division kind");
}

std::size_t ordering_index(const Ordering& p) {
  const auto all = orderings(p.tower());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == p) return i;
  fail(Errc::Internal, "ordering not found among the orderings of its tower");
}

void validate_reference_tuple(const Algebra& a, const ReferenceTuple& h) {
  const auto ords = orderings(a.field());
  for (std::size_t i = 0; i < ords.size(); ++i) {
    if (is_nil(a, ords[i])) continue;
    bool covered = false;
    for (const auto& f : h.forms)
      if (abs_signature(f, ords[i]) != 0) {
        covered = true;
        break;
      }
    if (!covered)
      fail(Errc::ExhaustedReferences,
           "no reference form has nonzero signature at P#" + std::to_string(i) + " " + ords[i].signs_string());
  }
}

ReferenceTuple extend_reference(const ReferenceTuple& h, const Algebra& extended) {
  ReferenceTuple out;
  for (const auto& f : h.forms) out.forms.push_back(f.base_change(extended));
  return out;
}

SignatureReport h_signature(const HermForm& h, const ReferenceTuple& refs, const Ordering& p) {
  const Algebra& a = h.algebra();
  SignatureReport r;
  r.ordering_index = ordering_index(p);
  r.signs = p.signs_string();
  r.lambda = lambda_at(a, p);
  r.nil = is_nil(a, p);
  if (r.nil) return r;

  int mi = 0;
  std::size_t idx = 0;
  for (; idx < refs.forms.size(); ++idx) {
    mi = m_signature(refs.forms[idx], p);
    if (mi != 0) break;
  }
  if (idx == refs.forms.size())
    fail(Errc::ExhaustedReferences, "no reference form has nonzero signature at P#" +
                                        std::to_string(r.ordering_index) + " " + r.signs);
  const int mh = m_signature(h, p);
  r.value = (mi > 0 ? 1 : -1) * mh;
  r.reference = idx;

  // Second route: magnitudes from trace forms, relative sign from |h ⊥ hᵢ|.
  const HermForm& ref = refs.forms[idx];
  const int ah = abs_signature(h, p);
  const int ai = abs_signature(ref, p);
  auto disagree = [&](const std::string& what) {
    fail(Errc::RouteDisagreement, what + " at P#" + std::to_string(r.ordering_index));
  };
  if (ai != std::abs(mi)) disagree("reference magnitude " + std::to_string(ai) + " vs " + std::to_string(mi));
  if (ah != std::abs(mh)) disagree("form magnitude " + std::to_string(ah) + " vs " + std::to_string(mh));
  if (ah != 0) {
    const int s = abs_signature(perp(h, ref), p);
    int rel = 0;
    if (s == ah + ai)
      rel = 1;
    else if (s == std::abs(ah - ai))
      rel = -1;
    else
      disagree("|h + h_i| = " + std::to_string(s) + " fits neither relative sign");
    if (rel * ah != r.value) disagree("relative sign route gives " + std::to_string(rel * ah));
  }
  return r;
}

std::vector<SignatureReport> total_h_signature(const HermForm& h, const ReferenceTuple& refs) {
  std::vector<SignatureReport> out;
  for (const auto& p : orderings(h.algebra().field())) out.push_back(h_signature(h, refs, p));
  return out;
}

namespace {

// Integer combinations of the basis: by height, then support size, then
// support (lexicographic), then coefficients 1, −1, 2, −2, ...
void enumerate_combinations(std::size_t n, int max_height,
                            const std::function<bool(const std::vector<std::pair<std::size_t, int>>&)>& visit) {
  for (int h = 1; h <= max_height; ++h) {
    std::vector<int> coeffs;
    for (int c = 1; c <= h; ++c) {
      coeffs.push_back(c);
      coeffs.push_back(-c);
    }
    for (std::size_t s = 1; s <= n; ++s) {
      std::vector<std::size_t> support(s);
      for (std::size_t i = 0; i < s; ++i) support[i] = i;
      while (true) {
        std::vector<std::size_t> digit(s, 0);
        while (true) {
          int top = 0;
          std::vector<std::pair<std::size_t, int>> combo;
          for (std::size_t i = 0; i < s; ++i) {
            const int c = coeffs[digit[i]];
            top = std::max(top, std::abs(c));
            combo.emplace_back(support[i], c);
          }
          if (top == h && !visit(combo)) return;
          std::size_t pos = s;
          while (pos > 0 && digit[pos - 1] + 1 == coeffs.size()) digit[--pos] = 0;
          if (pos == 0) break;
          ++digit[pos - 1];
        }
        std::size_t i = s;
        while (i > 0 && support[i - 1] == n - s + i - 1) --i;
        if (i == 0) break;
        ++support[i - 1];
        for (std::size_t j = i; j < s; ++j) support[j] = support[j - 1] + 1;
      }
    }
  }
}

}  // namespace

ReferenceTuple find_reference_tuple(const Algebra& a, std::size_t pool_budget) {
  const auto ords = orderings(a.field());
  std::vector<bool> open(ords.size(), false);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < ords.size(); ++i)
    if (!is_nil(a, ords[i])) {
      open[i] = true;
      ++remaining;
    }
  ReferenceTuple out;
  if (remaining == 0) return out;

  std::size_t examined = 0;
  // Returns false once the cover is complete.
  auto consider = [&](const DMatrix& u, bool always_keep) {
    if (examined >= pool_budget) return false;
    ++examined;
    if (!(a.apply(u) == u) || !try_inverse(u)) return true;
    HermForm h = diagonal_form(a, {u});
    bool useful = false;
    for (std::size_t i = 0; i < ords.size(); ++i) {
      if (!open[i]) continue;
      if (abs_signature(h, ords[i]) != 0) {
        open[i] = false;
        --remaining;
        useful = true;
      }
    }
    if (useful || always_keep) out.forms.push_back(std::move(h));
    return remaining > 0;
  };

  consider(a.identity(), true);
  if (remaining > 0 && a.epsilon0() > 0) consider(a.phi0(), false);
  if (remaining > 0) {
    const auto basis = a.sym_basis(1);
    enumerate_combinations(basis.size(), 3, [&](const std::vector<std::pair<std::size_t, int>>& combo) {
      DMatrix u(a.m(), a.m(), a.zero());
      for (const auto& [idx, c] : combo) u = u + a.division().from_int(c) * basis[idx];
      return consider(u, false);
    });
  }
  if (remaining > 0) {
    std::string which;
    for (std::size_t i = 0; i < ords.size(); ++i)
      if (open[i]) which += (which.empty() ? "" : ", ") + ("P#" + std::to_string(i) + " " + ords[i].signs_string());
    fail(Errc::PoolExhausted, "pool budget " + std::to_string(pool_budget) + " exhausted; uncovered: " + which);
  }
  return out;
}

TraceFormulaRecord verify_trace_formula(const HermForm& h, const Algebra& base, const ReferenceTuple& refs,
                                        const Ordering& p) {
  TraceFormulaRecord rec;
  rec.lhs = h_signature(transfer_hermitian(h, base), refs, p).value;
  const Algebra& extended = h.algebra();
  const ReferenceTuple refs_l = extend_reference(refs, extended);
  const auto ords = orderings(extended.field());
  for (std::size_t i = 0; i < ords.size(); ++i) {
    if (!ords[i].extends(p)) continue;
    const int v = h_signature(h, refs_l, ords[i]).value;
    rec.terms.push_back({i, v});
    rec.rhs += v;
  }
  return rec;
}

}  // namespace hsig
