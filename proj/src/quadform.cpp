#include "quadform.hpp"

namespace hsig {

namespace {

FieldElement identity_invol(const FieldElement& x) { return x; }

bool is_symmetric(const FMatrix& g) {
  if (!g.square()) return false;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.cols(); ++j)
      if (g(i, j) != g(j, i)) return false;
  return true;
}

}  // namespace

QuadForm::QuadForm(FieldTower field, FMatrix gram) : field_(std::move(field)), gram_(std::move(gram)) {
  if (!gram_.square()) fail(Errc::DimensionMismatch, "Gram matrix is not square");
  gram_ = gram_.map([&](const FieldElement& x) { return x.lift(field_); });
  if (!is_symmetric(gram_)) fail(Errc::NotHermitian, "Gram matrix is not symmetric");
}

QuadForm QuadForm::diagonal(const FieldTower& field, std::span<const FieldElement> entries) {
  std::vector<FieldElement> e;
  for (const auto& x : entries) e.push_back(x.lift(field));
  return QuadForm(field, FMatrix::diagonal(std::span<const FieldElement>(e), field.zero()));
}

SymDiagonalization diagonalize_sym(const QuadForm& q) {
  const FieldElement one = q.field().one();
  std::vector<FieldElement> units{one};
  auto d = congruence_diagonalize(q.gram(), identity_invol, 1, std::span<const FieldElement>(units), true);
  SymDiagonalization out;
  out.entries = std::move(d.entries);
  out.transform = d.transform ? std::move(*d.transform) : FMatrix();
  return out;
}

int count_signs(std::span<const FieldElement> entries, const Ordering& p) {
  int s = 0;
  for (const auto& x : entries) {
    int v = sign_at(x, p);
    if (v == 0) fail(Errc::SingularForm, "form is singular (zero diagonal entry)");
    s += v;
  }
  return s;
}

int sylvester_signature(const QuadForm& q, const Ordering& p) {
  if (q.rank() == 0) return 0;
  const FieldElement one = q.field().one();
  std::vector<FieldElement> units{one};
  auto d = congruence_diagonalize(q.gram(), identity_invol, 1, std::span<const FieldElement>(units), false);
  return count_signs(d.entries, p);
}

QuadForm pfister(const FieldTower& field, std::span<const FieldElement> slots) {
  std::vector<FieldElement> diag{field.one()};
  for (const auto& a : slots) {
    if (a.is_zero()) fail(Errc::ZeroSlot, "Pfister slot is zero");
    FieldElement al = a.lift(field);
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) diag.push_back(diag[i] * al);
  }
  return QuadForm::diagonal(field, diag);
}

QuadForm perp(const QuadForm& x, const QuadForm& y) {
  if (x.field() != y.field()) fail(Errc::MismatchedTower, "forms over different fields");
  if (x.rank() == 0) return y;
  if (y.rank() == 0) return x;
  return QuadForm(x.field(), block_diagonal(x.gram(), y.gram()));
}

QuadForm tensor(const QuadForm& x, const QuadForm& y) {
  if (x.field() != y.field()) fail(Errc::MismatchedTower, "forms over different fields");
  return QuadForm(x.field(), kronecker(x.gram(), y.gram()));
}

QuadForm scale(const FieldElement& c, const QuadForm& q) {
  if (c.is_zero()) fail(Errc::ZeroScale, "scale factor is zero");
  FieldElement cl = c.lift(q.field());
  return QuadForm(q.field(), q.gram().map([&](const FieldElement& x) { return cl * x; }));
}

QuadForm transfer_quad(const QuadForm& q) {
  const FieldTower& l = q.field();
  if (l.depth() == 0) fail(Errc::BaseTower, "transfer from the rationals");
  const FieldTower f = l.base();
  const FieldElement g = l.generator(l.depth() - 1);
  const FieldElement basis[2] = {l.one(), g};
  const std::size_t n = q.rank();
  FMatrix out(2 * n, 2 * n, f.zero());
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t al = 0; al < 2; ++al)
        for (std::size_t be = 0; be < 2; ++be)
          out(2 * s + al, 2 * t + be) = trace_step(basis[al] * basis[be] * q.gram()(s, t));
  return QuadForm(f, std::move(out));
}

HermKForm::HermKForm(DivisionRing k, DMatrix gram) : k_(std::move(k)), gram_(std::move(gram)) {
  if (k_.kind() != DivisionKind::Quadratic) fail(Errc::MismatchedAlgebra, "HermKForm needs a quadratic extension");
  if (!gram_.square()) fail(Errc::DimensionMismatch, "Gram matrix is not square");
  if (!(conj_transpose(gram_) == gram_)) fail(Errc::NotHermitian, "Gram matrix is not hermitian");
}

int herm_k_signature(const HermKForm& h, const Ordering& p) {
  if (sign_at(h.d(), p) > 0) return 0;
  if (h.rank() == 0) return 0;
  auto units = h.ring().basis();
  auto d = congruence_diagonalize(h.gram(), [](const DElement& x) { return x.conj(); }, 1,
                                  std::span<const DElement>(units), false);
  std::vector<FieldElement> e;
  e.reserve(d.entries.size());
  for (const auto& x : d.entries) e.push_back(x.scalar_part());
  return count_signs(e, p);
}

}  // namespace hsig
