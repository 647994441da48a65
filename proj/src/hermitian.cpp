#include "hermitian.hpp"

namespace hsig {

namespace {

void check_same_algebra(const HermForm& x, const HermForm& y) {
  if (x.algebra() != y.algebra()) fail(Errc::MismatchedAlgebra, "forms live over different algebras");
  if (x.epsilon() != y.epsilon()) fail(Errc::MismatchedAlgebra, "forms have different epsilon");
}

DMatrix hyperbolic_gram(const DivisionRing& d, std::size_t n) {
  DMatrix g(2 * n, 2 * n, d.zero());
  for (std::size_t i = 0; i < n; ++i) {
    g(i, n + i) = d.one();
    g(n + i, i) = d.one();
  }
  return g;
}

// ext is A ⊗ L for some L extending base's field.
bool is_scalar_extension_of(const Algebra& ext, const Algebra& base) {
  const DivisionRing& de = ext.division();
  const DivisionRing& db = base.division();
  if (ext.m() != base.m() || ext.epsilon0() != base.epsilon0() || de.kind() != db.kind()) return false;
  if (!ext.field().extends(base.field())) return false;
  if (de.kind() == DivisionKind::Quaternion && (de.a() != db.a() || de.b() != db.b())) return false;
  if (de.kind() == DivisionKind::Quadratic && de.d() != db.d()) return false;
  return ext.phi0() == lift_matrix(base.phi0(), de);
}

}  // namespace

HermForm HermForm::build(const Algebra& a, const DMatrix& gram) {
  if (!gram.square() || gram.rows() == 0 || gram.rows() % a.m() != 0)
    fail(Errc::DimensionMismatch, "Gram matrix must be km x km over D");
  DMatrix g = lift_matrix(gram, a.division());
  if (!(a.apply(g) == g)) fail(Errc::NotHermitian, "Gram matrix is not hermitian for sigma");
  if (!try_inverse(g)) fail(Errc::Singular, "Gram matrix is singular");
  return HermForm(a, std::move(g), false, 1);
}

HermForm HermForm::from_collapsed(const Algebra& a, const DMatrix& b) {
  if (!b.square() || b.rows() == 0) fail(Errc::DimensionMismatch, "collapsed Gram must be square");
  DMatrix g = lift_matrix(b, a.division());
  DMatrix e = a.epsilon0() > 0 ? g : -g;
  if (!(conj_transpose(g) == e))
    fail(Errc::NotHermitian, "collapsed Gram is not epsilon0-hermitian over the division algebra");
  if (!try_inverse(g)) fail(Errc::Singular, "collapsed Gram is singular");
  return HermForm(a, std::move(g), true, 1);
}

std::size_t HermForm::rank() const { return collapsed_ ? gram_.rows() : gram_.rows() / a_.m(); }

CollapsedForm HermForm::collapse() const {
  const int eps = a_.epsilon0() * eps_;
  if (collapsed_) return CollapsedForm{a_.division(), eps, gram_};
  return CollapsedForm{a_.division(), eps, block_scalar(a_.phi0_inverse(), rank()) * gram_};
}

HermForm HermForm::base_change(const Algebra& extended) const {
  if (!is_scalar_extension_of(extended, a_))
    fail(Errc::NotAnExtension, extended.describe() + " is not a scalar extension of " + a_.describe());
  return HermForm(extended, lift_matrix(gram_, extended.division()), collapsed_, eps_);
}

HermForm diagonal_form(const Algebra& a, const std::vector<DMatrix>& units) {
  if (units.empty()) fail(Errc::DimensionMismatch, "diagonal form needs at least one entry");
  const std::size_t m = a.m();
  DMatrix g(m * units.size(), m * units.size(), a.zero());
  for (std::size_t s = 0; s < units.size(); ++s) {
    if (units[s].rows() != m || units[s].cols() != m) fail(Errc::DimensionMismatch, "diagonal entries must be m x m");
    DMatrix u = lift_matrix(units[s], a.division());
    if (!(a.apply(u) == u)) fail(Errc::NotSymmetricUnit, "diagonal entry " + std::to_string(s + 1) + " is not symmetric");
    if (!try_inverse(u)) fail(Errc::SingularUnit, "diagonal entry " + std::to_string(s + 1) + " is not invertible");
    g.set_block(s * m, s * m, u);
  }
  return HermForm::build(a, g);
}

HermForm unit_form(const Algebra& a) { return diagonal_form(a, {a.identity()}); }

HermForm hyperbolic(const Algebra& a, std::size_t k) {
  if (k == 0) fail(Errc::DimensionMismatch, "hyperbolic rank must be positive");
  return HermForm::build(a, hyperbolic_gram(a.division(), k * a.m()));
}

HermForm perp(const HermForm& x, const HermForm& y) {
  check_same_algebra(x, y);
  if (!x.collapsed_only() && !y.collapsed_only())
    return HermForm(x.algebra(), block_diagonal(x.gram(), y.gram()), false, x.epsilon());
  return HermForm(x.algebra(), block_diagonal(x.collapse().gram, y.collapse().gram), true, x.epsilon());
}

HermForm scale_field(const FieldElement& lambda, const HermForm& h) {
  if (lambda.is_zero()) fail(Errc::ZeroScale, "scale factor is zero");
  const DElement c = h.algebra().division().scalar(lambda);
  return HermForm(h.algebra(), c * h.gram(), h.collapsed_only(), h.epsilon());
}

HermForm tensor_quad(const QuadForm& q, const HermForm& h) {
  if (!h.algebra().field().extends(q.field()))
    fail(Errc::MismatchedTower, "quadratic form is not defined over the algebra's field");
  const DivisionRing& d = h.algebra().division();
  const std::size_t n = h.size();
  DMatrix g(q.rank() * n, q.rank() * n, d.zero());
  for (std::size_t i = 0; i < q.rank(); ++i)
    for (std::size_t j = 0; j < q.rank(); ++j) {
      if (q.gram()(i, j).is_zero()) continue;
      g.set_block(i * n, j * n, d.scalar(q.gram()(i, j)) * h.gram());
    }
  return HermForm(h.algebra(), std::move(g), h.collapsed_only(), h.epsilon());
}

HermForm scale_by_unit(const HermForm& h, const DMatrix& u_in) {
  const Algebra& a = h.algebra();
  if (u_in.rows() != a.m() || u_in.cols() != a.m()) fail(Errc::DimensionMismatch, "scaling unit must be m x m");
  DMatrix u = lift_matrix(u_in, a.division());
  if (!try_inverse(u)) fail(Errc::NotUnit, "scaling element is not invertible");
  DMatrix su = a.apply(u);
  int eps = 0;
  if (su == u)
    eps = 1;
  else if (su == -u)
    eps = -1;
  else
    fail(Errc::NotSemiSymmetric, "sigma(u) is neither u nor -u");
  Algebra scaled = a.with_phi0(u * a.phi0(), eps * a.epsilon0());
  DMatrix g = h.collapsed_only() ? h.gram() : block_scalar(u, h.rank()) * h.gram();
  return HermForm(std::move(scaled), std::move(g), h.collapsed_only(), eps * h.epsilon());
}

Involution adjoint_involution(const HermForm& h) {
  CollapsedForm c = h.collapse();
  DMatrix binv = inverse(c.gram);
  DMatrix b = c.gram;
  return Involution{c.ring, b.rows(), h.algebra().type() == InvolutionType::Unitary,
                    [binv, b](const DMatrix& x) { return binv * conj_transpose(x) * b; }};
}

Diagonalization<DElement> diagonalize_collapsed(const CollapsedForm& c, bool track_transform) {
  const auto units = c.ring.basis();
  return congruence_diagonalize(c.gram, [](const DElement& x) { return x.conj(); }, c.epsilon,
                                std::span<const DElement>(units), track_transform);
}

HermForm transfer_hermitian(const HermForm& h, const Algebra& target) {
  if (!is_scalar_extension_of(h.algebra(), target))
    fail(Errc::NotAnExtension, "form does not live over a scalar extension of the target algebra");
  HermForm cur = h;
  while (cur.algebra().field().depth() > target.field().depth()) {
    const FieldTower l = cur.algebra().field();
    const FieldTower f = l.base();
    const Algebra down = f == target.field() ? target : target.extend_scalars(f);
    const DivisionRing& dd = down.division();
    const FieldElement g = l.generator(l.depth() - 1);
    const FieldElement basis[2] = {l.one(), g};
    const std::size_t sm = cur.collapsed_only() ? 1 : cur.algebra().m();
    const std::size_t slots = cur.size() / sm;
    DMatrix out(2 * cur.size(), 2 * cur.size(), dd.zero());
    for (std::size_t s = 0; s < slots; ++s)
      for (std::size_t t = 0; t < slots; ++t)
        for (std::size_t al = 0; al < 2; ++al)
          for (std::size_t be = 0; be < 2; ++be) {
            const FieldElement w = basis[al] * basis[be];
            for (std::size_t r = 0; r < sm; ++r)
              for (std::size_t c = 0; c < sm; ++c) {
                const DElement& e = cur.gram()(s * sm + r, t * sm + c);
                if (e.is_zero()) continue;
                std::vector<FieldElement> coords;
                for (const auto& x : e.coords()) coords.push_back(trace_step(w * x));
                out((2 * s + al) * sm + r, (2 * t + be) * sm + c) = DElement(dd, std::move(coords));
              }
          }
    cur = HermForm(down, std::move(out), cur.collapsed_only(), cur.epsilon());
  }
  return cur;
}

}  // namespace hsig
