#include "algebra.hpp"

namespace hsig {

const char* involution_type_name(InvolutionType t) {
  switch (t) {
    case InvolutionType::Orthogonal: return "orthogonal";
    case InvolutionType::Symplectic: return "symplectic";
    case InvolutionType::Unitary: return "unitary";
  }
  return "?";
}

DMatrix block_scalar(const DMatrix& x, std::size_t k) {
  if (k == 1) return x;
  const std::size_t m = x.rows();
  DMatrix out(k * m, k * m, x(0, 0).zero());
  for (std::size_t b = 0; b < k; ++b) out.set_block(b * m, b * m, x);
  return out;
}

Algebra Algebra::build(const DivisionRing& d, std::size_t m, const DMatrix& phi0, int epsilon0) {
  if (m == 0) fail(Errc::DimensionMismatch, "m must be positive");
  if (phi0.rows() != m || phi0.cols() != m) fail(Errc::DimensionMismatch, "phi0 must be m x m");
  if (epsilon0 != 1 && epsilon0 != -1) fail(Errc::NotEpsilonHermitian, "epsilon0 must be +1 or -1");
  Algebra a;
  a.d_ = d;
  a.m_ = m;
  a.eps0_ = epsilon0;
  a.phi0_ = lift_matrix(phi0, d);
  DMatrix t = conj_transpose(a.phi0_);
  DMatrix e = epsilon0 > 0 ? a.phi0_ : -a.phi0_;
  if (!(t == e))
    fail(Errc::NotEpsilonHermitian, "phi0 is not " + std::string(epsilon0 > 0 ? "" : "skew-") + "hermitian");
  auto inv = try_inverse(a.phi0_);
  if (!inv) fail(Errc::SingularPhi0, "phi0 is singular");
  a.phi0_inv_ = std::move(*inv);
  return a;
}

InvolutionType Algebra::type() const {
  switch (d_.kind()) {
    case DivisionKind::Quadratic: return InvolutionType::Unitary;
    case DivisionKind::BaseField: return eps0_ > 0 ? InvolutionType::Orthogonal : InvolutionType::Symplectic;
    case DivisionKind::Quaternion: return eps0_ > 0 ? InvolutionType::Symplectic : InvolutionType::Orthogonal;
  }
  return InvolutionType::Orthogonal;
}

namespace {

bool is_diagonal(const DMatrix& x) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (i != j && !x(i, j).is_zero()) return false;
  return true;
}

}  // namespace

DMatrix Algebra::apply(const DMatrix& x) const {
  if (!x.square() || x.rows() % m_ != 0) fail(Errc::DimensionMismatch, "element size must be a multiple of m");
  const std::size_t n = x.rows();
  const std::size_t k = n / m_;
  if (is_diagonal(phi0_)) {
    // σ(X)_ij = φ_i ϑ(X_ji) φ_j⁻¹
    DMatrix out(n, n, d_.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const DElement& v = x(j, i);
        if (v.is_zero()) continue;
        out(i, j) = phi0_(i % m_, i % m_) * v.conj() * phi0_inv_(j % m_, j % m_);
      }
    return out;
  }
  return block_scalar(phi0_, k) * conj_transpose(x) * block_scalar(phi0_inv_, k);
}

Involution Algebra::involution(std::size_t k) const {
  Algebra self = *this;
  return Involution{d_, k * m_, type() == InvolutionType::Unitary,
                    [self](const DMatrix& x) { return self.apply(x); }};
}

DElement Algebra::reduced_trace(const DMatrix& x) const {
  if (!x.square()) fail(Errc::DimensionMismatch, "reduced trace of a non-square matrix");
  DElement t = d_.zero();
  for (std::size_t i = 0; i < x.rows(); ++i) t = t + x(i, i);
  if (d_.kind() == DivisionKind::Quaternion) return d_.scalar(t.trd());
  return t;
}

Algebra Algebra::extend_scalars(const FieldTower& l) const {
  Algebra a;
  a.d_ = d_.extend_scalars(l);
  a.m_ = m_;
  a.eps0_ = eps0_;
  a.phi0_ = lift_matrix(phi0_, a.d_);
  a.phi0_inv_ = lift_matrix(phi0_inv_, a.d_);
  return a;
}

Algebra Algebra::with_phi0(const DMatrix& phi0, int epsilon0) const {
  // build() would re-run the division check on D; only Φ₀ changes here.
  Algebra a = *this;
  a.eps0_ = epsilon0;
  a.phi0_ = lift_matrix(phi0, d_);
  DMatrix e = epsilon0 > 0 ? a.phi0_ : -a.phi0_;
  if (!(conj_transpose(a.phi0_) == e)) fail(Errc::NotEpsilonHermitian, "phi0 is not epsilon-hermitian");
  auto inv = try_inverse(a.phi0_);
  if (!inv) fail(Errc::SingularPhi0, "phi0 is singular");
  a.phi0_inv_ = std::move(*inv);
  return a;
}

namespace {

// Coordinates of a matrix over D in the F-basis {E_pq·u}.
std::vector<FieldElement> flatten(const DMatrix& x) {
  std::vector<FieldElement> v;
  for (const auto& e : x.data())
    for (const auto& c : e.coords()) v.push_back(c);
  return v;
}

// Incremental row echelon over F.
class EchelonBasis {
 public:
  bool add(std::vector<FieldElement> v) {
    for (const auto& [piv, row] : rows_) {
      if (v[piv].is_zero()) continue;
      const FieldElement c = v[piv];
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!row[i].is_zero()) v[i] = v[i] - c * row[i];
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv].is_zero()) ++piv;
    if (piv == v.size()) return false;
    const FieldElement inv = v[piv].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x = inv * x;
    // Keep earlier rows reduced against the new pivot.
    for (auto& [p, row] : rows_) {
      if (row[piv].is_zero()) continue;
      const FieldElement c = row[piv];
      for (std::size_t i = 0; i < row.size(); ++i)
        if (!v[i].is_zero()) row[i] = row[i] - c * v[i];
    }
    rows_.emplace_back(piv, std::move(v));
    return true;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<std::pair<std::size_t, std::vector<FieldElement>>> rows_;
};

}  // namespace

std::vector<DMatrix> Algebra::sym_basis(std::size_t k) const {
  const std::size_t n = k * m_;
  const std::size_t dd = d_.dimension();
  std::vector<DMatrix> out;
  EchelonBasis ech;
  const auto units = d_.basis();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t u = 0; u < dd; ++u) {
        DMatrix x(n, n, d_.zero());
        x(p, q) = units[u];
        DMatrix s = x + apply(x);
        if (s.is_zero()) continue;
        if (ech.add(flatten(s))) out.push_back(std::move(s));
      }
  const std::size_t deg = d_.kind() == DivisionKind::Quaternion ? 2 * n : n;
  std::size_t expected = 0;
  switch (type()) {
    case InvolutionType::Orthogonal: expected = deg * (deg + 1) / 2; break;
    case InvolutionType::Symplectic: expected = deg * (deg - 1) / 2; break;
    case InvolutionType::Unitary: expected = deg * deg; break;
  }
  if (out.size() != expected)
    fail(Errc::Internal, "symmetric space has dimension " + std::to_string(out.size()) + ", expected " +
                             std::to_string(expected));
  return out;
}

std::string Algebra::describe() const {
  std::string s = "(M_" + std::to_string(m_) + "(" + d_.describe() + "), ad[";
  for (std::size_t i = 0; i < m_; ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < m_; ++j) {
      if (j) s += ",";
      s += phi0_(i, j).to_string();
    }
    s += "]";
  }
  return s + "], eps0=" + std::to_string(eps0_) + ")";
}

bool operator==(const Algebra& x, const Algebra& y) {
  return x.m_ == y.m_ && x.eps0_ == y.eps0_ && x.d_ == y.d_ && x.phi0_ == y.phi0_;
}

// ----------------------------------------------------------------- trace form

TraceForm trace_form(const Involution& tau) {
  const std::size_t n = tau.n;
  const DivisionRing& d = tau.ring;
  const FieldTower& f = d.field();
  if (tau.unitary) {
    std::vector<DMatrix> images;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        DMatrix x(n, n, d.zero());
        x(p, q) = d.one();
        DMatrix t = tau.apply(x);
        if (!(tau.apply(t) == x)) fail(Errc::NotInvolution, "map is not of order two");
        images.push_back(std::move(t));
      }
    const std::size_t dim = n * n;
    DMatrix g(dim, dim, d.zero());
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        const std::size_t pb = b / n, qb = b % n;
        g(a, b) = images[a](qb, pb);
      }
    return HermKForm(d, std::move(g));
  }
  const std::size_t dd = d.dimension();
  const auto units = d.basis();
  std::vector<DMatrix> images;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t u = 0; u < dd; ++u) {
        DMatrix x(n, n, d.zero());
        x(p, q) = units[u];
        DMatrix t = tau.apply(x);
        if (!(tau.apply(t) == x)) fail(Errc::NotInvolution, "map is not of order two");
        images.push_back(std::move(t));
      }
  const std::size_t dim = n * n * dd;
  FMatrix g(dim, dim, f.zero());
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      const std::size_t ub = b % dd, pq = b / dd, pb = pq / n, qb = pq % n;
      const DElement& e = images[a](qb, pb);
      if (!e.is_zero()) g(a, b) = (e * units[ub]).trd();
    }
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (g(a, b) != g(b, a)) fail(Errc::NotInvolution, "trace form is not symmetric");
  return QuadForm(f, std::move(g));
}

int trace_form_signature(const TraceForm& t, const Ordering& p) {
  if (const auto* q = std::get_if<QuadForm>(&t)) return sylvester_signature(*q, p);
  return herm_k_signature(std::get<HermKForm>(t), p);
}

// ------------------------------------------------------------------ splitting

DMatrix QuaternionSplitting::j_matrix(const DivisionRing& l) {
  DMatrix j(2, 2, l.zero());
  j(0, 1) = l.one();
  j(1, 0) = -l.one();
  return j;
}

DMatrix QuaternionSplitting::j_inverse(const DivisionRing& l) { return -j_matrix(l); }

namespace {

struct UnitImages {
  DMatrix i, j, k;
};

UnitImages unit_images(const QuaternionSplitting& s, const FieldElement& a, const FieldElement& b) {
  const DivisionRing& l = s.ring;
  auto el = [&](const FieldElement& x) { return l.scalar(x.lift(l.field())); };
  DMatrix diag(2, 2, l.zero());
  diag(0, 0) = el(s.root);
  diag(1, 1) = el(-s.root);
  DMatrix off(2, 2, l.zero());
  off(0, 1) = l.one();
  off(1, 0) = el(s.use_a ? b : a);
  UnitImages u;
  if (s.use_a) {
    u.i = diag;
    u.j = off;
  } else {
    u.i = off;
    u.j = diag;
  }
  u.k = u.i * u.j;
  return u;
}

}  // namespace

QuaternionSplitting make_splitting(const DivisionRing& d, bool use_a, const Ordering* root_positive_at) {
  if (d.kind() != DivisionKind::Quaternion) fail(Errc::InvalidRadicand, "splitting needs a quaternion algebra");
  QuaternionSplitting s;
  s.use_a = use_a;
  const FieldElement r = use_a ? d.a() : d.b();
  if (auto root = r.sqrt()) {
    s.field = d.field();
    s.root = *root;
    if (root_positive_at && sign_at(s.root, *root_positive_at) < 0) s.root = -s.root;
  } else {
    try {
      s.field = d.field().extend(r);
    } catch (const Error& e) {
      fail(Errc::InvalidRadicand, std::string("cannot adjoin sqrt(") + r.to_string() + "): " + e.what());
    }
    s.root = s.field.generator(s.field.depth() - 1);
  }
  s.ring = DivisionRing::base_field(s.field);

  // Relations and the transport of conjugation, checked on generators.
  const UnitImages u = unit_images(s, d.a(), d.b());
  const DivisionRing& l = s.ring;
  auto scal = [&](const FieldElement& x) { return scalar_matrix(l, 2, l.scalar(x.lift(l.field()))); };
  const DMatrix jm = QuaternionSplitting::j_matrix(l), jinv = QuaternionSplitting::j_inverse(l);
  bool ok = u.i * u.i == scal(d.a()) && u.j * u.j == scal(d.b()) && u.i * u.j == -(u.j * u.i);
  for (const DMatrix* x : {&u.i, &u.j, &u.k}) ok = ok && jm * x->transpose() * jinv == -*x;
  if (!ok) fail(Errc::Internal, "quaternion splitting map failed its self-check");
  return s;
}

DMatrix QuaternionSplitting::map_element(const DElement& x) const {
  const DivisionRing& d = x.ring();
  const UnitImages u = unit_images(*this, d.a(), d.b());
  auto c = [&](std::size_t idx) { return ring.scalar(x.coord(idx).lift(field)); };
  DMatrix out = scalar_matrix(ring, 2, c(0));
  if (!x.coord(1).is_zero()) out = out + c(1) * u.i;
  if (!x.coord(2).is_zero()) out = out + c(2) * u.j;
  if (!x.coord(3).is_zero()) out = out + c(3) * u.k;
  return out;
}

DMatrix QuaternionSplitting::map_matrix(const DMatrix& x) const {
  DMatrix out(2 * x.rows(), 2 * x.cols(), ring.zero());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c)
      if (!x(r, c).is_zero()) out.set_block(2 * r, 2 * c, map_element(x(r, c)));
  return out;
}

SplitAlgebra split_quaternion(const Algebra& a, bool use_a) {
  QuaternionSplitting s = make_splitting(a.division(), use_a);
  DMatrix phi = s.map_matrix(a.phi0()) * block_scalar(QuaternionSplitting::j_matrix(s.ring), a.m());
  Algebra split = Algebra::build(s.ring, 2 * a.m(), phi, -a.epsilon0());
  return SplitAlgebra{std::move(split), std::move(s)};
}

}  // namespace hsig
