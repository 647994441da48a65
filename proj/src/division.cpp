#include "division.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace hsig {

struct DivisionRing::Data {
  DivisionKind kind = DivisionKind::BaseField;
  FieldTower field;
  FieldElement a, b, ab;  // quaternion: a, b, ab; quadratic: a = d
  bool split = false;
  bool unverified = false;
};

namespace {

// ---- Hilbert symbols over Q

struct Factored {
  std::vector<mpz_class> primes;
  bool complete = true;
};

Factored prime_divisors(mpz_class n) {
  Factored out;
  if (n < 0) n = -n;
  for (unsigned long p = 2; p < 100000 && n > 1; ++p) {
    if (n % p != 0) continue;
    out.primes.emplace_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0)
      out.primes.push_back(n);
    else
      out.complete = false;
  }
  return out;
}

int valuation(mpz_class& n, const mpz_class& p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int hilbert_symbol(mpz_class a, mpz_class b, const mpz_class& p) {
  const int alpha = valuation(a, p);
  const int beta = valuation(b, p);
  if (p == 2) {
    auto eps = [](const mpz_class& x) -> int {
      mpz_class r = x % 4;
      if (r < 0) r += 4;
      return r == 3 ? 1 : 0;
    };
    auto omega = [](const mpz_class& x) -> int {
      mpz_class r = x % 8;
      if (r < 0) r += 8;
      return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
    return e % 2 ? -1 : 1;
  }
  int s = 1;
  mpz_class half = (p - 1) / 2;
  if ((alpha * beta) % 2 == 1 && half % 2 == 1) s = -s;
  if (beta % 2 == 1) s *= mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
  if (alpha % 2 == 1) s *= mpz_legendre(b.get_mpz_t(), p.get_mpz_t());
  return s;
}

// Integer representative of the square class of q.
mpz_class square_class_integer(const Rational& q) { return q.get_num() * q.get_den(); }

std::optional<QuaternionStatus> rational_status(const Rational& qa, const Rational& qb) {
  if (sgn(qa) < 0 && sgn(qb) < 0) return QuaternionStatus::Division;
  mpz_class a = square_class_integer(qa), b = square_class_integer(qb);
  Factored fa = prime_divisors(a), fb = prime_divisors(b);
  if (!fa.complete || !fb.complete) return std::nullopt;
  std::vector<mpz_class> primes{mpz_class(2)};
  for (auto* f : {&fa, &fb})
    for (const auto& p : f->primes)
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  for (const auto& p : primes)
    if (hilbert_symbol(a, b, p) < 0) return QuaternionStatus::Division;
  return QuaternionStatus::Split;
}

const std::array<const char*, 4> kQuaternionUnits{"1", "i", "j", "k"};
const std::array<const char*, 2> kQuadraticUnits{"1", "s"};

}  // namespace

QuaternionStatus quaternion_status(const FieldElement& a_in, const FieldElement& b_in) {
  FieldTower f = a_in.tower().depth() >= b_in.tower().depth() ? a_in.tower() : b_in.tower();
  FieldElement a = a_in.lift(f), b = b_in.lift(f);
  if (a.is_zero() || b.is_zero()) fail(Errc::InvalidRadicand, "quaternion parameters must be nonzero");
  if (a.is_square() || b.is_square() || (-(a * b)).is_square()) return QuaternionStatus::Split;
  if (a.is_rational() && b.is_rational()) {
    if (auto s = rational_status(a.rational_value(), b.rational_value())) return *s;
  }
  if (f.is_real())
    for (const auto& p : orderings(f))
      if (sign_at(a, p) < 0 && sign_at(b, p) < 0) return QuaternionStatus::Division;
  // x0² = a·x1² + b·x2² − ab·x3² for small integers x1..x3; x0 is found by
  // an exact square root, so only three coordinates are enumerated.
  constexpr int H = 3;
  const FieldElement ab = a * b;
  for (int x1 = -H; x1 <= H; ++x1)
    for (int x2 = -H; x2 <= H; ++x2)
      for (int x3 = -H; x3 <= H; ++x3) {
        if (x1 == 0 && x2 == 0 && x3 == 0) continue;
        FieldElement t = Rational(x1 * x1) * a + Rational(x2 * x2) * b - Rational(x3 * x3) * ab;
        if (t.is_square()) return QuaternionStatus::Split;
      }
  return QuaternionStatus::Unverified;
}

// --------------------------------------------------------------- DivisionRing

namespace {
std::shared_ptr<DivisionRing::Data> new_data(DivisionKind kind, const FieldTower& f) {
  auto d = std::make_shared<DivisionRing::Data>();
  d->kind = kind;
  d->field = f;
  return d;
}
}  // namespace

DivisionRing::DivisionRing() {
  static const std::shared_ptr<const Data> rationals = new_data(DivisionKind::BaseField, FieldTower());
  data_ = rationals;
}

DivisionRing DivisionRing::base_field(const FieldTower& f) {
  return DivisionRing(new_data(DivisionKind::BaseField, f));
}

DivisionRing DivisionRing::quaternion(const FieldElement& a, const FieldElement& b) {
  auto st = quaternion_status(a, b);
  if (st == QuaternionStatus::Split)
    fail(Errc::SplitQuaternion, "(" + a.to_string() + ", " + b.to_string() + ") is split: norm form is isotropic");
  FieldTower f = a.tower().depth() >= b.tower().depth() ? a.tower() : b.tower();
  auto d = new_data(DivisionKind::Quaternion, f);
  d->a = a.lift(f);
  d->b = b.lift(f);
  d->ab = d->a * d->b;
  d->unverified = st == QuaternionStatus::Unverified;
  return DivisionRing(std::move(d));
}

DivisionRing DivisionRing::quadratic(const FieldElement& dd) {
  if (dd.is_zero()) fail(Errc::SquareD, "d must be nonzero");
  if (dd.is_square()) fail(Errc::SquareD, dd.to_string() + " is a square");
  auto d = new_data(DivisionKind::Quadratic, dd.tower());
  d->a = dd;
  return DivisionRing(std::move(d));
}

DivisionKind DivisionRing::kind() const { return data_->kind; }
const FieldTower& DivisionRing::field() const { return data_->field; }

std::size_t DivisionRing::dimension() const {
  switch (data_->kind) {
    case DivisionKind::BaseField: return 1;
    case DivisionKind::Quaternion: return 4;
    case DivisionKind::Quadratic: return 2;
  }
  return 1;
}

const FieldElement& DivisionRing::a() const {
  if (data_->kind != DivisionKind::Quaternion) fail(Errc::Internal, "a() on a non-quaternion");
  return data_->a;
}
const FieldElement& DivisionRing::b() const {
  if (data_->kind != DivisionKind::Quaternion) fail(Errc::Internal, "b() on a non-quaternion");
  return data_->b;
}
const FieldElement& DivisionRing::d() const {
  if (data_->kind != DivisionKind::Quadratic) fail(Errc::Internal, "d() on a non-quadratic ring");
  return data_->a;
}

bool DivisionRing::is_split() const { return data_->split; }
bool DivisionRing::division_unverified() const { return data_->unverified; }

bool DivisionRing::ramified_at(const Ordering& p) const {
  if (data_->kind != DivisionKind::Quaternion) return false;
  return sign_at(data_->a, p) < 0 && sign_at(data_->b, p) < 0;
}

DivisionRing DivisionRing::extend_scalars(const FieldTower& l) const {
  if (!l.extends(field())) fail(Errc::NotAnExtension, l.describe() + " does not extend " + field().describe());
  switch (data_->kind) {
    case DivisionKind::BaseField: return base_field(l);
    case DivisionKind::Quadratic: {
      FieldElement d = data_->a.lift(l);
      if (d.is_square()) fail(Errc::SquareD, d.to_string() + " becomes a square over " + l.describe());
      auto nd = new_data(DivisionKind::Quadratic, l);
      nd->a = d;
      return DivisionRing(std::move(nd));
    }
    case DivisionKind::Quaternion: {
      auto nd = new_data(DivisionKind::Quaternion, l);
      nd->a = data_->a.lift(l);
      nd->b = data_->b.lift(l);
      nd->ab = nd->a * nd->b;
      auto st = quaternion_status(nd->a, nd->b);
      nd->split = st == QuaternionStatus::Split;
      nd->unverified = st == QuaternionStatus::Unverified;
      return DivisionRing(std::move(nd));
    }
  }
  fail(Errc::Internal, "unknown division kind");
}

DElement DivisionRing::zero() const {
  return DElement(*this, std::vector<FieldElement>(dimension(), field().zero()));
}

DElement DivisionRing::one() const { return scalar(field().one()); }

DElement DivisionRing::scalar(const FieldElement& x) const {
  std::vector<FieldElement> c(dimension(), field().zero());
  c[0] = x.lift(field());
  return DElement(*this, std::move(c));
}

DElement DivisionRing::from_int(long v) const { return scalar(field().from_int(v)); }

DElement DivisionRing::unit(std::size_t index) const {
  if (index >= dimension()) fail(Errc::DimensionMismatch, "unit index out of range");
  std::vector<FieldElement> c(dimension(), field().zero());
  c[index] = field().one();
  return DElement(*this, std::move(c));
}

std::vector<DElement> DivisionRing::basis() const {
  std::vector<DElement> out;
  for (std::size_t i = 0; i < dimension(); ++i) out.push_back(unit(i));
  return out;
}

const char* DivisionRing::unit_name(DivisionKind kind, std::size_t index) {
  if (kind == DivisionKind::Quaternion) return kQuaternionUnits.at(index);
  if (kind == DivisionKind::Quadratic) return kQuadraticUnits.at(index);
  return "1";
}

std::string DivisionRing::describe() const {
  switch (data_->kind) {
    case DivisionKind::BaseField: return field().describe();
    case DivisionKind::Quaternion:
      return "(" + data_->a.to_string() + ", " + data_->b.to_string() + ")_" + field().describe();
    case DivisionKind::Quadratic: return field().describe() + "(sqrt(" + data_->a.to_string() + "))";
  }
  return "?";
}

bool operator==(const DivisionRing& x, const DivisionRing& y) {
  if (x.data_ == y.data_) return true;
  if (x.data_->kind != y.data_->kind || x.data_->field != y.data_->field) return false;
  switch (x.data_->kind) {
    case DivisionKind::BaseField: return true;
    case DivisionKind::Quadratic: return x.data_->a == y.data_->a;
    case DivisionKind::Quaternion: return x.data_->a == y.data_->a && x.data_->b == y.data_->b;
  }
  return false;
}

// ------------------------------------------------------------------- DElement

DElement::DElement(DivisionRing ring, std::vector<FieldElement> coords) : ring_(std::move(ring)), x_(std::move(coords)) {
  if (x_.size() != ring_.dimension()) fail(Errc::DimensionMismatch, "wrong number of coordinates");
  for (auto& c : x_)
    if (c.tower() != ring_.field()) c = c.lift(ring_.field());
}

namespace {
void check_ring(const DivisionRing& x, const DivisionRing& y) {
  if (!(x == y)) fail(Errc::MismatchedAlgebra, "elements of " + x.describe() + " and " + y.describe());
}
}  // namespace

bool DElement::is_zero() const {
  for (const auto& c : x_)
    if (!c.is_zero()) return false;
  return true;
}

bool DElement::is_scalar() const {
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!x_[i].is_zero()) return false;
  return true;
}

DElement DElement::operator-() const {
  DElement r = *this;
  for (auto& c : r.x_) c = -c;
  return r;
}

DElement operator+(const DElement& x, const DElement& y) {
  check_ring(x.ring_, y.ring_);
  DElement r = x;
  for (std::size_t i = 0; i < r.x_.size(); ++i)
    if (!y.x_[i].is_zero()) r.x_[i] = r.x_[i] + y.x_[i];
  return r;
}

DElement operator-(const DElement& x, const DElement& y) {
  check_ring(x.ring_, y.ring_);
  DElement r = x;
  for (std::size_t i = 0; i < r.x_.size(); ++i)
    if (!y.x_[i].is_zero()) r.x_[i] = r.x_[i] - y.x_[i];
  return r;
}

DElement operator*(const FieldElement& c, const DElement& x) {
  DElement r = x;
  for (auto& v : r.x_)
    if (!v.is_zero()) v = c * v;
  return r;
}

DElement operator*(const DElement& x, const DElement& y) {
  check_ring(x.ring_, y.ring_);
  const auto& d = *x.ring_.data_;
  if (x.is_scalar()) return x.x_[0] * y;
  if (y.is_scalar()) return y.x_[0] * x;
  const auto& p = x.x_;
  const auto& q = y.x_;
  if (d.kind == DivisionKind::Quadratic) {
    return DElement(x.ring_, {p[0] * q[0] + d.a * (p[1] * q[1]), p[0] * q[1] + p[1] * q[0]});
  }
  // i² = a, j² = b, ij = −ji = k
  const FieldElement& a = d.a;
  const FieldElement& b = d.b;
  const FieldElement& ab = d.ab;
  FieldElement c0 = p[0] * q[0] + a * (p[1] * q[1]) + b * (p[2] * q[2]) - ab * (p[3] * q[3]);
  FieldElement c1 = p[0] * q[1] + p[1] * q[0] + b * (p[3] * q[2] - p[2] * q[3]);
  FieldElement c2 = p[0] * q[2] + p[2] * q[0] + a * (p[1] * q[3] - p[3] * q[1]);
  FieldElement c3 = p[0] * q[3] + p[3] * q[0] + p[1] * q[2] - p[2] * q[1];
  return DElement(x.ring_, {std::move(c0), std::move(c1), std::move(c2), std::move(c3)});
}

bool operator==(const DElement& x, const DElement& y) {
  if (!(x.ring_ == y.ring_)) return false;
  for (std::size_t i = 0; i < x.x_.size(); ++i)
    if (x.x_[i] != y.x_[i]) return false;
  return true;
}

DElement DElement::conj() const {
  DElement r = *this;
  for (std::size_t i = 1; i < r.x_.size(); ++i) r.x_[i] = -r.x_[i];
  return r;
}

FieldElement DElement::norm() const {
  const auto& d = *ring_.data_;
  switch (d.kind) {
    case DivisionKind::BaseField: return x_[0];
    case DivisionKind::Quadratic: return x_[0] * x_[0] - d.a * (x_[1] * x_[1]);
    case DivisionKind::Quaternion:
      return x_[0] * x_[0] - d.a * (x_[1] * x_[1]) - d.b * (x_[2] * x_[2]) + d.ab * (x_[3] * x_[3]);
  }
  fail(Errc::Internal, "unknown division kind");
}

FieldElement DElement::trd() const {
  if (ring_.kind() == DivisionKind::BaseField) return x_[0];
  return Rational(2) * x_[0];
}

DElement DElement::inverse() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero in " + ring_.describe());
  if (ring_.kind() == DivisionKind::BaseField) return DElement(ring_, {x_[0].inverse()});
  FieldElement n = norm();
  if (n.is_zero()) fail(Errc::DivisionByZero, to_string() + " is a zero divisor (split algebra)");
  return n.inverse() * conj();
}

DElement DElement::lift(const DivisionRing& to) const {
  if (ring_ == to) return DElement(to, x_);
  if (to.kind() != ring_.kind() || !to.field().extends(ring_.field()))
    fail(Errc::MismatchedAlgebra, "cannot lift " + ring_.describe() + " into " + to.describe());
  std::vector<FieldElement> c;
  c.reserve(x_.size());
  for (const auto& v : x_) c.push_back(v.lift(to.field()));
  return DElement(to, std::move(c));
}

std::string DElement::to_string() const {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const FieldElement& c = x_[i];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    std::size_t terms = 0;
    for (const auto& q : c.coefficients())
      if (sgn(q) != 0) ++terms;
    std::string term;
    if (i == 0) {
      term = cs;
    } else {
      const std::string u = DivisionRing::unit_name(ring_.kind(), i);
      if (terms > 1)
        term = "(" + cs + ")*" + u;
      else if (cs == "1")
        term = u;
      else if (cs == "-1")
        term = "-" + u;
      else
        term = cs + "*" + u;
    }
    if (first) {
      out = term;
      first = false;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return first ? "0" : out;
}

bool is_unit(const DElement& x) {
  if (x.is_zero()) return false;
  if (x.ring().kind() == DivisionKind::BaseField) return true;
  return !x.norm().is_zero();
}

// ------------------------------------------------------------------ matrices

DMatrix conj_transpose(const DMatrix& x) {
  DMatrix t = x.transpose();
  return t.map([](const DElement& e) { return e.conj(); });
}

DMatrix scalar_matrix(const DivisionRing& d, std::size_t n, const DElement& c) {
  return DMatrix::identity(n, d.zero(), c);
}

DMatrix identity_matrix(const DivisionRing& d, std::size_t n) { return DMatrix::identity(n, d.zero(), d.one()); }

DMatrix lift_matrix(const DMatrix& x, const DivisionRing& to) {
  return x.map([&](const DElement& e) { return e.lift(to); });
}

}  // namespace hsig
