#include "numfield.hpp"

#include <algorithm>
#include <sstream>

namespace hsig {

struct FieldTower::Node {
  std::shared_ptr<const Node> parent;
  std::size_t depth = 0;
  std::optional<FieldElement> radicand;  // element of the parent tower; empty at the root
  bool real = true;
};

struct TowerAccess {
  using Node = FieldTower::Node;
  static const FieldTower::Node* node(const FieldTower& t) { return t.node(); }
};

namespace {

using Coeffs = std::vector<Rational>;
using NodeT = TowerAccess::Node;

constexpr unsigned kInitialBits = 64;
constexpr unsigned kMaxBits = 1u << 20;

bool all_zero(const Rational* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(x[i]) != 0) return false;
  return true;
}


const NodeT* parent_of(const NodeT* n) { return n->parent.get(); }

// out = x·y for elements of dimension 2^d below node n (n->depth == d).
void mul_rec(const NodeT* n, const Rational* x, const Rational* y, Rational* out) {
  const std::size_t d = n->depth;
  if (d == 0) {
    out[0] = x[0] * y[0];
    return;
  }
  const std::size_t h = std::size_t{1} << (d - 1);
  const NodeT* p = parent_of(n);
  const bool x1z = all_zero(x + h, h);
  const bool y1z = all_zero(y + h, h);
  if (x1z && y1z) {
    mul_rec(p, x, y, out);
    for (std::size_t i = h; i < 2 * h; ++i) out[i] = 0;
    return;
  }
  Coeffs t(h);
  // low = x0·y0 + c·x1·y1, high = x0·y1 + x1·y0
  mul_rec(p, x, y, out);
  if (!x1z && !y1z) {
    Coeffs u(h);
    mul_rec(p, x + h, y + h, u.data());
    mul_rec(p, u.data(), n->radicand->coefficients().data(), t.data());
    for (std::size_t i = 0; i < h; ++i) out[i] += t[i];
  }
  for (std::size_t i = h; i < 2 * h; ++i) out[i] = 0;
  if (!y1z) {
    mul_rec(p, x, y + h, t.data());
    for (std::size_t i = 0; i < h; ++i) out[h + i] += t[i];
  }
  if (!x1z) {
    mul_rec(p, x + h, y, t.data());
    for (std::size_t i = 0; i < h; ++i) out[h + i] += t[i];
  }
}

Coeffs mul_coeffs(const NodeT* n, const Coeffs& x, const Coeffs& y) {
  Coeffs out(x.size());
  mul_rec(n, x.data(), y.data(), out.data());
  return out;
}

// Inverse by the conjugate: 1/(u + v·g) = (u − v·g)/(u² − c·v²).
Coeffs inv_coeffs(const NodeT* n, const Coeffs& x) {
  const std::size_t d = n->depth;
  if (d == 0) {
    if (sgn(x[0]) == 0) fail(Errc::DivisionByZero, "inverse of zero");
    return Coeffs{1 / x[0]};
  }
  const std::size_t h = std::size_t{1} << (d - 1);
  const NodeT* p = parent_of(n);
  Coeffs u(x.begin(), x.begin() + h), v(x.begin() + h, x.end());
  Coeffs out(2 * h);
  if (all_zero(v.data(), h)) {
    Coeffs ui = inv_coeffs(p, u);
    std::copy(ui.begin(), ui.end(), out.begin());
    return out;
  }
  Coeffs uu = mul_coeffs(p, u, u);
  Coeffs vv = mul_coeffs(p, v, v);
  Coeffs cvv = mul_coeffs(p, vv, n->radicand->coefficients());
  Coeffs norm(h);
  for (std::size_t i = 0; i < h; ++i) norm[i] = uu[i] - cvv[i];
  if (all_zero(norm.data(), h))
    fail(Errc::DivisionByZero, "zero norm: radicand is a square or element is zero");
  Coeffs ni = inv_coeffs(p, norm);
  Coeffs lo = mul_coeffs(p, u, ni);
  Coeffs hi = mul_coeffs(p, v, ni);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = lo[i];
    out[h + i] = -hi[i];
  }
  return out;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

std::optional<Coeffs> sqrt_coeffs(const NodeT* n, const Coeffs& x) {
  const std::size_t d = n->depth;
  if (d == 0) {
    auto r = rational_sqrt(x[0]);
    if (!r) return std::nullopt;
    return Coeffs{*r};
  }
  const std::size_t h = std::size_t{1} << (d - 1);
  const NodeT* p = parent_of(n);
  const Coeffs& c = n->radicand->coefficients();
  Coeffs u(x.begin(), x.begin() + h), v(x.begin() + h, x.end());
  Coeffs out(2 * h);
  if (all_zero(v.data(), h)) {
    if (auto r = sqrt_coeffs(p, u)) {
      std::copy(r->begin(), r->end(), out.begin());
      return out;
    }
    // u = c·y² gives √u = y·g
    Coeffs q = mul_coeffs(p, u, inv_coeffs(p, c));
    if (auto r = sqrt_coeffs(p, q)) {
      std::copy(r->begin(), r->end(), out.begin() + h);
      return out;
    }
    return std::nullopt;
  }
  // (s + y·g)² = u + v·g  ⇔  y² = (u ± √(u² − c·v²)) / (2c),  s = v/(2y)
  Coeffs uu = mul_coeffs(p, u, u);
  Coeffs cvv = mul_coeffs(p, mul_coeffs(p, v, v), c);
  Coeffs norm(h);
  for (std::size_t i = 0; i < h; ++i) norm[i] = uu[i] - cvv[i];
  auto t = sqrt_coeffs(p, norm);
  if (!t) return std::nullopt;
  Coeffs inv2c = inv_coeffs(p, c);
  for (auto& q : inv2c) q /= 2;
  for (int s : {1, -1}) {
    Coeffs num(h);
    for (std::size_t i = 0; i < h; ++i) num[i] = u[i] + s * (*t)[i];
    if (all_zero(num.data(), h)) continue;
    auto y = sqrt_coeffs(p, mul_coeffs(p, num, inv2c));
    if (!y || all_zero(y->data(), h)) continue;
    Coeffs inv2y = inv_coeffs(p, *y);
    for (auto& q : inv2y) q /= 2;
    Coeffs sc = mul_coeffs(p, v, inv2y);
    std::copy(sc.begin(), sc.end(), out.begin());
    std::copy(y->begin(), y->end(), out.begin() + h);
    if (mul_coeffs(n, out, out) == x) return out;
  }
  return std::nullopt;
}

const std::shared_ptr<const NodeT>& rationals_node() {
  static const std::shared_ptr<const NodeT> node = [] {
    auto n = std::make_shared<NodeT>();
    n->depth = 0;
    n->real = true;
    return std::shared_ptr<const NodeT>(n);
  }();
  return node;
}

const NodeT* ancestor_at(const NodeT* n, std::size_t depth) {
  while (n->depth > depth) n = n->parent.get();
  return n;
}

bool nodes_equal(const NodeT* a, const NodeT* b) {
  if (a == b) return true;
  if (a->depth != b->depth) return false;
  while (a != b) {
    if (a->radicand->coefficients() != b->radicand->coefficients()) return false;
    a = a->parent.get();
    b = b->parent.get();
  }
  return true;
}

// Common tower of two operands; one must extend the other.
FieldTower join(const FieldTower& a, const FieldTower& b) {
  if (TowerAccess::node(a) == TowerAccess::node(b)) return a;
  if (a.depth() >= b.depth() && a.extends(b)) return a;
  if (b.depth() > a.depth() && b.extends(a)) return b;
  fail(Errc::MismatchedTower, "operands live in unrelated towers " + a.describe() + " and " + b.describe());
}

RationalInterval imul(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  RationalInterval r{p[0], p[0]};
  for (const auto& x : p) {
    if (x < r.lo) r.lo = x;
    if (x > r.hi) r.hi = x;
  }
  return r;
}

// floor(sqrt(q)·2^bits)/2^bits and the matching ceiling.
Rational sqrt_lower(const Rational& q, unsigned bits) {
  if (sgn(q) <= 0) return Rational(0);
  mpz_class scaled = q.get_num() << (2 * bits);
  mpz_class z = scaled / q.get_den();
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  Rational out(r, mpz_class(1) << bits);
  out.canonicalize();
  return out;
}

Rational sqrt_upper(const Rational& q, unsigned bits) {
  mpz_class scaled = q.get_num() << (2 * bits);
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  if (r * r < z) r += 1;
  Rational out(r, mpz_class(1) << bits);
  out.canonicalize();
  return out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) fail(Errc::ParseError, "invalid rational '" + text + "'");
  if (q.get_den() == 0) fail(Errc::ParseError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- FieldTower

FieldTower::FieldTower() : node_(rationals_node()) {}

std::size_t FieldTower::depth() const { return node_->depth; }
bool FieldTower::is_real() const { return node_->real; }

const FieldElement& FieldTower::radicand(std::size_t level) const {
  if (level >= depth()) fail(Errc::BaseTower, "no radicand at level " + std::to_string(level));
  return *ancestor_at(node_.get(), level + 1)->radicand;
}

FieldTower FieldTower::subtower(std::size_t d) const {
  if (d > depth()) fail(Errc::NotAnExtension, "subtower deeper than tower");
  const NodeT* n = node_.get();
  std::shared_ptr<const NodeT> cur = node_;
  while (n->depth > d) {
    cur = n->parent;
    n = cur.get();
  }
  return FieldTower(cur);
}

FieldTower FieldTower::base() const {
  if (depth() == 0) fail(Errc::BaseTower, "the rationals have no base tower");
  return subtower(depth() - 1);
}

bool FieldTower::extends(const FieldTower& f) const {
  if (f.depth() > depth()) return false;
  return nodes_equal(ancestor_at(node_.get(), f.depth()), f.node_.get());
}

bool operator==(const FieldTower& a, const FieldTower& b) { return nodes_equal(a.node_.get(), b.node_.get()); }

FieldElement FieldTower::zero() const { return FieldElement(*this, std::vector<Rational>(dimension())); }

FieldElement FieldTower::one() const { return from_int(1); }

FieldElement FieldTower::from_rational(const Rational& q) const {
  std::vector<Rational> c(dimension());
  c[0] = q;
  return FieldElement(*this, std::move(c));
}

FieldElement FieldTower::from_int(long v) const { return from_rational(Rational(v)); }

FieldElement FieldTower::generator(std::size_t level) const {
  if (level >= depth()) fail(Errc::BaseTower, "no generator r" + std::to_string(level + 1));
  std::vector<Rational> c(dimension());
  c[std::size_t{1} << level] = 1;
  return FieldElement(*this, std::move(c));
}

std::string FieldTower::generator_name(std::size_t level) { return "r" + std::to_string(level + 1); }

FieldTower FieldTower::extend(const FieldElement& a_in) const {
  if (!is_real()) fail(Errc::NotPositiveAnywhere, "cannot adjoin a real root to a non-real tower");
  FieldElement a = a_in.lift(*this);
  if (a.is_zero()) fail(Errc::ZeroRadicand, "radicand is zero");
  if (a.is_square()) fail(Errc::SquareRadicand, a.to_string() + " is a square in " + describe());
  bool positive = false;
  for (const auto& p : orderings(*this))
    if (sign_at(a, p) > 0) {
      positive = true;
      break;
    }
  if (!positive)
    fail(Errc::NotPositiveAnywhere, a.to_string() + " is negative at every ordering of " + describe());
  auto n = std::make_shared<NodeT>();
  n->parent = node_;
  n->depth = depth() + 1;
  n->radicand = std::move(a);
  n->real = true;
  return FieldTower(std::shared_ptr<const NodeT>(n));
}

FieldTower FieldTower::extend_nonreal(const FieldElement& a_in) const {
  FieldElement a = a_in.lift(*this);
  if (a.is_zero()) fail(Errc::ZeroRadicand, "radicand is zero");
  if (a.is_square()) fail(Errc::SquareRadicand, a.to_string() + " is a square in " + describe());
  bool positive = false;
  if (is_real())
    for (const auto& p : orderings(*this))
      if (sign_at(a, p) > 0) positive = true;
  auto n = std::make_shared<NodeT>();
  n->parent = node_;
  n->depth = depth() + 1;
  n->radicand = std::move(a);
  n->real = is_real() && positive;
  return FieldTower(std::shared_ptr<const NodeT>(n));
}

std::string FieldTower::describe() const {
  std::string s = "Q";
  for (std::size_t l = 0; l < depth(); ++l) s += "(sqrt(" + radicand(l).to_string() + "))";
  return s;
}

// -------------------------------------------------------------- FieldElement

FieldElement::FieldElement() : c_(1) {}

FieldElement::FieldElement(FieldTower tower, std::vector<Rational> coefficients)
    : tower_(std::move(tower)), c_(std::move(coefficients)) {
  if (c_.size() != tower_.dimension())
    fail(Errc::DimensionMismatch, "coefficient vector length must be 2^depth");
}

bool FieldElement::is_zero() const { return all_zero(c_.data(), c_.size()); }

bool FieldElement::is_rational() const { return all_zero(c_.data() + 1, c_.size() - 1); }

Rational FieldElement::rational_value() const {
  if (!is_rational()) fail(Errc::Internal, "element " + to_string() + " is not rational");
  return c_[0];
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (TowerAccess::node(a.tower_) != TowerAccess::node(b.tower_)) {
    FieldTower t = join(a.tower_, b.tower_);
    return a.lift(t) + b.lift(t);
  }
  FieldElement r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    if (sgn(b.c_[i]) != 0) r.c_[i] += b.c_[i];
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  if (TowerAccess::node(a.tower_) != TowerAccess::node(b.tower_)) {
    FieldTower t = join(a.tower_, b.tower_);
    return a.lift(t) - b.lift(t);
  }
  FieldElement r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    if (sgn(b.c_[i]) != 0) r.c_[i] -= b.c_[i];
  return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (TowerAccess::node(a.tower_) != TowerAccess::node(b.tower_)) {
    FieldTower t = join(a.tower_, b.tower_);
    return a.lift(t) * b.lift(t);
  }
  if (a.c_.size() == 1) return FieldElement(a.tower_, {a.c_[0] * b.c_[0]});
  if (b.is_rational()) return b.c_[0] * a;
  if (a.is_rational()) return a.c_[0] * b;
  return FieldElement(a.tower_, mul_coeffs(TowerAccess::node(a.tower_), a.c_, b.c_));
}

FieldElement operator*(const Rational& q, const FieldElement& a) {
  FieldElement r = a;
  for (auto& x : r.c_)
    if (sgn(x) != 0) x *= q;
  return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (TowerAccess::node(a.tower_) != TowerAccess::node(b.tower_)) {
    if (a.tower_ != b.tower_) {
      if (!a.tower_.extends(b.tower_) && !b.tower_.extends(a.tower_)) return false;
      FieldTower t = join(a.tower_, b.tower_);
      return a.lift(t).c_ == b.lift(t).c_;
    }
  }
  return a.c_ == b.c_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
  return FieldElement(tower_, inv_coeffs(TowerAccess::node(tower_), c_));
}

FieldElement FieldElement::lift(const FieldTower& to) const {
  if (TowerAccess::node(to) == TowerAccess::node(tower_)) return *this;
  if (!to.extends(tower_))
    fail(Errc::MismatchedTower, to.describe() + " does not extend " + tower_.describe());
  std::vector<Rational> c(to.dimension());
  std::copy(c_.begin(), c_.end(), c.begin());
  return FieldElement(to, std::move(c));
}

FieldElement FieldElement::project(const FieldTower& to) const {
  if (!tower_.extends(to)) fail(Errc::MismatchedTower, "projection target is not a prefix tower");
  const std::size_t n = to.dimension();
  if (!all_zero(c_.data() + n, c_.size() - n))
    fail(Errc::NotAnExtension, to_string() + " does not lie in " + to.describe());
  return FieldElement(to, std::vector<Rational>(c_.begin(), c_.begin() + n));
}

std::optional<FieldElement> FieldElement::sqrt() const {
  auto r = sqrt_coeffs(TowerAccess::node(tower_), c_);
  if (!r) return std::nullopt;
  return FieldElement(tower_, std::move(*r));
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    const Rational& q = c_[idx];
    if (sgn(q) == 0) continue;
    Rational mag = abs(q);
    if (first) {
      if (sgn(q) < 0) os << "-";
    } else {
      os << (sgn(q) < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t l = 0; (std::size_t{1} << l) <= idx; ++l)
      if (idx & (std::size_t{1} << l)) {
        if (!mono.empty()) mono += "*";
        mono += FieldTower::generator_name(l);
      }
    if (mono.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono;
    } else {
      os << mag.get_str() << "*" << mono;
    }
  }
  if (first) return "0";
  return os.str();
}

FieldElement trace_step(const FieldElement& x) {
  const FieldTower& t = x.tower();
  if (t.depth() == 0) fail(Errc::BaseTower, "trace of an element of the rationals");
  FieldTower b = t.base();
  const std::size_t h = b.dimension();
  std::vector<Rational> c(h);
  for (std::size_t i = 0; i < h; ++i) c[i] = 2 * x.coefficient(i);
  return FieldElement(b, std::move(c));
}

// ------------------------------------------------------------------ Ordering

Ordering::Ordering(FieldTower tower, std::vector<int> signs, unsigned bits)
    : tower_(std::move(tower)), signs_(std::move(signs)), bits_(bits) {
  intervals_ = generator_intervals(bits_);
}

Ordering Ordering::of_rationals() { return Ordering(FieldTower(), {}, kInitialBits); }

std::vector<RationalInterval> Ordering::generator_intervals(unsigned bits) const {
  if (bits == bits_ && intervals_.size() == signs_.size()) return intervals_;
  std::vector<RationalInterval> gens;
  gens.reserve(signs_.size());
  for (std::size_t l = 0; l < signs_.size(); ++l) {
    const FieldElement& c = tower_.radicand(l);
    RationalInterval r = evaluate_interval(c, std::span<const RationalInterval>(gens.data(), l));
    Rational lo = sqrt_lower(r.lo, bits);
    Rational hi = sqrt_upper(r.hi, bits);
    if (signs_[l] > 0)
      gens.push_back({lo, hi});
    else
      gens.push_back({-hi, -lo});
  }
  return gens;
}

Ordering Ordering::refined(unsigned bits) const { return Ordering(tower_, signs_, std::max(bits, bits_)); }

Ordering Ordering::restrict_to(const FieldTower& f) const {
  if (!tower_.extends(f)) fail(Errc::NotAnExtension, "restriction target is not a prefix tower");
  std::vector<int> s(signs_.begin(), signs_.begin() + f.depth());
  return Ordering(f, std::move(s), bits_);
}

bool Ordering::extends(const Ordering& p) const {
  if (!tower_.extends(p.tower_)) return false;
  return std::equal(p.signs_.begin(), p.signs_.end(), signs_.begin());
}

std::optional<Ordering> Ordering::lift(const FieldTower& extended, int new_sign) const {
  if (extended.depth() != tower_.depth() + 1 || !extended.extends(tower_))
    fail(Errc::NotAnExtension, "ordering lift needs a one-step extension");
  if (sign_at(extended.radicand(tower_.depth()), *this) <= 0) return std::nullopt;
  std::vector<int> s = signs_;
  s.push_back(new_sign > 0 ? 1 : -1);
  return Ordering(extended, std::move(s), bits_);
}

std::string Ordering::signs_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (i) s += ",";
    s += signs_[i] > 0 ? "+" : "-";
  }
  return s + "]";
}

bool operator==(const Ordering& a, const Ordering& b) { return a.tower_ == b.tower_ && a.signs_ == b.signs_; }

std::vector<Ordering> orderings(const FieldTower& f) {
  if (!f.is_real()) fail(Errc::NoOrderings, f.describe() + " is not formally real");
  std::vector<Ordering> cur{Ordering::of_rationals()};
  for (std::size_t l = 0; l < f.depth(); ++l) {
    FieldTower sub = f.subtower(l + 1);
    std::vector<Ordering> next;
    for (const auto& p : cur)
      for (int s : {1, -1})
        if (auto q = p.lift(sub, s)) next.push_back(std::move(*q));
    cur = std::move(next);
  }
  return cur;
}

RationalInterval evaluate_interval(const FieldElement& x, std::span<const RationalInterval> gens) {
  const std::size_t depth = x.tower().depth();
  if (gens.size() < depth) fail(Errc::MismatchedTower, "not enough generator intervals");
  const auto& c = x.coefficients();
  std::vector<RationalInterval> mono(c.size());
  mono[0] = {Rational(1), Rational(1)};
  RationalInterval acc{c[0], c[0]};
  for (std::size_t idx = 1; idx < c.size(); ++idx) {
    std::size_t top = 0;
    while ((std::size_t{2} << top) <= idx) ++top;
    mono[idx] = imul(mono[idx ^ (std::size_t{1} << top)], gens[top]);
    const Rational& q = c[idx];
    if (sgn(q) == 0) continue;
    if (sgn(q) > 0) {
      acc.lo += q * mono[idx].lo;
      acc.hi += q * mono[idx].hi;
    } else {
      acc.lo += q * mono[idx].hi;
      acc.hi += q * mono[idx].lo;
    }
  }
  return acc;
}

int sign_at(const FieldElement& x, const Ordering& p) {
  if (!p.tower().extends(x.tower()))
    fail(Errc::MismatchedTower, "element of " + x.tower().describe() + " evaluated at an ordering of " +
                                    p.tower().describe());
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.coefficient(0));
  for (unsigned bits = p.precision_bits(); bits <= kMaxBits; bits *= 2) {
    auto gens = p.generator_intervals(bits);
    RationalInterval r = evaluate_interval(x, gens);
    if (sgn(r.lo) > 0) return 1;
    if (sgn(r.hi) < 0) return -1;
  }
  fail(Errc::Internal, "interval refinement did not separate " + x.to_string() + " from zero");
}

}  // namespace hsig
