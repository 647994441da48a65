#include "document.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <sstream>

namespace hsig {

namespace {

// ---- lexing ---------------------------------------------------------------

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

[[noreturn]] void parse_error(int line, int col, const std::string& msg) {
  fail(Errc::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Number;
    } else if (std::string("{}[](),:+-*/").find(c) != std::string::npos) {
      j = i + 1;
      t.kind = Tok::Punct;
    } else {
      parse_error(line, col, std::string("unexpected character '") + c + "'");
    }
    t.text = s.substr(i, j - i);
    out.push_back(t);
    advance(j - i);
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// ---- syntax tree ----------------------------------------------------------

struct Expr {
  enum Kind { Num, Sym, Add, Sub, Mul, Div, Neg } kind = Num;
  Rational num;
  std::string sym;
  std::unique_ptr<Expr> lhs, rhs;
  int line = 1, col = 1;
};

struct Value {
  enum Kind { Scalar, List, Call } kind = Scalar;
  std::shared_ptr<Expr> expr;
  std::vector<Value> items;  // list entries or call arguments
  std::string name;          // call name
  int line = 1, col = 1;

  bool is_word(const char* w) const { return kind == Scalar && expr->kind == Expr::Sym && expr->sym == w; }
};

struct Entry {
  std::string key;
  Value value;
  int line = 1, col = 1;
};

struct Block {
  std::string kind;
  std::string name;
  std::vector<Entry> entries;
  std::vector<ReferenceItem> refs;
  int line = 1, col = 1;

  std::string label() const { return name.empty() ? kind : kind + " " + name; }
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Value single_value() {
    Value v = value();
    if (peek().kind != Tok::End) expected("end of input");
    return v;
  }

  std::vector<Block> document() {
    std::vector<Block> out;
    while (peek().kind != Tok::End) out.push_back(block());
    return out;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_punct(const char* p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  [[noreturn]] void expected(const std::string& what) const {
    const Token& t = peek();
    const std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    parse_error(t.line, t.col, "expected " + what + ", got " + got);
  }
  Token take() { return toks_[pos_++]; }
  void expect_punct(const char* p) {
    if (!is_punct(p)) expected(std::string("'") + p + "'");
    ++pos_;
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) expected(what);
    return take().text;
  }

  Block block() {
    Block b;
    b.line = peek().line;
    b.col = peek().col;
    b.kind = ident("block keyword (field, algebra, form, reference, extension)");
    if (b.kind == "form") {
      b.name = ident("form name");
    } else if (b.kind == "reference") {
      if (peek().kind == Tok::Ident) b.name = take().text;
    } else if (b.kind != "field" && b.kind != "algebra" && b.kind != "extension") {
      parse_error(b.line, b.col, "unknown block '" + b.kind + "'");
    }
    expect_punct("{");
    if (b.kind == "reference") {
      while (!is_punct("}")) {
        ReferenceItem it;
        if (is_punct("-")) {
          ++pos_;
          it.negate = true;
        }
        it.form = ident("form name");
        b.refs.push_back(it);
        if (is_punct(",")) {
          ++pos_;
          if (is_punct("}")) expected("form name");
        } else if (!is_punct("}")) {
          expected("',' or '}'");
        }
      }
    } else {
      while (!is_punct("}")) {
        Entry e;
        e.line = peek().line;
        e.col = peek().col;
        e.key = ident("key or '}'");
        expect_punct(":");
        e.value = value();
        b.entries.push_back(std::move(e));
      }
    }
    expect_punct("}");
    return b;
  }

  Value value() {
    Value v;
    v.line = peek().line;
    v.col = peek().col;
    if (is_punct("[")) {
      ++pos_;
      v.kind = Value::List;
      if (!is_punct("]")) {
        v.items.push_back(value());
        while (is_punct(",")) {
          ++pos_;
          v.items.push_back(value());
        }
      }
      expect_punct("]");
      return v;
    }
    if (peek().kind == Tok::Ident && is_punct("(", 1)) {
      v.kind = Value::Call;
      v.name = take().text;
      ++pos_;
      v.items.push_back(value());
      while (is_punct(",")) {
        ++pos_;
        v.items.push_back(value());
      }
      expect_punct(")");
      return v;
    }
    v.expr = expr();
    return v;
  }

  std::shared_ptr<Expr> expr() { return std::shared_ptr<Expr>(sum().release()); }

  static std::unique_ptr<Expr> node(Expr::Kind k, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r, const Token& at) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->line = at.line;
    e->col = at.col;
    return e;
  }

  std::unique_ptr<Expr> sum() {
    auto e = product();
    while (is_punct("+") || is_punct("-")) {
      const Token op = take();
      e = node(op.text == "+" ? Expr::Add : Expr::Sub, std::move(e), product(), op);
    }
    return e;
  }

  std::unique_ptr<Expr> product() {
    auto e = unary();
    while (is_punct("*") || is_punct("/")) {
      const Token op = take();
      e = node(op.text == "*" ? Expr::Mul : Expr::Div, std::move(e), unary(), op);
    }
    return e;
  }

  std::unique_ptr<Expr> unary() {
    if (is_punct("-")) {
      const Token op = take();
      return node(Expr::Neg, unary(), nullptr, op);
    }
    return primary();
  }

  std::unique_ptr<Expr> primary() {
    const Token t = peek();
    auto e = std::make_unique<Expr>();
    e->line = t.line;
    e->col = t.col;
    if (t.kind == Tok::Number) {
      ++pos_;
      e->kind = Expr::Num;
      e->num = Rational(mpz_class(t.text));
      return e;
    }
    if (t.kind == Tok::Ident) {
      ++pos_;
      e->kind = Expr::Sym;
      e->sym = t.text;
      return e;
    }
    if (is_punct("(")) {
      ++pos_;
      auto inner = sum();
      expect_punct(")");
      return inner;
    }
    expected("expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---- evaluation -----------------------------------------------------------

[[noreturn]] void invalid(const std::string& msg) { fail(Errc::ValidationError, msg); }

std::string at(int line, int col) { return std::to_string(line) + ":" + std::to_string(col) + ": "; }

DElement eval(const Expr& e, const DivisionRing& r) {
  switch (e.kind) {
    case Expr::Num: return r.scalar(r.field().from_rational(e.num));
    case Expr::Sym: {
      const std::string& s = e.sym;
      if (s.size() > 1 && s[0] == 'r' && std::all_of(s.begin() + 1, s.end(), ::isdigit) && s[1] != '0') {
        const std::size_t k = std::stoul(s.substr(1));
        if (k > r.field().depth())
          invalid(at(e.line, e.col) + "generator " + s + " is not defined in " + r.field().describe());
        return r.scalar(r.field().generator(k - 1));
      }
      for (std::size_t u = 1; u < r.dimension(); ++u)
        if (s == DivisionRing::unit_name(r.kind(), u)) return r.unit(u);
      invalid(at(e.line, e.col) + "unknown symbol '" + s + "'");
    }
    case Expr::Add: return eval(*e.lhs, r) + eval(*e.rhs, r);
    case Expr::Sub: return eval(*e.lhs, r) - eval(*e.rhs, r);
    case Expr::Mul: return eval(*e.lhs, r) * eval(*e.rhs, r);
    case Expr::Neg: return -eval(*e.lhs, r);
    case Expr::Div: {
      const DElement d = eval(*e.rhs, r);
      if (d.is_zero()) fail(Errc::DivisionByZero, at(e.line, e.col) + "division by zero");
      return eval(*e.lhs, r) * d.inverse();
    }
  }
  fail(Errc::Internal, "bad expression");
}

DElement scalar_value(const Value& v, const DivisionRing& r) {
  if (v.kind != Value::Scalar) invalid(at(v.line, v.col) + "expected an element expression");
  return eval(*v.expr, r);
}

FieldElement field_value(const Value& v, const FieldTower& f) {
  return scalar_value(v, DivisionRing::base_field(f)).scalar_part();
}

long int_value(const Value& v) {
  const FieldElement x = field_value(v, FieldTower());
  const Rational q = x.rational_value();
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) invalid(at(v.line, v.col) + "expected an integer");
  return q.get_num().get_si();
}

DMatrix matrix_value(const Value& v, const DivisionRing& r) {
  if (v.kind != Value::List || v.items.empty()) invalid(at(v.line, v.col) + "expected a matrix literal [[...], ...]");
  const std::size_t rows = v.items.size();
  std::size_t cols = 0;
  std::vector<DElement> data;
  for (const auto& row : v.items) {
    if (row.kind != Value::List || row.items.empty()) invalid(at(row.line, row.col) + "expected a matrix row [...]");
    if (cols == 0) cols = row.items.size();
    if (row.items.size() != cols) invalid(at(row.line, row.col) + "ragged matrix literal");
    for (const auto& x : row.items) data.push_back(scalar_value(x, r));
  }
  return DMatrix::from_data(rows, cols, std::move(data));
}

FieldTower extend_by(FieldTower f, const Block& b) {
  for (const auto& e : b.entries) {
    if (e.key != "extend") invalid(at(e.line, e.col) + "unknown key '" + e.key + "'");
    f = f.extend(field_value(e.value, f));
  }
  return f;
}

const Entry* find_entry(const Block& b, const std::string& key) {
  const Entry* out = nullptr;
  for (const auto& e : b.entries) {
    if (e.key != key) continue;
    if (out) invalid(at(e.line, e.col) + "duplicate key '" + key + "'");
    out = &e;
  }
  return out;
}

void check_keys(const Block& b, std::initializer_list<const char*> allowed) {
  for (const auto& e : b.entries) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || e.key == k;
    if (!ok) invalid(at(e.line, e.col) + "unknown key '" + e.key + "'");
  }
}

Algebra build_algebra(const Block& b, const FieldTower& f) {
  check_keys(b, {"division", "m", "epsilon0", "phi0"});
  const Entry* div = find_entry(b, "division");
  if (!div) invalid(at(b.line, b.col) + "missing key 'division'");
  DivisionRing d;
  const Value& dv = div->value;
  if (dv.is_word("base")) {
    d = DivisionRing::base_field(f);
  } else if (dv.kind == Value::Call && dv.name == "quaternion" && dv.items.size() == 2) {
    d = DivisionRing::quaternion(field_value(dv.items[0], f), field_value(dv.items[1], f));
  } else if (dv.kind == Value::Call && dv.name == "quadratic" && dv.items.size() == 1) {
    d = DivisionRing::quadratic(field_value(dv.items[0], f));
  } else {
    invalid(at(dv.line, dv.col) + "division must be base, quaternion(a, b) or quadratic(d)");
  }
  long m = 1;
  if (const Entry* e = find_entry(b, "m")) m = int_value(e->value);
  if (m < 1 || m > 64) invalid("m must be between 1 and 64");
  long eps = 1;
  if (const Entry* e = find_entry(b, "epsilon0")) eps = int_value(e->value);
  if (eps != 1 && eps != -1) invalid("epsilon0 must be 1 or -1");
  DMatrix phi0 = identity_matrix(d, static_cast<std::size_t>(m));
  if (const Entry* e = find_entry(b, "phi0")) phi0 = matrix_value(e->value, d);
  return Algebra::build(d, static_cast<std::size_t>(m), phi0, static_cast<int>(eps));
}

FormSpec build_form(const Block& b, const ProblemDocument& doc) {
  check_keys(b, {"gram", "diagonal", "collapsed", "over"});
  FormSpec spec;
  spec.name = b.name;
  if (const Entry* e = find_entry(b, "collapsed")) {
    if (e->value.is_word("true"))
      spec.collapsed = true;
    else if (!e->value.is_word("false"))
      invalid(at(e->line, e->col) + "collapsed must be true or false");
  }
  if (const Entry* e = find_entry(b, "over")) {
    if (e->value.is_word("extension"))
      spec.over_extension = true;
    else if (!e->value.is_word("base"))
      invalid(at(e->line, e->col) + "over must be base or extension");
  }
  if (spec.over_extension && !doc.extended) invalid("form is over the extension but the document has no extension block");
  const Algebra& a = spec.over_extension ? *doc.extended : *doc.algebra;
  const DivisionRing& d = a.division();
  const Entry* g = find_entry(b, "gram");
  const Entry* dg = find_entry(b, "diagonal");
  if ((g != nullptr) == (dg != nullptr)) invalid(at(b.line, b.col) + "exactly one of 'gram' or 'diagonal' is required");
  if (g) {
    spec.gram = matrix_value(g->value, d);
    spec.form = spec.collapsed ? HermForm::from_collapsed(a, *spec.gram) : HermForm::build(a, *spec.gram);
    return spec;
  }
  const Value& v = dg->value;
  if (v.kind != Value::List || v.items.empty()) invalid(at(v.line, v.col) + "diagonal must be a non-empty list");
  const bool scalars = spec.collapsed || a.m() == 1;
  for (const auto& x : v.items) {
    if (x.kind == Value::List)
      spec.diagonal.push_back(matrix_value(x, d));
    else
      spec.diagonal.push_back(DMatrix(1, 1, scalar_value(x, d)));
  }
  if (spec.collapsed) {
    DMatrix b0(spec.diagonal.size(), spec.diagonal.size(), d.zero());
    for (std::size_t s = 0; s < spec.diagonal.size(); ++s) {
      if (spec.diagonal[s].rows() != 1 || spec.diagonal[s].cols() != 1)
        invalid("collapsed diagonal entries must be elements of D");
      b0(s, s) = spec.diagonal[s](0, 0);
    }
    spec.form = HermForm::from_collapsed(a, b0);
  } else {
    if (!scalars)
      for (const auto& u : spec.diagonal)
        if (u.rows() != a.m()) invalid("diagonal entries must be m x m matrix literals");
    spec.form = diagonal_form(a, spec.diagonal);
  }
  return spec;
}

// ---- serialization --------------------------------------------------------

std::string field_lines(const FieldTower& f, std::size_t from) {
  std::string out;
  for (std::size_t l = from; l < f.depth(); ++l) out += "  extend: " + f.radicand(l).to_string() + "\n";
  return out;
}

std::string element_text(const DElement& x) { return x.to_string(); }

}  // namespace

std::string matrix_to_string(const DMatrix& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < x.cols(); ++j) out += (j ? ", " : "") + element_text(x(i, j));
    out += "]";
  }
  return out + "]";
}

std::string form_block(const std::string& name, const FormSpec& spec, std::size_t m) {
  std::string out = "form " + name + " {\n";
  if (spec.over_extension) out += "  over: extension\n";
  if (spec.collapsed) out += "  collapsed: true\n";
  if (spec.gram) {
    out += "  gram: " + matrix_to_string(*spec.gram) + "\n";
  } else {
    const bool scalars = spec.collapsed || m == 1;
    out += "  diagonal: [";
    for (std::size_t s = 0; s < spec.diagonal.size(); ++s) {
      if (s) out += ", ";
      out += scalars ? element_text(spec.diagonal[s](0, 0)) : matrix_to_string(spec.diagonal[s]);
    }
    out += "]\n";
  }
  return out + "}\n";
}

const FormSpec* ProblemDocument::find_form(const std::string& name) const {
  for (const auto& f : forms)
    if (f.name == name) return &f;
  return nullptr;
}

const ReferenceSpec* ProblemDocument::find_reference(const std::string& name) const {
  for (const auto& r : references)
    if (r.name == name) return &r;
  return nullptr;
}

ReferenceTuple ProblemDocument::reference_tuple(const ReferenceSpec& spec) const {
  ReferenceTuple t;
  for (const auto& it : spec.items) {
    const FormSpec* f = find_form(it.form);
    if (!f) fail(Errc::UnknownForm, "reference " + spec.name + " names unknown form '" + it.form + "'");
    if (f->over_extension) fail(Errc::ValidationError, "reference member '" + it.form + "' must live over the base algebra");
    t.forms.push_back(it.negate ? scale_field(algebra->field().from_int(-1), *f->form) : *f->form);
  }
  return t;
}

FieldElement parse_field_element(const std::string& text, const FieldTower& f) {
  const Value v = Parser(text).single_value();
  try {
    return field_value(v, f);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError || e.code() == Errc::ValidationError) throw;
    fail(Errc::ValidationError, e.what());
  }
}

ProblemDocument parse_document(const std::string& text) {
  const std::vector<Block> blocks = Parser(text).document();
  ProblemDocument doc;

  auto single = [&](const char* kind) -> const Block* {
    const Block* out = nullptr;
    for (const auto& b : blocks) {
      if (b.kind != kind) continue;
      if (out) fail(Errc::ValidationError, "block '" + b.label() + "': " + at(b.line, b.col) + "duplicate block");
      out = &b;
    }
    return out;
  };
  auto guarded = [](const Block& b, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (e.code() == Errc::ParseError) throw;
      fail(Errc::ValidationError, "block '" + b.label() + "': " + e.what());
    }
  };

  if (const Block* b = single("field")) guarded(*b, [&] { doc.field = extend_by(FieldTower(), *b); });
  const Block* alg = single("algebra");
  if (!alg) fail(Errc::ValidationError, "document has no algebra block");
  guarded(*alg, [&] { doc.algebra = build_algebra(*alg, doc.field); });
  if (const Block* b = single("extension")) {
    guarded(*b, [&] {
      doc.extension = extend_by(doc.field, *b);
      if (doc.extension->depth() == doc.field.depth()) invalid("extension block adjoins nothing");
      doc.extended = doc.algebra->extend_scalars(*doc.extension);
    });
  }
  for (const auto& b : blocks) {
    if (b.kind != "form") continue;
    guarded(b, [&] {
      if (doc.find_form(b.name)) invalid("duplicate form name");
      doc.forms.push_back(build_form(b, doc));
    });
  }
  for (const auto& b : blocks) {
    if (b.kind != "reference") continue;
    ReferenceSpec r;
    r.name = b.name.empty() ? "H" : b.name;
    r.items = b.refs;
    guarded(b, [&] {
      if (doc.find_reference(r.name)) invalid("duplicate reference name");
      if (r.items.empty()) invalid("reference block is empty");
      doc.references.push_back(r);
      doc.reference_tuple(r);
    });
  }
  return doc;
}

std::string serialize_document(const ProblemDocument& doc) {
  std::ostringstream out;
  out << "field {\n" << field_lines(doc.field, 0) << "}\n";
  const Algebra& a = *doc.algebra;
  const DivisionRing& d = a.division();
  out << "algebra {\n  division: ";
  switch (d.kind()) {
    case DivisionKind::BaseField: out << "base"; break;
    case DivisionKind::Quaternion: out << "quaternion(" << d.a().to_string() << ", " << d.b().to_string() << ")"; break;
    case DivisionKind::Quadratic: out << "quadratic(" << d.d().to_string() << ")"; break;
  }
  out << "\n  m: " << a.m() << "\n  epsilon0: " << a.epsilon0() << "\n  phi0: " << matrix_to_string(a.phi0()) << "\n}\n";
  if (doc.extension) out << "extension {\n" << field_lines(*doc.extension, doc.field.depth()) << "}\n";
  for (const auto& f : doc.forms) out << form_block(f.name, f, a.m());
  for (const auto& r : doc.references) {
    out << "reference " << r.name << " {";
    for (std::size_t i = 0; i < r.items.size(); ++i)
      out << (i ? ", " : " ") << (r.items[i].negate ? "-" : "") << r.items[i].form;
    out << " }\n";
  }
  return out.str();
}

}  // namespace hsig
