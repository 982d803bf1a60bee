#include "valx/parse.hpp"

#include <cctype>
#include <map>

namespace valx {

namespace {

// Scanner over a slice of a larger text; errors report positions in the
// whole text.
class Cursor {
 public:
  Cursor(const std::string& full, std::size_t begin, std::size_t end)
      : full_(full), pos_(begin), end_(end) {}
  explicit Cursor(const std::string& full) : Cursor(full, 0, full.size()) {}

  void skip_ws() {
    while (pos_ < end_ && std::isspace(static_cast<unsigned char>(full_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= end_;
  }
  char peek() {
    skip_ws();
    return pos_ < end_ ? full_[pos_] : '\0';
  }
  char peek_raw(std::size_t ahead = 0) const {
    return pos_ + ahead < end_ ? full_[pos_ + ahead] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(const std::string& s) {
    skip_ws();
    if (full_.compare(pos_, s.size(), s) != 0 || pos_ + s.size() > end_) return false;
    pos_ += s.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  // Word that is not followed by another identifier character.
  bool accept_word(const std::string& w) {
    skip_ws();
    if (pos_ + w.size() > end_ || full_.compare(pos_, w.size(), w) != 0) return false;
    char next = pos_ + w.size() < end_ ? full_[pos_ + w.size()] : '\0';
    if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
    pos_ += w.size();
    return true;
  }
  std::string identifier() {
    skip_ws();
    std::size_t s = pos_;
    while (pos_ < end_ && (std::isalnum(static_cast<unsigned char>(full_[pos_])) || full_[pos_] == '_')) ++pos_;
    if (s == pos_) fail("expected a name");
    return full_.substr(s, pos_ - s);
  }
  Integer integer() {
    skip_ws();
    std::size_t s = pos_;
    while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(full_[pos_]))) ++pos_;
    if (s == pos_) fail("expected a number");
    return Integer(full_.substr(s, pos_ - s));
  }
  long small_integer() {
    std::size_t s = pos_;
    Integer n = integer();
    if (!n.fits_slong_p()) fail_at(s, "number too large");
    return n.get_si();
  }
  void finish() {
    if (!at_end()) fail("unexpected '" + std::string(1, full_[pos_]) + "'");
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  std::size_t end() const { return end_; }
  const std::string& full() const { return full_; }

  [[noreturn]] void fail(const std::string& msg) {
    skip_ws();
    fail_at(pos_, msg);
  }
  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < full_.size(); ++i) {
      if (full_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(msg, line, col);
  }

 private:
  const std::string& full_;
  std::size_t pos_;
  std::size_t end_;
};

class ExprParser {
 public:
  ExprParser(Cursor& c, const FieldDescriptor& F, bool allow_x) : c_(c), F_(F), allow_x_(allow_x) {}

  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (c_.accept('+'))
        r = r + term();
      else if (c_.accept('-'))
        r = r - term();
      else
        return r;
    }
  }

 private:
  RatFunc term() {
    RatFunc r = factor();
    for (;;) {
      if (c_.accept('*')) {
        r = r * factor();
      } else if (c_.accept('/')) {
        r = r / factor();
      } else {
        return r;
      }
    }
  }

  RatFunc factor() {
    if (c_.accept('-')) return -factor();
    if (c_.accept('+')) return factor();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!c_.accept('^')) return base;
    std::size_t at = c_.pos();
    Rational e = exponent();
    if (e.get_den() == 1) {
      if (!e.get_num().fits_slong_p()) c_.fail_at(at, "exponent too large");
      if (base.is_zero() && sgn(e) < 0) c_.fail_at(at, "negative power of zero");
      return base.pow(e.get_num().get_si());
    }
    if (base.is_constant() && !base.is_zero()) {
      FieldElem b = base.num()[0];
      if (b.den().size() == 1 && b.num().size() == 1 && b.num().begin()->second == 1)
        return RatFunc::constant(FieldElem::t_power(b.num().begin()->first * e, F_.modulus()));
    }
    c_.fail_at(at, "rational exponent needs a power of t");
  }

  Rational exponent() {
    if (c_.accept('(')) {
      bool neg = c_.accept('-');
      Rational e(c_.integer());
      if (c_.accept('/')) {
        std::size_t at = c_.pos();
        Integer d = c_.integer();
        if (d == 0) c_.fail_at(at, "zero denominator");
        e /= Rational(d);
      }
      c_.expect(')');
      e.canonicalize();
      return neg ? Rational(-e) : e;
    }
    bool neg = c_.accept('-');
    Rational e(c_.integer());
    return neg ? Rational(-e) : e;
  }

  RatFunc atom() {
    char ch = c_.peek();
    if (std::isdigit(static_cast<unsigned char>(ch)))
      return RatFunc::constant(FieldElem(Rational(c_.integer()), F_.modulus()));
    if (ch == '(') {
      c_.accept('(');
      RatFunc r = expr();
      c_.expect(')');
      return r;
    }
    std::size_t at = c_.pos();
    if (c_.accept_word("t")) {
      if (F_.kind == FieldDescriptor::Kind::padic) c_.fail_at(at, "t is not an element of " + F_.str());
      return RatFunc::constant(FieldElem::t_power(1, F_.modulus()));
    }
    if (c_.accept_word("X")) {
      if (!allow_x_) c_.fail_at(at, "X is not allowed in a field element");
      return RatFunc::x(F_.modulus());
    }
    if (ch == '\0') c_.fail("unexpected end of input");
    c_.fail("unexpected '" + std::string(1, ch) + "'");
  }

  Cursor& c_;
  const FieldDescriptor& F_;
  bool allow_x_;
};

FieldElem elem_in(Cursor& c, const FieldDescriptor& F) {
  RatFunc r = ExprParser(c, F, false).expr();
  c.finish();
  return r.num().is_zero() ? FieldElem(Rational(0), F.modulus()) : r.num()[0];
}

Rational rational(Cursor& c) {
  Rational r(c.integer());
  if (c.peek() == '/') {
    c.accept('/');
    std::size_t at = c.pos();
    Integer d = c.integer();
    if (d == 0) c.fail_at(at, "zero denominator");
    r /= Rational(d);
  }
  return r;
}

// a, b*sqrt(d), sqrt(d) summed with + and -.
Scalar scalar(Cursor& c) {
  Rational a = 0, b = 0;
  long root = 0;
  bool first = true;
  for (;;) {
    bool neg = false;
    if (c.accept('-'))
      neg = true;
    else if (!first && !c.accept('+'))
      break;
    first = false;
    Rational k = 1;
    bool rad = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      k = rational(c);
      if (c.accept('*')) {
        if (!c.accept_word("sqrt")) c.fail("expected sqrt");
        rad = true;
      }
    } else if (c.accept_word("sqrt")) {
      rad = true;
    } else {
      c.fail("expected a scalar");
    }
    if (neg) k = -k;
    if (!rad) {
      a += k;
      continue;
    }
    c.expect('(');
    std::size_t at = c.pos();
    long d = c.small_integer();
    c.expect(')');
    if (d <= 0) c.fail_at(at, "radicand must be positive");
    Scalar s(0, k, d);
    if (s.is_rational()) {
      a += s.rational_part();
      continue;
    }
    if (root && s.root() != root) c.fail_at(at, "mixed radicands");
    root = s.root();
    b += s.irrational_part();
  }
  return Scalar(a, b, root);
}

ExtScalar ext_scalar(Cursor& c) {
  std::size_t save = c.pos();
  if (c.accept('-') && c.accept_word("inf")) return ExtScalar::minus_inf();
  c.set_pos(save);
  if (c.accept_word("inf")) return ExtScalar::plus_inf();
  return {ExtScalar::Kind::finite, scalar(c)};
}

std::vector<ExtScalar> ext_list(Cursor& c) {
  bool paren = c.accept('(');
  std::vector<ExtScalar> out{ext_scalar(c)};
  while (c.accept(',')) out.push_back(ext_scalar(c));
  if (paren) c.expect(')');
  return out;
}

GroupValue group_value(Cursor& c) {
  std::size_t at = c.pos();
  std::vector<Scalar> out;
  for (const auto& e : ext_list(c)) {
    if (!e.finite()) c.fail_at(at, "group values are finite");
    out.push_back(e.value);
  }
  return GroupValue(out);
}

IdealSpec ideal(Cursor& c) {
  if (c.accept_word("K")) return IdealSpec::whole_field();
  bool closed;
  if (c.accept(">="))
    closed = true;
  else if (c.accept('>'))
    closed = false;
  else if (c.accept_word("0"))
    return IdealSpec::zero();
  else
    c.fail("expected >=, >, K or 0");
  return IdealSpec(Bound(ext_list(c)), closed);
}

FieldDescriptor field(Cursor& c) {
  std::size_t at = c.pos();
  std::string name = c.identifier();
  auto prime = [&]() {
    c.expect(':');
    return c.small_integer();
  };
  FieldDescriptor F;
  if (name == "laurentQ") {
    if (c.accept(':')) {
      std::size_t kat = c.pos();
      std::string base = c.identifier();
      std::size_t digits = base.find_first_of("0123456789");
      if (digits == 1 && (base[0] == 'F' || base[0] == 'Q') &&
          base.find_first_not_of("0123456789", 1) == std::string::npos && base.size() < 12) {
        long p = std::stol(base.substr(1));
        F = base[0] == 'F' ? FieldDescriptor::laurent_mod(p) : FieldDescriptor::laurent_padic_base(p);
      } else {
        c.fail_at(kat, "expected F<prime> or Q<prime>");
      }
    } else {
      F = FieldDescriptor::laurent();
    }
  } else if (name == "padic") {
    F = FieldDescriptor::padic(prime());
  } else if (name == "composite") {
    F = FieldDescriptor::composite(prime());
  } else {
    c.fail_at(at, "unknown field '" + name + "'");
  }
  return F;
}

// Raw argument text: a quoted string or everything up to a top-level , or ).
struct Slice {
  std::size_t begin, end;
};

Slice raw_value(Cursor& c) {
  if (c.accept('"')) {
    std::size_t b = c.pos();
    while (c.pos() < c.end() && c.peek_raw() != '"') c.set_pos(c.pos() + 1);
    if (c.pos() >= c.end()) c.fail_at(b - 1, "unterminated string");
    Slice s{b, c.pos()};
    c.set_pos(c.pos() + 1);
    return s;
  }
  c.skip_ws();
  std::size_t b = c.pos();
  int depth = 0;
  while (c.pos() < c.end()) {
    char ch = c.peek_raw();
    if (ch == '(') ++depth;
    if (ch == ')' && depth-- == 0) break;
    if (ch == ',' && depth == 0) break;
    c.set_pos(c.pos() + 1);
  }
  std::size_t e = c.pos();
  while (e > b && std::isspace(static_cast<unsigned char>(c.full()[e - 1]))) --e;
  if (e == b) c.fail_at(b, "empty value");
  return {b, e};
}

template <class T, class Fn>
T whole(const std::string& text, Fn fn) {
  Cursor c(text);
  T out = fn(c);
  c.finish();
  return out;
}

}  // namespace

FieldDescriptor parse_field(const std::string& text) {
  return whole<FieldDescriptor>(text, [](Cursor& c) { return field(c); });
}

FieldElem parse_elem(const std::string& text, const FieldDescriptor& F) {
  Cursor c(text);
  return elem_in(c, F);
}

RatFunc parse_ratfunc(const std::string& text, const FieldDescriptor& F) {
  Cursor c(text);
  RatFunc r = ExprParser(c, F, true).expr();
  c.finish();
  return r;
}

Scalar parse_scalar(const std::string& text) {
  return whole<Scalar>(text, [](Cursor& c) { return scalar(c); });
}

GroupValue parse_group_value(const std::string& text) {
  return whole<GroupValue>(text, [](Cursor& c) { return group_value(c); });
}

IdealSpec parse_ideal(const std::string& text) {
  return whole<IdealSpec>(text, [](Cursor& c) { return ideal(c); });
}

SeqSpec parse_seq(const std::string& text, const FieldDescriptor& fallback) {
  Cursor c(text);
  SeqSpec out;
  std::size_t at = c.pos();
  std::string name = c.identifier();
  if (name == "pcv")
    out.kind = SeqKind::pcv;
  else if (name == "pdv")
    out.kind = SeqKind::pdv;
  else if (name == "pst")
    out.kind = SeqKind::pst;
  else if (name == "cauchy")
    out.kind = SeqKind::cauchy;
  else
    c.fail_at(at, "unknown sequence kind '" + name + "'");

  std::map<std::string, Slice> args;
  auto argument = [&]() {
    std::size_t kat = c.pos();
    std::string key = c.identifier();
    bool known = key == "field" || (out.kind == SeqKind::cauchy ? key == "limit" : key == "alpha" || key == "breadth");
    if (!known) c.fail_at(kat, "unknown argument '" + key + "'");
    if (args.count(key)) c.fail_at(kat, "repeated argument '" + key + "'");
    c.expect('=');
    args[key] = raw_value(c);
  };
  c.expect('(');
  if (!c.accept(')')) {
    argument();
    while (c.accept(',')) argument();
    c.expect(')');
  }
  if (!c.at_end()) {
    if (!c.accept_word("field")) c.fail("expected field=");
    if (args.count("field")) c.fail("repeated argument 'field'");
    c.expect('=');
    args["field"] = raw_value(c);
  }
  c.finish();

  auto sub = [&](const Slice& s) { return Cursor(text, s.begin, s.end); };
  out.field = fallback;
  if (auto it = args.find("field"); it != args.end()) {
    Cursor f = sub(it->second);
    out.field = field(f);
    f.finish();
  }
  const std::string elem_key = out.kind == SeqKind::cauchy ? "limit" : "alpha";
  out.alpha = FieldElem(Rational(0), out.field.modulus());
  if (auto it = args.find(elem_key); it != args.end()) {
    Cursor e = sub(it->second);
    out.alpha = elem_in(e, out.field);
  } else if (out.kind == SeqKind::cauchy) {
    c.fail("missing limit");
  }
  if (out.kind == SeqKind::cauchy) {
    out.breadth = IdealSpec::zero();
  } else {
    auto it = args.find("breadth");
    if (it == args.end()) c.fail("missing breadth");
    Cursor b = sub(it->second);
    out.breadth = ideal(b);
    b.finish();
  }
  return out;
}

PMSeq SeqSpec::build(long prefix) const {
  if (kind == SeqKind::cauchy) return make_cauchy(alpha, field, prefix);
  return make_sequence(kind, alpha, breadth, field, prefix);
}

std::string SeqSpec::str() const {
  if (kind == SeqKind::cauchy) return "cauchy(limit=" + alpha.str() + ") field=" + field.str();
  return kind_name(kind) + "(alpha=" + alpha.str() + ", breadth=\"" + breadth.str() + "\") field=" + field.str();
}

bool operator==(const SeqSpec& a, const SeqSpec& b) {
  return a.kind == b.kind && a.alpha == b.alpha && a.breadth.str() == b.breadth.str() && a.field == b.field;
}

}  // namespace valx
