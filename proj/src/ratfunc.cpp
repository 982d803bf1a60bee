#include "valx/ratfunc.hpp"

#include <algorithm>

namespace valx {

Poly::Poly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.mod()) mod_ = c.mod();
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::x(long mod) { return Poly({FieldElem(Rational(0), mod), FieldElem(Rational(1), mod)}); }

Poly Poly::linear(const FieldElem& a) { return Poly({-a, FieldElem(Rational(1), a.mod())}); }

FieldElem Poly::lead() const {
  if (c_.empty()) throw StructuralError("leading coefficient of the zero polynomial");
  return c_.back();
}

Poly Poly::operator-() const {
  std::vector<FieldElem> r;
  for (const auto& c : c_) r.push_back(-c);
  return Poly(r);
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), FieldElem(Rational(0), mod_ ? mod_ : o.mod_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(r);
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<FieldElem> r(c_.size() + o.c_.size() - 1, FieldElem(Rational(0), mod_ ? mod_ : o.mod_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
  }
  return Poly(r);
}

Poly Poly::operator*(const FieldElem& k) const {
  std::vector<FieldElem> r;
  for (const auto& c : c_) r.push_back(c * k);
  return Poly(r);
}

Poly Poly::pow(long n) const {
  if (n < 0) throw PreconditionError("negative power of a polynomial");
  Poly r = constant(FieldElem(Rational(1), mod_));
  Poly b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw DivisionByZero();
  std::vector<FieldElem> rem = c_;
  if (rem.size() < d.c_.size()) return {Poly(), *this};
  std::vector<FieldElem> quo(rem.size() - d.c_.size() + 1);
  FieldElem lead_inv = FieldElem(Rational(1), d.mod_) / d.lead();
  for (std::size_t k = quo.size(); k-- > 0;) {
    FieldElem f = rem[k + d.c_.size() - 1] * lead_inv;
    quo[k] = f;
    if (f.is_zero()) continue;
    for (std::size_t i = 0; i < d.c_.size(); ++i) rem[k + i] -= f * d.c_[i];
  }
  rem.resize(d.c_.size() - 1);
  return {Poly(quo), Poly(rem)};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (FieldElem(Rational(1), mod_) / lead());
}

FieldElem Poly::eval(const FieldElem& x) const {
  FieldElem r(Rational(0), mod_ ? mod_ : x.mod());
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

Poly Poly::taylor_shift(const FieldElem& beta) const {
  std::vector<FieldElem> c = c_;
  const std::size_t n = c.size();
  if (beta.is_zero() || n < 2) return *this;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) c[j] += beta * c[j + 1];
  return Poly(c);
}

Poly Poly::substitute_linear(const FieldElem& a, const FieldElem& b) const {
  Poly s = taylor_shift(a);
  std::vector<FieldElem> c = s.c_;
  FieldElem bp(Rational(1), mod_ ? mod_ : b.mod());
  for (auto& x : c) {
    x = x * bp;
    bp = bp * b;
  }
  return Poly(c);
}

static bool is_monomial(const FieldElem& c) {
  return c.den().size() == 1 && c.den().begin()->first == 0 && c.num().size() == 1;
}

std::string Poly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const FieldElem& c = c_[i];
    if (c.is_zero()) continue;
    std::string pw = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term;
    if (i == 0) {
      term = c.str();
    } else if (is_monomial(c)) {
      bool neg = sgn(c.num().begin()->second) < 0;
      FieldElem mag = neg ? -c : c;
      std::string ms = mag.str();
      term = (neg ? "-" : "") + (ms == "1" ? pw : ms + "*" + pw);
    } else {
      term = "(" + c.str() + ")*" + pw;
    }
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  return s;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

long RootValProfile::total() const {
  long t = 0;
  for (const auto& e : entries) t += e.multiplicity;
  return t;
}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(FieldElem(Rational(1), num_.mod()))) {}

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero();
  long m = num.mod() ? num.mod() : den.mod();
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly::constant(FieldElem(Rational(1), m));
    return;
  }
  if (den.degree() > 0 && num.degree() > 0) {
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
      num = num.divmod(g).first;
      den = den.divmod(g).first;
    }
  }
  FieldElem inv = FieldElem(Rational(1), m) / den.lead();
  num_ = num * inv;
  den_ = den * inv;
}

RatFunc RatFunc::coprime(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero();
  RatFunc r;
  long m = num.mod() ? num.mod() : den.mod();
  FieldElem inv = FieldElem(Rational(1), m) / den.lead();
  r.num_ = num * inv;
  r.den_ = den * inv;
  if (r.num_.is_zero()) r.den_ = Poly::constant(FieldElem(Rational(1), m));
  return r;
}

RatFunc RatFunc::operator-() const { return coprime(-num_, den_); }

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw DivisionByZero();
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::pow(long n) const {
  if (n < 0) return RatFunc(den_.pow(-n), num_.pow(-n));
  return RatFunc(num_.pow(n), den_.pow(n));
}

FieldElem RatFunc::eval(const FieldElem& x) const {
  FieldElem d = den_.eval(x);
  if (d.is_zero()) throw PoleError("pole of " + str() + " at " + x.str());
  return num_.eval(x) / d;
}

RatFunc RatFunc::substitute_linear(const FieldElem& a, const FieldElem& b) const {
  return RatFunc(num_.substitute_linear(a, b), den_.substitute_linear(a, b));
}

std::string RatFunc::str(const std::string& var) const {
  if (den_.degree() == 0) return num_.str(var);
  auto single = [](const Poly& p) {
    int n = 0;
    for (const auto& c : p.coeffs()) n += !c.is_zero();
    return n == 1;
  };
  std::string n = num_.str(var);
  std::string d = den_.str(var);
  if (!single(num_)) n = "(" + n + ")";
  if (!single(den_) || d.find('*') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

RootValProfile newton_profile(const Poly& f, const FieldElem& beta, const FieldDescriptor& F) {
  if (f.is_zero()) throw StructuralError("Newton profile of the zero polynomial");
  Poly g = f.taylor_shift(beta);
  RootValProfile out;
  out.lead_value = *value(f.lead(), F);
  struct Pt {
    long i;
    GroupValue w;
  };
  std::vector<Pt> pts;
  for (std::size_t i = 0; i < g.coeffs().size(); ++i)
    if (!g[i].is_zero()) pts.push_back({static_cast<long>(i), *value(g[i], F)});
  auto slope = [](const Pt& a, const Pt& b) { return (b.w - a.w) * Rational(1, b.i - a.i); };
  std::vector<Pt> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && slope(hull[hull.size() - 2], hull.back()) >= slope(hull[hull.size() - 2], p))
      hull.pop_back();
    hull.push_back(p);
  }
  for (std::size_t k = hull.size() - 1; k-- > 0;)
    out.entries.push_back({-slope(hull[k], hull[k + 1]), hull[k + 1].i - hull[k].i});
  if (pts.front().i > 0) out.entries.push_back({std::nullopt, pts.front().i});
  return out;
}

SPart s_part(const RatFunc& phi, const FieldElem& beta, const Region& region,
             const FieldDescriptor& F) {
  if (phi.is_zero()) throw StructuralError("S-part of the zero function");
  SPart out;
  out.gamma_shift = GroupValue::zero(F.rank());
  auto fold = [&](const Poly& f, int sign) {
    RootValProfile pr = newton_profile(f, beta, F);
    out.gamma_shift += pr.lead_value * Rational(sign);
    for (const auto& e : pr.entries) {
      if (region(e.valuation)) {
        out.weighted_sum += sign * e.multiplicity;
      } else {
        if (!e.valuation) throw StructuralError("region excludes the center itself");
        out.gamma_shift += *e.valuation * Rational(sign * e.multiplicity);
      }
    }
  };
  fold(phi.num(), 1);
  fold(phi.den(), -1);
  return out;
}

std::optional<GroupValue> value_at(const Poly& f, const FieldElem& x, const FieldDescriptor& F) {
  return value(f.eval(x), F);
}

}  // namespace valx
