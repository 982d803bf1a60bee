#include "valx/fields.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <tuple>
#include <vector>

namespace valx {

namespace {

constexpr long kDenseGcdCap = 4096;
// Euclid over Q beyond this span is too slow to be worth it
constexpr long kExactGcdCap = 256;

Rational reduce_mod(const Rational& c, long q) {
  if (q == 0) return c;
  Integer m(q);
  Integer den = c.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) throw DivisionByZero();
  Integer r = c.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return Rational(r);
}

Rational inverse(const Rational& c, long q) {
  if (c == 0) throw DivisionByZero();
  if (q == 0) return 1 / c;
  return reduce_mod(Rational(1) / c, q);
}

void clean(Puiseux& p, long q) {
  for (auto it = p.begin(); it != p.end();) {
    if (q) it->second = reduce_mod(it->second, q);
    it = it->second == 0 ? p.erase(it) : std::next(it);
  }
}

Puiseux add(const Puiseux& a, const Puiseux& b, long q, int sign = 1) {
  Puiseux r = a;
  for (const auto& [e, c] : b) r[e] += sign * c;
  clean(r, q);
  return r;
}

Puiseux mul(const Puiseux& a, const Puiseux& b, long q) {
  Puiseux r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
  clean(r, q);
  return r;
}

Puiseux scale(const Puiseux& a, const Rational& c, const Rational& shift, long q) {
  Puiseux r;
  for (const auto& [e, x] : a) r[e + shift] = x * c;
  clean(r, q);
  return r;
}

// Dense polynomials in u = t^(1/D), low degree first.
using Dense = std::vector<Rational>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_rem(Dense a, const Dense& b, long q) {
  Rational lead_inv = inverse(b.back(), q);
  while (a.size() >= b.size()) {
    Rational f = a.back() * lead_inv;
    if (q) f = reduce_mod(f, q);
    std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[off + i] -= f * b[i];
      if (q) a[off + i] = reduce_mod(a[off + i], q);
    }
    trim(a);
  }
  return a;
}

Dense dense_quo(Dense a, const Dense& b, long q) {
  Rational lead_inv = inverse(b.back(), q);
  if (a.size() < b.size()) return {};
  Dense quo(a.size() - b.size() + 1);
  while (a.size() >= b.size()) {
    Rational f = a.back() * lead_inv;
    if (q) f = reduce_mod(f, q);
    std::size_t off = a.size() - b.size();
    quo[off] = f;
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[off + i] -= f * b[i];
      if (q) a[off + i] = reduce_mod(a[off + i], q);
    }
    trim(a);
  }
  return quo;
}

Dense dense_gcd(Dense a, Dense b, long q) {
  while (!b.empty()) {
    Dense r = dense_rem(a, b, q);
    a = std::move(b);
    b = std::move(r);
    // keep rational coefficients from growing
    if (!b.empty() && q == 0) {
      Rational inv = 1 / b.back();
      for (auto& c : b) c *= inv;
    }
  }
  return a;
}

constexpr std::uint64_t kPrime = 2147483647;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (b %= kPrime; e; e >>= 1, b = b * b % kPrime)
    if (e & 1) r = r * b % kPrime;
  return r;
}

// Image modulo kPrime; false when the prime divides a denominator or the lead.
bool image_mod(const Dense& d, std::vector<std::uint64_t>& out) {
  out.resize(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    Integer n = d[i].get_num() % kPrime, m = d[i].get_den() % kPrime;
    if (m == 0) return false;
    if (n < 0) n += kPrime;
    out[i] = n.get_ui() * pow_mod(m.get_ui(), kPrime - 2) % kPrime;
  }
  return !out.empty() && out.back() != 0;
}

// Monic gcd of the images; nullopt for an unlucky prime.
std::optional<std::vector<std::uint64_t>> gcd_mod(const Dense& a, const Dense& b) {
  std::vector<std::uint64_t> x, y;
  if (!image_mod(a, x) || !image_mod(b, y)) return std::nullopt;
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    std::uint64_t inv = pow_mod(y.back(), kPrime - 2);
    while (x.size() >= y.size()) {
      std::uint64_t f = x.back() * inv % kPrime;
      std::size_t shift = x.size() - y.size();
      for (std::size_t i = 0; i < y.size(); ++i) x[i + shift] = (x[i + shift] + (kPrime - f) * y[i]) % kPrime;
      while (!x.empty() && x.back() == 0) x.pop_back();
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  std::uint64_t inv = pow_mod(x.back(), kPrime - 2);
  for (auto& c : x) c = c * inv % kPrime;
  return x;
}

// n/d with |n|, d below sqrt(p/2) and n = c*d mod p.
std::optional<Rational> reconstruct(std::uint64_t c) {
  const std::int64_t bound = 32767;
  std::int64_t r0 = kPrime, r1 = static_cast<std::int64_t>(c), s0 = 0, s1 = 1;
  while (r1 > bound) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (s1 == 0 || std::llabs(s1) > bound) return std::nullopt;
  Rational out(r1, s1);
  out.canonicalize();
  return out;
}

// gcd over Q through one modular image, lifted and checked by exact division.
std::optional<Dense> modular_gcd(const Dense& a, const Dense& b) {
  auto g = gcd_mod(a, b);
  if (!g) return std::nullopt;
  if (g->size() == 1) return Dense{1};
  Dense lifted;
  for (auto c : *g) {
    auto r = reconstruct(c);
    if (!r) return std::nullopt;
    lifted.push_back(*r);
  }
  if (!dense_rem(a, lifted, 0).empty() || !dense_rem(b, lifted, 0).empty()) return std::nullopt;
  return lifted;
}

Integer lcm_den(const Puiseux& p, Integer acc) {
  for (const auto& [e, c] : p) mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), e.get_den_mpz_t());
  return acc;
}

}  // namespace

std::pair<Rational, Rational> lowest_term(const Puiseux& p) {
  if (p.empty()) throw StructuralError("lowest term of zero");
  return *p.begin();
}

FieldElem::FieldElem(const Rational& c, long mod) : mod_(mod) {
  num_[0] = c;
  den_[0] = 1;
  canonicalize();
}

FieldElem::FieldElem(Puiseux num, Puiseux den, long mod)
    : num_(std::move(num)), den_(std::move(den)), mod_(mod) {
  canonicalize();
}

FieldElem FieldElem::monomial(const Rational& coef, const Rational& exponent, long mod) {
  return FieldElem(Puiseux{{exponent, coef}}, Puiseux{{0, 1}}, mod);
}

void FieldElem::canonicalize() {
  clean(num_, mod_);
  clean(den_, mod_);
  if (den_.empty()) throw DivisionByZero();
  if (num_.empty()) {
    den_ = {{0, 1}};
    return;
  }
  auto [de, dc] = lowest_term(den_);
  Rational inv = inverse(dc, mod_);
  num_ = scale(num_, inv, -de, mod_);
  den_ = scale(den_, inv, -de, mod_);
  if (den_.size() == 1 || num_.size() == 0) return;

  // Reduce through dense polynomials in u = t^(1/D).
  Integer D = lcm_den(den_, lcm_den(num_, Integer(1)));
  Rational ne = num_.begin()->first;
  Rational span_n = (num_.rbegin()->first - ne) * D;
  Rational span_d = den_.rbegin()->first * D;
  if (span_n > kDenseGcdCap || span_d > kDenseGcdCap) return;
  auto to_dense = [&](const Puiseux& p, const Rational& base, const Rational& span) {
    Dense d(span.get_num().get_ui() + 1);
    for (const auto& [e, c] : p) d[Rational((e - base) * D).get_num().get_ui()] = c;
    return d;
  };
  Dense dn = to_dense(num_, ne, span_n);
  Dense dd = to_dense(den_, 0, span_d);
  Dense g;
  if (mod_ != 0) {
    g = dense_gcd(dn, dd, mod_);
  } else if (auto m = modular_gcd(dn, dd)) {
    g = *m;
  } else if (span_n <= kExactGcdCap && span_d <= kExactGcdCap) {
    g = dense_gcd(dn, dd, mod_);
  } else {
    return;
  }
  if (g.size() <= 1) return;
  Dense qn = dense_quo(dn, g, mod_);
  Dense qd = dense_quo(dd, g, mod_);
  auto from_dense = [&](const Dense& d, const Rational& base) {
    Puiseux p;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) p[base + Rational(static_cast<long>(i)) / D] = d[i];
    return p;
  };
  num_ = from_dense(qn, ne);
  den_ = from_dense(qd, 0);
  auto [de2, dc2] = lowest_term(den_);
  Rational inv2 = inverse(dc2, mod_);
  num_ = scale(num_, inv2, -de2, mod_);
  den_ = scale(den_, inv2, -de2, mod_);
}

bool FieldElem::is_constant() const {
  return den_.size() == 1 && (num_.empty() || (num_.size() == 1 && num_.begin()->first == 0));
}

Rational FieldElem::constant() const {
  if (!is_constant()) throw StructuralError("element " + str() + " is not a constant");
  return num_.empty() ? Rational(0) : num_.begin()->second;
}

static long join_mod(long a, long b) {
  if (a && b && a != b) throw StructuralError("elements over different prime fields");
  return a ? a : b;
}

FieldElem FieldElem::operator-() const { return FieldElem(scale(num_, -1, 0, mod_), den_, mod_); }

FieldElem FieldElem::operator+(const FieldElem& o) const {
  long m = join_mod(mod_, o.mod_);
  if (den_ == o.den_) return FieldElem(add(num_, o.num_, m), den_, m);
  return FieldElem(add(mul(num_, o.den_, m), mul(o.num_, den_, m), m), mul(den_, o.den_, m), m);
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
  long m = join_mod(mod_, o.mod_);
  return FieldElem(mul(num_, o.num_, m), mul(den_, o.den_, m), m);
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  if (o.is_zero()) throw DivisionByZero();
  long m = join_mod(mod_, o.mod_);
  return FieldElem(mul(num_, o.den_, m), mul(den_, o.num_, m), m);
}

FieldElem FieldElem::pow(long n) const {
  if (n < 0) return FieldElem(Rational(1), mod_) / pow(-n);
  FieldElem r(Rational(1), mod_);
  FieldElem b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  long m = join_mod(a.mod_, b.mod_);
  if (a.den_ == b.den_ && a.mod_ == b.mod_) return a.num_ == b.num_;
  Puiseux l = mul(a.num_, b.den_, m);
  Puiseux r = mul(b.num_, a.den_, m);
  return l == r;
}

std::string puiseux_str(const Puiseux& p) {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : p) {
    bool neg = sgn(c) < 0;
    Rational mag = abs(c);
    std::string term;
    if (e == 0) {
      term = mag.get_str();
    } else {
      std::string pw = "t";
      if (e != 1) pw += e.get_den() == 1 && sgn(e) > 0 ? "^" + e.get_str() : "^(" + e.get_str() + ")";
      term = mag == 1 ? pw : mag.get_str() + "*" + pw;
    }
    if (first)
      s = (neg ? "-" : "") + term;
    else
      s += (neg ? "-" : "+") + term;
    first = false;
  }
  return s;
}

std::string FieldElem::str() const {
  std::string n = puiseux_str(num_);
  if (den_.size() == 1 && den_.begin()->first == 0 && den_.begin()->second == 1) return n;
  if (num_.size() > 1) n = "(" + n + ")";
  return n + "/(" + puiseux_str(den_) + ")";
}

long padic_order(const Rational& q, long p) {
  if (q == 0) throw StructuralError("p-adic order of zero");
  Integer P(p);
  long v = 0;
  Integer n = q.get_num();
  Integer d = q.get_den();
  v += static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), P.get_mpz_t()));
  v -= static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t()));
  return v;
}

static bool is_prime(long n) {
  if (n < 2) return false;
  for (long f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

static long checked_prime(long p) {
  if (!is_prime(p)) throw StructuralError(std::to_string(p) + " is not prime");
  return p;
}

FieldDescriptor FieldDescriptor::padic(long p) { return {Kind::padic, checked_prime(p), 0}; }
FieldDescriptor FieldDescriptor::laurent_mod(long q) { return {Kind::laurent, 0, checked_prime(q)}; }
FieldDescriptor FieldDescriptor::laurent_padic_base(long p) {
  return {Kind::laurent, checked_prime(p), 0};
}
FieldDescriptor FieldDescriptor::composite(long p) { return {Kind::composite, checked_prime(p), 0}; }

GroupDescriptor FieldDescriptor::group() const {
  switch (kind) {
    case Kind::padic: return GroupDescriptor::integers();
    case Kind::laurent: return GroupDescriptor::rationals();
    default: return GroupDescriptor::rationals_lex_integers();
  }
}

bool FieldDescriptor::residue_field_infinite() const { return kind == Kind::laurent && q == 0; }

FieldElem FieldDescriptor::constant(const Rational& c) const { return FieldElem(c, modulus()); }

FieldElem FieldDescriptor::witness(const GroupValue& g) const {
  group().check(g);
  if (!group().contains(g)) throw StructuralError("value " + g.str() + " is not attained in " + str());
  switch (kind) {
    case Kind::padic: {
      Integer e = g[0].rational_part().get_num();
      Rational pp = 1;
      for (long i = 0; i < abs(e); ++i) pp *= p;
      return FieldElem(sgn(e) < 0 ? 1 / pp : pp);
    }
    case Kind::laurent: return FieldElem::t_power(g[0].rational_part(), q);
    default: {
      long e = g[1].rational_part().get_num().get_si();
      Rational pp = 1;
      for (long i = 0; i < std::abs(e); ++i) pp *= p;
      return FieldElem::monomial(e < 0 ? 1 / pp : pp, g[0].rational_part());
    }
  }
}

std::string FieldDescriptor::str() const {
  switch (kind) {
    case Kind::padic: return "padic:" + std::to_string(p);
    case Kind::composite: return "composite:" + std::to_string(p);
    default:
      if (q) return "laurentQ:F" + std::to_string(q);
      if (p) return "laurentQ:Q" + std::to_string(p);
      return "laurentQ";
  }
}

std::optional<GroupValue> value(const FieldElem& x, const FieldDescriptor& F) {
  if (x.is_zero()) return std::nullopt;
  if (x.mod() != F.modulus() && x.mod() != 0)
    throw StructuralError("element " + x.str() + " does not belong to " + F.str());
  auto [ne, nc] = lowest_term(x.num());
  auto [de, dc] = lowest_term(x.den());
  switch (F.kind) {
    case FieldDescriptor::Kind::padic:
      if (!x.is_constant()) throw StructuralError("element " + x.str() + " is not in Q");
      return GroupValue::of(padic_order(x.constant(), F.p));
    case FieldDescriptor::Kind::laurent: return GroupValue::of(ne - de);
    default: return GroupValue::of(ne - de, padic_order(nc, F.p) - padic_order(dc, F.p));
  }
}

GroupValue coarsen(const FieldElem& x, const PrimeSpec& P, const FieldDescriptor& F) {
  GroupDescriptor C = F.group().coarsened(P.collapse);
  auto v = value(x, F);
  if (!v) throw StructuralError("coarsened value of zero");
  return v->prefix(C.rank());
}

Rational residue(const FieldElem& x, const FieldDescriptor& F) {
  auto v = value(x, F);
  if (!v || v->sign() > 0) return 0;
  if (v->sign() < 0) throw PreconditionError("element " + x.str() + " is not in the valuation ring");
  auto [ne, nc] = lowest_term(x.num());
  auto [de, dc] = lowest_term(x.den());
  switch (F.kind) {
    case FieldDescriptor::Kind::laurent: return F.q ? reduce_mod(nc / dc, F.q) : Rational(nc / dc);
    default: return reduce_mod(nc / dc, F.p);
  }
}

}  // namespace valx
