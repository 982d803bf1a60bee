#include "valx/ordgroup.hpp"

#include <cmath>
#include <sstream>

namespace valx {

int sign_of(const Rational& q) { return sgn(q); }

namespace {

std::strong_ordering from_sign(int s) {
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

long common_root(const Scalar& x, const Scalar& y) {
  if (x.root() == 0) return y.root();
  if (y.root() == 0 || y.root() == x.root()) return x.root();
  throw StructuralError("scalars from different quadratic fields: sqrt(" +
                        std::to_string(x.root()) + ") vs sqrt(" + std::to_string(y.root()) + ")");
}

bool is_integer(const Scalar& s) { return s.is_rational() && s.rational_part().get_den() == 1; }

Scalar ceil_of(const Rational& q) {
  Integer f;
  mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Scalar(Rational(f));
}

}  // namespace

Scalar::Scalar(const Rational& a, const Rational& b, long root) : a_(a), b_(b), root_(root) {
  a_.canonicalize();
  b_.canonicalize();
  normalize();
}

void Scalar::normalize() {
  if (root_ < 0) throw StructuralError("negative radicand");
  // pull square factors out of the radicand
  if (root_ > 1) {
    long r = root_;
    long k = 1;
    for (long f = 2; f * f <= r; ++f)
      while (r % (f * f) == 0) {
        r /= f * f;
        k *= f;
      }
    b_ *= k;
    root_ = r;
  }
  if (root_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) root_ = 0;
}

int Scalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * root_;
  return lhs > rhs ? sa : sb;
}

double Scalar::to_double() const {
  return a_.get_d() + (root_ ? b_.get_d() * std::sqrt(static_cast<double>(root_)) : 0.0);
}

Scalar Scalar::operator-() const { return Scalar(-a_, -b_, root_); }

Scalar Scalar::operator+(const Scalar& o) const {
  return Scalar(a_ + o.a_, b_ + o.b_, common_root(*this, o));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Rational& k) const { return Scalar(a_ * k, b_ * k, root_); }

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  return from_sign((x - y).sign());
}

bool operator==(const Scalar& x, const Scalar& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.root_ == y.root_);
}

std::string Scalar::str() const {
  if (root_ == 0) return a_.get_str();
  std::string rad = "sqrt(" + std::to_string(root_) + ")";
  std::string irr;
  Rational mag = abs(b_);
  irr = mag == 1 ? rad : mag.get_str() + "*" + rad;
  if (a_ == 0) return (sgn(b_) < 0 ? "-" : "") + irr;
  return a_.get_str() + (sgn(b_) < 0 ? "-" : "+") + irr;
}

std::string ExtScalar::str() const {
  switch (kind) {
    case Kind::plus_infinity: return "inf";
    case Kind::minus_infinity: return "-inf";
    default: return value.str();
  }
}

bool GroupValue::is_rational() const {
  for (const auto& c : coords_)
    if (!c.is_rational()) return false;
  return true;
}

bool GroupValue::is_zero() const {
  for (const auto& c : coords_)
    if (c.sign() != 0) return false;
  return true;
}

int GroupValue::sign() const {
  for (const auto& c : coords_)
    if (int s = c.sign()) return s;
  return 0;
}

static void same_rank(const GroupValue& a, const GroupValue& b) {
  if (a.rank() != b.rank())
    throw StructuralError("group values of rank " + std::to_string(a.rank()) + " and " +
                          std::to_string(b.rank()));
}

GroupValue GroupValue::operator-() const {
  std::vector<Scalar> c;
  for (const auto& x : coords_) c.push_back(-x);
  return GroupValue(c);
}

GroupValue GroupValue::operator+(const GroupValue& o) const {
  same_rank(*this, o);
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < rank(); ++i) c.push_back(coords_[i] + o.coords_[i]);
  return GroupValue(c);
}

GroupValue GroupValue::operator-(const GroupValue& o) const { return *this + (-o); }

GroupValue GroupValue::operator*(const Rational& k) const {
  std::vector<Scalar> c;
  for (const auto& x : coords_) c.push_back(x * k);
  return GroupValue(c);
}

GroupValue GroupValue::prefix(std::size_t n) const {
  if (n > rank()) throw StructuralError("prefix longer than rank");
  return GroupValue(std::vector<Scalar>(coords_.begin(), coords_.begin() + n));
}

std::strong_ordering operator<=>(const GroupValue& x, const GroupValue& y) {
  same_rank(x, y);
  for (std::size_t i = 0; i < x.rank(); ++i)
    if (auto c = x.coords_[i] <=> y.coords_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

bool operator==(const GroupValue& x, const GroupValue& y) { return (x <=> y) == 0; }

std::string GroupValue::str() const {
  if (rank() == 1) return coords_[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < rank(); ++i) s += (i ? "," : "") + coords_[i].str();
  return s + ")";
}

Ordering compare(const GroupValue& a, const GroupValue& b) {
  auto c = a <=> b;
  if (c < 0) return Ordering::less;
  if (c > 0) return Ordering::greater;
  return Ordering::equal;
}

GroupDescriptor::GroupDescriptor(std::vector<CoordKind> kinds) : kinds_(std::move(kinds)) {
  if (kinds_.empty()) throw StructuralError("value group of rank 0");
}

bool GroupDescriptor::contains(const GroupValue& g) const {
  if (g.rank() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    const Scalar& s = g[i];
    if (s.is_rational()) {
      if (kinds_[i].discrete && !is_integer(s)) return false;
    } else if (kinds_[i].discrete || s.root() != kinds_[i].root) {
      return false;
    }
  }
  return true;
}

GroupValue GroupDescriptor::unit_step() const {
  if (!maximal_ideal_principal()) throw PreconditionError("value group has no least positive element");
  std::vector<Scalar> c(rank());
  c.back() = Scalar(1);
  return GroupValue(c);
}

GroupDescriptor GroupDescriptor::coarsened(std::size_t collapse) const {
  if (collapse >= rank())
    throw StructuralError("prime selector " + std::to_string(collapse) + " not below rank " +
                          std::to_string(rank()));
  return GroupDescriptor(std::vector<CoordKind>(kinds_.begin(), kinds_.end() - collapse));
}

void GroupDescriptor::check(const GroupValue& g) const {
  if (g.rank() != rank())
    throw StructuralError("value " + g.str() + " does not conform to a rank " +
                          std::to_string(rank()) + " group");
}

Bound::Bound(std::vector<ExtScalar> coords) {
  for (const auto& c : coords) {
    coords_.push_back(c);
    if (!c.finite()) break;
  }
  if (coords_.empty()) throw StructuralError("empty bound");
}

Bound::Bound(const GroupValue& g) {
  for (const auto& c : g.coords()) coords_.push_back({ExtScalar::Kind::finite, c});
  if (coords_.empty()) throw StructuralError("empty bound");
}

bool Bound::is_finite() const { return coords_.back().finite(); }

bool Bound::is_plus_infinity() const {
  return coords_.size() == 1 && coords_[0].kind == ExtScalar::Kind::plus_infinity;
}

bool Bound::is_minus_infinity() const {
  return coords_.size() == 1 && coords_[0].kind == ExtScalar::Kind::minus_infinity;
}

GroupValue Bound::value() const {
  if (!is_finite()) throw StructuralError("bound " + str() + " is not a group value");
  std::vector<Scalar> c;
  for (const auto& e : coords_) c.push_back(e.value);
  return GroupValue(c);
}

std::strong_ordering compare_to(const GroupValue& g, const Bound& b) {
  const auto& c = b.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].kind == ExtScalar::Kind::plus_infinity) return std::strong_ordering::less;
    if (c[i].kind == ExtScalar::Kind::minus_infinity) return std::strong_ordering::greater;
    if (i >= g.rank()) throw StructuralError("bound " + b.str() + " longer than value rank");
    if (auto o = g[i] <=> c[i].value; o != 0) return o;
  }
  if (c.size() != g.rank()) throw StructuralError("bound " + b.str() + " shorter than value rank");
  return std::strong_ordering::equal;
}

std::string Bound::str() const {
  if (coords_.size() == 1) return coords_[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? "," : "") + coords_[i].str();
  return s + ")";
}

ExtCut::ExtCut(Bound b, CutSide s) : bound(std::move(b)), side(s) {
  if (side == CutSide::exact && !bound.is_finite())
    throw StructuralError("exact cut at a non-finite bound " + bound.str());
}

std::string side_name(CutSide s) {
  switch (s) {
    case CutSide::below: return "below";
    case CutSide::above: return "above";
    default: return "exact";
  }
}

std::string ExtCut::str() const { return bound.str() + " " + side_name(side); }

IdealSpec::IdealSpec(Bound b, bool closed_flag, std::optional<GroupValue> witness)
    : bound(std::move(b)), closed(closed_flag), witness_value(std::move(witness)) {
  if (!bound.is_finite()) closed = false;
}

bool IdealSpec::contains(const GroupValue& g) const {
  auto c = compare_to(g, bound);
  return closed ? c >= 0 : c > 0;
}

bool IdealSpec::contains(const std::optional<GroupValue>& g) const {
  return !g || contains(*g);
}

std::string IdealSpec::str() const {
  if (is_whole_field()) return "K";
  if (is_zero()) return "0";
  return (closed ? ">=" : ">") + bound.str();
}

IdealSpec normalize(const IdealSpec& I, const GroupDescriptor& G) {
  if (I.is_whole_field()) return IdealSpec::whole_field();
  if (I.is_zero()) return IdealSpec::zero();
  const auto& c = I.bound.coords();
  const std::size_t r = G.rank();
  if (c.size() > r) throw StructuralError("ideal bound " + I.bound.str() + " exceeds group rank");
  std::vector<ExtScalar> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const ExtScalar& e = c[i];
    const CoordKind& k = G.kinds()[i];
    if (!e.finite()) {
      if (e.kind == ExtScalar::Kind::plus_infinity && G.kinds()[i - 1].discrete) {
        out.back().value = out.back().value + Scalar(1);
        out.push_back(ExtScalar::minus_inf());
      } else {
        out.push_back(e);
      }
      return IdealSpec(Bound(out), false);
    }
    bool attained = e.value.is_rational() ? (!k.discrete || is_integer(e.value))
                                          : (!k.discrete && e.value.root() == k.root);
    if (!attained) {
      if (!e.value.is_rational() && k.discrete)
        throw StructuralError("irrational bound on a discrete coordinate");
      bool last = i + 1 == r;
      if (k.discrete) {
        out.push_back({ExtScalar::Kind::finite, ceil_of(e.value.rational_part())});
        if (last) return IdealSpec(Bound(out), true);
        out.push_back(ExtScalar::minus_inf());
        return IdealSpec(Bound(out), false);
      }
      out.push_back(e);
      if (!last) out.push_back(ExtScalar::plus_inf());
      return IdealSpec(Bound(out), false);
    }
    out.push_back(e);
  }
  if (c.size() < r) {
    // a short bound constrains the leading coordinates only
    std::vector<ExtScalar> padded = c;
    padded.push_back(I.closed ? ExtScalar::minus_inf() : ExtScalar::plus_inf());
    return normalize(IdealSpec(Bound(padded), false), G);
  }
  bool closed = I.closed;
  if (!closed && G.kinds().back().discrete) {
    out.back().value = out.back().value + Scalar(1);
    closed = true;
  }
  return IdealSpec(Bound(out), closed);
}

bool same_value_set(const IdealSpec& I, const IdealSpec& J, const GroupDescriptor& G) {
  IdealSpec a = normalize(I, G);
  IdealSpec b = normalize(J, G);
  return a.bound == b.bound && a.closed == b.closed;
}

std::string category_name(IdealCategory c) {
  switch (c) {
    case IdealCategory::principal: return "principal";
    case IdealCategory::maximal_multiple: return "maximal_multiple";
    default: return "general";
  }
}

IdealClass classify_ideal(const IdealSpec& I, const GroupDescriptor& G) {
  if (I.witness_value) {
    G.check(*I.witness_value);
    if (!G.contains(*I.witness_value))
      throw StructuralError("claimed witness value " + I.witness_value->str() +
                            " is not in the value group");
    if (!I.bound.is_finite() || !(I.bound.value() == *I.witness_value))
      throw StructuralError("witness value " + I.witness_value->str() + " differs from bound " +
                            I.bound.str());
  }
  IdealClass out;
  IdealSpec N = normalize(I, G);
  if (N.is_whole_field()) {
    out.fractional = false;
    return out;
  }
  if (N.is_zero()) {
    out.divisorial = true;
    out.strictly_divisorial = true;
    return out;
  }
  if (N.bound.is_finite() && N.closed) {
    out.principal = true;
    out.divisorial = true;
    out.witness_value = N.bound.value();
    out.category = IdealCategory::principal;
    if (G.maximal_ideal_principal()) {
      // cV = (c/pi) M
      out.category = IdealCategory::maximal_multiple;
      out.witness_value = N.bound.value() - G.unit_step();
    }
    out.strictly_divisorial = out.category != IdealCategory::maximal_multiple;
    return out;
  }
  if (N.bound.is_finite() && G.contains(N.bound.value())) {
    out.category = IdealCategory::maximal_multiple;
    out.witness_value = N.bound.value();
    return out;
  }
  out.divisorial = true;
  out.strictly_divisorial = true;
  return out;
}

Localized localize_ideal(const IdealSpec& I, const GroupDescriptor& G, std::size_t collapse) {
  GroupDescriptor C = G.coarsened(collapse);
  IdealSpec N = normalize(I, G);
  if (collapse == 0 || N.is_whole_field() || N.is_zero()) return {N, true};
  const std::size_t kept = G.rank() - collapse;
  const auto& c = N.bound.coords();
  std::vector<ExtScalar> head(c.begin(), c.begin() + std::min(kept, c.size()));
  auto finish = [&](bool closed, bool module) {
    return Localized{normalize(IdealSpec(Bound(head), closed), C), module};
  };
  for (const auto& e : head)
    if (!e.finite()) return finish(false, true);
  if (c.size() > kept && !c[kept].finite()) {
    // every coset of the collapsed part is either wholly in or wholly out
    return finish(c[kept].kind == ExtScalar::Kind::minus_infinity, true);
  }
  return finish(true, false);
}

std::optional<IdealSpec> coarsen_ideal(const IdealSpec& I, const GroupDescriptor& G,
                                       std::size_t collapse) {
  Localized l = localize_ideal(I, G, collapse);
  if (!l.module) return std::nullopt;
  return l.ideal;
}

IdealSpec lift_ideal(const IdealSpec& coarse, std::size_t collapse) {
  if (collapse == 0 || coarse.is_whole_field() || coarse.is_zero()) return coarse;
  auto c = coarse.bound.coords();
  if (!c.back().finite()) return IdealSpec(Bound(c), false);
  c.push_back(coarse.closed ? ExtScalar::minus_inf() : ExtScalar::plus_inf());
  return IdealSpec(Bound(c), false);
}

IdealSpec region_of(const ExtCut& cut) {
  return IdealSpec(cut.bound, cut.side != CutSide::above);
}

int extval_sign(long lambda, const GroupValue& gamma, const ExtCut& cut) {
  if (lambda == 0) return gamma.sign();
  const auto& c = cut.bound.coords();
  const int sl = lambda > 0 ? 1 : -1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].kind == ExtScalar::Kind::plus_infinity) return sl;
    if (c[i].kind == ExtScalar::Kind::minus_infinity) return -sl;
    if (i >= gamma.rank()) throw StructuralError("cut " + cut.str() + " longer than value rank");
    int s = (c[i].value * Rational(lambda) + gamma[i]).sign();
    if (s) return s;
  }
  if (c.size() != gamma.rank()) throw StructuralError("cut " + cut.str() + " shorter than value rank");
  switch (cut.side) {
    case CutSide::above: return sl;
    case CutSide::below: return -sl;
    default: return 0;
  }
}

}  // namespace valx
