#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "valx/errors.hpp"

namespace valx {

using Rational = mpq_class;
using Integer = mpz_class;

int sign_of(const Rational& q);

/// Exact element of Q(sqrt(d)): a + b*sqrt(d). `root == 0` marks a plain
/// rational (then b is always zero). `root` is square-free and > 1 otherwise.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& a) : a_(a) {}  // NOLINT(implicit)
  Scalar(long a) : a_(a) {}             // NOLINT(implicit)
  Scalar(const Rational& a, const Rational& b, long root);

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  long root() const { return root_; }
  bool is_rational() const { return root_ == 0; }

  // Exact: never goes through floating point.
  int sign() const;
  double to_double() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Rational& k) const;

  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);
  friend bool operator==(const Scalar& x, const Scalar& y);

  std::string str() const;

 private:
  void normalize();
  Rational a_{0};
  Rational b_{0};
  long root_ = 0;
};

// Scalar or an infinite endpoint.
struct ExtScalar {
  enum class Kind { finite, plus_infinity, minus_infinity };
  Kind kind = Kind::finite;
  Scalar value{};

  static ExtScalar plus_inf() { return {Kind::plus_infinity, {}}; }
  static ExtScalar minus_inf() { return {Kind::minus_infinity, {}}; }
  bool finite() const { return kind == Kind::finite; }
  std::string str() const;
  friend bool operator==(const ExtScalar&, const ExtScalar&) = default;
};

/// Element of a lex-ordered product of (subgroups of) Q or Q(sqrt d).
class GroupValue {
 public:
  GroupValue() = default;
  explicit GroupValue(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  static GroupValue zero(std::size_t rank) { return GroupValue(std::vector<Scalar>(rank)); }
  static GroupValue of(const Rational& a) { return GroupValue({Scalar(a)}); }
  static GroupValue of(const Rational& a, const Rational& b) {
    return GroupValue({Scalar(a), Scalar(b)});
  }

  std::size_t rank() const { return coords_.size(); }
  const std::vector<Scalar>& coords() const { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  bool is_rational() const;
  bool is_zero() const;
  int sign() const;

  GroupValue operator-() const;
  GroupValue operator+(const GroupValue& o) const;
  GroupValue operator-(const GroupValue& o) const;
  GroupValue operator*(const Rational& k) const;
  GroupValue& operator+=(const GroupValue& o) { return *this = *this + o; }
  GroupValue& operator-=(const GroupValue& o) { return *this = *this - o; }

  // First `n` coordinates: the image under a coarsening.
  GroupValue prefix(std::size_t n) const;

  friend std::strong_ordering operator<=>(const GroupValue& x, const GroupValue& y);
  friend bool operator==(const GroupValue& x, const GroupValue& y);

  std::string str() const;

 private:
  std::vector<Scalar> coords_;
};

enum class Ordering { less, equal, greater };
Ordering compare(const GroupValue& a, const GroupValue& b);

struct CoordKind {
  long root = 0;          // 0: rational scalars, otherwise Q(sqrt root)
  bool discrete = false;  // Z-like rather than dense
  friend bool operator==(const CoordKind&, const CoordKind&) = default;
};

/// Fixes which value group is in play: one CoordKind per lex coordinate.
class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  explicit GroupDescriptor(std::vector<CoordKind> kinds);
  static GroupDescriptor integers() { return GroupDescriptor({{0, true}}); }
  static GroupDescriptor rationals() { return GroupDescriptor({{0, false}}); }
  static GroupDescriptor rationals_lex_integers() {
    return GroupDescriptor({{0, false}, {0, true}});
  }

  std::size_t rank() const { return kinds_.size(); }
  const std::vector<CoordKind>& kinds() const { return kinds_; }

  // Membership of a value in the group itself (not its divisible hull).
  bool contains(const GroupValue& g) const;
  // The maximal ideal is principal iff the last coordinate is discrete.
  bool maximal_ideal_principal() const { return kinds_.back().discrete; }
  // Smallest positive element, when it exists.
  GroupValue unit_step() const;
  GroupDescriptor coarsened(std::size_t collapse) const;

  void check(const GroupValue& g) const;
  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

 private:
  std::vector<CoordKind> kinds_;
};

/// A position in the divisible hull completed by infinite endpoints.
/// Coordinates after the first infinite one are dropped; a single infinite
/// coordinate denotes the global endpoint.
class Bound {
 public:
  Bound() = default;
  explicit Bound(std::vector<ExtScalar> coords);
  explicit Bound(const GroupValue& g);
  static Bound plus_infinity() { return Bound({ExtScalar::plus_inf()}); }
  static Bound minus_infinity() { return Bound({ExtScalar::minus_inf()}); }

  const std::vector<ExtScalar>& coords() const { return coords_; }
  bool is_finite() const;  // all coordinates finite
  bool is_plus_infinity() const;
  bool is_minus_infinity() const;
  // Present when finite.
  GroupValue value() const;

  // Lex comparison of a group value with this bound; ties can only occur
  // when the bound is finite.
  friend std::strong_ordering compare_to(const GroupValue& g, const Bound& b);

  std::string str() const;
  friend bool operator==(const Bound&, const Bound&) = default;

 private:
  std::vector<ExtScalar> coords_;
};

enum class CutSide { below, above, exact };

/// Where the gauge of a sequence sits relative to the value group.
struct ExtCut {
  Bound bound;
  CutSide side = CutSide::exact;

  ExtCut() = default;
  ExtCut(Bound b, CutSide s);
  std::string str() const;
  friend bool operator==(const ExtCut&, const ExtCut&) = default;
};

std::string side_name(CutSide s);

/// Upward-closed value set {v >= bound} (closed) or {v > bound} (open).
/// bound = -inf is the whole field, bound = +inf the zero ideal.
struct IdealSpec {
  Bound bound;
  bool closed = true;
  // Optional claim that bound = v(c) for a scale witness c.
  std::optional<GroupValue> witness_value;

  IdealSpec() = default;
  IdealSpec(Bound b, bool closed_flag, std::optional<GroupValue> witness = std::nullopt);
  static IdealSpec whole_field() { return {Bound::minus_infinity(), false}; }
  static IdealSpec zero() { return {Bound::plus_infinity(), false}; }
  static IdealSpec at_least(const GroupValue& g) { return {Bound(g), true}; }
  static IdealSpec greater_than(const GroupValue& g) { return {Bound(g), false}; }

  bool is_whole_field() const { return bound.is_minus_infinity(); }
  bool is_zero() const { return bound.is_plus_infinity(); }

  // Works over the divisible hull, so it also decides membership of root
  // valuations that live outside the value group.
  bool contains(const GroupValue& g) const;
  bool contains(const std::optional<GroupValue>& g) const;  // nullopt = infinity

  std::string str() const;
};

// Canonical representative of the value set of `I` inside `G`.
IdealSpec normalize(const IdealSpec& I, const GroupDescriptor& G);
bool same_value_set(const IdealSpec& I, const IdealSpec& J, const GroupDescriptor& G);

enum class IdealCategory { principal, maximal_multiple, general };
std::string category_name(IdealCategory c);

struct IdealClass {
  IdealCategory category = IdealCategory::general;
  bool principal = false;
  bool divisorial = false;
  bool strictly_divisorial = false;
  bool fractional = true;  // false for the whole field
  // v(c) for I = cV or I = cM.
  std::optional<GroupValue> witness_value;
};

IdealClass classify_ideal(const IdealSpec& I, const GroupDescriptor& G);

// I*V_P read in the coarse group obtained by collapsing the last `collapse`
// coordinates. `module` is false when I itself is not a V_P-module.
struct Localized {
  IdealSpec ideal;
  bool module = true;
};
Localized localize_ideal(const IdealSpec& I, const GroupDescriptor& G, std::size_t collapse);

// Image of I's value set under the collapse; nullopt unless I is a V_P-module.
std::optional<IdealSpec> coarsen_ideal(const IdealSpec& I, const GroupDescriptor& G,
                                       std::size_t collapse);
// Inverse image of a coarse value set in the full group.
IdealSpec lift_ideal(const IdealSpec& coarse, std::size_t collapse);

// The value region {w : w above the cut} over the divisible hull:
// below -> w >= bound, above -> w > bound, exact -> w >= bound.
IdealSpec region_of(const ExtCut& cut);

/// Eventual sign of lambda * delta_nu + gamma along a gauge with the given cut.
int extval_sign(long lambda, const GroupValue& gamma, const ExtCut& cut);

}  // namespace valx
