#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "valx/fields.hpp"

namespace valx {

/// Dense polynomial in X over a FieldElem field, lowest degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<FieldElem> coeffs);
  static Poly constant(const FieldElem& c) { return Poly({c}); }
  static Poly x(long mod = 0);
  // X - a
  static Poly linear(const FieldElem& a);

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  const std::vector<FieldElem>& coeffs() const { return c_; }
  const FieldElem& operator[](std::size_t i) const { return c_[i]; }
  FieldElem lead() const;
  long mod() const { return mod_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const FieldElem& k) const;
  Poly pow(long n) const;
  // Euclidean division.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;

  FieldElem eval(const FieldElem& x) const;
  // f(X + beta)
  Poly taylor_shift(const FieldElem& beta) const;
  // f(a + b X)
  Poly substitute_linear(const FieldElem& a, const FieldElem& b) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  std::string str(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<FieldElem> c_;
  long mod_ = 0;
};

Poly gcd(Poly a, Poly b);

/// num/den with den monic and coprime to num.
class RatFunc {
 public:
  RatFunc() : RatFunc(Poly()) {}
  RatFunc(Poly num);  // NOLINT(implicit)
  RatFunc(Poly num, Poly den);
  // For num, den already coprime: only makes den monic.
  static RatFunc coprime(Poly num, Poly den);
  static RatFunc constant(const FieldElem& c) { return RatFunc(Poly::constant(c)); }
  static RatFunc x(long mod = 0) { return RatFunc(Poly::x(mod)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc pow(long n) const;

  // Throws PoleError at a pole.
  FieldElem eval(const FieldElem& x) const;
  RatFunc substitute_linear(const FieldElem& a, const FieldElem& b) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  std::string str(const std::string& var = "X") const;

 private:
  Poly num_;
  Poly den_;
};

struct ProfileEntry {
  std::optional<GroupValue> valuation;  // nullopt: a root at the center itself
  long multiplicity = 0;
};

/// Valuations of the roots of f measured from a center, with multiplicity.
struct RootValProfile {
  std::vector<ProfileEntry> entries;  // increasing valuation, infinity last
  GroupValue lead_value;              // v of the leading coefficient
  long total() const;
};

RootValProfile newton_profile(const Poly& f, const FieldElem& beta, const FieldDescriptor& F);

using Region = std::function<bool(const std::optional<GroupValue>&)>;

struct SPart {
  long weighted_sum = 0;
  GroupValue gamma_shift;
};

// Degree of the critical points of phi inside the region, and the value of
// the complementary factor, both read off the profiles at `beta`.
SPart s_part(const RatFunc& phi, const FieldElem& beta, const Region& region,
             const FieldDescriptor& F);

// v(f(x)) without forming f(x) as a quotient; nullopt when f(x) = 0.
std::optional<GroupValue> value_at(const Poly& f, const FieldElem& x, const FieldDescriptor& F);

}  // namespace valx
