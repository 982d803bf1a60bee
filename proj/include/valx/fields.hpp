#pragma once

#include <map>
#include <optional>
#include <string>

#include "valx/ordgroup.hpp"

namespace valx {

/// Finite sum of c * t^e with rational exponents. Coefficients live in Q, or
/// in F_q when `mod` is set (then they are kept in [0, q)).
using Puiseux = std::map<Rational, Rational>;

/// Element of k(t^Q) stored as num/den. Rationals and p-adic elements are the
/// constant case. Canonical: den has lowest exponent 0 and lowest coefficient
/// 1, and num/den share no factor whenever the gcd is affordable.
class FieldElem {
 public:
  FieldElem() : FieldElem(Rational(0)) {}
  FieldElem(const Rational& c, long mod = 0);  // NOLINT(implicit)
  FieldElem(long c) : FieldElem(Rational(c)) {} // NOLINT(implicit)
  FieldElem(Puiseux num, Puiseux den, long mod = 0);

  static FieldElem monomial(const Rational& coef, const Rational& exponent, long mod = 0);
  static FieldElem t_power(const Rational& exponent, long mod = 0) {
    return monomial(1, exponent, mod);
  }

  const Puiseux& num() const { return num_; }
  const Puiseux& den() const { return den_; }
  long mod() const { return mod_; }
  bool is_zero() const { return num_.empty(); }
  bool is_constant() const;
  // Only for constants.
  Rational constant() const;

  FieldElem operator-() const;
  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem pow(long n) const;

  friend bool operator==(const FieldElem& a, const FieldElem& b);

  std::string str() const;

 private:
  void canonicalize();
  Puiseux num_;
  Puiseux den_;
  long mod_ = 0;
};

// Lowest exponent and its coefficient; `p` must be nonzero.
std::pair<Rational, Rational> lowest_term(const Puiseux& p);
std::string puiseux_str(const Puiseux& p);

/// Which concrete valued field is in play.
struct FieldDescriptor {
  enum class Kind { padic, laurent, composite };
  Kind kind = Kind::laurent;
  long p = 0;  // padic prime; composite second stage; base prime for laurent over Q_p
  long q = 0;  // laurent over F_q

  static FieldDescriptor padic(long p);
  static FieldDescriptor laurent() { return {}; }
  static FieldDescriptor laurent_mod(long q);
  static FieldDescriptor laurent_padic_base(long p);
  static FieldDescriptor composite(long p);

  GroupDescriptor group() const;
  long modulus() const { return kind == Kind::laurent ? q : 0; }
  bool residue_field_infinite() const;
  std::size_t rank() const { return kind == Kind::composite ? 2 : 1; }

  // Element of value g: t^g, p^g or t^g0 * p^g1.
  FieldElem witness(const GroupValue& g) const;
  FieldElem constant(const Rational& c) const;

  std::string str() const;
  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

/// Number of trailing lex coordinates collapsed; 0 is the maximal ideal.
struct PrimeSpec {
  std::size_t collapse = 0;
};

long padic_order(const Rational& q, long p);

// nullopt stands for infinity (x = 0).
std::optional<GroupValue> value(const FieldElem& x, const FieldDescriptor& F);
GroupValue coarsen(const FieldElem& x, const PrimeSpec& P, const FieldDescriptor& F);
// Residue of an element of V; the residue field is Q or F_p / F_q, so the
// class is returned as a rational (an integer in [0, p) in the finite case).
Rational residue(const FieldElem& x, const FieldDescriptor& F);

}  // namespace valx
