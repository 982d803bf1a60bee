#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valx/ratfunc.hpp"
#include "valx/sequences.hpp"

namespace valx {

/// v_E(phi) as the eventual law v(phi(s_nu)) = lambda * delta_nu + gamma,
/// ordered through the gauge cut.
struct ExtValue {
  long lambda = 0;
  GroupValue gamma;
  ExtCut cut;
  bool infinite = false;  // phi = 0

  int sign() const;
  // lambda * delta + gamma for a stationary gauge.
  GroupValue folded() const;
  std::string str() const;
};

// Negative, zero or positive as a < b, a = b, a > b.
int compare(const ExtValue& a, const ExtValue& b);
bool operator==(const ExtValue& a, const ExtValue& b);

struct Window {
  long first = 8;
  long last = 24;
};

long degdom(const RatFunc& phi, const PMSeq& E);
SPart s_part(const RatFunc& phi, const PMSeq& E);
ExtValue v_ext(const RatFunc& phi, const PMSeq& E);
bool member_VE(const RatFunc& phi, const PMSeq& E);
bool member_ME(const RatFunc& phi, const PMSeq& E);

// First index from which v(phi(s_nu)) follows the eventual law.
long certification_index(const RatFunc& phi, const PMSeq& E);

struct EmpiricalFit {
  Rational lambda;
  GroupValue gamma;
  bool certified = false;
  bool folded = false;  // stationary gauge: gamma holds the constant value
  long n0 = 0;
  std::string note;
};

EmpiricalFit empirical_slope(const RatFunc& phi, const PMSeq& E, const Window& w = {});

// min_i v(a_i) + i*delta over the expansion of f around alpha.
GroupValue monomial_value(const Poly& f, const FieldElem& alpha, const GroupValue& delta,
                          const FieldDescriptor& F);
ExtValue monomial_value(const Poly& f, const FieldElem& alpha, const ExtCut& cut,
                        const FieldDescriptor& F);
ExtValue monomial_value(const RatFunc& phi, const FieldElem& alpha, const ExtCut& cut,
                        const FieldDescriptor& F);

struct ImageSequence {
  PrefixKind kind = PrefixKind::none;
  long lambda = 0;
  long start = 0;
  std::vector<FieldElem> terms;
  bool certified = false;
  bool kind_rule_holds = false;     // kind agrees with the sign of lambda
  bool gauge_increases = true;      // pcv images: v_E(phi - phi(s_nu)) increases
};

ImageSequence image_sequence(const RatFunc& phi, const PMSeq& E, const Window& w = {});

struct MinimalElement {
  Poly p;
  ExtValue delta;
  bool outside_group = false;  // v_E(p) not in the value group of v
};

MinimalElement delta_E(const PMSeq& E, const std::vector<Poly>& candidates);

struct LimitSet {
  bool empty = true;
  bool whole_field = false;
  std::optional<FieldElem> center;
  IdealSpec spread = IdealSpec::zero();
  std::string str() const;
};

struct LimSetsReport {
  LimitSet L1;
  LimitSet L2;
};

LimSetsReport lim_sets(const PMSeq& E);

// phi(alpha + c T) reduced into k(T), printed with T; throws unless phi is in V_E.
RatFunc residue_in_kT(const RatFunc& phi, const PMSeq& E);

struct Fiber {
  int size = 1;
  std::string tag;  // cV, cV_P, cP or empty
  std::optional<GroupValue> witness_value;
};

Fiber prime_fiber(const PMSeq& E, const PrimeSpec& P);

}  // namespace valx
