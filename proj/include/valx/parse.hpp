#pragma once

#include <optional>
#include <string>

#include "valx/ratfunc.hpp"
#include "valx/sequences.hpp"

namespace valx {

// Grammars. Precedence: ^ over * and / over + and -. Exponents are integers
// or parenthesized rationals; rational exponents only apply to powers of t.

FieldDescriptor parse_field(const std::string& text);
FieldElem parse_elem(const std::string& text, const FieldDescriptor& F = {});
RatFunc parse_ratfunc(const std::string& text, const FieldDescriptor& F = {});
Scalar parse_scalar(const std::string& text);
GroupValue parse_group_value(const std::string& text);
// >=b, >b, K or 0; b is a scalar or a parenthesized list that may end in inf/-inf.
IdealSpec parse_ideal(const std::string& text);

/// A sequence as written in the DSL, before construction.
struct SeqSpec {
  SeqKind kind = SeqKind::pcv;
  FieldElem alpha;   // the limit for cauchy
  IdealSpec breadth;
  FieldDescriptor field;

  PMSeq build(long prefix = audit_prefix()) const;
  std::string str() const;
  friend bool operator==(const SeqSpec& a, const SeqSpec& b);
};

// pcv(alpha=0, breadth=">=1") field=laurentQ; `field=` may also sit inside the
// parentheses. `fallback` applies when no field is named.
SeqSpec parse_seq(const std::string& text, const FieldDescriptor& fallback = {});

}  // namespace valx
