#pragma once

#include <random>

#include "valx/extension.hpp"
#include "valx/parse.hpp"

namespace valx::test {

inline PMSeq seq(const std::string& text, long prefix = audit_prefix()) { return parse_seq(text).build(prefix); }
inline RatFunc rf(const std::string& text, const FieldDescriptor& F = {}) { return parse_ratfunc(text, F); }
inline FieldElem el(const std::string& text, const FieldDescriptor& F = {}) { return parse_elem(text, F); }
inline GroupValue gv(const Rational& a) { return GroupValue::of(a); }
inline Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Named sequences used across the suites.
inline const char* kE2 = "pcv(alpha=0, breadth=\">=1\")";
inline const char* kE3 = "pdv(alpha=0, breadth=\">0\")";
inline const char* kE4 = "pst(alpha=0, breadth=\">=1\")";
inline const char* kE5 = "pcv(alpha=0, breadth=\">sqrt(2)\")";
inline const char* kF5 = "pdv(alpha=0, breadth=\">sqrt(2)\")";
inline const char* kE6 = "pcv(alpha=0, breadth=\">(1,inf)\") field=composite:5";
inline const char* kE7 = "pcv(alpha=0, breadth=\">=1\") field=composite:5";
inline const char* kCauchy = "cauchy(limit=-1/4) field=padic:5";

}  // namespace valx::test
