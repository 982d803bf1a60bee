#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "valx/extension.hpp"

namespace valx {

// Coefficients are c * t^a (c * p^a over padic, c * t^a * p^b over the
// composite) with small c and a.
FieldElem random_coefficient(std::mt19937_64& rng, const FieldDescriptor& F);
Poly random_poly(std::mt19937_64& rng, const FieldDescriptor& F, int degree, bool monic = false);
// Total degree of numerator and denominator at most max_degree, at least 1.
// The pair is not gcd-reduced.
RatFunc random_ratfunc(std::mt19937_64& rng, const FieldDescriptor& F, int max_degree = 6);
std::vector<RatFunc> random_corpus(const FieldDescriptor& F, std::size_t n, std::uint64_t seed,
                                   int max_degree = 6);

/// Closed-form value against the window fit that starts at the
/// certification index.
struct OracleCheck {
  ExtValue value;
  EmpiricalFit fit;
  Window window;
  bool agree = false;
};

OracleCheck check_oracle(const RatFunc& phi, const PMSeq& E, long span = 8);

std::vector<OracleCheck> oracle_corpus_serial(const std::vector<RatFunc>& corpus, const PMSeq& E,
                                              long span = 8);
std::vector<OracleCheck> oracle_corpus_parallel(const std::vector<RatFunc>& corpus, const PMSeq& E,
                                                long span = 8);

}  // namespace valx
