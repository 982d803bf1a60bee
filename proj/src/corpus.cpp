#include "valx/corpus.hpp"

#include <algorithm>

namespace valx {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

FieldElem p_power(long p, long e) {
  Rational r = 1;
  for (long i = 0; i < std::labs(e); ++i) r *= p;
  return FieldElem(e < 0 ? Rational(1 / r) : r);
}

}  // namespace

FieldElem random_coefficient(std::mt19937_64& rng, const FieldDescriptor& F) {
  long c = uniform(rng, 1, 3) * (uniform(rng, 0, 1) ? 1 : -1);
  const long mod = F.modulus();
  if (mod && c % mod == 0) c = 1;
  if (F.kind == FieldDescriptor::Kind::padic) return FieldElem(Rational(c)) * p_power(F.p, uniform(rng, -2, 2));
  long den = uniform(rng, 1, 3);
  Rational a(uniform(rng, -2 * den, 2 * den), den);
  a.canonicalize();
  FieldElem x = FieldElem::monomial(Rational(c), a, mod);
  if (F.kind == FieldDescriptor::Kind::composite) x *= p_power(F.p, uniform(rng, -2, 2));
  return x;
}

Poly random_poly(std::mt19937_64& rng, const FieldDescriptor& F, int degree, bool monic) {
  std::vector<FieldElem> c;
  for (int i = 0; i <= degree; ++i) {
    bool lead = i == degree;
    if (lead && monic) {
      c.emplace_back(Rational(1), F.modulus());
    } else if (!lead && i > 0 && uniform(rng, 0, 2) == 0) {
      c.emplace_back(Rational(0), F.modulus());
    } else {
      c.push_back(random_coefficient(rng, F));
    }
  }
  return Poly(c);
}

RatFunc random_ratfunc(std::mt19937_64& rng, const FieldDescriptor& F, int max_degree) {
  int dn = static_cast<int>(uniform(rng, 0, max_degree));
  int dd = static_cast<int>(uniform(rng, dn == 0 ? 1 : 0, max_degree - dn));
  if (dn + dd == 0) dn = 1;
  // no gcd: a shared factor would cancel from every value anyway
  return RatFunc::coprime(random_poly(rng, F, dn), random_poly(rng, F, dd, true));
}

std::vector<RatFunc> random_corpus(const FieldDescriptor& F, std::size_t n, std::uint64_t seed,
                                   int max_degree) {
  std::mt19937_64 rng(seed);
  std::vector<RatFunc> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_ratfunc(rng, F, max_degree));
  return out;
}

OracleCheck check_oracle(const RatFunc& phi, const PMSeq& E, long span) {
  OracleCheck out;
  out.value = v_ext(phi, E);
  long start = std::max(8L, certification_index(phi, E));
  out.window = {start, start + span};
  out.fit = empirical_slope(phi, E, out.window);
  if (out.fit.folded)
    out.agree = out.fit.certified && out.fit.gamma == out.value.folded();
  else
    out.agree = out.fit.certified && out.fit.lambda == out.value.lambda && out.fit.gamma == out.value.gamma;
  return out;
}

std::vector<OracleCheck> oracle_corpus_serial(const std::vector<RatFunc>& corpus, const PMSeq& E,
                                              long span) {
  std::vector<OracleCheck> out(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) out[i] = check_oracle(corpus[i], E, span);
  return out;
}

std::vector<OracleCheck> oracle_corpus_parallel(const std::vector<RatFunc>& corpus, const PMSeq& E,
                                                long span) {
  std::vector<OracleCheck> out(corpus.size());
  const long n = static_cast<long>(corpus.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = check_oracle(corpus[i], E, span);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace valx
