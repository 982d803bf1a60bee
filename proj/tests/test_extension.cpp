#include <doctest.h>

#include "helpers.hpp"
#include "valx/corpus.hpp"

using namespace valx;
using namespace valx::test;

namespace {

const auto kLaurent = FieldDescriptor::laurent();

void check_value(const ExtValue& v, long lambda, const GroupValue& gamma) {
  CHECK(v.lambda == lambda);
  CHECK(v.gamma == gamma);
}

RatFunc times(const RatFunc& a, const RatFunc& b) { return RatFunc::coprime(a.num() * b.num(), a.den() * b.den()); }

RatFunc plus(const RatFunc& a, const RatFunc& b) {
  return RatFunc::coprime(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

}  // namespace

TEST_SUITE("extension") {

TEST_CASE("degdom") {
  PMSeq E2 = seq(kE2);
  CHECK(degdom(rf("X"), E2) == 1);
  CHECK(degdom(rf("X^2-t"), E2) == 0);
  CHECK(degdom(rf("1/X"), E2) == -1);
  // order of vanishing at the limit
  PMSeq C = seq(kCauchy);
  auto P = FieldDescriptor::padic(5);
  CHECK(degdom(rf("(4*X+1)^2*(X-3)", P), C) == 2);
  CHECK(degdom(rf("1/(X+1/4)", P), C) == -1);
  PMSeq U = make_uncertified(SeqKind::pcv, E2.term, E2.gauge_law, kLaurent);
  CHECK_THROWS_AS(degdom(rf("X"), U), UncertifiedError);
}

TEST_CASE("empirical slope") {
  PMSeq E2 = seq(kE2);
  EmpiricalFit a = empirical_slope(rf("X"), E2, {10, 20});
  CHECK(a.lambda == 1);
  CHECK(a.gamma == gv(0));
  CHECK(a.certified);
  EmpiricalFit b = empirical_slope(rf("X-1"), E2, {10, 20});
  CHECK(b.lambda == 0);
  CHECK(b.gamma == gv(0));
  CHECK(b.certified);
  EmpiricalFit c = empirical_slope(rf("(X-t)/t"), seq(kE4), {5, 9});
  CHECK(c.folded);
  CHECK(c.gamma == gv(0));
  CHECK(c.certified);
  // certification needs the window to start past N0
  EmpiricalFit d = empirical_slope(rf("X-t^(1/2)"), E2, {0, 6});
  CHECK(d.n0 > 0);
  CHECK_FALSE(d.certified);
  PMSeq U = make_uncertified(SeqKind::pcv, E2.term, E2.gauge_law, kLaurent);
  EmpiricalFit u = empirical_slope(rf("X"), U, {10, 20});
  CHECK(u.lambda == 1);
  CHECK_FALSE(u.certified);
  CHECK(u.note == "uncertified sequence");
}

TEST_CASE("v_ext examples") {
  PMSeq E2 = seq(kE2);
  ExtValue a = v_ext(rf("X-t"), E2);
  check_value(a, 1, gv(0));
  CHECK(a.sign() == 1);
  CHECK(member_ME(rf("X-t"), E2));
  ExtValue b = v_ext(rf("X/t"), E2);
  check_value(b, 1, gv(-1));
  CHECK(b.sign() == -1);
  CHECK_FALSE(member_VE(rf("X/t"), E2));
  for (const char* c : {"t^(2/3)", "3", "t^(-5)"}) check_value(v_ext(rf(c), E2), 0, *value(el(c), kLaurent));
  CHECK(v_ext(RatFunc(), E2).infinite);
}

TEST_CASE("monomial values") {
  CHECK(monomial_value(rf("1+t*X+t^2*X^2").num(), 0, gv(0), kLaurent) == gv(0));
  CHECK(monomial_value(rf("X^2-t").num(), 0, gv(q(1, 2)), kLaurent) == gv(1));
  CHECK(monomial_value(rf("t^(3/2)").num(), el("1+t"), gv(7), kLaurent) == gv(q(3, 2)));
  CHECK_THROWS_AS(monomial_value(Poly(), 0, gv(0), kLaurent), StructuralError);
}

TEST_CASE("image sequences") {
  PMSeq E2 = seq(kE2);
  ImageSequence a = image_sequence(rf("X^2"), E2);
  CHECK(a.kind == PrefixKind::pcv);
  CHECK(a.terms[0] == el("t^(" + q(2 * a.start, a.start + 1).get_str() + ")"));
  CHECK(a.gauge_increases);
  ImageSequence b = image_sequence(rf("1/X"), E2);
  CHECK(b.kind == PrefixKind::pdv);
  CHECK(b.kind_rule_holds);
  ImageSequence c = image_sequence(rf("X+1"), E2);
  CHECK(c.lambda == 0);
  CHECK(c.kind == PrefixKind::pcv);
  CHECK_THROWS_AS(image_sequence(rf("X"), seq(kE4)), PreconditionError);
  CHECK_THROWS_AS(image_sequence(rf("t"), E2), PreconditionError);
}

TEST_CASE("delta_E") {
  PMSeq E2 = seq(kE2);
  MinimalElement a = delta_E(E2, {rf("X").num(), rf("X-1").num(), rf("X^2-t").num()});
  CHECK(a.p == rf("X").num());
  check_value(a.delta, 1, gv(0));
  CHECK(a.outside_group);
  MinimalElement b = delta_E(seq(kE4), {rf("X").num()});
  CHECK(b.delta.folded() == gv(1));
  CHECK_FALSE(b.outside_group);
  auto P = FieldDescriptor::padic(5);
  MinimalElement c = delta_E(seq(kCauchy), {rf("X+1/4", P).num()});
  CHECK(c.delta.cut.bound.is_plus_infinity());
  CHECK_THROWS_AS(delta_E(E2, {rf("X-1").num()}), PreconditionError);
  CHECK_THROWS_AS(delta_E(E2, {rf("2*X").num()}), PreconditionError);
}

TEST_CASE("limit sets") {
  LimSetsReport a = lim_sets(seq(kE2));
  CHECK(a.L1.str() == "0 + {>=1}");
  CHECK(a.L2.empty);
  LimSetsReport b = lim_sets(seq(kE4));
  CHECK(b.L1.empty);
  CHECK(b.L2.str() == "0 + {>=1}");
  LimSetsReport c = lim_sets(seq("pdv(alpha=0, breadth=\"K\")"));
  CHECK(c.L1.whole_field);
  CHECK(c.L2.empty);
  LimSetsReport d = lim_sets(seq(kCauchy));
  CHECK(d.L1.str() == "{-1/4}");
}

TEST_CASE("residues in k(T)") {
  PMSeq E4 = seq(kE4);
  CHECK(residue_in_kT(rf("X/t"), E4).str("T") == "T");
  CHECK(residue_in_kT(rf("(X/t)^2+X/t"), E4).str("T") == "T^2+T");
  CHECK(residue_in_kT(rf("7/3+t"), E4).str("T") == "7/3");
  CHECK(residue_in_kT(rf("X"), E4).str("T") == "0");
  CHECK_THROWS_AS(residue_in_kT(rf("X/t^2"), E4), DomainError);
  CHECK_THROWS_AS(residue_in_kT(rf("X"), seq(kE2)), PreconditionError);
}

TEST_CASE("prime fibers") {
  auto fiber = [](const char* s, std::size_t collapse) {
    Fiber f = prime_fiber(seq(s), PrimeSpec{collapse});
    return std::to_string(f.size) + f.tag;
  };
  CHECK(fiber(kE2, 0) == "2cV");
  CHECK(*prime_fiber(seq(kE2), PrimeSpec{0}).witness_value == gv(1));
  CHECK(fiber(kE3, 0) == "2cP");
  CHECK(fiber(kE5, 0) == "1");
  CHECK(fiber(kE4, 0) == "1");
  CHECK(fiber(kE6, 1) == "2cP");
  CHECK(fiber(kE7, 1) == "2cV_P");
}

TEST_CASE("closed form against the window fit") {
  for (const char* s : {kE2, kE3, kE4, kE5, kF5, kE6, kE7, kCauchy}) {
    CAPTURE(s);
    PMSeq E = seq(s);
    for (const auto& c : oracle_corpus_serial(random_corpus(E.field, 40, 7), E)) {
      CAPTURE(c.value.str());
      CHECK(c.fit.certified);
      CHECK(c.agree);
    }
  }
}

TEST_CASE("serial and parallel corpora agree") {
  PMSeq E = seq(kE2);
  auto corpus = random_corpus(E.field, 60, 13);
  auto a = oracle_corpus_serial(corpus, E);
  auto b = oracle_corpus_parallel(corpus, E);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].value.lambda == b[i].value.lambda);
    CHECK(a[i].value.gamma == b[i].value.gamma);
    CHECK(a[i].fit.n0 == b[i].fit.n0);
    CHECK(a[i].agree == b[i].agree);
  }
}

TEST_CASE("valuation axioms") {
  for (const char* s : {kE2, kE3, kE4, kE5, kE7, kCauchy}) {
    CAPTURE(s);
    PMSeq E = seq(s);
    std::mt19937_64 rng(53);
    for (int i = 0; i < 40; ++i) {
      RatFunc a = random_ratfunc(rng, E.field, 4), b = random_ratfunc(rng, E.field, 4);
      ExtValue va = v_ext(a, E), vb = v_ext(b, E);
      ExtValue vab = v_ext(times(a, b), E);
      CHECK(vab.lambda == va.lambda + vb.lambda);
      CHECK(vab.gamma == va.gamma + vb.gamma);
      RatFunc sum = plus(a, b);
      if (sum.is_zero()) continue;
      ExtValue vs = v_ext(sum, E);
      CHECK(compare(vs, compare(va, vb) <= 0 ? va : vb) >= 0);
      if (compare(va, vb) != 0) CHECK(compare(vs, compare(va, vb) < 0 ? va : vb) == 0);
    }
  }
}

TEST_CASE("ExtValue ordering") {
  PMSeq E2 = seq(kE2);
  ExtValue x = v_ext(rf("X"), E2), t = v_ext(rf("t"), E2), r = v_ext(rf("t^(9/10)"), E2);
  CHECK(compare(x, t) < 0);
  CHECK(compare(x, r) > 0);
  CHECK(compare(v_ext(RatFunc(), E2), x) > 0);
}

}  // TEST_SUITE
