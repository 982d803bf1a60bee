#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "valx/corpus.hpp"

using namespace valx;
using namespace valx::test;

namespace {

const auto kLaurent = FieldDescriptor::laurent();

using Multiset = std::vector<std::pair<std::string, long>>;

Multiset flatten(const RootValProfile& p) {
  Multiset m;
  for (const auto& e : p.entries) m.push_back({e.valuation ? e.valuation->str() : "inf", e.multiplicity});
  return m;
}

// valuations of explicit roots measured from beta, merged by value
Multiset measured(const std::vector<FieldElem>& roots, const FieldElem& beta, const FieldDescriptor& F) {
  std::vector<std::optional<GroupValue>> vals;
  for (const auto& r : roots) vals.push_back(value(r - beta, F));
  std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
    if (!a || !b) return a.has_value() && !b.has_value();
    return *a < *b;
  });
  Multiset m;
  for (const auto& v : vals) {
    std::string s = v ? v->str() : "inf";
    if (!m.empty() && m.back().first == s)
      ++m.back().second;
    else
      m.push_back({s, 1});
  }
  return m;
}

Poly from_roots(const std::vector<FieldElem>& roots, const FieldElem& lead) {
  Poly f = Poly::constant(lead);
  for (const auto& r : roots) f = f * Poly::linear(r);
  return f;
}

}  // namespace

TEST_SUITE("ratfunc") {

TEST_CASE("newton profile examples") {
  // roots +-t^(1/2)
  CHECK(flatten(newton_profile(rf("X^2-t").num(), 0, kLaurent)) == Multiset{{"1/2", 2}});
  CHECK(measured({el("t^(1/2)"), el("-t^(1/2)")}, 0, kLaurent) == Multiset{{"1/2", 2}});
  CHECK(flatten(newton_profile(rf("X-t").num(), 0, kLaurent)) == Multiset{{"1", 1}});
  Poly f = rf("X^2-(1+t)*X+t").num();
  CHECK(f == from_roots({FieldElem(1), el("t")}, 1));
  CHECK(flatten(newton_profile(f, 0, kLaurent)) == Multiset{{"0", 1}, {"1", 1}});
  CHECK(flatten(newton_profile(rf("X^3-t*X^2").num(), 0, kLaurent)) == Multiset{{"1", 1}, {"inf", 2}});
  CHECK_THROWS_AS(newton_profile(Poly(), 0, kLaurent), StructuralError);
}

TEST_CASE("profile agrees with explicit roots") {
  std::mt19937_64 rng(29);
  for (const auto& F : {kLaurent, FieldDescriptor::padic(5), FieldDescriptor::composite(3)}) {
    for (int i = 0; i < 150; ++i) {
      std::vector<FieldElem> roots;
      int n = 1 + rng() % 6;
      for (int k = 0; k < n; ++k) {
        FieldElem r = random_coefficient(rng, F);
        if (rng() % 3 == 0) r += random_coefficient(rng, F);
        roots.push_back(r);
      }
      FieldElem beta = rng() % 2 ? FieldElem(0) : random_coefficient(rng, F);
      Poly f = from_roots(roots, random_coefficient(rng, F));
      RootValProfile p = newton_profile(f, beta, F);
      CHECK(flatten(p) == measured(roots, beta, F));
      CHECK(p.total() == f.degree());
    }
  }
}

TEST_CASE("profile totals, additivity and shifts") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    Poly f = random_poly(rng, kLaurent, 1 + rng() % 8);
    Poly g = random_poly(rng, kLaurent, 1 + rng() % 4);
    FieldElem beta = random_coefficient(rng, kLaurent);
    RootValProfile pf = newton_profile(f, beta, kLaurent);
    CHECK(pf.total() == f.degree());

    std::map<std::string, long> joint, fg;
    for (const auto& p : {pf, newton_profile(g, beta, kLaurent)})
      for (const auto& [v, m] : flatten(p)) joint[v] += m;
    for (const auto& [v, m] : flatten(newton_profile(f * g, beta, kLaurent))) fg[v] += m;
    CHECK(joint == fg);

    FieldElem c = random_coefficient(rng, kLaurent);
    CHECK(flatten(newton_profile(f.taylor_shift(c), beta - c, kLaurent)) == flatten(pf));
  }
}

TEST_CASE("s_part") {
  IdealSpec R = IdealSpec::at_least(gv(1));
  Region region = [&R](const std::optional<GroupValue>& w) { return R.contains(w); };
  SPart a = s_part(rf("X"), 0, region, kLaurent);
  CHECK(a.weighted_sum == 1);
  CHECK(a.gamma_shift == gv(0));
  SPart b = s_part(rf("X-1"), 0, region, kLaurent);
  CHECK(b.weighted_sum == 0);
  CHECK(b.gamma_shift == gv(0));
  SPart c = s_part(rf("1/X"), 0, region, kLaurent);
  CHECK(c.weighted_sum == -1);
  CHECK(c.gamma_shift == gv(0));
  SPart d = s_part(rf("(X^2-t)/(2*X-t^3)"), 0, region, kLaurent);
  // roots +-t^(1/2) outside, pole t^3/2 inside
  CHECK(d.weighted_sum == -1);
  CHECK(d.gamma_shift == gv(1));
}

TEST_CASE("eval") {
  CHECK(rf("X^2").eval(el("t^(1/2)")) == el("t"));
  CHECK_THROWS_AS(rf("1/(X-t)").eval(el("t")), PoleError);
  CHECK(rf("(X+1)/(X-1)").eval(0) == FieldElem(-1));
}

TEST_CASE("canonical rational functions") {
  CHECK(rf("(X^2-1)/(X-1)") == rf("X+1"));
  CHECK(rf("(X^2-t)/(2*X)").den() == rf("X").num());
  CHECK(rf("X/t").str() == "t^(-1)*X");
  CHECK(rf("(X-t)/(X^2-t^2)") == rf("1/(X+t)"));
  CHECK_THROWS_AS(rf("X/(X-X)"), DivisionByZero);
  CHECK_THROWS_AS(RatFunc(rf("X").num(), Poly()), DivisionByZero);
}

TEST_CASE("monomial value from the profile") {
  // v_{beta,delta}(f) = v(lead) + sum of min(entry, delta) * multiplicity
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    Poly f = random_poly(rng, kLaurent, 1 + rng() % 6);
    FieldElem beta = rng() % 2 ? FieldElem(0) : random_coefficient(rng, kLaurent);
    GroupValue delta = gv(q(static_cast<long>(rng() % 13) - 4, 1 + rng() % 3));
    RootValProfile p = newton_profile(f, beta, kLaurent);
    GroupValue want = p.lead_value;
    for (const auto& e : p.entries)
      want += (e.valuation && *e.valuation < delta ? *e.valuation : delta) * Rational(e.multiplicity);
    CHECK(monomial_value(f, beta, delta, kLaurent) == want);
  }
}

}  // TEST_SUITE
