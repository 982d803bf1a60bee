#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "helpers.hpp"
#include "valx/corpus.hpp"

using namespace valx;
using namespace valx::test;

namespace {

const auto kLaurent = FieldDescriptor::laurent();

// pdv pseudo-limits only satisfy the definition on a tail
bool raw_definition(const PMSeq& E, const FieldElem& beta) {
  if (E.kind != SeqKind::pdv) return satisfies_limit_definition(E, beta, 0, 16);
  for (long n = 0; n <= 1024; n += 16)
    if (satisfies_limit_definition(E, beta, n, n + 16)) return true;
  return false;
}

// Sequences with their expected breadth, one per constructor family.
const std::vector<std::string> kFamilies = {
    kE2, kE3, kE4, kE5, kF5, kE6, kE7, kCauchy,
    "pdv(alpha=0, breadth=\"K\")",
    "pdv(alpha=1, breadth=\"K\") field=padic:3",
    "pcv(alpha=t, breadth=\">=-1/2\")",
    "pdv(alpha=1+t, breadth=\">2/3\")",
    "pst(alpha=t^(1/3), breadth=\">=3/2\")",
    "pst(alpha=2, breadth=\">=0\") field=laurentQ:Q5",
    "pcv(alpha=0, breadth=\">=1\") field=laurentQ:F7",
    "pdv(alpha=0, breadth=\">(1,-inf)\") field=composite:5",
    "pdv(alpha=0, breadth=\">(1,inf)\") field=composite:5",
    "pcv(alpha=0, breadth=\">1+sqrt(3)\")",
    "pdv(alpha=0, breadth=\">1-sqrt(3)\") field=composite:3",
    "cauchy(limit=t^2) field=laurentQ",
    "cauchy(limit=0) field=padic:7",
};

}  // namespace

TEST_SUITE("sequences") {

TEST_CASE("constructor examples") {
  PMSeq E2 = seq(kE2);
  CHECK(E2.term(3) == el("t^(3/4)"));
  CHECK(E2.gauge(3) == gv(q(3, 4)));
  CHECK(E2.gauge_cut.str() == "1 below");
  PMSeq E3 = seq(kE3);
  CHECK(E3.term(4) == el("t^(1/5)"));
  CHECK(E3.gauge_cut.str() == "0 above");
  CHECK_THROWS_AS(E3.gauge(0), PreconditionError);
  PMSeq E4 = seq(kE4);
  CHECK(E4.term(5) == el("5*t"));
  for (long nu = 0; nu < 10; ++nu)
    for (long mu = nu + 1; mu < 10; ++mu) CHECK(*value(E4.term(mu) - E4.term(nu), kLaurent) == gv(1));
  PMSeq C = seq(kCauchy);
  // geometric series (5^(nu+1) - 1)/4 converging to -1/4
  for (long nu = 0; nu < 12; ++nu) {
    Rational p = 1;
    for (long i = 0; i <= nu; ++i) p *= 5;
    CHECK(C.term(nu) == FieldElem(Rational((p - 1) / 4)));
    CHECK(*value(C.term(nu) + FieldElem(q(1, 4)), C.field) == gv(nu + 1));
  }
}

TEST_CASE("defining inequalities on triples") {
  for (const auto& s : kFamilies) {
    CAPTURE(s);
    PMSeq E = seq(s, 32);
    std::vector<FieldElem> t;
    for (long nu = 0; nu < 32; ++nu) t.push_back(E.term(nu));
    auto v = [&](long a, long b) { return *value(t[a] - t[b], E.field); };
    bool ok = true;
    for (long a = 0; a < 32; ++a)
      for (long b = a + 1; b < 32; ++b)
        for (long c = b + 1; c < 32; ++c) {
          switch (E.kind) {
            case SeqKind::pst: ok &= v(b, a) == v(c, b); break;
            case SeqKind::pdv: ok &= v(b, a) > v(c, b); break;
            default: ok &= v(b, a) < v(c, b);
          }
        }
    CHECK(ok);
  }
}

TEST_CASE("prefix audit length") {
  setenv("VALX_PREFIX", "20", 1);
  CHECK(audit_prefix() == 20);
  setenv("VALX_PREFIX", "1", 1);
  CHECK(audit_prefix() == 16);
  unsetenv("VALX_PREFIX");
  CHECK(audit_prefix() == 16);
}

TEST_CASE("classify_prefix") {
  CHECK(classify_prefix({el("t^(1/2)"), el("t^(2/3)"), el("t^(3/4)")}, kLaurent).kind == PrefixKind::pcv);
  CHECK(classify_prefix({el("t^(1/2)"), el("t^(1/3)"), el("t^(1/4)")}, kLaurent).kind == PrefixKind::pdv);
  CHECK(classify_prefix({el("t"), el("2*t"), el("3*t")}, kLaurent).kind == PrefixKind::pst);
  CHECK(classify_prefix({el("1"), el("t"), el("t^2"), el("1+t^3")}, kLaurent).kind == PrefixKind::none);
  // a pcv prefix given out of order is put back in order
  // three points in any order are pcv or pdv; four need not be
  CHECK(classify_prefix({el("t^(2/3)"), el("t^(3/4)"), el("t^(1/2)")}, kLaurent).kind == PrefixKind::pdv);
  PrefixClass c = classify_prefix({el("t^(2/3)"), el("t^(4/5)"), el("t^(1/2)"), el("t^(3/4)")}, kLaurent);
  CHECK(c.kind == PrefixKind::pcv);
  CHECK(c.order == std::vector<std::size_t>{2, 0, 1, 3});
  CHECK_THROWS_AS(classify_prefix({el("t"), el("t"), el("2*t")}, kLaurent), PreconditionError);
}

TEST_CASE("breadth ideals") {
  CHECK(breadth_ideal(seq(kE2)).str() == ">=1");
  CHECK(breadth_ideal(seq(kE3)).str() == ">0");
  IdealSpec b5 = breadth_ideal(seq(kE5));
  CHECK(b5.str() == ">sqrt(2)");
  CHECK(classify_ideal(b5, GroupDescriptor::rationals()).category == IdealCategory::general);
  CHECK(breadth_ideal(seq(kCauchy)).is_zero());
  CHECK(breadth_ideal(seq("pdv(alpha=0, breadth=\"K\")")).is_whole_field());
  // v(x) > 1 - 1/(nu+1) for all nu exactly when v(x) >= 1
  PMSeq E2 = seq(kE2);
  for (long n = 0; n < 60; ++n) {
    Rational x = q(n, 30);
    bool above_all = true;
    for (long nu = 0; nu < 200; ++nu) above_all &= x > E2.gauge(nu)[0].rational_part();
    CHECK(above_all == breadth_ideal(E2).contains(gv(x)));
  }
}

TEST_CASE("pseudo-limits") {
  PMSeq E2 = seq(kE2);
  CHECK(is_pseudo_limit(E2, 0));
  CHECK(is_pseudo_limit(E2, el("t")));
  CHECK_FALSE(is_pseudo_limit(E2, 1));
  PMSeq U = make_uncertified(SeqKind::pcv, E2.term, E2.gauge_law, kLaurent);
  CHECK_THROWS_AS(is_pseudo_limit(U, 0), UncertifiedError);
  PMSeq C = seq(kCauchy);
  CHECK(is_pseudo_limit(C, FieldElem(q(-1, 4))));
  CHECK_FALSE(is_pseudo_limit(C, FieldElem(q(-1, 4) + 625)));
}

TEST_CASE("pseudo-limit set against the raw definition") {
  std::mt19937_64 rng(41);
  for (const auto& s : kFamilies) {
    CAPTURE(s);
    PMSeq E = seq(s);
    const auto& lead = E.breadth.bound.coords()[0];
    int inside = 0;
    for (int i = 0; i < 100; ++i) {
      FieldElem d = random_coefficient(rng, E.field);
      if (rng() % 2 && lead.finite()) {
        // land near the breadth bound
        std::vector<Scalar> co(E.field.rank());
        Rational x = q(std::lround(4 * lead.value.to_double()), 4) + q(static_cast<long>(rng() % 5) - 2, 4);
        if (E.field.kind == FieldDescriptor::Kind::padic) x = Rational(x.get_num() / x.get_den());
        co[0] = Scalar(x);
        if (co.size() > 1) co[1] = Scalar(static_cast<long>(rng() % 5) - 2);
        d = E.field.witness(GroupValue(co)) * E.field.constant(1 + static_cast<long>(rng() % 3));
      }
      FieldElem beta = *E.center + d;
      auto v = value(d, E.field);
      bool law = E.breadth.contains(v);
      CHECK(is_pseudo_limit(E, beta) == law);
      if (E.kind == SeqKind::pdv || law || *v < E.gauge(15)) CHECK(raw_definition(E, beta) == law);
      inside += law;
    }
    if (!E.breadth.is_zero()) CHECK(inside > 0);
  }
}

TEST_CASE("terms versus pseudo-limits") {
  for (const auto& s : kFamilies) {
    CAPTURE(s);
    PMSeq E = seq(s);
    for (long nu = 0; nu < 16; ++nu) {
      bool lim = is_pseudo_limit(E, E.term(nu));
      if (E.kind == SeqKind::pcv || E.kind == SeqKind::cauchy)
        CHECK_FALSE(lim);
      else
        CHECK(lim);
    }
  }
}

TEST_CASE("constructor preconditions") {
  auto F = kLaurent;
  CHECK_THROWS_AS(make_sequence(SeqKind::pst, 0, IdealSpec::greater_than(gv(0)), F), PreconditionError);
  CHECK_THROWS_AS(make_sequence(SeqKind::pcv, 0, IdealSpec::greater_than(gv(0)), F), PreconditionError);
  CHECK_THROWS_AS(make_sequence(SeqKind::pdv, 0, IdealSpec::at_least(gv(0)), F), PreconditionError);
  CHECK_THROWS_AS(make_sequence(SeqKind::pcv, 0, IdealSpec::whole_field(), F), PreconditionError);
  try {
    make_sequence(SeqKind::pst, 0, IdealSpec::at_least(gv(1)), FieldDescriptor::padic(5));
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("residue field is infinite") != std::string::npos);
  }
  CHECK_THROWS_AS(make_sequence(SeqKind::pst, 0, IdealSpec::at_least(GroupValue::of(1, 0)),
                                FieldDescriptor::composite(5)),
                  PreconditionError);
}

TEST_CASE("equivalence") {
  PMSeq E2 = seq(kE2);
  CHECK(equivalent(E2, translate(E2, el("t^2"))).equivalent);
  CHECK_FALSE(equivalent(E2, translate(E2, el("t^(1/2)"))).equivalent);
  Equivalence a = equivalent(E2, seq(kE3));
  CHECK_FALSE(a.equivalent);
  CHECK(a.reason == "different breadth ideals");
  Equivalence b = equivalent(seq(kE5), seq(kF5));
  CHECK(b.equivalent);
  CHECK(b.reason == "equal pseudo-limit sets");
  CHECK_FALSE(equivalent(E2, seq(kE4)).equivalent);
  CHECK(equivalent(seq(kE4), seq("pst(alpha=t^2, breadth=\">=1\")")).equivalent);
  CHECK_FALSE(equivalent(seq(kE4), seq("pst(alpha=1, breadth=\">=1\")")).equivalent);
  CHECK(equivalent(seq(kCauchy), seq(kCauchy)).equivalent);
  CHECK_FALSE(equivalent(seq(kCauchy), seq("cauchy(limit=0) field=padic:5")).equivalent);
}

TEST_CASE("equivalence is an equivalence relation") {
  std::vector<PMSeq> pool;
  for (const char* s : {kE2, kE3, kE4, kE5, kF5, "pcv(alpha=t^3, breadth=\">=1\")", "pdv(alpha=t, breadth=\">0\")",
                        "pdv(alpha=t^2, breadth=\">1/2\")", "pst(alpha=t, breadth=\">=1\")",
                        "pcv(alpha=1, breadth=\">sqrt(2)\")"})
    pool.push_back(seq(s));
  auto eq = [](const PMSeq& a, const PMSeq& b) { return equivalent(a, b).equivalent; };
  for (const auto& a : pool) {
    CHECK(eq(a, a));
    for (const auto& b : pool) {
      CHECK(eq(a, b) == eq(b, a));
      for (const auto& c : pool)
        if (eq(a, b) && eq(b, c)) CHECK(eq(a, c));
    }
  }
}

TEST_CASE("coarsening") {
  Coarsening c6 = coarsen_sequence(seq(kE6), {1});
  CHECK(c6.definitively_pst);
  CHECK(*c6.constant == gv(1));
  CHECK_FALSE(c6.breadth_preserved);
  Coarsening c7 = coarsen_sequence(seq(kE7), {1});
  CHECK_FALSE(c7.definitively_pst);
  CHECK(c7.kind == SeqKind::pcv);
  CHECK(c7.breadth_preserved);
  CHECK(c7.coarse_breadth.str() == ">=1");
  Coarsening c4 = coarsen_sequence(seq(kE4), {0});
  CHECK(c4.kind == SeqKind::pst);
  CHECK(c4.coarse_breadth.str() == ">=1");
  CHECK_THROWS_AS(coarsen_sequence(seq(kE2), {0}), PreconditionError);
  CHECK_THROWS_AS(coarsen_sequence(seq(kE7), {2}), StructuralError);
}

TEST_CASE("coarsening on the rank-2 corpus") {
  // remains strict <=> Br(E) is a strictly divisorial (pcv) / non-principal (pdv) V_P-module,
  // and for pcv also <=> Br(E) equals the breadth over V_P
  const GroupDescriptor G = FieldDescriptor::composite(5).group();
  for (std::string s : {kE6, kE7, "pdv(alpha=0, breadth=\">(1,-inf)\") field=composite:5",
                        "pdv(alpha=0, breadth=\">(1,inf)\") field=composite:5",
                        "pcv(alpha=t, breadth=\">(-1/2,inf)\") field=composite:5",
                        "pcv(alpha=0, breadth=\">sqrt(2)\") field=composite:5",
                        "pdv(alpha=0, breadth=\">sqrt(2)\") field=composite:5",
                        "pdv(alpha=0, breadth=\"K\") field=composite:5"}) {
    CAPTURE(s);
    PMSeq E = seq(s);
    Coarsening c = coarsen_sequence(E, {1});
    bool remains = !c.definitively_pst;
    CHECK(c.breadth_preserved == same_value_set(lift_ideal(c.coarse_breadth, 1), E.breadth, G));
    auto module = coarsen_ideal(E.breadth, G, 1);
    bool divisorial = false;
    if (module) {
      IdealClass k = classify_ideal(*module, G.coarsened(1));
      divisorial = E.kind == SeqKind::pcv ? k.strictly_divisorial : !k.principal;
    }
    CHECK(remains == divisorial);
    if (E.kind == SeqKind::pcv) CHECK(remains == c.breadth_preserved);
  }
}

TEST_CASE("pdv that stalls under coarsening keeps its breadth") {
  // gauge (1,-nu): constant t-order, Br(E) = tV_P = breadth over V_P
  PMSeq E = seq("pdv(alpha=0, breadth=\">(1,-inf)\") field=composite:5");
  Coarsening c = coarsen_sequence(E, {1});
  CHECK(c.definitively_pst);
  CHECK(c.breadth_preserved);
  CHECK(c.coarse_breadth.str() == ">=1");
}

}  // TEST_SUITE
