#include "valx/sequences.hpp"

#include <algorithm>
#include <cstdlib>

namespace valx {

std::string kind_name(SeqKind k) {
  switch (k) {
    case SeqKind::pcv: return "pcv";
    case SeqKind::pdv: return "pdv";
    case SeqKind::pst: return "pst";
    default: return "cauchy";
  }
}

std::string prefix_kind_name(PrefixKind k) {
  switch (k) {
    case PrefixKind::pcv: return "pcv";
    case PrefixKind::pdv: return "pdv";
    case PrefixKind::pst: return "pst";
    default: return "none";
  }
}

GroupValue PMSeq::gauge(long nu) const {
  if (nu < first_gauge_index())
    throw PreconditionError("the gauge of a pseudo-divergent sequence starts at index 1");
  return gauge_law(nu);
}

long audit_prefix() {
  if (const char* s = std::getenv("VALX_PREFIX")) {
    long n = std::strtol(s, nullptr, 10);
    if (n >= 3) return n;
  }
  return 16;
}

namespace {

// Rational approximations of x = a + b*sqrt(d) from the continued fraction
// of sqrt(b^2 d): lower(k) increases to x, upper(k) decreases to x.
struct QuadraticApprox {
  Rational a;
  Integer N;    // radicand b^2 d, with the denominator of b pulled out
  Integer s;    // x = a + sign * sqrt(N) / s
  int sign = 1;

  explicit QuadraticApprox(const Scalar& x) : a(x.rational_part()) {
    Rational b = x.irrational_part();
    sign = sgn(b);
    Rational mag = abs(b);
    N = mag.get_num() * mag.get_num() * x.root();
    s = mag.get_den();
  }

  // k-th convergent of sqrt(N)
  Rational convergent(long k) const {
    Integer a0;
    mpz_sqrt(a0.get_mpz_t(), N.get_mpz_t());
    Integer m = 0, d = 1, an = a0;
    Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    Integer h = an * h1 + h2, q = an * k1 + k2;
    for (long i = 0; i < k; ++i) {
      m = d * an - m;
      d = (N - m * m) / d;
      an = (a0 + m) / d;
      h2 = h1; h1 = h;
      k2 = k1; k1 = q;
      h = an * h1 + h2;
      q = an * k1 + k2;
    }
    return Rational(h, q);
  }

  // even convergents lie below sqrt(N), odd ones above
  Rational lower(long nu) const {
    Rational c = convergent(sign > 0 ? 2 * nu : 2 * nu + 1);
    return a + sign * c / Rational(s);
  }
  Rational upper(long nu) const {
    Rational c = convergent(sign > 0 ? 2 * nu + 1 : 2 * nu);
    return a + sign * c / Rational(s);
  }
};

FieldElem pp(long p, long e) {
  Rational r = 1;
  for (long i = 0; i < std::labs(e); ++i) r *= p;
  return FieldElem(e < 0 ? 1 / r : r);
}

std::string describe_kind(SeqKind k, const FieldElem& alpha, const IdealSpec& I,
                          const FieldDescriptor& F) {
  return kind_name(k) + "(alpha=" + alpha.str() + ", breadth=\"" + I.str() + "\") field=" + F.str();
}

PMSeq finish(PMSeq E, long prefix) {
  E.breadth = normalize(region_of(E.gauge_cut), E.field.group());
  E.certified = E.center.has_value();
  audit(E, prefix);
  return E;
}

[[noreturn]] void refuse(const std::string& why) { throw PreconditionError(why); }

}  // namespace

PMSeq make_sequence(SeqKind kind, const FieldElem& alpha, const IdealSpec& I,
                    const FieldDescriptor& F, long prefix) {
  const GroupDescriptor G = F.group();
  const IdealSpec N = normalize(I, G);
  const IdealClass C = classify_ideal(I, G);
  const long mod = F.modulus();
  if (alpha.mod() != mod && alpha.mod() != 0)
    throw StructuralError("pseudo-limit " + alpha.str() + " is not an element of " + F.str());
  if (F.kind == FieldDescriptor::Kind::padic && !alpha.is_constant())
    throw StructuralError("pseudo-limit " + alpha.str() + " is not an element of Q");
  if (kind == SeqKind::cauchy) {
    if (!N.is_zero()) refuse("a Cauchy sequence has breadth ideal (0), not " + N.str());
    return make_cauchy(alpha, F, prefix);
  }

  PMSeq E;
  E.field = F;
  E.kind = kind;
  E.center = alpha;
  E.description = describe_kind(kind, alpha, N, F);
  const bool composite = F.kind == FieldDescriptor::Kind::composite;
  const auto& bc = N.bound.coords();

  auto exponent_law = [&](std::function<Rational(long)> e) {
    E.term = [alpha, e, mod](long nu) { return alpha + FieldElem::t_power(e(nu), mod); };
    if (composite)
      E.gauge_law = [e](long nu) { return GroupValue::of(e(nu), 0); };
    else
      E.gauge_law = [e](long nu) { return GroupValue::of(e(nu)); };
  };

  switch (kind) {
    case SeqKind::pst: {
      if (!C.principal)
        refuse("a pseudo-stationary sequence needs a principal breadth ideal cV, and " + N.str() +
               " is not principal");
      if (!F.residue_field_infinite())
        refuse("a pseudo-stationary sequence exists only when the residue field is infinite, and the residue field of " +
               F.str() + " is finite");
      GroupValue delta = N.bound.value();
      FieldElem c = F.witness(delta);
      E.scale = c;
      E.term = [alpha, c](long nu) { return alpha + FieldElem(Rational(nu)) * c; };
      E.gauge_law = [delta](long) { return delta; };
      E.gauge_cut = ExtCut(Bound(delta), CutSide::exact);
      return finish(E, prefix);
    }
    case SeqKind::pcv: {
      if (N.is_zero()) refuse("breadth ideal (0) belongs to a Cauchy sequence; use cauchy(limit=...)");
      if (!C.fractional || !C.strictly_divisorial)
        refuse("a pseudo-convergent sequence needs a strictly divisorial breadth ideal, and " + N.str() +
               (C.fractional ? " is a multiple of the maximal ideal" : " is not a fractional ideal"));
      if (F.kind == FieldDescriptor::Kind::laurent && N.bound.is_finite() && N.closed) {
        Rational b = N.bound.value()[0].rational_part();
        exponent_law([b](long nu) -> Rational { return b - Rational(1, nu + 1); });
        E.gauge_cut = ExtCut(N.bound, CutSide::below);
        return finish(E, prefix);
      }
      if (!bc[0].value.is_rational()) {
        QuadraticApprox q(bc[0].value);
        exponent_law([q](long nu) -> Rational { return q.lower(nu); });
        std::vector<ExtScalar> cut{bc[0]};
        if (composite) cut.push_back(ExtScalar::minus_inf());
        E.gauge_cut = ExtCut(Bound(cut), CutSide::below);
        return finish(E, prefix);
      }
      if (composite && bc.size() == 2 && !bc[1].finite()) {
        Rational b = bc[0].value.rational_part();
        if (bc[1].kind == ExtScalar::Kind::plus_infinity) {
          long p = F.p;
          E.term = [alpha, b, p](long nu) { return alpha + FieldElem::t_power(b) * pp(p, nu); };
          E.gauge_law = [b](long nu) { return GroupValue::of(b, nu); };
        } else {
          exponent_law([b](long nu) -> Rational { return b - Rational(1, nu + 1); });
        }
        E.gauge_cut = ExtCut(N.bound, CutSide::below);
        return finish(E, prefix);
      }
      refuse("no pseudo-convergent family in " + F.str() + " has breadth " + N.str());
    }
    case SeqKind::pdv: {
      if (N.is_zero() || C.principal)
        refuse("a pseudo-divergent sequence needs a breadth ideal that is not principal, and " + N.str() +
               (N.is_zero() ? " is the zero ideal" : " is principal"));
      if (N.is_whole_field()) {
        if (F.kind == FieldDescriptor::Kind::padic) {
          long p = F.p;
          E.term = [alpha, p](long nu) { return alpha + pp(p, -nu); };
          E.gauge_law = [](long nu) { return GroupValue::of(-nu); };
        } else {
          exponent_law([](long nu) -> Rational { return Rational(-nu); });
        }
        E.gauge_cut = ExtCut(Bound::minus_infinity(), CutSide::above);
        return finish(E, prefix);
      }
      if (!bc[0].value.is_rational()) {
        QuadraticApprox q(bc[0].value);
        exponent_law([q](long nu) -> Rational { return nu == 0 ? q.upper(0) + 1 : q.upper(nu - 1); });
        std::vector<ExtScalar> cut{bc[0]};
        if (composite) cut.push_back(ExtScalar::plus_inf());
        E.gauge_cut = ExtCut(Bound(cut), CutSide::above);
        return finish(E, prefix);
      }
      if (F.kind == FieldDescriptor::Kind::laurent && N.bound.is_finite()) {
        Rational b = N.bound.value()[0].rational_part();
        exponent_law([b](long nu) -> Rational { return b + Rational(1, nu + 1); });
        E.gauge_cut = ExtCut(N.bound, CutSide::above);
        return finish(E, prefix);
      }
      if (composite && bc.size() == 2 && !bc[1].finite()) {
        Rational b = bc[0].value.rational_part();
        if (bc[1].kind == ExtScalar::Kind::minus_infinity) {
          long p = F.p;
          E.term = [alpha, b, p](long nu) { return alpha + FieldElem::t_power(b) * pp(p, -nu); };
          E.gauge_law = [b](long nu) { return GroupValue::of(b, -nu); };
        } else {
          exponent_law([b](long nu) -> Rational { return b + Rational(1, nu + 1); });
        }
        E.gauge_cut = ExtCut(N.bound, CutSide::above);
        return finish(E, prefix);
      }
      refuse("no pseudo-divergent family in " + F.str() + " has breadth " + N.str());
    }
    default: break;
  }
  refuse("unsupported sequence kind");
}

PMSeq make_cauchy(const FieldElem& limit, const FieldDescriptor& F, long prefix) {
  PMSeq E;
  E.field = F;
  E.kind = SeqKind::cauchy;
  E.center = limit;
  E.description = "cauchy(limit=" + limit.str() + ") field=" + F.str();
  const long mod = F.modulus();
  switch (F.kind) {
    case FieldDescriptor::Kind::padic: {
      if (!limit.is_constant()) throw StructuralError("limit " + limit.str() + " is not an element of Q");
      Rational L = limit.constant();
      Rational w = L == 0 ? Rational(1) : Rational(-L);
      long p = F.p;
      long vw = padic_order(w, p);
      E.term = [L, w, p](long nu) { return FieldElem(L) + FieldElem(w) * pp(p, nu + 1); };
      E.gauge_law = [vw](long nu) { return GroupValue::of(vw + nu + 1); };
      break;
    }
    case FieldDescriptor::Kind::laurent:
      E.term = [limit, mod](long nu) { return limit + FieldElem::t_power(nu + 1, mod); };
      E.gauge_law = [](long nu) { return GroupValue::of(nu + 1); };
      break;
    default:
      E.term = [limit](long nu) { return limit + FieldElem::t_power(nu + 1); };
      E.gauge_law = [](long nu) { return GroupValue::of(nu + 1, 0); };
  }
  E.gauge_cut = ExtCut(Bound::plus_infinity(), CutSide::below);
  return finish(E, prefix);
}

PMSeq translate(const PMSeq& E, const FieldElem& c) {
  PMSeq T = E;
  auto base = E.term;
  T.term = [base, c](long nu) { return base(nu) + c; };
  if (T.center) T.center = *T.center + c;
  T.description = E.description + " + " + c.str();
  return T;
}

PMSeq make_uncertified(SeqKind kind, std::function<FieldElem(long)> term,
                       std::function<GroupValue(long)> gauge, const FieldDescriptor& F) {
  PMSeq E;
  E.field = F;
  E.kind = kind;
  E.term = std::move(term);
  E.gauge_law = std::move(gauge);
  E.certified = false;
  E.description = kind_name(kind) + " (uncertified)";
  return E;
}

void audit(const PMSeq& E, long prefix) {
  const FieldDescriptor& F = E.field;
  auto fail = [&](const std::string& what) {
    throw StructuralError(E.description + ": " + what);
  };
  std::vector<FieldElem> s;
  for (long nu = 0; nu < prefix; ++nu) s.push_back(E.term(nu));
  const long g0 = E.first_gauge_index();
  for (long nu = g0 + 1; nu < prefix; ++nu) {
    auto c = E.gauge(nu) <=> E.gauge(nu - 1);
    bool ok = E.kind == SeqKind::pst ? c == 0 : E.kind == SeqKind::pdv ? c < 0 : c > 0;
    if (!ok) fail("gauge law is not monotone of the declared kind at index " + std::to_string(nu));
  }
  for (long rho = 1; rho < prefix; ++rho)
    for (long nu = 0; nu < rho; ++nu) {
      auto v = value(s[rho] - s[nu], F);
      if (!v) fail("repeated term at indices " + std::to_string(nu) + ", " + std::to_string(rho));
      GroupValue want = E.kind == SeqKind::pdv ? E.gauge(rho) : E.gauge(E.kind == SeqKind::pst ? 0 : nu);
      if (!(*v == want))
        fail("v(s_" + std::to_string(rho) + " - s_" + std::to_string(nu) + ") = " + v->str() +
             " but the gauge gives " + want.str());
    }
  if (!E.center) return;
  if (E.kind == SeqKind::pst) {
    int exceptions = 0;
    for (long nu = 0; nu < prefix; ++nu) {
      auto v = value(s[nu] - *E.center, F);
      if (v && *v == E.gauge(0)) continue;
      if (v && *v < E.gauge(0)) fail("center is not a pseudo-limit");
      ++exceptions;
    }
    if (exceptions > 1) fail("center is closer than the breadth to more than one term");
    return;
  }
  for (long nu = g0; nu < prefix; ++nu) {
    auto v = value(s[nu] - *E.center, F);
    if (!v || !(*v == E.gauge(nu))) fail("center is not a pseudo-limit at index " + std::to_string(nu));
  }
}

PrefixClass classify_prefix(const std::vector<FieldElem>& points, const FieldDescriptor& F) {
  const std::size_t n = points.size();
  if (n < 3) throw PreconditionError("classification needs at least three points");
  std::vector<std::vector<GroupValue>> V(n, std::vector<GroupValue>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto v = value(points[i] - points[j], F);
      if (!v)
        throw PreconditionError("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      V[i][j] = V[j][i] = *v;
    }
  auto holds = [&](const std::vector<std::size_t>& o, PrefixKind k) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
          auto cmp = V[o[a]][o[b]] <=> V[o[b]][o[c]];
          bool ok = k == PrefixKind::pcv ? cmp < 0 : k == PrefixKind::pdv ? cmp > 0 : cmp == 0;
          if (!ok) return false;
        }
    return true;
  };
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  if (holds(id, PrefixKind::pst)) return {PrefixKind::pst, id};
  for (PrefixKind k : {PrefixKind::pcv, PrefixKind::pdv})
    if (holds(id, k)) return {k, id};

  // The largest distance from each point fixes its position up to the
  // two extreme points, whose order is free.
  std::vector<GroupValue> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    key[i] = V[i][i == 0 ? 1 : 0];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && V[i][j] > key[i]) key[i] = V[i][j];
  }
  for (PrefixKind k : {PrefixKind::pcv, PrefixKind::pdv}) {
    std::vector<std::size_t> o = id;
    std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) {
      return k == PrefixKind::pcv ? key[a] < key[b] : key[a] > key[b];
    });
    if (holds(o, k)) return {k, o};
    if (k == PrefixKind::pcv)
      std::swap(o[n - 2], o[n - 1]);
    else
      std::swap(o[0], o[1]);
    if (holds(o, k)) return {k, o};
  }
  return {PrefixKind::none, {}};
}

IdealSpec breadth_ideal(const PMSeq& E) { return E.breadth; }

static const FieldElem& require_center(const PMSeq& E) {
  if (!E.certified || !E.center)
    throw UncertifiedError("sequence " + E.description + " has no certified pseudo-limit");
  return *E.center;
}

bool is_pseudo_limit(const PMSeq& E, const FieldElem& beta) {
  const FieldElem& a = require_center(E);
  return E.breadth.contains(value(beta - a, E.field));
}

bool satisfies_limit_definition(const PMSeq& E, const FieldElem& beta, long first, long last) {
  first = std::max(first, E.first_gauge_index());
  if (last <= first) throw PreconditionError("empty index range");
  if (E.kind == SeqKind::pst) {
    int exceptions = 0;
    for (long nu = first; nu < last; ++nu) {
      auto v = value(beta - E.term(nu), E.field);
      if (v && *v == E.gauge(0)) continue;
      if (v && *v < E.gauge(0)) return false;
      ++exceptions;
    }
    return exceptions <= 1;
  }
  for (long nu = first; nu < last; ++nu) {
    auto v = value(beta - E.term(nu), E.field);
    if (!v || !(*v == E.gauge(nu))) return false;
  }
  return true;
}

Equivalence equivalent(const PMSeq& E, const PMSeq& F) {
  if (!(E.field == F.field)) return {false, "sequences over different fields"};
  const FieldElem& a = require_center(E);
  const FieldElem& b = require_center(F);
  const GroupDescriptor G = E.field.group();
  const bool se = E.kind != SeqKind::pst;
  const bool sf = F.kind != SeqKind::pst;
  if (se != sf) return {false, "a strictly pseudo-monotone and a pseudo-stationary sequence"};
  if (!se && !(E.gauge(0) == F.gauge(0))) return {false, "different breadths"};
  if (se && !same_value_set(E.breadth, F.breadth, G)) return {false, "different breadth ideals"};
  if (!E.breadth.contains(value(b - a, E.field))) return {false, "disjoint pseudo-limit sets"};
  return {true, "equal pseudo-limit sets"};
}

Coarsening coarsen_sequence(const PMSeq& E, const PrimeSpec& P) {
  const GroupDescriptor G = E.field.group();
  const GroupDescriptor C = G.coarsened(P.collapse);
  const std::size_t kept = C.rank();
  Coarsening out;
  auto preserved = [&] { return same_value_set(lift_ideal(out.coarse_breadth, P.collapse), E.breadth, G); };
  if (E.kind == SeqKind::pst) {
    out.definitively_pst = true;
    out.constant = E.gauge(0).prefix(kept);
    out.coarse_breadth = localize_ideal(E.breadth, G, P.collapse).ideal;
    out.breadth_preserved = preserved();
    return out;
  }
  if (G.rank() == 1)
    throw PreconditionError("a rank one valuation has no prime below the maximal ideal to localize at");
  const auto& bc = E.gauge_cut.bound.coords();
  bool rational_head = bc.size() == kept + 1;
  for (std::size_t i = 0; rational_head && i < kept; ++i)
    rational_head = bc[i].finite() && bc[i].value.is_rational();
  const auto collapsed_end = E.kind == SeqKind::pdv ? ExtScalar::Kind::minus_infinity
                                                     : ExtScalar::Kind::plus_infinity;
  if (P.collapse > 0 && rational_head && bc[kept].kind == collapsed_end) {
    std::vector<Scalar> head;
    for (std::size_t i = 0; i < kept; ++i) head.push_back(bc[i].value);
    GroupValue chi(head);
    out.definitively_pst = true;
    out.constant = chi;
    long n = E.first_gauge_index();
    while (!(E.gauge(n).prefix(kept) == chi)) ++n;
    out.from_index = n;
    out.coarse_breadth = normalize(IdealSpec::at_least(chi), C);
    out.breadth_preserved = preserved();
    return out;
  }
  out.kind = E.kind;
  std::vector<ExtScalar> head(bc.begin(), bc.begin() + std::min(bc.size(), kept));
  out.coarse_breadth = normalize(region_of(ExtCut(Bound(head), E.gauge_cut.side)), C);
  out.breadth_preserved = preserved();
  return out;
}

}  // namespace valx
