#include "valx/extension.hpp"

#include <algorithm>

namespace valx {

namespace {

const FieldElem& require_center(const PMSeq& E) {
  if (!E.certified || !E.center)
    throw UncertifiedError("sequence " + E.description +
                           " has no certified pseudo-limit; only the window fit is available");
  return *E.center;
}

bool strict(const PMSeq& E) { return E.kind != SeqKind::pst; }

// f(alpha + c T): least coefficient value and the residues of the
// coefficients scaled down by it.
struct Reduced {
  GroupValue m;
  std::vector<Rational> coeffs;
};

Reduced reduce_poly(const Poly& f, const FieldElem& alpha, const FieldElem& c, const FieldDescriptor& F) {
  Poly g = f.substitute_linear(alpha, c);
  std::optional<GroupValue> m;
  for (const auto& b : g.coeffs())
    if (auto v = value(b, F); v && (!m || *v < *m)) m = v;
  Reduced r{*m, {}};
  FieldElem w = F.witness(*m);
  for (const auto& b : g.coeffs()) r.coeffs.push_back(b.is_zero() ? Rational(0) : residue(b / w, F));
  while (!r.coeffs.empty() && r.coeffs.back() == 0) r.coeffs.pop_back();
  return r;
}

// Integer roots of a residue polynomial are below this.
long root_bound(const std::vector<Rational>& a) {
  if (a.size() <= 1) return 0;
  Rational top = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) top = std::max(top, Rational(abs(a[i] / a.back())));
  Rational b = top + 1;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return f.get_si() + 1;
}

// Least index >= from with pred(gauge(nu)), for a predicate that stays true.
template <class Pred>
long first_index(const PMSeq& E, long from, Pred pred) {
  if (pred(E.gauge(from))) return from;
  long lo = from, hi = from + 1;
  while (!pred(E.gauge(hi))) {
    lo = hi;
    hi = from + 2 * (hi - from);
    if (hi > (1L << 24)) throw UncertifiedError("gauge does not pass the critical values in range");
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (pred(E.gauge(mid)) ? hi : lo) = mid;
  }
  return hi;
}

std::optional<GroupValue> value_of(const RatFunc& phi, const FieldElem& s, const FieldDescriptor& F) {
  auto a = value_at(phi.num(), s, F);
  auto b = value_at(phi.den(), s, F);
  if (!a || !b) return std::nullopt;
  return *a - *b;
}

}  // namespace

int ExtValue::sign() const {
  if (infinite) return 1;
  return extval_sign(lambda, gamma, cut);
}

GroupValue ExtValue::folded() const { return gamma + cut.bound.value() * Rational(lambda); }

std::string ExtValue::str() const {
  if (infinite) return "inf";
  return "lambda=" + std::to_string(lambda) + " gamma=" + gamma.str() + " cut=" + cut.str();
}

int compare(const ExtValue& a, const ExtValue& b) {
  if (a.infinite || b.infinite) return a.infinite == b.infinite ? 0 : (a.infinite ? 1 : -1);
  return extval_sign(a.lambda - b.lambda, a.gamma - b.gamma, a.cut);
}

bool operator==(const ExtValue& a, const ExtValue& b) { return compare(a, b) == 0; }

SPart s_part(const RatFunc& phi, const PMSeq& E) {
  const FieldElem& a = require_center(E);
  IdealSpec R = region_of(E.gauge_cut);
  return s_part(phi, a, [&R](const std::optional<GroupValue>& w) { return R.contains(w); }, E.field);
}

long degdom(const RatFunc& phi, const PMSeq& E) { return s_part(phi, E).weighted_sum; }

ExtValue v_ext(const RatFunc& phi, const PMSeq& E) {
  ExtValue out;
  out.cut = E.gauge_cut;
  if (phi.is_zero()) {
    out.infinite = true;
    out.gamma = GroupValue::zero(E.field.rank());
    return out;
  }
  SPart sp = s_part(phi, E);
  out.lambda = sp.weighted_sum;
  out.gamma = sp.gamma_shift;
  return out;
}

bool member_VE(const RatFunc& phi, const PMSeq& E) { return v_ext(phi, E).sign() >= 0; }
bool member_ME(const RatFunc& phi, const PMSeq& E) { return v_ext(phi, E).sign() > 0; }

long certification_index(const RatFunc& phi, const PMSeq& E) {
  const FieldElem& a = require_center(E);
  const FieldDescriptor& F = E.field;
  if (E.kind == SeqKind::pst) {
    long n = 1;
    for (const Poly* f : {&phi.num(), &phi.den()})
      n = std::max(n, root_bound(reduce_poly(*f, a, *E.scale, F).coeffs));
    return n;
  }
  IdealSpec R = region_of(E.gauge_cut);
  std::optional<GroupValue> hi_out, lo_in;
  for (const Poly* f : {&phi.num(), &phi.den()}) {
    if (f->degree() <= 0) continue;
    for (const auto& e : newton_profile(*f, a, F).entries) {
      if (!e.valuation) continue;
      if (R.contains(*e.valuation)) {
        if (!lo_in || *e.valuation < *lo_in) lo_in = e.valuation;
      } else if (!hi_out || *e.valuation > *hi_out) {
        hi_out = e.valuation;
      }
    }
  }
  const long from = E.first_gauge_index();
  if (E.kind == SeqKind::pdv) {
    if (!lo_in) return from;
    return first_index(E, from, [&](const GroupValue& d) { return d < *lo_in; });
  }
  if (!hi_out) return from;
  return first_index(E, from, [&](const GroupValue& d) { return d > *hi_out; });
}

EmpiricalFit empirical_slope(const RatFunc& phi, const PMSeq& E, const Window& w) {
  if (w.last < w.first) throw PreconditionError("empty window");
  EmpiricalFit fit;
  fit.gamma = GroupValue::zero(E.field.rank());
  std::vector<long> idx;
  std::vector<GroupValue> ys;
  for (long nu = std::max(w.first, E.first_gauge_index()); nu <= w.last; ++nu) {
    auto y = value_of(phi, E.term(nu), E.field);
    if (!y) continue;
    idx.push_back(nu);
    ys.push_back(*y);
  }
  if (ys.size() < 2) throw PreconditionError("window holds fewer than two usable indices");
  bool trusted = E.certified && E.center;
  if (trusted) {
    fit.n0 = certification_index(phi, E);
    trusted = w.first >= fit.n0;
  }
  if (E.kind == SeqKind::pst) {
    fit.folded = true;
    fit.gamma = ys.back();
    bool constant = std::all_of(ys.begin(), ys.end(), [&](const GroupValue& y) { return y == ys[0]; });
    if (!constant && trusted)
      throw StructuralError("values of " + phi.str() + " along a stationary sequence are not constant past index " +
                            std::to_string(fit.n0));
    fit.certified = trusted && constant && ys.size() >= 4;
    fit.note = constant ? "constant" : "not constant";
    return fit;
  }
  std::vector<Rational> lambdas;
  bool proportional = true;
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    GroupValue d = E.gauge(idx[k + 1]) - E.gauge(idx[k]);
    GroupValue dy = ys[k + 1] - ys[k];
    std::size_t j = 0;
    while (j < d.rank() && d[j].sign() == 0) ++j;
    if (j == d.rank()) throw StructuralError("gauge does not move inside the window");
    if (!dy[j].is_rational()) throw StructuralError("irrational value difference");
    Rational l = dy[j].rational_part() / d[j].rational_part();
    proportional &= dy == d * l;
    lambdas.push_back(l);
  }
  fit.lambda = lambdas.front();
  fit.gamma = ys.front() - E.gauge(idx.front()) * fit.lambda;
  bool agree = std::all_of(lambdas.begin(), lambdas.end(), [&](const Rational& l) { return l == fit.lambda; });
  bool integral = fit.lambda.get_den() == 1;
  fit.certified = trusted && agree && proportional && integral && lambdas.size() >= 3;
  if (!agree || !proportional)
    fit.note = "slopes disagree";
  else if (!integral)
    fit.note = "non-integral slope";
  else if (!trusted)
    fit.note = E.certified ? "window starts before index " + std::to_string(fit.n0) : "uncertified sequence";
  return fit;
}

GroupValue monomial_value(const Poly& f, const FieldElem& alpha, const GroupValue& delta,
                          const FieldDescriptor& F) {
  if (f.is_zero()) throw StructuralError("monomial value of zero");
  Poly g = f.taylor_shift(alpha);
  std::optional<GroupValue> best;
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    auto v = value(g[i], F);
    if (!v) continue;
    GroupValue c = *v + delta * Rational(static_cast<long>(i));
    if (!best || c < *best) best = c;
  }
  return *best;
}

ExtValue monomial_value(const Poly& f, const FieldElem& alpha, const ExtCut& cut,
                        const FieldDescriptor& F) {
  if (f.is_zero()) throw StructuralError("monomial value of zero");
  Poly g = f.taylor_shift(alpha);
  std::optional<ExtValue> best;
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    auto v = value(g[i], F);
    if (!v) continue;
    ExtValue c{static_cast<long>(i), *v, cut, false};
    // on an exact cut the last minimizing index is the one that counts roots
    if (!best || compare(c, *best) <= 0) best = c;
  }
  return *best;
}

ExtValue monomial_value(const RatFunc& phi, const FieldElem& alpha, const ExtCut& cut,
                        const FieldDescriptor& F) {
  if (phi.is_zero()) return ExtValue{0, GroupValue::zero(F.rank()), cut, true};
  ExtValue n = monomial_value(phi.num(), alpha, cut, F);
  ExtValue d = monomial_value(phi.den(), alpha, cut, F);
  return ExtValue{n.lambda - d.lambda, n.gamma - d.gamma, cut, false};
}

ImageSequence image_sequence(const RatFunc& phi, const PMSeq& E, const Window& w) {
  if (!strict(E)) throw PreconditionError("image sequences are described for strictly pseudo-monotone sequences only");
  if (phi.num().degree() <= 0 && phi.den().degree() <= 0)
    throw PreconditionError("image of a constant function");
  ImageSequence out;
  out.lambda = degdom(phi, E);
  out.start = std::max(w.first, certification_index(phi, E));
  const long count = std::max(4L, w.last - w.first + 1);
  for (long nu = out.start; nu < out.start + count; ++nu) out.terms.push_back(phi.eval(E.term(nu)));
  out.kind = classify_prefix(out.terms, E.field).kind;
  const PrefixKind own = E.kind == SeqKind::pdv ? PrefixKind::pdv : PrefixKind::pcv;
  const PrefixKind other = own == PrefixKind::pcv ? PrefixKind::pdv : PrefixKind::pcv;
  if (out.lambda > 0)
    out.kind_rule_holds = out.kind == own;
  else if (out.lambda < 0)
    out.kind_rule_holds = out.kind == other;
  else
    out.kind_rule_holds = out.kind == PrefixKind::pcv || out.kind == PrefixKind::pdv;
  if (out.kind == PrefixKind::pcv) {
    std::optional<ExtValue> prev;
    for (const auto& c : out.terms) {
      RatFunc diff = RatFunc::coprime(phi.num() - phi.den() * c, phi.den());
      ExtValue v = v_ext(diff, E);
      if (prev && compare(v, *prev) <= 0) out.gauge_increases = false;
      prev = v;
    }
  }
  out.certified = E.certified;
  return out;
}

MinimalElement delta_E(const PMSeq& E, const std::vector<Poly>& candidates) {
  const FieldElem& a = require_center(E);
  MinimalElement out;
  if (E.kind == SeqKind::pst) {
    out.p = Poly::linear(a);
    out.delta = v_ext(RatFunc(out.p), E);
    return out;
  }
  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].degree() < 1 || !(candidates[i].lead() == FieldElem(Rational(1), candidates[i].mod())))
      throw PreconditionError("candidate " + candidates[i].str() + " is not monic");
    if (degdom(RatFunc(candidates[i]), E) <= 0) continue;
    if (!pick || candidates[i].degree() < candidates[*pick].degree()) pick = i;
  }
  if (!pick) throw PreconditionError("no element of P_E among the candidates");
  out.p = candidates[*pick];
  out.delta = v_ext(RatFunc(out.p), E);
  out.outside_group = out.delta.lambda != 0 && E.gauge_cut.side != CutSide::exact;
  return out;
}

std::string LimitSet::str() const {
  if (empty) return "empty";
  if (whole_field) return "K";
  if (spread.is_zero()) return "{" + center->str() + "}";
  return center->str() + " + {" + spread.str() + "}";
}

LimSetsReport lim_sets(const PMSeq& E) {
  const FieldElem& a = require_center(E);
  LimitSet L;
  L.empty = false;
  L.center = a;
  L.spread = E.breadth;
  L.whole_field = E.breadth.is_whole_field();
  LimSetsReport r;
  (E.kind == SeqKind::pst ? r.L2 : r.L1) = L;
  return r;
}

RatFunc residue_in_kT(const RatFunc& phi, const PMSeq& E) {
  const FieldElem& a = require_center(E);
  if (E.kind != SeqKind::pst || !E.scale)
    throw PreconditionError("the residue map into k(T) needs a pseudo-stationary sequence");
  if (phi.is_zero()) return RatFunc();
  Reduced n = reduce_poly(phi.num(), a, *E.scale, E.field);
  Reduced d = reduce_poly(phi.den(), a, *E.scale, E.field);
  int s = (n.m - d.m).sign();
  if (s < 0) throw PreconditionError(phi.str() + " is not in V_E");
  if (s > 0) return RatFunc();
  auto lift = [](const std::vector<Rational>& c) {
    std::vector<FieldElem> out;
    for (const auto& x : c) out.emplace_back(x);
    return Poly(out);
  };
  return RatFunc(lift(n.coeffs), lift(d.coeffs));
}

Fiber prime_fiber(const PMSeq& E, const PrimeSpec& P) {
  const GroupDescriptor G = E.field.group();
  const GroupDescriptor C = G.coarsened(P.collapse);
  Fiber out;
  if (E.kind == SeqKind::pst) return out;
  Localized L = localize_ideal(E.breadth, G, P.collapse);
  if (!L.module) return out;
  IdealClass cl = classify_ideal(L.ideal, C);
  if (cl.category == IdealCategory::principal) {
    out.size = 2;
    out.tag = P.collapse ? "cV_P" : "cV";
  } else if (cl.category == IdealCategory::maximal_multiple) {
    out.size = 2;
    out.tag = "cP";
  } else {
    return out;
  }
  out.witness_value = cl.witness_value;
  return out;
}

}  // namespace valx
