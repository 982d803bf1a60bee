#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "valx/fields.hpp"

namespace valx {

enum class SeqKind { pcv, pdv, pst, cauchy };
std::string kind_name(SeqKind k);

/// Pseudo-monotone sequence indexed by N with closed-form term and gauge
/// laws. Immutable; the laws are pure.
struct PMSeq {
  FieldDescriptor field;
  SeqKind kind = SeqKind::pcv;
  std::function<FieldElem(long)> term;
  std::function<GroupValue(long)> gauge_law;
  ExtCut gauge_cut;
  IdealSpec breadth;                // normalized over field.group()
  std::optional<FieldElem> center;  // certified pseudo-limit (the limit for cauchy)
  std::optional<FieldElem> scale;   // pst: element of value delta
  bool certified = false;
  std::string description;

  // pdv gauges start at index 1.
  long first_gauge_index() const { return kind == SeqKind::pdv ? 1 : 0; }
  GroupValue gauge(long nu) const;
};

// Audit length from VALX_PREFIX, default 16.
long audit_prefix();

/// Build a certified sequence with pseudo-limit alpha and breadth ideal I.
/// Throws PreconditionError when no sequence of that kind has breadth I.
PMSeq make_sequence(SeqKind kind, const FieldElem& alpha, const IdealSpec& I,
                    const FieldDescriptor& F, long prefix = audit_prefix());
PMSeq make_cauchy(const FieldElem& limit, const FieldDescriptor& F, long prefix = audit_prefix());
// Terms shifted by c; the pseudo-limit moves with them.
PMSeq translate(const PMSeq& E, const FieldElem& c);
// Window analysis only: no pseudo-limit, never certified.
PMSeq make_uncertified(SeqKind kind, std::function<FieldElem(long)> term,
                       std::function<GroupValue(long)> gauge, const FieldDescriptor& F);

// Checks every pair below `prefix` against the declared kind; throws
// StructuralError on the first violation.
void audit(const PMSeq& E, long prefix);

enum class PrefixKind { pcv, pdv, pst, none };
std::string prefix_kind_name(PrefixKind k);

struct PrefixClass {
  PrefixKind kind = PrefixKind::none;
  std::vector<std::size_t> order;  // indexing that realizes the kind
};

PrefixClass classify_prefix(const std::vector<FieldElem>& points, const FieldDescriptor& F);

IdealSpec breadth_ideal(const PMSeq& E);
bool is_pseudo_limit(const PMSeq& E, const FieldElem& beta);
// The defining condition on the indices first..last-1: v(beta - s_nu) equals
// the gauge (all but one index for pst). For pdv it only has to hold on a tail.
bool satisfies_limit_definition(const PMSeq& E, const FieldElem& beta, long first, long last);

struct Equivalence {
  bool equivalent = false;
  std::string reason;
};
Equivalence equivalent(const PMSeq& E, const PMSeq& F);

struct Coarsening {
  bool definitively_pst = false;
  SeqKind kind = SeqKind::pst;          // kind with respect to the coarse valuation
  std::optional<GroupValue> constant;   // coarse breadth value when stationary
  long from_index = 0;                  // the tail from here on has `kind`
  IdealSpec coarse_breadth;             // Br over V_P
  bool breadth_preserved = false;       // Br(E) equals the lift of the coarse breadth
};
Coarsening coarsen_sequence(const PMSeq& E, const PrimeSpec& P);

}  // namespace valx
