#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fragmerge/interp.hpp"
#include "fragmerge/merge.hpp"

namespace fragmerge {

// Strict total order on interpretations used by the lex refinements. By
// default the integer order of the bit pattern; an explicit ranking puts the
// listed interpretations first, in the given order.
class LexOrder {
 public:
  LexOrder() = default;
  explicit LexOrder(std::vector<Bits> ranking);

  bool less(Bits a, Bits b) const;
  Bits minimum(const ModelSet& m) const;

  const std::vector<Bits>& ranking() const { return ranking_; }

 private:
  std::size_t rank(Bits b) const;
  std::vector<Bits> ranking_;
};

// f(M, X): maps a merge result and the profile's model sets to a refined
// result. Must be closed-valued, inside Cl(M), the identity on closed M and
// non-empty on non-empty M. Implementations must be side-effect free.
struct BetaMapping {
  std::string label;
  BooleanFn beta;
  std::function<ModelSet(const ModelSet&, std::span<const ModelSet>)> fn;
};

struct ClosureRefinement {
  BooleanFn beta;
};
struct LexRefinement {
  BooleanFn beta;
  LexOrder order;
};
struct LexClosureRefinement {
  BooleanFn beta;
  LexOrder order;
};
struct CustomRefinement {
  BetaMapping mapping;
};

using RefinementKind = std::variant<ClosureRefinement, LexRefinement,
                                    LexClosureRefinement, CustomRefinement>;

const BooleanFn& beta_of(const RefinementKind& kind);
std::string label_of(const RefinementKind& kind);

// #(M, E): number of bases of E whose models meet M.
std::size_t cardintersection(const ModelSet& m, const Profile& e);

// Refines the unrefined merge output `delta_out` of (e, mu).
ModelSet refine(const RefinementKind& kind, const ModelSet& delta_out,
                const Profile& e, const ModelSet& mu);

MergeOperator refined_operator(MergeOperator base, RefinementKind kind);

// ---------------------------------------------------------------------------
// Mapping validation

enum class MappingProperty { ClosedOutput, WithinClosure, FixesClosed, NonEmpty };

std::string to_string(MappingProperty p);

struct MappingFinding {
  MappingProperty property;
  ModelSet input;
  std::vector<ModelSet> context;
  ModelSet output;
};

// The first violated property of f on (m, x), if any.
std::optional<MappingFinding> check_mapping_case(const BetaMapping& f,
                                                 const ModelSet& m,
                                                 std::span<const ModelSet> x);

struct MappingBounds {
  UniversePtr universe;
  // Largest multiset X enumerated (X ranges over multisets of non-empty model
  // sets, including the empty multiset).
  std::size_t max_context = 2;
};

struct MappingReport {
  std::size_t cases_checked = 0;
  // First witness per violated property.
  std::vector<MappingFinding> violations;

  bool ok() const { return violations.empty(); }
  bool violates(MappingProperty p) const;
};

MappingReport validate_mapping(const BetaMapping& f, const MappingBounds& bounds);

// The closure, lex and lex/closure refinements as mappings.
BetaMapping closure_mapping(BooleanFn beta);
BetaMapping lex_mapping(BooleanFn beta, LexOrder order = {});

// ---------------------------------------------------------------------------
// Refinement properties

enum class RefinementProperty { Consistency, Equivalence, Containment, Invariance };

std::string to_string(RefinementProperty p);

struct RefinementFinding {
  RefinementProperty property;
  Instance instance;
  ModelSet base_out;
  ModelSet refined_out;
  // Second instance for equivalence findings.
  std::optional<Instance> partner;
  std::optional<ModelSet> partner_refined_out;
};

struct RefinementReport {
  std::size_t instances_checked = 0;
  std::size_t equivalence_pairs_checked = 0;
  std::vector<RefinementFinding> violations;  // first per property

  bool holds(RefinementProperty p) const;
  bool ok() const { return violations.empty(); }
};

// Checks consistency, equivalence, containment and invariance of `refined`
// against `base` on every instance. Equivalence compares all instance pairs
// with equivalent profiles and equal base outputs, including a reversed
// presentation of each profile.
RefinementReport check_refinement_properties(const MergeOperator& base,
                                             const MergeOperator& refined,
                                             const BooleanFn& beta,
                                             std::span<const Instance> instances);

struct FairnessViolation {
  Instance instance;
  ModelSet base_out;
  ModelSet refined_out;
  std::size_t base_count;
  std::size_t refined_count;
};

struct FairnessReport {
  std::size_t instances_checked = 0;
  std::vector<FairnessViolation> violations;

  bool fair() const { return violations.empty(); }
};

// Instances where #(base, E) != 1 but #(refined, E) == 1.
FairnessReport is_fair(const MergeOperator& base, const MergeOperator& refined,
                       std::span<const Instance> instances);

}  // namespace fragmerge
