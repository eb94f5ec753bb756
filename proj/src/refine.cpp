#include "fragmerge/refine.hpp"

#include <algorithm>
#include <map>

namespace fragmerge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ModelSet lex_refine(const BooleanFn& beta, const LexOrder& order,
                    const ModelSet& m) {
  if (m.empty() || is_closed(beta, m)) return m;
  return ModelSet(m.universe(), {order.minimum(m)});
}

std::string describe_finding(const MappingFinding& f) {
  return to_string(f.property) + " violated on M = {" + f.input.to_string() +
         "}, output {" + f.output.to_string() + "}";
}

using Key = std::pair<std::vector<std::vector<Bits>>, std::vector<Bits>>;

Key equivalence_key(const Profile& e, const ModelSet& base_out) {
  Key key;
  for (const auto& m : e.canonical_mmod())
    key.first.emplace_back(m.members().begin(), m.members().end());
  key.second.assign(base_out.members().begin(), base_out.members().end());
  return key;
}

}  // namespace

// ---------------------------------------------------------------------------
// LexOrder

LexOrder::LexOrder(std::vector<Bits> ranking) : ranking_(std::move(ranking)) {
  auto sorted = ranking_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("lex order lists an interpretation twice");
}

std::size_t LexOrder::rank(Bits b) const {
  auto it = std::find(ranking_.begin(), ranking_.end(), b);
  return static_cast<std::size_t>(it - ranking_.begin());
}

bool LexOrder::less(Bits a, Bits b) const {
  const std::size_t ra = rank(a);
  const std::size_t rb = rank(b);
  if (ra != rb) return ra < rb;
  return a < b;  // both unranked
}

Bits LexOrder::minimum(const ModelSet& m) const {
  if (m.empty()) throw EmptyInput("lex minimum of an empty model set");
  Bits best = m.members().front();
  for (Bits b : m.members())
    if (less(b, best)) best = b;
  return best;
}

// ---------------------------------------------------------------------------
// Refinements

const BooleanFn& beta_of(const RefinementKind& kind) {
  return std::visit(
      overloaded{[](const CustomRefinement& r) -> const BooleanFn& {
                   return r.mapping.beta;
                 },
                 [](const auto& r) -> const BooleanFn& { return r.beta; }},
      kind);
}

std::string label_of(const RefinementKind& kind) {
  return std::visit(
      overloaded{
          [](const ClosureRefinement& r) { return "closure(" + r.beta.name() + ")"; },
          [](const LexRefinement& r) { return "lex(" + r.beta.name() + ")"; },
          [](const LexClosureRefinement& r) {
            return "lex-closure(" + r.beta.name() + ")";
          },
          [](const CustomRefinement& r) { return r.mapping.label; }},
      kind);
}

std::size_t cardintersection(const ModelSet& m, const Profile& e) {
  require_same_universe(m.universe(), e.universe());
  return static_cast<std::size_t>(
      std::count_if(e.bases().begin(), e.bases().end(),
                    [&](const Base& k) { return m.intersects(k.models()); }));
}

ModelSet refine(const RefinementKind& kind, const ModelSet& delta_out,
                const Profile& e, const ModelSet& mu) {
  require_same_universe(delta_out.universe(), mu.universe());
  require_same_universe(delta_out.universe(), e.universe());
  return std::visit(
      overloaded{
          [&](const ClosureRefinement& r) { return closure(r.beta, delta_out); },
          [&](const LexRefinement& r) {
            return lex_refine(r.beta, r.order, delta_out);
          },
          [&](const LexClosureRefinement& r) {
            if (cardintersection(delta_out, e) == 0)
              return lex_refine(r.beta, r.order, delta_out);
            return closure(r.beta, delta_out);
          },
          [&](const CustomRefinement& r) {
            auto x = e.mmod();
            if (auto finding = check_mapping_case(r.mapping, delta_out, x))
              throw MappingViolation(r.mapping.label + ": " +
                                     describe_finding(*finding));
            return r.mapping.fn(delta_out, x);
          }},
      kind);
}

MergeOperator refined_operator(MergeOperator base, RefinementKind kind) {
  std::string label = base.label + "," + label_of(kind);
  return MergeOperator{
      std::move(label),
      [base = std::move(base), kind = std::move(kind)](const Profile& e,
                                                       const ModelSet& mu) {
        return refine(kind, base(e, mu), e, mu);
      }};
}

// ---------------------------------------------------------------------------
// Mappings

std::string to_string(MappingProperty p) {
  switch (p) {
    case MappingProperty::ClosedOutput:
      return "closed-output";
    case MappingProperty::WithinClosure:
      return "within-closure";
    case MappingProperty::FixesClosed:
      return "fixes-closed-input";
    case MappingProperty::NonEmpty:
      return "non-empty";
  }
  return "?";
}

std::optional<MappingFinding> check_mapping_case(const BetaMapping& f,
                                                 const ModelSet& m,
                                                 std::span<const ModelSet> x) {
  ModelSet out = f.fn(m, x);
  require_same_universe(out.universe(), m.universe());
  auto finding = [&](MappingProperty p) {
    return MappingFinding{p, m, std::vector<ModelSet>(x.begin(), x.end()), out};
  };
  if (!is_closed(f.beta, out)) return finding(MappingProperty::ClosedOutput);
  const ModelSet cl = closure(f.beta, m);
  if (!out.subset_of(cl)) return finding(MappingProperty::WithinClosure);
  if (cl == m && !(out == m)) return finding(MappingProperty::FixesClosed);
  if (!m.empty() && out.empty()) return finding(MappingProperty::NonEmpty);
  return std::nullopt;
}

bool MappingReport::violates(MappingProperty p) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const MappingFinding& f) { return f.property == p; });
}

MappingReport validate_mapping(const BetaMapping& f,
                               const MappingBounds& bounds) {
  const auto& u = bounds.universe;
  require_enumerable(*u, 4);
  const std::size_t count = std::size_t{1} << u->size();
  const std::uint64_t subsets = std::uint64_t{1} << count;

  std::vector<ModelSet> all_sets;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::vector<Bits> members;
    for (std::size_t i = 0; i < count; ++i)
      if ((mask >> i) & 1U) members.push_back(static_cast<Bits>(i));
    all_sets.emplace_back(u, std::move(members));
  }
  std::vector<ModelSet> non_empty(all_sets.begin() + 1, all_sets.end());

  std::vector<std::vector<ModelSet>> contexts{{}};
  for (const auto& p : profiles_up_to(non_empty, bounds.max_context))
    contexts.push_back(p.mmod());

  MappingReport report;
  for (const auto& m : all_sets) {
    for (const auto& x : contexts) {
      ++report.cases_checked;
      // Each property is checked in isolation so every violated property
      // gets its own first witness.
      ModelSet out = f.fn(m, x);
      const ModelSet cl = closure(f.beta, m);
      auto record = [&](MappingProperty p) {
        if (!report.violates(p)) report.violations.push_back({p, m, x, out});
      };
      if (!is_closed(f.beta, out)) record(MappingProperty::ClosedOutput);
      if (!out.subset_of(cl)) record(MappingProperty::WithinClosure);
      if (cl == m && !(out == m)) record(MappingProperty::FixesClosed);
      if (!m.empty() && out.empty()) record(MappingProperty::NonEmpty);
    }
  }
  return report;
}

BetaMapping closure_mapping(BooleanFn beta) {
  std::string label = "closure(" + beta.name() + ")";
  auto fn = [beta](const ModelSet& m, std::span<const ModelSet>) {
    return closure(beta, m);
  };
  return BetaMapping{std::move(label), std::move(beta), std::move(fn)};
}

BetaMapping lex_mapping(BooleanFn beta, LexOrder order) {
  std::string label = "lex(" + beta.name() + ")";
  auto fn = [beta, order = std::move(order)](const ModelSet& m,
                                             std::span<const ModelSet>) {
    return lex_refine(beta, order, m);
  };
  return BetaMapping{std::move(label), std::move(beta), std::move(fn)};
}

// ---------------------------------------------------------------------------
// Refinement properties

std::string to_string(RefinementProperty p) {
  switch (p) {
    case RefinementProperty::Consistency:
      return "consistency";
    case RefinementProperty::Equivalence:
      return "equivalence";
    case RefinementProperty::Containment:
      return "containment";
    case RefinementProperty::Invariance:
      return "invariance";
  }
  return "?";
}

bool RefinementReport::holds(RefinementProperty p) const {
  return std::none_of(violations.begin(), violations.end(),
                      [&](const RefinementFinding& f) { return f.property == p; });
}

RefinementReport check_refinement_properties(
    const MergeOperator& base, const MergeOperator& refined,
    const BooleanFn& beta, std::span<const Instance> instances) {
  RefinementReport report;
  auto record = [&](RefinementFinding finding) {
    if (report.holds(finding.property))
      report.violations.push_back(std::move(finding));
  };

  struct Seen {
    std::size_t index;
    ModelSet refined_out;
  };
  std::map<Key, Seen> by_key;

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    ++report.instances_checked;
    const ModelSet out = base(inst.profile, inst.mu);
    const ModelSet ref = refined(inst.profile, inst.mu);

    if (out.empty() != ref.empty())
      record({RefinementProperty::Consistency, inst, out, ref, {}, {}});
    if (!ref.subset_of(closure(beta, out)))
      record({RefinementProperty::Containment, inst, out, ref, {}, {}});
    if (is_closed(beta, out) && !out.subset_of(ref))
      record({RefinementProperty::Invariance, inst, out, ref, {}, {}});

    // Reversed presentation of the same profile.
    std::vector<Base> reversed(inst.profile.bases().rbegin(),
                               inst.profile.bases().rend());
    Instance mirror{Profile(std::move(reversed)), inst.mu};
    const ModelSet mirror_out = base(mirror.profile, mirror.mu);
    if (mirror_out == out) {
      ++report.equivalence_pairs_checked;
      ModelSet mirror_ref = refined(mirror.profile, mirror.mu);
      if (!(mirror_ref == ref))
        record({RefinementProperty::Equivalence, inst, out, ref, mirror,
                mirror_ref});
    }

    // Any earlier instance with an equivalent profile and the same base
    // output (possibly under a different constraint).
    auto [it, inserted] =
        by_key.try_emplace(equivalence_key(inst.profile, out), Seen{i, ref});
    if (!inserted) {
      ++report.equivalence_pairs_checked;
      if (!(it->second.refined_out == ref))
        record({RefinementProperty::Equivalence, inst, out, ref,
                instances[it->second.index], it->second.refined_out});
    }
  }
  return report;
}

FairnessReport is_fair(const MergeOperator& base, const MergeOperator& refined,
                       std::span<const Instance> instances) {
  FairnessReport report;
  for (const auto& inst : instances) {
    ++report.instances_checked;
    ModelSet out = base(inst.profile, inst.mu);
    const std::size_t before = cardintersection(out, inst.profile);
    if (before == 1) continue;
    ModelSet ref = refined(inst.profile, inst.mu);
    const std::size_t after = cardintersection(ref, inst.profile);
    if (after == 1)
      report.violations.push_back(
          {inst, std::move(out), std::move(ref), before, after});
  }
  return report;
}

}  // namespace fragmerge
