#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fragmerge/merge.hpp"
#include "fragmerge/refine.hpp"

namespace fragmerge {

enum class PostulateId { IC0, IC1, IC2, IC3, IC4, IC5, IC6, IC7, IC8 };

std::string to_string(PostulateId id);
std::optional<PostulateId> parse_postulate(std::string_view text);
// Comma-separated list of ids or ranges, e.g. "ic0-ic3,ic5". Throws Error on
// unknown names.
std::vector<PostulateId> parse_postulate_list(std::string_view text);

// Inputs of a single postulate check. Shapes:
//   IC0-IC2: one profile, one constraint
//   IC3:     one profile and one constraint (a reversed presentation is
//            generated), or two equivalent profiles and two equal constraints
//   IC4:     one profile of exactly two bases, both entailing the constraint
//   IC5/IC6: two profiles, one constraint
//   IC7/IC8: one profile, two constraints
struct PostulateCase {
  std::vector<Profile> profiles;
  std::vector<ModelSet> constraints;

  std::string encode() const;
};

struct Witness {
  PostulateId postulate;
  PostulateCase instance;
  // Operator outputs involved in the violation, by name.
  std::vector<std::pair<std::string, ModelSet>> outputs;
  std::string explanation;

  std::string render() const;
};

// Model-level check: entailment is inclusion, conjunction is intersection and
// consistency is non-emptiness. Throws ShapeMismatch for malformed cases.
std::optional<Witness> check_postulate(PostulateId id, const MergeOperator& op,
                                       const PostulateCase& instance);

// Re-runs the operator on the witness instance; true iff the same violation
// with the same outputs is reproduced.
bool reproduces(const Witness& w, const MergeOperator& op);

enum class FragmentChoice { Horn, Krom, None };

std::string to_string(FragmentChoice f);
std::optional<FragmentChoice> parse_fragment(std::string_view text);
std::optional<Fragment> fragment_of(FragmentChoice f);

struct SearchSpace {
  std::size_t atoms = 2;
  FragmentChoice fragment = FragmentChoice::Horn;
  std::size_t max_profile_size = 2;
  std::vector<PostulateId> postulates;
  // 0 means report every witness.
  std::size_t max_witnesses = 0;
  std::uint64_t max_instances = 50'000'000;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

inline constexpr std::size_t kMaxSearchAtoms = 4;

// Non-empty model sets usable as bases and constraints: closed under the
// fragment's function, or every non-empty set for FragmentChoice::None.
// Cached per (fragment, atom count).
const std::vector<ModelSet>& fragment_model_sets(FragmentChoice f,
                                                 std::size_t atoms);

UniversePtr search_universe(std::size_t atoms);

std::uint64_t count_instances(const SearchSpace& space);

// Every (profile, constraint) pair of the space with profiles up to the size
// bound, in enumeration order.
std::vector<Instance> enumerate_instances(const SearchSpace& space);

// Exhaustive counterexample search; witnesses are ordered by postulate and
// then by instance index. Throws SpaceTooLarge when the space exceeds its
// caps.
std::vector<Witness> search(const SearchSpace& space, const MergeOperator& op);

// ---------------------------------------------------------------------------
// Reproduction fixtures

struct FixtureCell {
  std::string expected;
  std::string actual;
  bool pass() const { return expected == actual; }
};

struct FixtureTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::string> row_labels;
  std::vector<std::vector<FixtureCell>> rows;
};

struct FixtureCheck {
  std::string label;
  FixtureCell cell;
};

struct FixtureReport {
  std::string id;
  std::string title;
  std::vector<FixtureTable> tables;
  std::vector<FixtureCheck> checks;
  // Violation traces and other context lines.
  std::vector<std::string> notes;

  bool passed() const;
  std::size_t cell_count() const;
  std::string render_text() const;
  // One tab-separated record per cell.
  std::string render_machine() const;
};

std::vector<std::string> fixture_catalog();
FixtureReport reproduce(std::string_view fixture_id);

}  // namespace fragmerge
