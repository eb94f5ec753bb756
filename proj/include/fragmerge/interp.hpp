#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragmerge/errors.hpp"

namespace fragmerge {

// Interpretations are bit patterns: bit i is the truth value of atom i, so an
// atom declared earlier carries a lower weight. Over (a,b) the integer order is
// {} < {a} < {b} < {a,b}.
using Bits = std::uint32_t;

inline constexpr std::size_t kMaxAtoms = 24;
inline constexpr std::size_t kDefaultAtomCap = 16;

class Universe {
 public:
  explicit Universe(std::vector<std::string> atoms);

  static std::shared_ptr<const Universe> make(std::vector<std::string> atoms);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& name(std::size_t i) const { return atoms_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  Bits full_mask() const;

  bool operator==(const Universe&) const = default;

 private:
  std::vector<std::string> atoms_;
};

using UniversePtr = std::shared_ptr<const Universe>;

bool same_universe(const UniversePtr& a, const UniversePtr& b);
void require_same_universe(const UniversePtr& a, const UniversePtr& b);

// Throws UniverseTooLarge when 2^|U| enumeration would exceed `cap` atoms.
void require_enumerable(const Universe& u, std::size_t cap = kDefaultAtomCap);

class Interpretation {
 public:
  Interpretation(UniversePtr universe, Bits bits);

  static Interpretation of(UniversePtr universe,
                           std::initializer_list<std::string_view> true_atoms);

  const UniversePtr& universe() const { return universe_; }
  Bits bits() const { return bits_; }
  bool holds(std::size_t atom) const { return (bits_ >> atom) & 1U; }

  std::string to_string() const;

  bool operator==(const Interpretation& other) const;

 private:
  UniversePtr universe_;
  Bits bits_;
};

std::string render_interpretation(const Universe& u, Bits bits);

// A set of interpretations over one universe, kept sorted by bit value.
class ModelSet {
 public:
  explicit ModelSet(UniversePtr universe);
  ModelSet(UniversePtr universe, std::vector<Bits> members);
  ModelSet(UniversePtr universe,
           std::initializer_list<std::initializer_list<std::string_view>> sets);

  static ModelSet all(UniversePtr universe, std::size_t cap = kDefaultAtomCap);

  const UniversePtr& universe() const { return universe_; }
  std::span<const Bits> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(Bits bits) const;
  bool contains(const Interpretation& w) const;
  bool subset_of(const ModelSet& other) const;
  bool intersects(const ModelSet& other) const;

  ModelSet intersect(const ModelSet& other) const;
  ModelSet unite(const ModelSet& other) const;

  std::vector<Interpretation> interpretations() const;

  // Set-of-sets notation sorted by weight, e.g. "{}, {a}, {b}". The empty
  // model set renders as "(empty)".
  std::string to_string() const;

  bool operator==(const ModelSet& other) const;

 private:
  UniversePtr universe_;
  std::vector<Bits> members_;
};

// Parses "{a,b}" / "{}" into an interpretation of `u`.
Bits parse_interpretation(const Universe& u, std::string_view text);
// Parses a whitespace- or comma-separated list of "{...}" groups.
std::vector<Bits> parse_interpretation_list(const Universe& u,
                                            std::string_view text);

// A symmetric, 0-/1-reproducing Boolean function stored as a full truth
// table. Table index bit (arity-1-j) holds argument j, so the table lists
// rows in the usual x1..xk order.
class BooleanFn {
 public:
  unsigned arity() const { return arity_; }
  const std::string& name() const { return name_; }
  const std::vector<bool>& table() const { return table_; }

  bool evaluate(const std::vector<bool>& args) const;
  // Output as a function of the number of 1-inputs.
  bool by_weight(unsigned ones) const { return by_weight_[ones]; }

  // Coordinate-wise application over `width` bits.
  Bits apply(std::span<const Bits> args, std::size_t width) const;

  static const BooleanFn& conjunction();
  static const BooleanFn& majority3();

  bool operator==(const BooleanFn& other) const {
    return arity_ == other.arity_ && table_ == other.table_;
  }

 private:
  friend BooleanFn validate_boolean_fn(std::vector<bool>, unsigned,
                                       std::string);
  BooleanFn() = default;

  unsigned arity_ = 0;
  std::vector<bool> table_;
  std::vector<bool> by_weight_;
  std::string name_;
};

inline constexpr unsigned kMaxArity = 16;

BooleanFn validate_boolean_fn(std::vector<bool> table, unsigned arity,
                              std::string name = {});

Interpretation apply_pointwise(const BooleanFn& beta,
                               std::span<const Interpretation> args);

ModelSet closure(const BooleanFn& beta, const ModelSet& m);
bool is_closed(const BooleanFn& beta, const ModelSet& m);
// A multiset of members whose image lies outside `m`, if any.
std::optional<std::vector<Bits>> closure_witness(const BooleanFn& beta,
                                                 const ModelSet& m);

// All model sets over `u` closed under `beta`, in increasing order of their
// member bitmask. Only feasible for tiny universes (|U| <= 4).
std::vector<ModelSet> closed_model_sets(const BooleanFn& beta,
                                        const UniversePtr& u,
                                        bool include_empty = false);

enum class ClauseClass { Horn, Krom };

// A characterizable fragment: the model sets of its formulas are exactly the
// sets closed under `beta`. Horn and Krom also carry a syntactic clause class.
struct Fragment {
  std::string name;
  BooleanFn beta;
  std::optional<ClauseClass> clause_class;

  // Syntactic clause test by literal counts.
  bool admits_clause(std::size_t literals, std::size_t positives) const;

  static Fragment horn();
  static Fragment krom();
  static Fragment closure_defined(BooleanFn beta, std::string name);
};

}  // namespace fragmerge
