#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fragmerge/formula.hpp"
#include "fragmerge/interp.hpp"

namespace fragmerge {

// d(w, w') = g(|w xor w'|) for a nondecreasing g with g(n) = 0 iff n = 0.
class CountingDistance {
 public:
  static CountingDistance hamming();
  static CountingDistance drastic();
  // g(1), g(2), ... with g(0) = 0 implied.
  static CountingDistance table(std::vector<std::uint64_t> g_from_one);

  std::uint64_t g(std::size_t n) const;
  // Largest symmetric-difference size g is defined for (unbounded for the
  // builtin gauges).
  std::size_t max_defined() const;
  const std::string& name() const { return name_; }

  std::uint64_t operator()(Bits a, Bits b) const;

 private:
  enum class Kind { Hamming, Drastic, Table };
  CountingDistance(Kind kind, std::vector<std::uint64_t> table,
                   std::string name);

  Kind kind_;
  std::vector<std::uint64_t> table_;  // table_[n] = g(n), table_[0] = 0
  std::string name_;
};

// A consistent belief base: its models plus the formulas it was read from.
class Base {
 public:
  explicit Base(ModelSet models, std::vector<Formula> source = {});

  const ModelSet& models() const { return models_; }
  const std::vector<Formula>& source() const { return source_; }
  const UniversePtr& universe() const { return models_.universe(); }

 private:
  ModelSet models_;
  std::vector<Formula> source_;
};

// Non-empty multiset of bases over one universe. Order is kept for display;
// nothing in the library depends on it.
class Profile {
 public:
  explicit Profile(std::vector<Base> bases);
  Profile(std::initializer_list<ModelSet> bases);

  const std::vector<Base>& bases() const { return bases_; }
  std::size_t size() const { return bases_.size(); }
  const UniversePtr& universe() const { return bases_.front().universe(); }

  // Multiset of model sets, in profile order.
  std::vector<ModelSet> mmod() const;
  // Model sets sorted canonically; equal for equivalent profiles.
  std::vector<ModelSet> canonical_mmod() const;

  // Intersection of all base model sets.
  ModelSet conjunction() const;

  // Multiset union E1 ⊔ E2.
  friend Profile join(const Profile& a, const Profile& b);

  std::string to_string() const;

 private:
  std::vector<Base> bases_;
};

bool equivalent(const Profile& a, const Profile& b);

enum class Aggregator { Sum, GMax };

std::string to_string(Aggregator f);

// Result of aggregating per-base distances: a scalar for sum, the distances
// sorted non-increasingly for GMax (compared lexicographically).
class AggValue {
 public:
  static AggValue scalar(std::uint64_t v) { return AggValue(v); }
  static AggValue descending(std::vector<std::uint64_t> v);

  bool is_scalar() const { return std::holds_alternative<std::uint64_t>(v_); }
  std::uint64_t scalar_value() const { return std::get<std::uint64_t>(v_); }
  const std::vector<std::uint64_t>& vector_value() const {
    return std::get<std::vector<std::uint64_t>>(v_);
  }

  // Throws std::invalid_argument when the shapes differ.
  std::strong_ordering operator<=>(const AggValue& other) const;
  bool operator==(const AggValue& other) const;

  // "2" or "(1, 0)".
  std::string to_string() const;

 private:
  explicit AggValue(std::uint64_t v) : v_(v) {}
  explicit AggValue(std::vector<std::uint64_t> v) : v_(std::move(v)) {}
  std::variant<std::uint64_t, std::vector<std::uint64_t>> v_;
};

std::uint64_t dist_interp(const CountingDistance& d, const Interpretation& w,
                          const Interpretation& w2);
std::uint64_t dist_base(const CountingDistance& d, const Interpretation& w,
                        const Base& k);
AggValue aggregate(Aggregator f, std::span<const std::uint64_t> dists);

// Bit-level variants used by the hot loops.
std::uint64_t dist_to_models(const CountingDistance& d, Bits w,
                             const ModelSet& models);
AggValue score(const CountingDistance& d, Aggregator f, Bits w,
               const Profile& e);

// The interpretations of mu minimizing the aggregated distance to e.
ModelSet merge(const Profile& e, const ModelSet& mu, const CountingDistance& d,
               Aggregator f);

// A merging operator over model sets: (profile, constraint) -> result.
struct MergeOperator {
  std::string label;
  std::function<ModelSet(const Profile&, const ModelSet&)> fn;

  ModelSet operator()(const Profile& e, const ModelSet& mu) const {
    return fn(e, mu);
  }
};

MergeOperator distance_operator(CountingDistance d, Aggregator f);

// A profile/constraint pair, the input of a merging operator.
struct Instance {
  Profile profile;
  ModelSet mu;
};

// All multisets of size 1..max_size drawn from `bases`, in deterministic
// order (by size, then by non-decreasing index tuple).
std::vector<Profile> profiles_up_to(const std::vector<ModelSet>& bases,
                                    std::size_t max_size);

}  // namespace fragmerge
