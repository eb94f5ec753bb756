#include "fragmerge/merge.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fragmerge {

// ---------------------------------------------------------------------------
// CountingDistance

CountingDistance::CountingDistance(Kind kind, std::vector<std::uint64_t> table,
                                   std::string name)
    : kind_(kind), table_(std::move(table)), name_(std::move(name)) {}

CountingDistance CountingDistance::hamming() {
  return CountingDistance(Kind::Hamming, {}, "hamming");
}

CountingDistance CountingDistance::drastic() {
  return CountingDistance(Kind::Drastic, {}, "drastic");
}

CountingDistance CountingDistance::table(std::vector<std::uint64_t> g_from_one) {
  if (g_from_one.empty())
    throw InvalidDistance("distance table needs at least g(1)");
  std::vector<std::uint64_t> g{0};
  for (auto v : g_from_one) {
    if (v == 0) throw InvalidDistance("g(n) must be positive for n > 0");
    if (v < g.back()) throw InvalidDistance("g must be nondecreasing");
    g.push_back(v);
  }
  std::string name = "table:";
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (i > 1) name += ',';
    name += std::to_string(g[i]);
  }
  return CountingDistance(Kind::Table, std::move(g), std::move(name));
}

std::size_t CountingDistance::max_defined() const {
  return kind_ == Kind::Table ? table_.size() - 1
                              : std::numeric_limits<std::size_t>::max();
}

std::uint64_t CountingDistance::g(std::size_t n) const {
  switch (kind_) {
    case Kind::Hamming:
      return n;
    case Kind::Drastic:
      return n == 0 ? 0 : 1;
    case Kind::Table:
      if (n >= table_.size())
        throw InvalidDistance("distance table does not define g(" +
                              std::to_string(n) + ")");
      return table_[n];
  }
  return 0;
}

std::uint64_t CountingDistance::operator()(Bits a, Bits b) const {
  return g(static_cast<std::size_t>(std::popcount(a ^ b)));
}

// ---------------------------------------------------------------------------
// Base / Profile

Base::Base(ModelSet models, std::vector<Formula> source)
    : models_(std::move(models)), source_(std::move(source)) {
  if (models_.empty()) throw InconsistentBase("base has no models");
  for (const auto& f : source_) require_same_universe(universe(), f.universe());
}

Profile::Profile(std::vector<Base> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw EmptyInput("profile must contain a base");
  for (const auto& k : bases_)
    require_same_universe(bases_.front().universe(), k.universe());
}

Profile::Profile(std::initializer_list<ModelSet> bases)
    : Profile([&] {
        std::vector<Base> v;
        for (const auto& m : bases) v.emplace_back(m);
        return v;
      }()) {}

std::vector<ModelSet> Profile::mmod() const {
  std::vector<ModelSet> out;
  out.reserve(bases_.size());
  for (const auto& k : bases_) out.push_back(k.models());
  return out;
}

std::vector<ModelSet> Profile::canonical_mmod() const {
  auto out = mmod();
  std::sort(out.begin(), out.end(), [](const ModelSet& a, const ModelSet& b) {
    return std::lexicographical_compare(a.members().begin(), a.members().end(),
                                        b.members().begin(), b.members().end());
  });
  return out;
}

ModelSet Profile::conjunction() const {
  ModelSet acc = bases_.front().models();
  for (std::size_t i = 1; i < bases_.size(); ++i)
    acc = acc.intersect(bases_[i].models());
  return acc;
}

Profile join(const Profile& a, const Profile& b) {
  std::vector<Base> all = a.bases_;
  all.insert(all.end(), b.bases_.begin(), b.bases_.end());
  return Profile(std::move(all));
}

std::string Profile::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    if (i) s += "; ";
    s += bases_[i].models().to_string();
  }
  return s + "]";
}

bool equivalent(const Profile& a, const Profile& b) {
  return a.canonical_mmod() == b.canonical_mmod();
}

// ---------------------------------------------------------------------------
// Aggregation

std::string to_string(Aggregator f) {
  return f == Aggregator::Sum ? "sigma" : "gmax";
}

AggValue AggValue::descending(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return AggValue(std::move(v));
}

std::strong_ordering AggValue::operator<=>(const AggValue& other) const {
  if (v_.index() != other.v_.index())
    throw std::invalid_argument("comparing aggregate values of different kinds");
  if (is_scalar()) return scalar_value() <=> other.scalar_value();
  if (vector_value().size() != other.vector_value().size())
    throw std::invalid_argument("comparing GMax vectors of different lengths");
  return vector_value() <=> other.vector_value();
}

bool AggValue::operator==(const AggValue& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

std::string AggValue::to_string() const {
  if (is_scalar()) return std::to_string(scalar_value());
  std::string s = "(";
  const auto& v = vector_value();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

AggValue aggregate(Aggregator f, std::span<const std::uint64_t> dists) {
  if (dists.empty()) throw EmptyInput("aggregation of an empty distance list");
  if (f == Aggregator::Sum)
    return AggValue::scalar(
        std::accumulate(dists.begin(), dists.end(), std::uint64_t{0}));
  return AggValue::descending({dists.begin(), dists.end()});
}

// ---------------------------------------------------------------------------
// Distances

std::uint64_t dist_interp(const CountingDistance& d, const Interpretation& w,
                          const Interpretation& w2) {
  require_same_universe(w.universe(), w2.universe());
  return d(w.bits(), w2.bits());
}

std::uint64_t dist_to_models(const CountingDistance& d, Bits w,
                             const ModelSet& models) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (Bits m : models.members()) best = std::min(best, d(w, m));
  return best;
}

std::uint64_t dist_base(const CountingDistance& d, const Interpretation& w,
                        const Base& k) {
  require_same_universe(w.universe(), k.universe());
  return dist_to_models(d, w.bits(), k.models());
}

AggValue score(const CountingDistance& d, Aggregator f, Bits w,
               const Profile& e) {
  std::vector<std::uint64_t> dists;
  dists.reserve(e.size());
  for (const auto& k : e.bases()) dists.push_back(dist_to_models(d, w, k.models()));
  return aggregate(f, dists);
}

ModelSet merge(const Profile& e, const ModelSet& mu, const CountingDistance& d,
               Aggregator f) {
  require_same_universe(e.universe(), mu.universe());
  if (mu.universe()->size() > d.max_defined())
    throw InvalidDistance("distance table covers " +
                          std::to_string(d.max_defined()) +
                          " atoms, universe has " +
                          std::to_string(mu.universe()->size()));
  std::vector<Bits> best;
  std::optional<AggValue> best_value;
  for (Bits w : mu.members()) {
    AggValue v = score(d, f, w, e);
    if (!best_value || v < *best_value) {
      best_value = std::move(v);
      best.assign(1, w);
    } else if (v == *best_value) {
      best.push_back(w);
    }
  }
  return ModelSet(mu.universe(), std::move(best));
}

MergeOperator distance_operator(CountingDistance d, Aggregator f) {
  std::string label = d.name() + "," + to_string(f);
  return MergeOperator{std::move(label),
                       [d = std::move(d), f](const Profile& e,
                                             const ModelSet& mu) {
                         return merge(e, mu, d, f);
                       }};
}

std::vector<Profile> profiles_up_to(const std::vector<ModelSet>& bases,
                                    std::size_t max_size) {
  std::vector<Profile> out;
  const std::size_t n = bases.size();
  if (n == 0) return out;
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<std::size_t> idx(size, 0);
    while (true) {
      std::vector<Base> chosen;
      chosen.reserve(size);
      for (auto i : idx) chosen.emplace_back(bases[i]);
      out.emplace_back(std::move(chosen));
      std::size_t p = size;
      while (p > 0 && idx[p - 1] + 1 == n) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < size; ++q) idx[q] = idx[p - 1];
    }
  }
  return out;
}

}  // namespace fragmerge
