#include "fragmerge/interp.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_set>

namespace fragmerge {

namespace {

bool valid_atom_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
    return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::islower(u) || std::isdigit(u) || c == '_';
  });
}

std::string render_inputs(std::size_t index, unsigned arity) {
  std::string s = "(";
  for (unsigned j = 0; j < arity; ++j) {
    if (j) s += ',';
    s += ((index >> (arity - 1 - j)) & 1U) ? '1' : '0';
  }
  return s + ")";
}

// Visits every non-decreasing index tuple of length `len` over [0, bound).
template <class Fn>
void for_each_multiset(std::size_t bound, std::size_t len, Fn&& fn) {
  if (bound == 0) return;
  std::vector<std::size_t> idx(len, 0);
  while (true) {
    fn(idx);
    std::size_t p = len;
    while (p > 0 && idx[p - 1] + 1 == bound) --p;
    if (p == 0) return;
    ++idx[p - 1];
    for (std::size_t q = p; q < len; ++q) idx[q] = idx[p - 1];
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Universe

Universe::Universe(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error("universe must declare at least one atom");
  if (atoms_.size() > kMaxAtoms)
    throw UniverseTooLarge(atoms_.size(), kMaxAtoms);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!valid_atom_name(atoms_[i]))
      throw Error("invalid atom name '" + atoms_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (atoms_[j] == atoms_[i])
        throw Error("duplicate atom '" + atoms_[i] + "'");
  }
}

std::shared_ptr<const Universe> Universe::make(std::vector<std::string> atoms) {
  return std::make_shared<const Universe>(std::move(atoms));
}

std::optional<std::size_t> Universe::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == name) return i;
  return std::nullopt;
}

Bits Universe::full_mask() const {
  return atoms_.size() == 32 ? ~Bits{0} : ((Bits{1} << atoms_.size()) - 1);
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (!same_universe(a, b)) throw UniverseMismatch();
}

void require_enumerable(const Universe& u, std::size_t cap) {
  cap = std::min(cap, kMaxAtoms);
  if (u.size() > cap) throw UniverseTooLarge(u.size(), cap);
}

// ---------------------------------------------------------------------------
// Interpretation

Interpretation::Interpretation(UniversePtr universe, Bits bits)
    : universe_(std::move(universe)), bits_(bits) {
  if (!universe_) throw Error("interpretation requires a universe");
  if (bits_ & ~universe_->full_mask())
    throw Error("interpretation has bits outside its universe");
}

Interpretation Interpretation::of(
    UniversePtr universe, std::initializer_list<std::string_view> true_atoms) {
  Bits bits = 0;
  for (auto name : true_atoms) {
    auto i = universe->index_of(name);
    if (!i) throw UnknownAtom(std::string(name));
    bits |= Bits{1} << *i;
  }
  return Interpretation(std::move(universe), bits);
}

std::string Interpretation::to_string() const {
  return render_interpretation(*universe_, bits_);
}

bool Interpretation::operator==(const Interpretation& other) const {
  return bits_ == other.bits_ && same_universe(universe_, other.universe_);
}

std::string render_interpretation(const Universe& u, Bits bits) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!((bits >> i) & 1U)) continue;
    if (!first) s += ',';
    s += u.name(i);
    first = false;
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// ModelSet

ModelSet::ModelSet(UniversePtr universe) : universe_(std::move(universe)) {
  if (!universe_) throw Error("model set requires a universe");
}

ModelSet::ModelSet(UniversePtr universe, std::vector<Bits> members)
    : universe_(std::move(universe)), members_(std::move(members)) {
  if (!universe_) throw Error("model set requires a universe");
  const Bits mask = universe_->full_mask();
  for (Bits b : members_)
    if (b & ~mask) throw Error("model set member has bits outside universe");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

ModelSet::ModelSet(
    UniversePtr universe,
    std::initializer_list<std::initializer_list<std::string_view>> sets)
    : ModelSet(universe) {
  for (const auto& set : sets) {
    Bits bits = 0;
    for (auto name : set) {
      auto i = universe_->index_of(name);
      if (!i) throw UnknownAtom(std::string(name));
      bits |= Bits{1} << *i;
    }
    members_.push_back(bits);
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

ModelSet ModelSet::all(UniversePtr universe, std::size_t cap) {
  require_enumerable(*universe, cap);
  std::vector<Bits> members(std::size_t{1} << universe->size());
  for (std::size_t i = 0; i < members.size(); ++i)
    members[i] = static_cast<Bits>(i);
  return ModelSet(std::move(universe), std::move(members));
}

bool ModelSet::contains(Bits bits) const {
  return std::binary_search(members_.begin(), members_.end(), bits);
}

bool ModelSet::contains(const Interpretation& w) const {
  require_same_universe(universe_, w.universe());
  return contains(w.bits());
}

bool ModelSet::subset_of(const ModelSet& other) const {
  require_same_universe(universe_, other.universe_);
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

bool ModelSet::intersects(const ModelSet& other) const {
  require_same_universe(universe_, other.universe_);
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

ModelSet ModelSet::intersect(const ModelSet& other) const {
  require_same_universe(universe_, other.universe_);
  std::vector<Bits> out;
  std::set_intersection(members_.begin(), members_.end(),
                        other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  return ModelSet(universe_, std::move(out));
}

ModelSet ModelSet::unite(const ModelSet& other) const {
  require_same_universe(universe_, other.universe_);
  std::vector<Bits> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  return ModelSet(universe_, std::move(out));
}

std::vector<Interpretation> ModelSet::interpretations() const {
  std::vector<Interpretation> out;
  out.reserve(members_.size());
  for (Bits b : members_) out.emplace_back(universe_, b);
  return out;
}

std::string ModelSet::to_string() const {
  if (members_.empty()) return "(empty)";
  std::string s;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ", ";
    s += render_interpretation(*universe_, members_[i]);
  }
  return s;
}

bool ModelSet::operator==(const ModelSet& other) const {
  return members_ == other.members_ &&
         same_universe(universe_, other.universe_);
}

Bits parse_interpretation(const Universe& u, std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip();
  if (pos >= text.size() || text[pos] != '{')
    throw SyntaxError(pos, "expected '{'");
  ++pos;
  Bits bits = 0;
  skip();
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    while (true) {
      skip();
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_'))
        ++pos;
      if (start == pos) throw SyntaxError(pos, "expected atom name");
      std::string name(text.substr(start, pos - start));
      auto i = u.index_of(name);
      if (!i) throw UnknownAtom(name);
      bits |= Bits{1} << *i;
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        break;
      }
      throw SyntaxError(pos, "expected ',' or '}'");
    }
  }
  skip();
  if (pos != text.size()) throw SyntaxError(pos, "trailing input");
  return bits;
}

std::vector<Bits> parse_interpretation_list(const Universe& u,
                                            std::string_view text) {
  std::vector<Bits> out;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) ||
            text[pos] == ','))
      ++pos;
    if (pos >= text.size()) break;
    if (text[pos] != '{') throw SyntaxError(pos, "expected '{'");
    std::size_t close = text.find('}', pos);
    if (close == std::string_view::npos)
      throw SyntaxError(text.size(), "unterminated interpretation");
    try {
      out.push_back(parse_interpretation(u, text.substr(pos, close - pos + 1)));
    } catch (const SyntaxError& e) {
      throw SyntaxError(pos + e.position(), "malformed interpretation");
    }
    pos = close + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// BooleanFn

BooleanFn validate_boolean_fn(std::vector<bool> table, unsigned arity,
                              std::string name) {
  if (arity == 0 || arity > kMaxArity)
    throw ArityMismatch("arity must be between 1 and " +
                        std::to_string(kMaxArity));
  const std::size_t rows = std::size_t{1} << arity;
  if (table.size() != rows)
    throw ArityMismatch("truth table has " + std::to_string(table.size()) +
                        " rows, expected " + std::to_string(rows));

  if (table[0]) throw NotReproducing(render_inputs(0, arity));
  if (!table[rows - 1]) throw NotReproducing(render_inputs(rows - 1, arity));

  // Symmetric iff the output depends only on the number of 1-inputs.
  std::vector<std::optional<std::size_t>> first_of_weight(arity + 1);
  std::vector<bool> by_weight(arity + 1, false);
  for (std::size_t row = 0; row < rows; ++row) {
    auto w = static_cast<unsigned>(std::popcount(row));
    if (!first_of_weight[w]) {
      first_of_weight[w] = row;
      by_weight[w] = table[row];
    } else if (table[row] != by_weight[w]) {
      throw NotSymmetric(render_inputs(*first_of_weight[w], arity),
                         render_inputs(row, arity));
    }
  }

  BooleanFn fn;
  fn.arity_ = arity;
  fn.table_ = std::move(table);
  fn.by_weight_ = std::move(by_weight);
  fn.name_ = std::move(name);
  return fn;
}

bool BooleanFn::evaluate(const std::vector<bool>& args) const {
  if (args.size() != arity_)
    throw ArityMismatch("expected " + std::to_string(arity_) + " arguments");
  std::size_t row = 0;
  for (bool a : args) row = (row << 1) | (a ? 1U : 0U);
  return table_[row];
}

Bits BooleanFn::apply(std::span<const Bits> args, std::size_t width) const {
  Bits out = 0;
  for (std::size_t i = 0; i < width; ++i) {
    unsigned ones = 0;
    for (Bits a : args) ones += (a >> i) & 1U;
    if (by_weight_[ones]) out |= Bits{1} << i;
  }
  return out;
}

const BooleanFn& BooleanFn::conjunction() {
  static const BooleanFn fn =
      validate_boolean_fn({false, false, false, true}, 2, "and");
  return fn;
}

const BooleanFn& BooleanFn::majority3() {
  static const BooleanFn fn = validate_boolean_fn(
      {false, false, false, true, false, true, true, true}, 3, "maj3");
  return fn;
}

// ---------------------------------------------------------------------------
// Closure

Interpretation apply_pointwise(const BooleanFn& beta,
                               std::span<const Interpretation> args) {
  if (args.size() != beta.arity())
    throw ArityMismatch("expected " + std::to_string(beta.arity()) +
                        " interpretations, got " +
                        std::to_string(args.size()));
  std::vector<Bits> bits;
  bits.reserve(args.size());
  for (const auto& w : args) {
    require_same_universe(args.front().universe(), w.universe());
    bits.push_back(w.bits());
  }
  const auto& u = args.front().universe();
  return Interpretation(u, beta.apply(bits, u->size()));
}

ModelSet closure(const BooleanFn& beta, const ModelSet& m) {
  const std::size_t width = m.universe()->size();
  const std::size_t k = beta.arity();
  std::vector<Bits> items(m.members().begin(), m.members().end());
  std::unordered_set<Bits> seen(items.begin(), items.end());
  std::vector<Bits> args(k);

  // Each multiset over the growing list is visited exactly once: when its
  // largest index j is processed, with the other k-1 indices drawn from [0, j].
  for (std::size_t j = 0; j < items.size(); ++j) {
    const Bits newest = items[j];
    auto visit = [&](const std::vector<std::size_t>& idx) {
      for (std::size_t q = 0; q < idx.size(); ++q) args[q] = items[idx[q]];
      args[k - 1] = newest;
      Bits r = beta.apply(args, width);
      if (seen.insert(r).second) items.push_back(r);
    };
    if (k == 1) {
      visit({});
    } else {
      for_each_multiset(j + 1, k - 1, visit);
    }
  }
  return ModelSet(m.universe(), std::move(items));
}

std::optional<std::vector<Bits>> closure_witness(const BooleanFn& beta,
                                                 const ModelSet& m) {
  const std::size_t width = m.universe()->size();
  auto members = m.members();
  std::vector<Bits> args(beta.arity());
  std::optional<std::vector<Bits>> witness;
  // for_each_multiset has no early exit; the closed case dominates in
  // practice and must visit everything anyway.
  for_each_multiset(members.size(), beta.arity(),
                    [&](const std::vector<std::size_t>& idx) {
                      if (witness) return;
                      for (std::size_t q = 0; q < idx.size(); ++q)
                        args[q] = members[idx[q]];
                      if (!m.contains(beta.apply(args, width))) witness = args;
                    });
  return witness;
}

bool is_closed(const BooleanFn& beta, const ModelSet& m) {
  return !closure_witness(beta, m).has_value();
}

std::vector<ModelSet> closed_model_sets(const BooleanFn& beta,
                                        const UniversePtr& u,
                                        bool include_empty) {
  require_enumerable(*u, 4);
  const std::size_t count = std::size_t{1} << u->size();
  const std::uint64_t subsets = std::uint64_t{1} << count;
  std::vector<ModelSet> out;
  for (std::uint64_t mask = include_empty ? 0 : 1; mask < subsets; ++mask) {
    std::vector<Bits> members;
    for (std::size_t i = 0; i < count; ++i)
      if ((mask >> i) & 1U) members.push_back(static_cast<Bits>(i));
    ModelSet m(u, std::move(members));
    if (is_closed(beta, m)) out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fragment

bool Fragment::admits_clause(std::size_t literals,
                             std::size_t positives) const {
  if (!clause_class) return false;
  switch (*clause_class) {
    case ClauseClass::Horn:
      return positives <= 1;
    case ClauseClass::Krom:
      return literals <= 2;
  }
  return false;
}

Fragment Fragment::horn() {
  return Fragment{"horn", BooleanFn::conjunction(), ClauseClass::Horn};
}

Fragment Fragment::krom() {
  return Fragment{"krom", BooleanFn::majority3(), ClauseClass::Krom};
}

Fragment Fragment::closure_defined(BooleanFn beta, std::string name) {
  return Fragment{std::move(name), std::move(beta), std::nullopt};
}

}  // namespace fragmerge
