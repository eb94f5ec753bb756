#include "fragmerge/postulates.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <thread>

namespace fragmerge {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void require_shape(bool ok, PostulateId id, const std::string& what) {
  if (!ok) throw ShapeMismatch(to_string(id) + " expects " + what);
}

Witness make_witness(PostulateId id, const PostulateCase& c,
                     std::vector<std::pair<std::string, ModelSet>> outputs,
                     std::string explanation) {
  return Witness{id, c, std::move(outputs), std::move(explanation)};
}

// Callback receives each case of one outer slice; returning false stops the
// slice early.
using CaseSink = std::function<bool(PostulateCase&&)>;

struct PostulatePlan {
  std::size_t outer = 0;
  std::function<void(std::size_t, const CaseSink&)> cases;
};

PostulatePlan plan_for(PostulateId id, const std::vector<ModelSet>& sets_ref,
                       const std::vector<Profile>& profiles_ref) {
  const auto* sets = &sets_ref;
  const auto* profiles = &profiles_ref;
  PostulatePlan plan;
  switch (id) {
    case PostulateId::IC0:
    case PostulateId::IC1:
    case PostulateId::IC2:
    case PostulateId::IC3:
      plan.outer = profiles->size();
      plan.cases = [sets, profiles](std::size_t i, const CaseSink& sink) {
        for (const auto& mu : *sets)
          if (!sink(PostulateCase{{(*profiles)[i]}, {mu}})) return;
      };
      break;
    case PostulateId::IC4:
      plan.outer = sets->size();
      plan.cases = [sets](std::size_t i, const CaseSink& sink) {
        const ModelSet& mu = (*sets)[i];
        std::vector<const ModelSet*> inside;
        for (const auto& k : *sets)
          if (k.subset_of(mu)) inside.push_back(&k);
        for (std::size_t a = 0; a < inside.size(); ++a)
          for (std::size_t b = a; b < inside.size(); ++b)
            if (!sink(PostulateCase{{Profile{*inside[a], *inside[b]}}, {mu}}))
              return;
      };
      break;
    case PostulateId::IC5:
    case PostulateId::IC6:
      plan.outer = profiles->size();
      plan.cases = [sets, profiles](std::size_t i, const CaseSink& sink) {
        for (std::size_t j = i; j < profiles->size(); ++j)
          for (const auto& mu : *sets)
            if (!sink(PostulateCase{{(*profiles)[i], (*profiles)[j]}, {mu}}))
              return;
      };
      break;
    case PostulateId::IC7:
    case PostulateId::IC8:
      plan.outer = profiles->size();
      plan.cases = [sets, profiles](std::size_t i, const CaseSink& sink) {
        for (const auto& mu1 : *sets)
          for (const auto& mu2 : *sets)
            if (!sink(PostulateCase{{(*profiles)[i]}, {mu1, mu2}})) return;
      };
      break;
  }
  return plan;
}

}  // namespace

// ---------------------------------------------------------------------------
// Identifiers

std::string to_string(PostulateId id) {
  return "IC" + std::to_string(static_cast<int>(id));
}

std::optional<PostulateId> parse_postulate(std::string_view text) {
  std::string s = lower(text);
  if (s.size() != 3 || s[0] != 'i' || s[1] != 'c' || s[2] < '0' || s[2] > '8')
    return std::nullopt;
  return static_cast<PostulateId>(s[2] - '0');
}

std::vector<PostulateId> parse_postulate_list(std::string_view text) {
  std::vector<PostulateId> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    std::size_t dash = item.find('-');
    if (dash == std::string_view::npos) {
      auto id = parse_postulate(item);
      if (!id) throw Error("unknown postulate '" + std::string(item) + "'");
      out.push_back(*id);
    } else {
      auto from = parse_postulate(item.substr(0, dash));
      auto to = parse_postulate(item.substr(dash + 1));
      if (!from || !to || *to < *from)
        throw Error("bad postulate range '" + std::string(item) + "'");
      for (int i = static_cast<int>(*from); i <= static_cast<int>(*to); ++i)
        out.push_back(static_cast<PostulateId>(i));
    }
    pos = comma + 1;
  }
  std::vector<PostulateId> unique;
  for (auto id : out)
    if (std::find(unique.begin(), unique.end(), id) == unique.end())
      unique.push_back(id);
  return unique;
}

std::string to_string(FragmentChoice f) {
  switch (f) {
    case FragmentChoice::Horn:
      return "horn";
    case FragmentChoice::Krom:
      return "krom";
    case FragmentChoice::None:
      return "none";
  }
  return "?";
}

std::optional<FragmentChoice> parse_fragment(std::string_view text) {
  std::string s = lower(text);
  if (s == "horn") return FragmentChoice::Horn;
  if (s == "krom") return FragmentChoice::Krom;
  if (s == "none") return FragmentChoice::None;
  return std::nullopt;
}

std::optional<Fragment> fragment_of(FragmentChoice f) {
  switch (f) {
    case FragmentChoice::Horn:
      return Fragment::horn();
    case FragmentChoice::Krom:
      return Fragment::krom();
    case FragmentChoice::None:
      return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cases and witnesses

std::string PostulateCase::encode() const {
  std::string s;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (i) s += ' ';
    s += "E" + std::to_string(i + 1) + "=" + profiles[i].to_string();
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    s += " mu" + (constraints.size() > 1 ? std::to_string(i + 1) : "") + "=[" +
         constraints[i].to_string() + "]";
  }
  return s;
}

std::string Witness::render() const {
  std::string s = to_string(postulate) + " violated: " + explanation + "\n";
  s += "  instance: " + instance.encode() + "\n";
  for (const auto& [name, set] : outputs)
    s += "  " + name + " = " + set.to_string() + "\n";
  return s;
}

std::optional<Witness> check_postulate(PostulateId id, const MergeOperator& op,
                                       const PostulateCase& c) {
  const auto& ps = c.profiles;
  const auto& cs = c.constraints;
  for (const auto& p : ps)
    for (const auto& mu : cs) require_same_universe(p.universe(), mu.universe());

  switch (id) {
    case PostulateId::IC0: {
      require_shape(ps.size() == 1 && cs.size() == 1, id,
                    "one profile and one constraint");
      ModelSet out = op(ps[0], cs[0]);
      if (out.subset_of(cs[0])) return std::nullopt;
      return make_witness(id, c, {{"out", out}}, "result does not entail mu");
    }
    case PostulateId::IC1: {
      require_shape(ps.size() == 1 && cs.size() == 1, id,
                    "one profile and one constraint");
      if (cs[0].empty()) return std::nullopt;
      ModelSet out = op(ps[0], cs[0]);
      if (!out.empty()) return std::nullopt;
      return make_witness(id, c, {{"out", out}},
                          "mu is consistent but the result is not");
    }
    case PostulateId::IC2: {
      require_shape(ps.size() == 1 && cs.size() == 1, id,
                    "one profile and one constraint");
      ModelSet expected = ps[0].conjunction().intersect(cs[0]);
      if (expected.empty()) return std::nullopt;
      ModelSet out = op(ps[0], cs[0]);
      if (out == expected) return std::nullopt;
      return make_witness(id, c, {{"out", out}, {"E&mu", expected}},
                          "E is consistent with mu but the result differs "
                          "from E & mu");
    }
    case PostulateId::IC3: {
      Profile e1 = ps.at(0);
      Profile e2 = e1;
      ModelSet mu1 = cs.at(0);
      ModelSet mu2 = mu1;
      if (ps.size() == 1 && cs.size() == 1) {
        std::vector<Base> reversed(e1.bases().rbegin(), e1.bases().rend());
        e2 = Profile(std::move(reversed));
      } else {
        require_shape(ps.size() == 2 && cs.size() == 2, id,
                      "one or two presentations of a profile and constraint");
        e2 = ps[1];
        mu2 = cs[1];
        require_shape(equivalent(e1, e2) && mu1 == mu2, id,
                      "equivalent profiles and constraints");
      }
      ModelSet o1 = op(e1, mu1);
      ModelSet o2 = op(e2, mu2);
      if (o1 == o2) return std::nullopt;
      return make_witness(id, c, {{"out(E1)", o1}, {"out(E2)", o2}},
                          "equivalent inputs give different results");
    }
    case PostulateId::IC4: {
      require_shape(ps.size() == 1 && cs.size() == 1 && ps[0].size() == 2, id,
                    "a profile of two bases and one constraint");
      const ModelSet& k1 = ps[0].bases()[0].models();
      const ModelSet& k2 = ps[0].bases()[1].models();
      require_shape(k1.subset_of(cs[0]) && k2.subset_of(cs[0]), id,
                    "both bases to entail mu");
      ModelSet out = op(ps[0], cs[0]);
      const bool with1 = out.intersects(k1);
      const bool with2 = out.intersects(k2);
      if (with1 == with2) return std::nullopt;
      return make_witness(id, c, {{"out", out}},
                          std::string("result is consistent with K") +
                              (with1 ? "1" : "2") + " but not with K" +
                              (with1 ? "2" : "1"));
    }
    case PostulateId::IC5:
    case PostulateId::IC6: {
      require_shape(ps.size() == 2 && cs.size() == 1, id,
                    "two profiles and one constraint");
      ModelSet o1 = op(ps[0], cs[0]);
      ModelSet o2 = op(ps[1], cs[0]);
      ModelSet both = o1.intersect(o2);
      if (id == PostulateId::IC6 && both.empty()) return std::nullopt;
      ModelSet joined = op(join(ps[0], ps[1]), cs[0]);
      std::vector<std::pair<std::string, ModelSet>> outs{
          {"out(E1)", o1}, {"out(E2)", o2}, {"out(E1+E2)", joined}};
      if (id == PostulateId::IC5) {
        if (both.subset_of(joined)) return std::nullopt;
        return make_witness(id, c, std::move(outs),
                            "out(E1) & out(E2) does not entail out(E1+E2)");
      }
      if (joined.subset_of(both)) return std::nullopt;
      return make_witness(id, c, std::move(outs),
                          "out(E1) & out(E2) is consistent but out(E1+E2) "
                          "does not entail it");
    }
    case PostulateId::IC7:
    case PostulateId::IC8: {
      require_shape(ps.size() == 1 && cs.size() == 2, id,
                    "one profile and two constraints");
      ModelSet o1 = op(ps[0], cs[0]);
      ModelSet restricted = o1.intersect(cs[1]);
      if (id == PostulateId::IC8 && restricted.empty()) return std::nullopt;
      ModelSet o12 = op(ps[0], cs[0].intersect(cs[1]));
      std::vector<std::pair<std::string, ModelSet>> outs{
          {"out(mu1)", o1}, {"out(mu1)&mu2", restricted}, {"out(mu1&mu2)", o12}};
      if (id == PostulateId::IC7) {
        if (restricted.subset_of(o12)) return std::nullopt;
        return make_witness(id, c, std::move(outs),
                            "out(mu1) & mu2 does not entail out(mu1&mu2)");
      }
      if (o12.subset_of(o1)) return std::nullopt;
      return make_witness(id, c, std::move(outs),
                          "out(mu1) & mu2 is consistent but out(mu1&mu2) "
                          "does not entail out(mu1)");
    }
  }
  return std::nullopt;
}

bool reproduces(const Witness& w, const MergeOperator& op) {
  auto again = check_postulate(w.postulate, op, w.instance);
  return again && again->outputs == w.outputs;
}

// ---------------------------------------------------------------------------
// Search

UniversePtr search_universe(std::size_t atoms) {
  static std::mutex mu;
  static std::map<std::size_t, UniversePtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[atoms];
  if (!slot) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < atoms; ++i)
      names.push_back(std::string(1, static_cast<char>('a' + i)));
    slot = Universe::make(std::move(names));
  }
  return slot;
}

const std::vector<ModelSet>& fragment_model_sets(FragmentChoice f,
                                                 std::size_t atoms) {
  if (atoms == 0 || atoms > kMaxSearchAtoms)
    throw SpaceTooLarge("exhaustive enumeration supports 1.." +
                        std::to_string(kMaxSearchAtoms) + " atoms");
  static std::mutex mu;
  static std::map<std::pair<FragmentChoice, std::size_t>, std::vector<ModelSet>>
      cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(f, atoms);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  UniversePtr u = search_universe(atoms);
  std::vector<ModelSet> sets;
  if (auto frag = fragment_of(f)) {
    sets = closed_model_sets(frag->beta, u);
  } else {
    const std::size_t count = std::size_t{1} << atoms;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << count); ++mask) {
      std::vector<Bits> members;
      for (std::size_t i = 0; i < count; ++i)
        if ((mask >> i) & 1U) members.push_back(static_cast<Bits>(i));
      sets.emplace_back(u, std::move(members));
    }
  }
  return cache.emplace(key, std::move(sets)).first->second;
}

std::uint64_t count_instances(const SearchSpace& space) {
  const auto& sets = fragment_model_sets(space.fragment, space.atoms);
  const std::uint64_t b = sets.size();
  // Number of multisets of size 1..max drawn from b sets.
  std::uint64_t profiles = 0;
  {
    std::uint64_t multisets = 1;  // C(b + s - 1, s), starting at s = 0
    for (std::size_t s = 1; s <= space.max_profile_size; ++s) {
      multisets = multisets * (b + s - 1) / s;
      profiles += multisets;
    }
  }
  std::uint64_t total = 0;
  for (auto id : space.postulates) {
    switch (id) {
      case PostulateId::IC0:
      case PostulateId::IC1:
      case PostulateId::IC2:
      case PostulateId::IC3:
        total += profiles * b;
        break;
      case PostulateId::IC4:
        for (const auto& mu : sets) {
          std::uint64_t inside = std::count_if(
              sets.begin(), sets.end(),
              [&](const ModelSet& k) { return k.subset_of(mu); });
          total += inside * (inside + 1) / 2;
        }
        break;
      case PostulateId::IC5:
      case PostulateId::IC6:
        total += profiles * (profiles + 1) / 2 * b;
        break;
      case PostulateId::IC7:
      case PostulateId::IC8:
        total += profiles * b * b;
        break;
    }
  }
  return total;
}

std::vector<Instance> enumerate_instances(const SearchSpace& space) {
  const auto& sets = fragment_model_sets(space.fragment, space.atoms);
  std::vector<Instance> out;
  for (const auto& p : profiles_up_to(sets, space.max_profile_size))
    for (const auto& mu : sets) out.push_back(Instance{p, mu});
  return out;
}

std::vector<Witness> search(const SearchSpace& space, const MergeOperator& op) {
  const auto& sets = fragment_model_sets(space.fragment, space.atoms);
  const std::uint64_t total = count_instances(space);
  if (total > space.max_instances)
    throw SpaceTooLarge("search space has " + std::to_string(total) +
                        " instances, cap is " +
                        std::to_string(space.max_instances));
  const std::vector<Profile> profiles =
      profiles_up_to(sets, space.max_profile_size);

  unsigned threads = space.threads ? space.threads
                                   : std::max(1U, std::thread::hardware_concurrency());
  const std::size_t limit = space.max_witnesses;

  std::vector<Witness> witnesses;
  for (auto id : space.postulates) {
    PostulatePlan plan = plan_for(id, sets, profiles);
    const std::size_t chunks = std::min<std::size_t>(threads, plan.outer);
    auto run_chunk = [&, id](std::size_t begin, std::size_t end) {
      std::vector<Witness> found;
      for (std::size_t i = begin; i < end; ++i) {
        bool full = false;
        plan.cases(i, [&](PostulateCase&& c) {
          if (auto w = check_postulate(id, op, c)) {
            found.push_back(std::move(*w));
            if (limit && found.size() >= limit) {
              full = true;
              return false;
            }
          }
          return true;
        });
        if (full) break;
      }
      return found;
    };

    std::vector<std::vector<Witness>> parts;
    if (chunks <= 1) {
      parts.push_back(run_chunk(0, plan.outer));
    } else {
      std::vector<std::future<std::vector<Witness>>> futures;
      const std::size_t step = (plan.outer + chunks - 1) / chunks;
      for (std::size_t begin = 0; begin < plan.outer; begin += step)
        futures.push_back(std::async(std::launch::async, run_chunk, begin,
                                     std::min(plan.outer, begin + step)));
      for (auto& f : futures) parts.push_back(f.get());
    }
    for (auto& part : parts)
      for (auto& w : part) witnesses.push_back(std::move(w));
    if (limit && witnesses.size() >= limit) {
      witnesses.resize(limit);
      break;
    }
  }
  return witnesses;
}

}  // namespace fragmerge
