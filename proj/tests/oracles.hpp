#pragma once

// Brute-force reference implementations used as independent oracles. They
// share nothing with the library beyond the ModelSet container.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "fragmerge/interp.hpp"

namespace oracle {

using fragmerge::Bits;

inline Bits conj(Bits x, Bits y, Bits z) { return x & y & z; }
inline Bits maj(Bits x, Bits y, Bits z) { return (x & y) | (x & z) | (y & z); }

// Fixpoint of applying a ternary bitwise function to every triple. Binary
// conjunction is covered by conj(x, y, y).
template <class Fn>
std::set<Bits> close(std::set<Bits> s, Fn fn) {
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Bits> v(s.begin(), s.end());
    for (Bits x : v)
      for (Bits y : v)
        for (Bits z : v)
          if (s.insert(fn(x, y, z)).second) grew = true;
  }
  return s;
}

// Every subset of the 2^n interpretations, as a bitmask over interpretations.
inline std::vector<std::set<Bits>> all_sets(std::size_t n, bool include_empty) {
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::set<Bits>> out;
  for (std::uint64_t mask = include_empty ? 0 : 1; mask < (std::uint64_t{1} << count);
       ++mask) {
    std::set<Bits> s;
    for (std::size_t i = 0; i < count; ++i)
      if ((mask >> i) & 1U) s.insert(static_cast<Bits>(i));
    out.push_back(std::move(s));
  }
  return out;
}

inline fragmerge::ModelSet to_models(const fragmerge::UniversePtr& u,
                                     const std::set<Bits>& s) {
  return fragmerge::ModelSet(u, std::vector<Bits>(s.begin(), s.end()));
}

inline unsigned hamming(Bits a, Bits b) { return std::popcount(a ^ b); }
inline unsigned drastic(Bits a, Bits b) { return a == b ? 0 : 1; }

// argmin over mu of the aggregated distance; GMax compares sorted-descending
// vectors lexicographically.
template <class Dist>
std::set<Bits> merge(const std::vector<std::set<Bits>>& bases,
                     const std::set<Bits>& mu, Dist dist, bool gmax) {
  std::vector<std::vector<unsigned>> scores;
  for (Bits w : mu) {
    std::vector<unsigned> d;
    for (const auto& k : bases) {
      unsigned best = ~0U;
      for (Bits m : k) best = std::min(best, dist(w, m));
      d.push_back(best);
    }
    if (gmax) {
      std::sort(d.rbegin(), d.rend());
    } else {
      unsigned sum = 0;
      for (unsigned x : d) sum += x;
      d = {sum};
    }
    scores.push_back(d);
  }
  std::set<Bits> out;
  if (scores.empty()) return out;
  const auto best = *std::min_element(scores.begin(), scores.end());
  std::size_t i = 0;
  for (Bits w : mu)
    if (scores[i++] == best) out.insert(w);
  return out;
}

}  // namespace oracle
