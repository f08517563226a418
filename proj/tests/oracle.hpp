#pragma once

// Reference computations for the tests, by exhaustive set manipulation on
// explicit generous windows. Deliberately kept independent of the library's
// representation: plain element tables, queue-based closure, and a fixed
// cutoff far beyond every conductor in the suite instead of any
// eventual-fullness bookkeeping. Expected values frozen in the tests were
// produced by these routines.

#include <deque>
#include <stdexcept>
#include <vector>

namespace oracle {

// every ideal appearing in the suite is a full tail well below CAP, and all
// comparisons happen inside [CMP_LO, CMP_HI]
constexpr long LO = -64;
constexpr long HI = 512;
constexpr long CAP = 256;
constexpr long CMP_LO = -40;
constexpr long CMP_HI = 40;

/** Element table on [LO, HI). */
struct WinSet {
  std::vector<char> in;
  WinSet() : in(static_cast<size_t>(HI - LO), 0) {}
  bool has(long z) const {
    if (z >= CAP) return true;
    if (z < LO || z >= HI) return false;
    return in[static_cast<size_t>(z - LO)] != 0;
  }
  void add(long z) {
    if (z >= LO && z < HI) in[static_cast<size_t>(z - LO)] = 1;
  }
  bool operator==(const WinSet& o) const {
    for (long z = LO; z < CAP; ++z)
      if (has(z) != o.has(z)) return false;
    return true;
  }
};

/** Semigroup membership on [0, hi) by queue closure over the generators. */
inline std::vector<char> sgp_members(const std::vector<long>& gens, long hi = HI) {
  std::vector<char> in(static_cast<size_t>(hi), 0);
  std::deque<long> work{0};
  in[0] = 1;
  while (!work.empty()) {
    const long x = work.front();
    work.pop_front();
    for (long g : gens)
      if (x + g < hi && !in[static_cast<size_t>(x + g)]) {
        in[static_cast<size_t>(x + g)] = 1;
        work.push_back(x + g);
      }
  }
  return in;
}

inline long frobenius(const std::vector<long>& gens) {
  const auto in = sgp_members(gens);
  long f = -1;
  for (long z = 0; z < CAP; ++z)
    if (!in[static_cast<size_t>(z)]) f = z;
  return f;
}

inline WinSet semigroup_set(const std::vector<long>& gens) {
  WinSet s;
  const auto in = sgp_members(gens);
  for (long z = 0; z < HI; ++z)
    if (in[static_cast<size_t>(z)]) s.add(z);
  return s;
}

/** Union of translates g + S. */
inline WinSet ideal_set(const WinSet& sgp, const std::vector<long>& gens) {
  WinSet e;
  for (long z = LO; z < HI; ++z)
    for (long g : gens)
      if (sgp.has(z - g)) { e.add(z); break; }
  return e;
}

inline WinSet set_union(const WinSet& a, const WinSet& b) {
  WinSet r;
  for (long z = LO; z < HI; ++z)
    if (a.has(z) || b.has(z)) r.add(z);
  return r;
}

inline WinSet set_intersect(const WinSet& a, const WinSet& b) {
  WinSet r;
  for (long z = LO; z < HI; ++z)
    if (a.has(z) && b.has(z)) r.add(z);
  return r;
}

inline WinSet set_product(const WinSet& a, const WinSet& b) {
  WinSet r;
  for (long x = LO; x < HI; ++x) {
    if (!a.has(x)) continue;
    for (long y = LO; y < HI; ++y)
      if (b.has(y) && x + y >= LO && x + y < HI) r.add(x + y);
  }
  return r;
}

/** {z : z + F inside E}, universally quantified below the cutoff. */
inline WinSet colon(const WinSet& e, const WinSet& f) {
  WinSet r;
  for (long z = LO; z < HI; ++z) {
    bool ok = true;
    for (long u = LO; u < CAP && ok; ++u)
      if (f.has(u) && z + u < CAP && !e.has(z + u)) ok = false;
    if (ok) r.add(z);
  }
  return r;
}

/** {z : F - z outside S}. */
inline WinSet canonical_set(const WinSet& sgp, long frob) {
  WinSet k;
  for (long z = LO; z < HI; ++z)
    if (!sgp.has(frob - z)) k.add(z);
  return k;
}

}  // namespace oracle
