#pragma once

// Numerical semigroups and their relative ideals as exact integer-set
// arithmetic. A semigroup stores its membership window below the conductor;
// a relative ideal stores its sporadic elements below the point where it
// becomes a full tail of the integers. Eventual fullness makes every
// operation (sum, product, intersection, colon, closures) a finite and
// exact computation, never an approximation.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace duplab {

/** Cofinite additive submonoid of the naturals with gcd(generators) = 1. */
class NumericalSemigroup {
public:
  explicit NumericalSemigroup(std::vector<long> generators) {
    if (generators.empty())
      throw std::invalid_argument("sgp_new: empty generator list");
    for (long g : generators)
      if (g < 1) throw std::invalid_argument("sgp_new: generators must be positive");
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    long g = 0;
    for (long x : generators) g = std::gcd(g, x);
    if (g != 1)
      throw std::invalid_argument("sgp_new: not a numerical semigroup (gcd of generators != 1)");
    _gens = generators;

    const long a = _gens.back();
    const long b = _gens.size() >= 2 ? _gens[_gens.size() - 2] : a;
    const long bound = std::max(a * b, 2 * a) + a + 1;
    std::vector<bool> reach(static_cast<size_t>(bound) + 1, false);
    reach[0] = true;
    for (long gen : _gens)
      for (long z = gen; z <= bound; ++z)
        if (reach[static_cast<size_t>(z - gen)]) reach[static_cast<size_t>(z)] = true;

    _frobenius = -1;
    for (long z = bound; z >= 0; --z)
      if (!reach[static_cast<size_t>(z)]) { _frobenius = z; break; }
    // a full run of max-generator length certifies cofiniteness from here on
    for (long z = _frobenius + 1; z <= _frobenius + a && z <= bound; ++z)
      if (!reach[static_cast<size_t>(z)])
        throw std::logic_error("sgp_new: closure bound too small");

    _window.assign(reach.begin(), reach.begin() + conductor());
    for (long z = 1; z <= _frobenius; ++z)
      if (!_window[static_cast<size_t>(z)]) _gaps.push_back(z);
  }

  /** Build from an explicit membership window; everything at or beyond
      window.size() counts as a member. Used for oversemigroups. */
  static NumericalSemigroup from_member_window(const std::vector<bool>& window) {
    if (!window.empty() && !window[0])
      throw std::invalid_argument("from_member_window: 0 must be a member");
    const long len = static_cast<long>(window.size());
    auto member = [&](long z) { return z >= len ? true : (z >= 0 && window[static_cast<size_t>(z)]); };
    for (long x = 0; x < len; ++x) {
      if (!member(x)) continue;
      for (long y = x; y < len && x + y < len; ++y)
        if (member(y) && !member(x + y))
          throw std::invalid_argument("from_member_window: set is not additively closed");
    }
    // recover a generating set: nonzero members not sums of two nonzero members
    std::vector<long> gens;
    long mult = std::max(len, 1L);  // least nonzero member
    for (long z = 1; z < len; ++z)
      if (member(z)) { mult = z; break; }
    for (long z = 1; z <= len + mult; ++z) {
      if (!member(z)) continue;
      bool decomposable = false;
      for (long x = 1; x <= z - 1 && !decomposable; ++x)
        if (member(x) && member(z - x)) decomposable = true;
      if (!decomposable) gens.push_back(z);
    }
    return NumericalSemigroup(gens);
  }

  const std::vector<long>& generators() const { return _gens; }
  long frobenius() const { return _frobenius; }
  long conductor() const { return _frobenius + 1; }
  const std::vector<long>& gap_set() const { return _gaps; }

  /** Least nonzero element. */
  long multiplicity() const {
    for (long z = 1; z <= conductor(); ++z)
      if (contains(z)) return z;
    return 1;  // unreachable: 1 is a member when conductor = 0
  }

  bool contains(long z) const {
    if (z < 0) return false;
    if (z >= conductor()) return true;
    return _window[static_cast<size_t>(z)];
  }

  /** True iff z is outside S exactly when frobenius - z is inside. */
  bool is_symmetric() const {
    for (long z = 0; z <= _frobenius; ++z)
      if (contains(z) == contains(_frobenius - z)) return false;
    return true;
  }

  /** Members that are not sums of two nonzero members. */
  std::vector<long> minimal_generators() const {
    std::vector<long> out;
    const long hi = std::max(_frobenius + multiplicity(), multiplicity());
    for (long z = 1; z <= hi; ++z) {
      if (!contains(z)) continue;
      bool decomposable = false;
      for (long x = 1; x < z && !decomposable; ++x)
        if (contains(x) && contains(z - x)) decomposable = true;
      if (!decomposable) out.push_back(z);
    }
    return out;
  }

  bool operator==(const NumericalSemigroup& o) const {
    return _frobenius == o._frobenius && _window == o._window;
  }
  bool operator!=(const NumericalSemigroup& o) const { return !(*this == o); }

private:
  std::vector<long> _gens;
  long _frobenius = -1;
  std::vector<bool> _window;  // membership on [0, conductor)
  std::vector<long> _gaps;
};

inline NumericalSemigroup sgp_new(const std::vector<long>& generators) {
  return NumericalSemigroup(generators);
}

inline bool sgp_contains(const NumericalSemigroup& s, long z) { return s.contains(z); }

inline bool is_symmetric(const NumericalSemigroup& s) { return s.is_symmetric(); }

inline std::string to_string(const NumericalSemigroup& s) {
  std::string out = "<";
  const auto gens = s.minimal_generators();
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(gens[i]);
  }
  return out + ">";
}

/** Bounded-below E subset of Z with E + S inside E; full tail from full_from on. */
class RelativeIdeal {
public:
  /** The ideal generated by gens: the union of the translates g + S. */
  RelativeIdeal(const NumericalSemigroup& s, std::vector<long> gens) : _sgp(&s) {
    if (gens.empty()) throw std::invalid_argument("rel_ideal: empty generator set");
    std::sort(gens.begin(), gens.end());
    const long lo = gens.front();
    const long hi = gens.back() + s.conductor();  // everything at or beyond is a member
    std::vector<long> members;
    for (long z = lo; z < hi; ++z)
      for (long g : gens)
        if (s.contains(z - g)) { members.push_back(z); break; }
    init(std::move(members), hi);
  }

  /** Wrap an explicit sorted member list (below full_from) plus a full tail.
      Validates closure under the semigroup action. */
  static RelativeIdeal from_window(const NumericalSemigroup& s, std::vector<long> members,
                                   long full_from) {
    RelativeIdeal e(&s);
    e.init(std::move(members), full_from);
    for (long z : e._sporadic)
      for (long g : s.minimal_generators())
        if (!e.contains(z + g))
          throw std::invalid_argument("RelativeIdeal: set not closed under the semigroup action");
    return e;
  }

  const NumericalSemigroup& semigroup() const { return *_sgp; }

  bool contains(long z) const {
    if (z >= _full_from) return true;
    return std::binary_search(_sporadic.begin(), _sporadic.end(), z);
  }

  long min() const { return _sporadic.empty() ? _full_from : _sporadic.front(); }
  long full_from() const { return _full_from; }
  const std::vector<long>& sporadic() const { return _sporadic; }

  /** Members in [lo, hi), in increasing order. */
  std::vector<long> elements_in(long lo, long hi) const {
    std::vector<long> out;
    for (long z = lo; z < hi; ++z)
      if (contains(z)) out.push_back(z);
    return out;
  }

  RelativeIdeal translate(long d) const {
    RelativeIdeal e(_sgp);
    e._full_from = _full_from + d;
    e._sporadic = _sporadic;
    for (long& z : e._sporadic) z += d;
    return e;
  }

  /** Translate so that min = 0. */
  RelativeIdeal normalized() const { return translate(-min()); }

  /** Members e with no s in S, s > 0, such that e - s is also a member. */
  std::vector<long> minimal_generators() const {
    std::vector<long> out;
    std::vector<long> candidates = _sporadic;
    for (long z = _full_from; z < _full_from + _sgp->multiplicity(); ++z)
      candidates.push_back(z);
    for (long e : candidates) {
      bool reducible = false;
      for (long s = 1; s <= e - min() && !reducible; ++s)
        if (_sgp->contains(s) && contains(e - s)) reducible = true;
      if (!reducible) out.push_back(e);
    }
    return out;
  }

  bool operator==(const RelativeIdeal& o) const {
    return *_sgp == *o._sgp && _full_from == o._full_from && _sporadic == o._sporadic;
  }
  bool operator!=(const RelativeIdeal& o) const { return !(*this == o); }

private:
  explicit RelativeIdeal(const NumericalSemigroup* s) : _sgp(s) {}

  // establishes canonical storage: minimal full_from, sorted sporadic list
  void init(std::vector<long> members, long full_from) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    while (!members.empty() && members.back() >= full_from) members.pop_back();
    while (!members.empty() && members.back() == full_from - 1) {
      members.pop_back();
      --full_from;
    }
    _sporadic = std::move(members);
    _full_from = full_from;
  }

  const NumericalSemigroup* _sgp;
  std::vector<long> _sporadic;  // members strictly below _full_from
  long _full_from = 0;
};

inline RelativeIdeal rel_ideal(const NumericalSemigroup& s, const std::vector<long>& gens) {
  return RelativeIdeal(s, gens);
}

/** S itself as the unit relative ideal. */
inline RelativeIdeal unit_ideal(const NumericalSemigroup& s) { return rel_ideal(s, {0}); }

/** The maximal ideal: all nonzero members of S. */
inline RelativeIdeal maximal_ideal(const NumericalSemigroup& s) {
  return rel_ideal(s, s.minimal_generators());
}

namespace detail {
inline void require_same_semigroup(const RelativeIdeal& e, const RelativeIdeal& f,
                                   const char* who) {
  if (e.semigroup() != f.semigroup())
    throw std::invalid_argument(std::string(who) + ": ideals over different semigroups");
}
}  // namespace detail

inline RelativeIdeal ideal_sum(const RelativeIdeal& e, const RelativeIdeal& f) {
  detail::require_same_semigroup(e, f, "ideal_sum");
  const long lo = std::min(e.min(), f.min());
  const long hi = std::max(e.full_from(), f.full_from());
  std::vector<long> members;
  for (long z = lo; z < hi; ++z)
    if (e.contains(z) || f.contains(z)) members.push_back(z);
  return RelativeIdeal::from_window(e.semigroup(), std::move(members), hi);
}

inline RelativeIdeal ideal_product(const RelativeIdeal& e, const RelativeIdeal& f) {
  detail::require_same_semigroup(e, f, "ideal_product");
  const long lo = e.min() + f.min();
  const long hi = std::min(e.min() + f.full_from(), f.min() + e.full_from());
  std::vector<long> members;
  for (long z = lo; z < hi; ++z) {
    for (long x : e.elements_in(e.min(), z - f.min() + 1))
      if (f.contains(z - x)) { members.push_back(z); break; }
  }
  return RelativeIdeal::from_window(e.semigroup(), std::move(members), hi);
}

inline RelativeIdeal ideal_intersect(const RelativeIdeal& e, const RelativeIdeal& f) {
  detail::require_same_semigroup(e, f, "ideal_intersect");
  const long lo = std::max(e.min(), f.min());
  const long hi = std::max(e.full_from(), f.full_from());
  std::vector<long> members;
  for (long z = lo; z < hi; ++z)
    if (e.contains(z) && f.contains(z)) members.push_back(z);
  return RelativeIdeal::from_window(e.semigroup(), std::move(members), hi);
}

/** E - F = {z : z + F inside E}, exact by eventual fullness. */
inline RelativeIdeal ideal_colon(const RelativeIdeal& e, const RelativeIdeal& f) {
  detail::require_same_semigroup(e, f, "ideal_colon");
  // z + min F must land at or above min E; from full_from(E) - min F on, all
  // of z + F sits in the full tail of E
  const long lo = std::min(e.min() - f.full_from() - 1, e.min() - f.min());
  const long hi = e.full_from() - f.min();
  std::vector<long> members;
  for (long z = lo; z < hi; ++z) {
    bool ok = true;
    // constraints with z + u >= full_from(E) hold automatically
    for (long u : f.elements_in(f.min(), e.full_from() - z))
      if (!e.contains(z + u)) { ok = false; break; }
    if (ok) members.push_back(z);
  }
  return RelativeIdeal::from_window(e.semigroup(), std::move(members), hi);
}

/** K(S) = {z : frobenius - z not in S}; certified m-canonical elsewhere, not trusted. */
inline RelativeIdeal canonical_ideal(const NumericalSemigroup& s) {
  std::vector<long> members;
  for (long z = 0; z <= s.frobenius(); ++z)
    if (!s.contains(s.frobenius() - z)) members.push_back(z);
  return RelativeIdeal::from_window(s, std::move(members), s.conductor());
}

/** W - (W - E), the divisorial closure of E with respect to W. */
inline RelativeIdeal divisorial_closure(const RelativeIdeal& e, const RelativeIdeal& w) {
  return ideal_colon(w, ideal_colon(w, e));
}

inline bool is_divisorial(const RelativeIdeal& e, const RelativeIdeal& w) {
  return divisorial_closure(e, w) == e;
}

/** All normalized relative ideals: the S-closed sets S u G over gap subsets G. */
struct IdealFamily {
  const NumericalSemigroup* semigroup;
  std::vector<RelativeIdeal> members;
};

inline IdealFamily enumerate_relative_ideals(const NumericalSemigroup& s,
                                             size_t gap_limit = 20) {
  const auto& gaps = s.gap_set();
  if (gaps.size() > gap_limit || gaps.size() > 30)
    throw std::invalid_argument("enumerate_relative_ideals: " + std::to_string(gaps.size()) +
                                " gaps exceed the limit of " + std::to_string(gap_limit) +
                                " (up to 2^" + std::to_string(gaps.size()) + " candidates)");
  IdealFamily family{&s, {}};
  const auto& gens = s.generators();
  for (uint32_t mask = 0; mask < (1u << gaps.size()); ++mask) {
    auto in_set = [&](long z) {
      if (s.contains(z)) return true;
      for (size_t i = 0; i < gaps.size(); ++i)
        if (gaps[i] == z) return (mask >> i & 1u) != 0;
      return false;
    };
    bool closed = true;
    for (size_t i = 0; i < gaps.size() && closed; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (long g : gens)
        if (!in_set(gaps[i] + g)) { closed = false; break; }
    }
    if (!closed) continue;
    std::vector<long> members;
    for (long z = 0; z < s.conductor(); ++z)
      if (in_set(z)) members.push_back(z);
    family.members.push_back(
        RelativeIdeal::from_window(s, std::move(members), s.conductor()));
  }
  return family;
}

/** The enumerated ideal J violating E - (E - J) = J, if any. */
inline std::optional<RelativeIdeal> mcanonical_witness(const RelativeIdeal& e,
                                                       size_t gap_limit = 20) {
  const auto family = enumerate_relative_ideals(e.semigroup(), gap_limit);
  for (const auto& j : family.members)
    if (ideal_colon(e, ideal_colon(e, j)) != j) return j;
  return std::nullopt;
}

inline bool is_mcanonical(const RelativeIdeal& e, size_t gap_limit = 20) {
  return !mcanonical_witness(e, gap_limit).has_value();
}

/** The intersection of the translates z + W containing E, z over -(W - E).
    An independent route to the divisorial closure. */
inline RelativeIdeal divisorial_closure_via_intersection(const RelativeIdeal& e,
                                                         const RelativeIdeal& w) {
  detail::require_same_semigroup(e, w, "divisorial_closure_via_intersection");
  const RelativeIdeal c = ideal_colon(w, e);  // E inside z + W iff -z in W - E
  const long lo = w.min() - c.min();
  const long hi = w.full_from() - c.min();  // beyond, every binding translate is full
  std::vector<long> members;
  for (long x = lo; x < hi; ++x) {
    bool in_all = true;
    // translates -u + W with x + u at or beyond full_from(W) cannot exclude x
    for (long u : c.elements_in(c.min(), w.full_from() - x))
      if (!w.contains(x + u)) { in_all = false; break; }
    if (in_all) members.push_back(x);
  }
  return RelativeIdeal::from_window(e.semigroup(), std::move(members), hi);
}

/** All semigroups between S and the naturals, in deterministic order. */
inline std::vector<NumericalSemigroup> oversemigroups(const NumericalSemigroup& s) {
  const auto& gaps = s.gap_set();
  if (gaps.size() > 20)
    throw std::invalid_argument("oversemigroups: gap set too large");
  std::vector<NumericalSemigroup> out;
  for (uint32_t mask = 0; mask < (1u << gaps.size()); ++mask) {
    std::vector<bool> window(static_cast<size_t>(s.conductor()), false);
    for (long z = 0; z < s.conductor(); ++z)
      window[static_cast<size_t>(z)] = s.contains(z);
    for (size_t i = 0; i < gaps.size(); ++i)
      if (mask >> i & 1u) window[static_cast<size_t>(gaps[i])] = true;
    try {
      out.push_back(NumericalSemigroup::from_member_window(window));
    } catch (const std::invalid_argument&) {
      // gap subset not additively closed; skip
    }
  }
  return out;
}

/** K(S) - S' as a relative ideal over the oversemigroup S'. */
inline RelativeIdeal canonical_of_oversemigroup(const NumericalSemigroup& s,
                                                const NumericalSemigroup& over) {
  for (long g : s.generators())
    if (!over.contains(g))
      throw std::invalid_argument("canonical_of_oversemigroup: second argument is not an oversemigroup");
  const RelativeIdeal k = canonical_ideal(s);
  const long lo = k.min();          // z + 0 must be in K
  const long hi = k.full_from();    // beyond, z + S' sits in the full tail of K
  std::vector<long> members;
  for (long z = lo; z < hi; ++z) {
    bool ok = true;
    for (long u = 0; u < k.full_from() - z && ok; ++u)
      if (over.contains(u) && !k.contains(z + u)) ok = false;
    if (ok) members.push_back(z);
  }
  return RelativeIdeal::from_window(over, std::move(members), hi);
}

inline std::string to_string(const RelativeIdeal& e) {
  std::string out = "{";
  const auto gens = e.minimal_generators();
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(gens[i]);
  }
  return out + "} + S";
}

}  // namespace duplab
