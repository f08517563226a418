#pragma once

// Brute-force engine over small finite commutative rings. Rings are explicit
// operation tables validated against the axioms at construction; ideals are
// membership masks; the duplicated ring and the trivial extension are built
// as literal pair rings so every claim about them can be settled by
// exhaustive table checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "duplab/report.hpp"

namespace duplab {

class FiniteRing {
public:
  FiniteRing(std::vector<std::vector<int>> add, std::vector<std::vector<int>> mul, int zero,
             int one, std::vector<std::string> labels)
      : _add(std::move(add)), _mul(std::move(mul)), _zero(zero), _one(one),
        _labels(std::move(labels)) {
    const int n = static_cast<int>(_labels.size());
    if (n <= 0) throw std::invalid_argument("FiniteRing: empty element set");
    auto check_table = [n](const std::vector<std::vector<int>>& t, const char* name) {
      if (static_cast<int>(t.size()) != n)
        throw std::invalid_argument(std::string("FiniteRing: bad ") + name + " table height");
      for (const auto& row : t) {
        if (static_cast<int>(row.size()) != n)
          throw std::invalid_argument(std::string("FiniteRing: bad ") + name + " table width");
        for (int v : row)
          if (v < 0 || v >= n)
            throw std::invalid_argument(std::string("FiniteRing: ") + name +
                                        " table entry out of range");
      }
    };
    check_table(_add, "addition");
    check_table(_mul, "multiplication");
    if (_zero < 0 || _zero >= n || _one < 0 || _one >= n)
      throw std::invalid_argument("FiniteRing: zero/one out of range");
    if (n > 1 && _zero == _one)
      throw std::invalid_argument("FiniteRing: one equals zero in a ring of size > 1");

    for (int a = 0; a < n; ++a) {
      if (_add[a][_zero] != a) throw std::invalid_argument("FiniteRing: zero is not neutral");
      if (_mul[a][_one] != a) throw std::invalid_argument("FiniteRing: one is not neutral");
      bool has_neg = false;
      for (int b = 0; b < n && !has_neg; ++b) has_neg = _add[a][b] == _zero;
      if (!has_neg) throw std::invalid_argument("FiniteRing: missing additive inverse");
      for (int b = 0; b < n; ++b) {
        if (_add[a][b] != _add[b][a])
          throw std::invalid_argument("FiniteRing: addition not commutative");
        if (_mul[a][b] != _mul[b][a])
          throw std::invalid_argument("FiniteRing: multiplication not commutative");
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          if (_add[_add[a][b]][c] != _add[a][_add[b][c]])
            throw std::invalid_argument("FiniteRing: addition not associative");
          if (_mul[_mul[a][b]][c] != _mul[a][_mul[b][c]])
            throw std::invalid_argument("FiniteRing: multiplication not associative");
          if (_mul[a][_add[b][c]] != _add[_mul[a][b]][_mul[a][c]])
            throw std::invalid_argument("FiniteRing: distributivity fails");
        }

    _neg.resize(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (_add[a][b] == _zero) { _neg[static_cast<size_t>(a)] = b; break; }
  }

  int size() const { return static_cast<int>(_labels.size()); }
  int add(int a, int b) const { return _add[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int mul(int a, int b) const { return _mul[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int neg(int a) const { return _neg[static_cast<size_t>(a)]; }
  int zero() const { return _zero; }
  int one() const { return _one; }
  const std::string& label(int a) const { return _labels[static_cast<size_t>(a)]; }

private:
  std::vector<std::vector<int>> _add, _mul;
  int _zero, _one;
  std::vector<std::string> _labels;
  std::vector<int> _neg;
};

inline FiniteRing zmod(int n) {
  if (n < 2) throw std::invalid_argument("zmod: modulus must be at least 2");
  std::vector<std::vector<int>> add(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  auto mul = add;
  std::vector<std::string> labels(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    labels[static_cast<size_t>(a)] = std::to_string(a);
    for (int b = 0; b < n; ++b) {
      add[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % n;
      mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a * b) % n;
    }
  }
  return FiniteRing(std::move(add), std::move(mul), 0, 1 % n, std::move(labels));
}

using Mask = std::vector<bool>;

inline bool is_ideal_mask(const FiniteRing& r, const Mask& m) {
  if (static_cast<int>(m.size()) != r.size() || !m[static_cast<size_t>(r.zero())]) return false;
  for (int a = 0; a < r.size(); ++a) {
    if (!m[static_cast<size_t>(a)]) continue;
    for (int b = 0; b < r.size(); ++b) {
      if (m[static_cast<size_t>(b)] && !m[static_cast<size_t>(r.add(a, b))]) return false;
      if (!m[static_cast<size_t>(r.mul(a, b))]) return false;
    }
  }
  return true;
}

class FiniteIdeal {
public:
  FiniteIdeal(const FiniteRing& r, Mask mask) : _ring(&r), _mask(std::move(mask)) {
    if (!is_ideal_mask(r, _mask))
      throw std::invalid_argument("FiniteIdeal: mask is not an ideal");
  }

  const FiniteRing& ring() const { return *_ring; }
  const Mask& mask() const { return _mask; }
  bool contains(int a) const { return _mask[static_cast<size_t>(a)]; }
  int count() const { return static_cast<int>(std::count(_mask.begin(), _mask.end(), true)); }
  bool is_zero_ideal() const { return count() == 1; }
  bool is_whole_ring() const { return count() == _ring->size(); }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int a = 0; a < _ring->size(); ++a)
      if (contains(a)) out.push_back(a);
    return out;
  }

  bool operator==(const FiniteIdeal& o) const { return _ring == o._ring && _mask == o._mask; }

private:
  const FiniteRing* _ring;
  Mask _mask;
};

inline std::string to_string(const FiniteIdeal& i) {
  std::string out = "{";
  bool first = true;
  for (int a : i.elements()) {
    if (!first) out += ",";
    first = false;
    out += i.ring().label(a);
  }
  return out + "}";
}

inline FiniteIdeal principal_ideal(const FiniteRing& r, int a) {
  Mask m(static_cast<size_t>(r.size()), false);
  for (int x = 0; x < r.size(); ++x) m[static_cast<size_t>(r.mul(x, a))] = true;
  return FiniteIdeal(r, m);
}

namespace detail {

/** Smallest ideal containing the seed: alternates additive closure with
 *  multiplication by every ring element until nothing new appears. */
inline Mask close_to_ideal(const FiniteRing& r, Mask m) {
  m[static_cast<size_t>(r.zero())] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < r.size(); ++a) {
      if (!m[static_cast<size_t>(a)]) continue;
      for (int b = 0; b < r.size(); ++b) {
        if (m[static_cast<size_t>(b)]) {
          const int s = r.add(a, b);
          if (!m[static_cast<size_t>(s)]) { m[static_cast<size_t>(s)] = true; grew = true; }
        }
        const int p = r.mul(a, b);
        if (!m[static_cast<size_t>(p)]) { m[static_cast<size_t>(p)] = true; grew = true; }
      }
    }
  }
  return m;
}

}  // namespace detail

/** All ideals, smallest first: grow every known ideal by every outside
 *  element and close again until the family is stable. */
inline std::vector<FiniteIdeal> enumerate_ideals(const FiniteRing& r, int size_limit = 64) {
  if (r.size() > size_limit)
    throw std::invalid_argument("enumerate_ideals: ring size " + std::to_string(r.size()) +
                                " exceeds the limit " + std::to_string(size_limit));
  std::set<Mask> known;
  Mask zero(static_cast<size_t>(r.size()), false);
  zero[static_cast<size_t>(r.zero())] = true;
  known.insert(zero);
  std::vector<Mask> frontier = {zero};
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (const Mask& m : frontier)
      for (int a = 0; a < r.size(); ++a) {
        if (m[static_cast<size_t>(a)]) continue;
        Mask grown = m;
        grown[static_cast<size_t>(a)] = true;
        grown = detail::close_to_ideal(r, std::move(grown));
        if (known.insert(grown).second) next.push_back(std::move(grown));
      }
    frontier = std::move(next);
  }
  std::vector<Mask> masks(known.begin(), known.end());
  std::sort(masks.begin(), masks.end(), [](const Mask& a, const Mask& b) {
    const auto ca = std::count(a.begin(), a.end(), true);
    const auto cb = std::count(b.begin(), b.end(), true);
    return ca != cb ? ca < cb : a < b;
  });
  std::vector<FiniteIdeal> out;
  for (auto& m : masks) out.emplace_back(r, std::move(m));
  return out;
}

/** Spectrum data for a table ring: primes, nilradical (cross-checked against
 *  elementwise nilpotence), reducedness, locality, minimal primes. */
struct SpecInfo {
  std::vector<FiniteIdeal> ideals;
  std::vector<FiniteIdeal> primes;
  std::vector<FiniteIdeal> minimal_primes;
  Mask nilradical;
  bool reduced = false;
  bool local = false;
  bool dim_zero = false;
};

inline bool mask_subset(const Mask& a, const Mask& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline SpecInfo spec(const FiniteRing& r, int size_limit = 64) {
  SpecInfo out;
  out.ideals = enumerate_ideals(r, size_limit);
  for (const FiniteIdeal& i : out.ideals) {
    if (i.is_whole_ring()) continue;
    bool prime = true;
    for (int a = 0; a < r.size() && prime; ++a)
      for (int b = 0; b < r.size() && prime; ++b)
        if (i.contains(r.mul(a, b)) && !i.contains(a) && !i.contains(b)) prime = false;
    if (prime) out.primes.push_back(i);
  }

  Mask nil(static_cast<size_t>(r.size()), true);
  for (const FiniteIdeal& p : out.primes)
    for (size_t k = 0; k < nil.size(); ++k) nil[k] = nil[k] && p.mask()[k];
  // cross-check: the intersection of the primes is the set of nilpotents
  Mask nilpotents(static_cast<size_t>(r.size()), false);
  for (int a = 0; a < r.size(); ++a) {
    int x = a;
    for (int k = 0; k <= r.size(); ++k) {
      if (x == r.zero()) { nilpotents[static_cast<size_t>(a)] = true; break; }
      x = r.mul(x, a);
    }
  }
  if (nil != nilpotents)
    throw std::logic_error("spec: nilradical disagrees with elementwise nilpotence");
  out.nilradical = nil;
  out.reduced = std::count(nil.begin(), nil.end(), true) == 1;

  for (const FiniteIdeal& p : out.primes) {
    bool minimal = true;
    for (const FiniteIdeal& q : out.primes)
      if (!(q == p) && mask_subset(q.mask(), p.mask())) { minimal = false; break; }
    if (minimal) out.minimal_primes.push_back(p);
  }

  int maximal_count = 0;
  for (const FiniteIdeal& i : out.ideals) {
    if (i.is_whole_ring()) continue;
    bool maximal = true;
    for (const FiniteIdeal& j : out.ideals) {
      if (j.is_whole_ring() || j == i) continue;
      if (mask_subset(i.mask(), j.mask())) { maximal = false; break; }
    }
    if (maximal) ++maximal_count;
  }
  out.local = maximal_count == 1;

  out.dim_zero = true;
  for (const FiniteIdeal& p : out.primes)
    for (const FiniteIdeal& q : out.primes)
      if (!(p == q) && mask_subset(p.mask(), q.mask())) out.dim_zero = false;
  return out;
}

/** The duplicated ring as a literal subring of R x R, with the coordinate
 *  pair of every element kept for projections and contractions. */
struct PairRing {
  std::shared_ptr<const FiniteRing> base;
  Mask ideal_mask;
  std::vector<std::pair<int, int>> coords;  // element k of `ring` is (r, r+i)
  std::map<std::pair<int, int>, int> index;
  std::vector<int> diagonal;  // diagonal[r] = index of (r, r)
  FiniteRing ring;
};

namespace detail {

struct PairTables {
  std::vector<std::pair<int, int>> coords;
  std::map<std::pair<int, int>, int> index;
  FiniteRing ring;
};

/** Builds a table ring on explicit coordinate pairs. componentwise = true
 *  gives the subring of R x R; false gives the trivial-extension product
 *  (r, e)(s, f) = (rs, rf + se) on R x I coordinates. */
inline PairTables pair_table_ring(const FiniteRing& r,
                                  const std::vector<std::pair<int, int>>& coords,
                                  bool componentwise) {
  std::map<std::pair<int, int>, int> index;
  for (int k = 0; k < static_cast<int>(coords.size()); ++k) index[coords[static_cast<size_t>(k)]] = k;
  const int n = static_cast<int>(coords.size());
  std::vector<std::vector<int>> add(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  auto mul = add;
  std::vector<std::string> labels(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    const auto& [a1, a2] = coords[static_cast<size_t>(a)];
    labels[static_cast<size_t>(a)] = "(" + r.label(a1) + "," + r.label(a2) + ")";
    for (int b = 0; b < n; ++b) {
      const auto& [b1, b2] = coords[static_cast<size_t>(b)];
      const std::pair<int, int> s{r.add(a1, b1), r.add(a2, b2)};
      const std::pair<int, int> p =
          componentwise ? std::pair<int, int>{r.mul(a1, b1), r.mul(a2, b2)}
                        : std::pair<int, int>{r.mul(a1, b1),
                                              r.add(r.mul(a1, b2), r.mul(a2, b1))};
      const auto si = index.find(s);
      const auto pi = index.find(p);
      if (si == index.end() || pi == index.end())
        throw std::logic_error("pair_table_ring: element set not closed");
      add[static_cast<size_t>(a)][static_cast<size_t>(b)] = si->second;
      mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = pi->second;
    }
  }
  const int zero = index.at({r.zero(), r.zero()});
  const int one = componentwise ? index.at({r.one(), r.one()}) : index.at({r.one(), r.zero()});
  return PairTables{coords, std::move(index),
                    FiniteRing(std::move(add), std::move(mul), zero, one, std::move(labels))};
}

}  // namespace detail

inline PairRing duplication(const FiniteRing& r, const FiniteIdeal& i) {
  if (&i.ring() != &r) throw std::invalid_argument("duplication: ideal of a different ring");
  if (i.is_zero_ideal() || i.is_whole_ring())
    throw std::invalid_argument(
        "duplication: the zero ideal and the whole ring are the trivial cases");
  std::vector<std::pair<int, int>> coords;
  for (int x = 0; x < r.size(); ++x)
    for (int e : i.elements()) coords.emplace_back(x, r.add(x, e));
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  if (static_cast<int>(coords.size()) != r.size() * i.count())
    throw std::logic_error("duplication: pair count is not |R| * |I|");
  detail::PairTables t = detail::pair_table_ring(r, coords, true);

  // the componentwise tables must agree with the (r,e)(s,f) = (rs, rf+se+ef)
  // form under the correspondence (r, e) <-> (r, r+e)
  for (int a = 0; a < t.ring.size(); ++a)
    for (int b = 0; b < t.ring.size(); ++b) {
      const auto& [x, xe] = t.coords[static_cast<size_t>(a)];
      const auto& [s, sf] = t.coords[static_cast<size_t>(b)];
      const int e = r.add(xe, r.neg(x));
      const int f = r.add(sf, r.neg(s));
      const int first = r.mul(x, s);
      const int second =
          r.add(r.add(r.mul(x, f), r.mul(s, e)), r.mul(e, f));  // rf + se + ef
      const int expect = t.index.at({first, r.add(first, second)});
      if (t.ring.mul(a, b) != expect)
        throw std::logic_error("duplication: product laws disagree");
    }

  PairRing out{std::make_shared<const FiniteRing>(r), i.mask(), t.coords, t.index,
               std::vector<int>(static_cast<size_t>(r.size())), std::move(t.ring)};
  for (int x = 0; x < r.size(); ++x) out.diagonal[static_cast<size_t>(x)] = out.index.at({x, x});
  return out;
}

inline FiniteRing idealization(const FiniteRing& r, const FiniteIdeal& i) {
  if (&i.ring() != &r) throw std::invalid_argument("idealization: ideal of a different ring");
  std::vector<std::pair<int, int>> coords;
  for (int x = 0; x < r.size(); ++x)
    for (int e : i.elements()) coords.emplace_back(x, e);
  return detail::pair_table_ring(r, coords, false).ring;
}

// ---------------------------------------------------------------------------
// quotients and homomorphism checks

namespace detail {

struct Quotient {
  FiniteRing ring;
  std::vector<int> coset;  // element index -> quotient element index
};

inline Quotient quotient_ring(const FiniteRing& r, const Mask& ideal) {
  std::vector<int> coset(static_cast<size_t>(r.size()), -1);
  std::vector<int> reps;
  for (int a = 0; a < r.size(); ++a) {
    if (coset[static_cast<size_t>(a)] >= 0) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int j = 0; j < r.size(); ++j)
      if (ideal[static_cast<size_t>(j)]) coset[static_cast<size_t>(r.add(a, j))] = id;
    if (coset[static_cast<size_t>(a)] != id)
      throw std::logic_error("quotient_ring: coset of the representative misses itself");
  }
  const int n = static_cast<int>(reps.size());
  std::vector<std::vector<int>> add(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  auto mul = add;
  std::vector<std::string> labels(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    labels[static_cast<size_t>(a)] = "[" + r.label(reps[static_cast<size_t>(a)]) + "]";
    for (int b = 0; b < n; ++b) {
      add[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          coset[static_cast<size_t>(r.add(reps[static_cast<size_t>(a)], reps[static_cast<size_t>(b)]))];
      mul[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          coset[static_cast<size_t>(r.mul(reps[static_cast<size_t>(a)], reps[static_cast<size_t>(b)]))];
    }
  }
  return Quotient{FiniteRing(std::move(add), std::move(mul), coset[static_cast<size_t>(r.zero())],
                             coset[static_cast<size_t>(r.one())], std::move(labels)),
                  std::move(coset)};
}

/** Checks that the element map is a bijective ring homomorphism; returns a
 *  witness description on failure. */
inline std::optional<std::string> iso_defect(const FiniteRing& a, const FiniteRing& b,
                                             const std::vector<int>& f) {
  if (a.size() != b.size()) return "sizes differ";
  std::vector<bool> hit(static_cast<size_t>(b.size()), false);
  for (int x = 0; x < a.size(); ++x) {
    if (f[static_cast<size_t>(x)] < 0 || f[static_cast<size_t>(x)] >= b.size())
      return "map leaves the codomain";
    if (hit[static_cast<size_t>(f[static_cast<size_t>(x)])]) return "map is not injective";
    hit[static_cast<size_t>(f[static_cast<size_t>(x)])] = true;
  }
  if (f[static_cast<size_t>(a.one())] != b.one()) return "map does not preserve the identity";
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y) {
      if (f[static_cast<size_t>(a.add(x, y))] !=
          b.add(f[static_cast<size_t>(x)], f[static_cast<size_t>(y)]))
        return "additive defect at " + a.label(x) + ", " + a.label(y);
      if (f[static_cast<size_t>(a.mul(x, y))] !=
          b.mul(f[static_cast<size_t>(x)], f[static_cast<size_t>(y)]))
        return "multiplicative defect at " + a.label(x) + ", " + a.label(y);
    }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// the section-2 verifier

namespace detail {

/** Quotient of the pair ring by the kernel mask must project isomorphically
 *  onto R/P through the stated coordinate. */
inline std::optional<std::string> projection_iso_defect(const PairRing& pr, const Mask& kernel,
                                                        const Mask& pmask, int coordinate) {
  const Quotient qd = quotient_ring(pr.ring, kernel);
  const Quotient qr = quotient_ring(*pr.base, pmask);
  std::vector<int> f(static_cast<size_t>(qd.ring.size()), -1);
  for (int d = 0; d < pr.ring.size(); ++d) {
    const int src = qd.coset[static_cast<size_t>(d)];
    const int value = coordinate == 0 ? pr.coords[static_cast<size_t>(d)].first
                                      : pr.coords[static_cast<size_t>(d)].second;
    const int dst = qr.coset[static_cast<size_t>(value)];
    if (f[static_cast<size_t>(src)] >= 0 && f[static_cast<size_t>(src)] != dst)
      return "projection is not constant on a coset";
    f[static_cast<size_t>(src)] = dst;
  }
  return iso_defect(qd.ring, qr.ring, f);
}

}  // namespace detail

/** Exhaustive verification of the spectrum description of R join I: the
 *  explicit primes over every prime of R, the extension and radical formulas,
 *  the coordinate quotient isomorphisms, and the global iff claims. */
inline Report verify_section2(const FiniteRing& r, const FiniteIdeal& ideal,
                              std::string instance = "", int size_limit = 64) {
  const PairRing pr = duplication(r, ideal);
  const SpecInfo sr = spec(r, size_limit);
  const SpecInfo sd = spec(pr.ring, size_limit);
  Report rep;
  rep.instance = instance.empty()
                     ? "|R|=" + std::to_string(r.size()) + " I=" + to_string(ideal)
                     : std::move(instance);

  const int dn = pr.ring.size();
  auto pair_mask = [&](auto&& pred) {
    Mask m(static_cast<size_t>(dn), false);
    for (int k = 0; k < dn; ++k)
      m[static_cast<size_t>(k)] = pred(pr.coords[static_cast<size_t>(k)]);
    return m;
  };
  auto mask_label = [&](const Mask& m) {
    std::string out = "{";
    bool first = true;
    for (int k = 0; k < dn; ++k)
      if (m[static_cast<size_t>(k)]) {
        if (!first) out += ",";
        first = false;
        out += pr.ring.label(k);
      }
    return out + "}";
  };
  auto contraction = [&](const Mask& m) {
    Mask c(static_cast<size_t>(r.size()), false);
    for (int x = 0; x < r.size(); ++x)
      c[static_cast<size_t>(x)] = m[static_cast<size_t>(pr.diagonal[static_cast<size_t>(x)])];
    return c;
  };

  int expected_spec_size = 0;
  for (const FiniteIdeal& p : sr.primes) {
    const std::string plabel = to_string(p);
    const auto tag = [&](const std::string& base) { return base + "[P=" + plabel + "]"; };
    const bool contained = mask_subset(ideal.mask(), p.mask());
    expected_spec_size += contained ? 1 : 2;

    // the three displayed sets over P
    const Mask p1 = pair_mask([&](const std::pair<int, int>& c) { return p.contains(c.first); });
    const Mask p2 = pair_mask([&](const std::pair<int, int>& c) { return p.contains(c.second); });
    Mask pmid = p1;
    for (size_t k = 0; k < pmid.size(); ++k) pmid[k] = pmid[k] && p2[k];

    // sanity of the displayed descriptions: p1 = {(p, p+i)}, p2 = {(p+i, p)},
    // pmid = {(p, p+i) : i in I cap P}
    {
      Mask p1_direct(static_cast<size_t>(dn), false);
      Mask p2_direct(static_cast<size_t>(dn), false);
      Mask pm_direct(static_cast<size_t>(dn), false);
      for (int x : p.elements())
        for (int e : ideal.elements()) {
          p1_direct[static_cast<size_t>(pr.index.at({x, r.add(x, e)}))] = true;
          p2_direct[static_cast<size_t>(pr.index.at({r.add(x, e), x}))] = true;
          if (p.contains(e)) pm_direct[static_cast<size_t>(pr.index.at({x, r.add(x, e)}))] = true;
        }
      rep.add(tag("sec2.displayed_sets"), "Prop 2.2",
              p1 == p1_direct && p2 == p2_direct && pmid == pm_direct,
              "coordinate descriptions of the fiber sets");
    }

    // which primes of D contract to P
    std::vector<const FiniteIdeal*> over;
    for (const FiniteIdeal& q : sd.primes)
      if (contraction(q.mask()) == p.mask()) over.push_back(&q);

    if (contained) {
      const bool same = p1 == p2 && p1 == pmid;
      const bool unique = over.size() == 1 && over[0]->mask() == pmid;
      rep.add(tag("sec2.unique_prime_over"), "Prop 2.2(a)", same && unique,
              same ? (unique ? "" : "fiber is not exactly the displayed prime")
                   : "displayed sets split although I lies in P");
    } else {
      const bool distinct = p1 != p2;
      const bool both = is_ideal_mask(pr.ring, p1) && is_ideal_mask(pr.ring, p2);
      const bool fiber_ok =
          over.size() == 2 &&
          ((over[0]->mask() == p1 && over[1]->mask() == p2) ||
           (over[0]->mask() == p2 && over[1]->mask() == p1));
      Mask inter = p1;
      for (size_t k = 0; k < inter.size(); ++k) inter[k] = inter[k] && p2[k];
      const bool meet = inter == pmid;
      rep.add(tag("sec2.two_primes_over"), "Prop 2.2(b)", distinct && both && fiber_ok && meet,
              fiber_ok ? (meet ? "" : "P1 cap P2 differs from the displayed set")
                       : "fiber over P is not {P1, P2}");
    }

    // extension P(R join I) and its radical
    {
      Mask seed(static_cast<size_t>(dn), false);
      for (int x : p.elements()) seed[static_cast<size_t>(pr.diagonal[static_cast<size_t>(x)])] = true;
      const Mask ext = detail::close_to_ideal(pr.ring, std::move(seed));

      Mask ip(static_cast<size_t>(r.size()), false);  // the product ideal I*P
      for (int e : ideal.elements())
        for (int x : p.elements()) ip[static_cast<size_t>(r.mul(e, x))] = true;
      ip = detail::close_to_ideal(r, std::move(ip));
      Mask ext_direct(static_cast<size_t>(dn), false);
      for (int x : p.elements())
        for (int e = 0; e < r.size(); ++e)
          if (ip[static_cast<size_t>(e)])
            ext_direct[static_cast<size_t>(pr.index.at({x, r.add(x, e)}))] = true;
      rep.add(tag("sec2.extension_set"), "Prop 2.2(c)", ext == ext_direct,
              ext == ext_direct ? "" : "P(R join I) != {(p, p+i) : p in P, i in IP}");

      Mask radical(static_cast<size_t>(dn), true);
      bool some = false;
      for (const FiniteIdeal& q : sd.primes)
        if (mask_subset(ext, q.mask())) {
          some = true;
          for (size_t k = 0; k < radical.size(); ++k)
            radical[k] = radical[k] && q.mask()[k];
        }
      if (!some) throw std::logic_error("verify_section2: extension contained in no prime");
      // cross-check radical elementwise
      Mask radical_direct(static_cast<size_t>(dn), false);
      for (int a = 0; a < dn; ++a) {
        int x = a;
        for (int k = 0; k <= dn; ++k) {
          if (ext[static_cast<size_t>(x)]) { radical_direct[static_cast<size_t>(a)] = true; break; }
          x = pr.ring.mul(x, a);
        }
      }
      if (radical != radical_direct)
        throw std::logic_error("verify_section2: radical computations disagree");
      rep.add(tag("sec2.radical"), "Prop 2.2(c)", radical == pmid,
              radical == pmid ? "" : "radical of the extension is " + mask_label(radical));
    }

    // quotient isomorphisms through the two coordinate projections
    {
      const auto d1 = detail::projection_iso_defect(pr, p1, p.mask(), 0);
      const auto d2 = detail::projection_iso_defect(pr, p2, p.mask(), 1);
      rep.add(tag("sec2.quotient_iso"), "Prop 2.2", !d1 && !d2,
              d1 ? *d1 : (d2 ? *d2 : ""));
    }
  }

  rep.add("sec2.spec_count", "Prop 2.2", static_cast<int>(sd.primes.size()) == expected_spec_size,
          "|Spec| = " + std::to_string(sd.primes.size()) + ", expected " +
              std::to_string(expected_spec_size));
  rep.add("sec2.reduced_iff", "Prop 2.1(2)", sd.reduced == sr.reduced,
          std::string("duplication ") + (sd.reduced ? "reduced" : "not reduced") + ", base " +
              (sr.reduced ? "reduced" : "not reduced"));
  rep.add("sec2.local_iff", "Prop 2.2", sd.local == sr.local,
          std::string("duplication ") + (sd.local ? "local" : "not local") + ", base " +
              (sr.local ? "local" : "not local"));
  rep.add("sec2.dim_zero", "Prop 2.1(3)", sr.dim_zero && sd.dim_zero,
          "no strict prime chains on either side");

  // the two branch ideals annihilate each other and cut out R on both sides
  {
    const Mask o1 = pair_mask([&](const std::pair<int, int>& c) { return c.first == r.zero(); });
    const Mask o2 = pair_mask([&](const std::pair<int, int>& c) { return c.second == r.zero(); });
    bool ideals_ok = is_ideal_mask(pr.ring, o1) && is_ideal_mask(pr.ring, o2);
    bool product_zero = true;
    for (int a = 0; a < dn && product_zero; ++a) {
      if (!o1[static_cast<size_t>(a)]) continue;
      for (int b = 0; b < dn && product_zero; ++b)
        if (o2[static_cast<size_t>(b)]) product_zero = pr.ring.mul(a, b) == pr.ring.zero();
    }
    rep.add("sec2.branch_product_zero", "Prop 2.1(1)", ideals_ok && product_zero,
            ideals_ok ? "" : "branch sets fail to be ideals");

    Mask zero_ideal(static_cast<size_t>(r.size()), false);
    zero_ideal[static_cast<size_t>(r.zero())] = true;
    const auto b1 = detail::projection_iso_defect(pr, o1, zero_ideal, 0);
    const auto b2 = detail::projection_iso_defect(pr, o2, zero_ideal, 1);
    rep.add("sec2.branch_quotients", "Prop 2.1(1)", !b1 && !b2, b1 ? *b1 : (b2 ? *b2 : ""));
  }
  return rep;
}

/** When I^2 = (0), the trivial extension and the duplication are the same
 *  ring through (r, i) -> (r, r+i); checked table against table. */
inline Report verify_idealization_coincidence(const FiniteRing& r, const FiniteIdeal& ideal,
                                              std::string instance = "") {
  for (int a : ideal.elements())
    for (int b : ideal.elements())
      if (r.mul(a, b) != r.zero())
        throw std::invalid_argument(
            "verify_idealization_coincidence: I^2 != (0), the comparison hypothesis fails");
  const PairRing dup = duplication(r, ideal);
  std::vector<std::pair<int, int>> icoords;
  for (int x = 0; x < r.size(); ++x)
    for (int e : ideal.elements()) icoords.emplace_back(x, e);
  const detail::PairTables idl = detail::pair_table_ring(r, icoords, false);

  std::vector<int> f(static_cast<size_t>(idl.ring.size()));
  for (int k = 0; k < idl.ring.size(); ++k) {
    const auto& [x, e] = idl.coords[static_cast<size_t>(k)];
    f[static_cast<size_t>(k)] = dup.index.at({x, r.add(x, e)});
  }
  const auto defect = detail::iso_defect(idl.ring, dup.ring, f);
  Report rep;
  rep.instance = instance.empty()
                     ? "|R|=" + std::to_string(r.size()) + " I=" + to_string(ideal)
                     : std::move(instance);
  rep.add("ideal.coincidence", "idealization comparison", !defect, defect ? *defect : "");
  return rep;
}

}  // namespace duplab
