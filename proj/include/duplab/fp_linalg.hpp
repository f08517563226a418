#pragma once

// Dense linear algebra over a small prime field: reduced row echelon bases,
// span, membership, and nullspaces of stacked constraint systems. Kept
// deliberately simple; every matrix in this project is desk-scale.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace duplab {

/** Arithmetic mod a prime p with 2 <= p <= 65521. */
class PrimeField {
public:
  explicit PrimeField(uint32_t p) : _p(p) {
    if (p < 2 || p > 65521)
      throw std::invalid_argument("PrimeField: prime must lie in [2, 65521]");
    for (uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0)
        throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
  }

  uint32_t p() const { return _p; }
  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % _p; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + _p - b % _p) % _p; }
  uint32_t neg(uint32_t a) const { return (_p - a % _p) % _p; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % _p);
  }
  uint32_t inv(uint32_t a) const {
    if (a % _p == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
    // Fermat: a^(p-2)
    uint32_t base = a % _p, out = 1;
    for (uint32_t e = _p - 2; e; e >>= 1) {
      if (e & 1) out = mul(out, base);
      base = mul(base, base);
    }
    return out;
  }

  bool operator==(const PrimeField& o) const { return _p == o._p; }

private:
  uint32_t _p;
};

using FpRow = std::vector<uint32_t>;

/** A subspace kept as a reduced row echelon basis; rows ordered by pivot. */
class EchelonBasis {
public:
  EchelonBasis() : _field(2), _width(0) {}
  EchelonBasis(const PrimeField& f, size_t width) : _field(f), _width(width) {}

  size_t width() const { return _width; }
  size_t rank() const { return _rows.size(); }
  const std::vector<FpRow>& rows() const { return _rows; }
  const std::vector<size_t>& pivots() const { return _pivots; }

  /** Residue of v against the basis; zero vector iff v lies in the span. */
  FpRow reduce(FpRow v) const {
    check_width(v);
    for (size_t i = 0; i < _rows.size(); ++i) {
      const uint32_t c = v[_pivots[i]];
      if (c == 0) continue;
      for (size_t j = _pivots[i]; j < _width; ++j)
        v[j] = _field.sub(v[j], _field.mul(c, _rows[i][j]));
    }
    return v;
  }

  bool member(const FpRow& v) const {
    const FpRow r = reduce(v);
    for (uint32_t x : r)
      if (x) return false;
    return true;
  }

  /** Adds v to the span; returns true iff the rank grew. Keeps RREF. */
  bool insert(FpRow v) {
    v = reduce(std::move(v));
    size_t piv = _width;
    for (size_t j = 0; j < _width; ++j)
      if (v[j]) { piv = j; break; }
    if (piv == _width) return false;
    const uint32_t s = _field.inv(v[piv]);
    for (size_t j = piv; j < _width; ++j) v[j] = _field.mul(v[j], s);
    // clear the new pivot column from the old rows
    for (size_t i = 0; i < _rows.size(); ++i) {
      const uint32_t c = _rows[i][piv];
      if (c == 0) continue;
      for (size_t j = piv; j < _width; ++j)
        _rows[i][j] = _field.sub(_rows[i][j], _field.mul(c, v[j]));
    }
    size_t pos = 0;
    while (pos < _pivots.size() && _pivots[pos] < piv) ++pos;
    _rows.insert(_rows.begin() + static_cast<long>(pos), std::move(v));
    _pivots.insert(_pivots.begin() + static_cast<long>(pos), piv);
    return true;
  }

  bool operator==(const EchelonBasis& o) const {
    return _width == o._width && _rows == o._rows;
  }
  bool operator!=(const EchelonBasis& o) const { return !(*this == o); }

  /** True iff every row of o lies in this span. */
  bool contains(const EchelonBasis& o) const {
    for (const auto& r : o.rows())
      if (!member(r)) return false;
    return true;
  }

private:
  void check_width(const FpRow& v) const {
    if (v.size() != _width)
      throw std::invalid_argument("EchelonBasis: row width mismatch");
  }

  PrimeField _field;
  size_t _width;
  std::vector<FpRow> _rows;
  std::vector<size_t> _pivots;
};

inline EchelonBasis span(const PrimeField& f, size_t width, const std::vector<FpRow>& rows) {
  EchelonBasis b(f, width);
  for (const auto& r : rows) b.insert(r);
  return b;
}

/** Canonical basis of {x : Mx = 0} for the stacked constraint rows M. */
inline EchelonBasis nullspace(const PrimeField& f, size_t width,
                              const std::vector<FpRow>& constraints) {
  const EchelonBasis m = span(f, width, constraints);
  // one solution per free column: x_free = 1, pivot entries balance it out
  std::vector<char> is_pivot(width, 0);
  for (size_t p : m.pivots()) is_pivot[p] = 1;
  std::vector<FpRow> solutions;
  for (size_t free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    FpRow x(width, 0);
    x[free] = 1;
    for (size_t i = 0; i < m.rank(); ++i)
      x[m.pivots()[i]] = f.neg(m.rows()[i][free]);
    solutions.push_back(std::move(x));
  }
  return span(f, width, solutions);
}

}  // namespace duplab
