#pragma once

// Descriptor parsing for the command line: semigroups ("3,4,5" or "<3,4,5>"),
// relative ideals ("S", "M", "K", "shiftK", "{0,2}+S", "0,2"), residue rings
// ("Zmod(6)") and their principal ideals ("(2)"), and exponent windows.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "duplab/canon.hpp"
#include "duplab/finring.hpp"
#include "duplab/numsgp.hpp"

namespace duplab {

class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline long parse_long(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const long v = std::stol(text, &used);
    if (used != text.size()) throw ParseError(what + ": trailing junk in '" + text + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(what + ": '" + text + "' is not an integer");
  }
}

inline std::vector<long> parse_long_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty()) throw ParseError(what + ": empty entry in '" + text + "'");
    out.push_back(parse_long(item, what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ParseError(what + ": empty list");
  return out;
}

}  // namespace detail

inline NumericalSemigroup parse_semigroup(std::string text) {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>')
    text = text.substr(1, text.size() - 2);
  if (text.empty()) throw ParseError("semigroup: empty descriptor");
  return NumericalSemigroup(detail::parse_long_list(text, "semigroup"));
}

inline RelativeIdeal parse_ideal(const NumericalSemigroup& s, std::string text) {
  if (text == "S") return unit_ideal(s);
  if (text == "M") return maximal_ideal(s);
  if (text == "K") return canonical_ideal(s);
  if (text == "shiftK") return integralize(s, canonical_ideal(s)).ideal;
  if (!text.empty() && text.front() == '{') {
    const size_t close = text.find('}');
    if (close == std::string::npos) throw ParseError("ideal: unbalanced '{' in '" + text + "'");
    const std::string rest = text.substr(close + 1);
    if (!rest.empty() && rest != "+S")
      throw ParseError("ideal: unexpected suffix '" + rest + "'");
    text = text.substr(1, close - 1);
  }
  if (text.empty()) throw ParseError("ideal: empty descriptor");
  return rel_ideal(s, detail::parse_long_list(text, "ideal"));
}

inline FiniteRing parse_zmod(const std::string& text) {
  const std::string head = "Zmod(";
  if (text.rfind(head, 0) != 0 || text.back() != ')')
    throw ParseError("ring: expected Zmod(n), got '" + text + "'");
  const long n = detail::parse_long(text.substr(head.size(), text.size() - head.size() - 1),
                                    "ring modulus");
  if (n < 2 || n > 64) throw ParseError("ring: modulus must be between 2 and 64");
  return zmod(static_cast<int>(n));
}

inline FiniteIdeal parse_principal_ideal(const FiniteRing& r, const std::string& text) {
  if (text.size() < 3 || text.front() != '(' || text.back() != ')')
    throw ParseError("ideal: expected (a), got '" + text + "'");
  const long a = detail::parse_long(text.substr(1, text.size() - 2), "ideal generator");
  if (a < 0 || a >= r.size())
    throw ParseError("ideal: generator " + std::to_string(a) + " outside the ring");
  return principal_ideal(r, static_cast<int>(a));
}

/** "auto" keeps the model's default window; "lo:hi" pins it. */
inline std::optional<std::pair<long, long>> parse_window(const std::string& text) {
  if (text.empty() || text == "auto") return std::nullopt;
  const size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("window: expected lo:hi or auto, got '" + text + "'");
  return std::make_pair(detail::parse_long(text.substr(0, colon), "window floor"),
                        detail::parse_long(text.substr(colon + 1), "window ceiling"));
}

}  // namespace duplab
