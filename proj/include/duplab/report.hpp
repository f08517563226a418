#pragma once

// Claim bookkeeping shared by the verification drivers. A Report is a flat
// list of claim outcomes; rendering (text or JSON) lives with the CLI.

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace duplab {

enum class Verdict { pass, fail, skipped };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "skipped";
  }
}

/** Raised when a verdict cannot be trusted at the working window size. */
class PrecisionError : public std::runtime_error {
public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

struct ClaimResult {
  std::string id;       // stable machine id, e.g. "dup.spectrum.count"
  std::string locus;    // provenance label carried into reports
  Verdict verdict = Verdict::skipped;
  std::string witness;  // counterexample or context; empty when uninteresting
  double timing_ms = 0.0;
};

struct Report {
  std::string instance;  // human description of the object under test
  uint64_t seed = 0;
  std::string note;
  std::vector<ClaimResult> claims;

  ClaimResult& add(const std::string& id, const std::string& locus, bool ok,
                   const std::string& witness = "") {
    claims.push_back({id, locus, ok ? Verdict::pass : Verdict::fail, witness, 0.0});
    return claims.back();
  }

  ClaimResult& skip(const std::string& id, const std::string& locus,
                    const std::string& why) {
    claims.push_back({id, locus, Verdict::skipped, why, 0.0});
    return claims.back();
  }

  bool any_failed() const {
    for (const auto& c : claims)
      if (c.verdict == Verdict::fail) return true;
    return false;
  }

  /** Every claim ran and passed; a skipped claim is not a pass. */
  bool all_passed() const {
    if (claims.empty()) return false;
    for (const auto& c : claims)
      if (c.verdict != Verdict::pass) return false;
    return true;
  }

  void append(const Report& other) {
    claims.insert(claims.end(), other.claims.begin(), other.claims.end());
  }
};

/** Wall-clock helper so drivers can stamp timing_ms uniformly. */
class Stopwatch {
public:
  Stopwatch() : _t0(std::chrono::steady_clock::now()) {}
  double ms() const {
    const auto dt = std::chrono::steady_clock::now() - _t0;
    return std::chrono::duration<double, std::milli>(dt).count();
  }

private:
  std::chrono::steady_clock::time_point _t0;
};

}  // namespace duplab
