// Acceptance gate: prints one pass/fail line per criterion and exits nonzero
// if any criterion (or its time budget) fails. Everything here is exact; the
// budgets are generous ceilings, not tuning targets.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "duplab/canon.hpp"
#include "duplab/finring.hpp"
#include "duplab/numsgp.hpp"
#include "duplab/serring.hpp"

using namespace duplab;

namespace {

struct Criterion {
  int number;
  std::string name;
  double budget_ms;
  std::function<std::string()> run;  // empty string = pass, otherwise the reason
};

std::string check(bool ok, const std::string& why) { return ok ? "" : why; }

// 1. K - (K - J) = J for every enumerated J, all five suite semigroups
std::string duality_suite() {
  for (const auto& s : suite_semigroups()) {
    const CanonCertificate cert = certify_mcanonical(canonical_ideal(s));
    if (!cert.mcanonical)
      return to_string(s) + ": duality fails at J = " + to_string(*cert.witness);
    if (cert.checked_family_size == 0) return to_string(s) + ": empty family";
  }
  return "";
}

// 2. exactly one normalized m-canonical ideal, equal to K, S when symmetric
std::string canonical_certification() {
  for (const auto& s : suite_semigroups()) {
    const auto found = find_canonical(s);
    if (found.size() != 1)
      return to_string(s) + ": " + std::to_string(found.size()) + " canonical ideals";
    if (found[0] != canonical_ideal(s).normalized()) return to_string(s) + ": not K(S)";
    if (s.is_symmetric() && found[0] != unit_ideal(s))
      return to_string(s) + ": symmetric but K != S";
  }
  return "";
}

// 3. closure via bounding translates = double colon, all pairs, two semigroups
std::string claim1_formula() {
  for (const auto& s : {NumericalSemigroup({2, 3}), NumericalSemigroup({3, 4, 5})}) {
    const auto family = enumerate_relative_ideals(s).members;
    for (const auto& w : family)
      for (const auto& e : family)
        if (divisorial_closure_via_intersection(e, w) != divisorial_closure(e, w))
          return to_string(s) + ": E=" + to_string(e) + " W=" + to_string(w);
  }
  return "";
}

// 4. spectrum description of the two table instances, elementwise
std::string spectrum_counts() {
  const FiniteRing z6 = zmod(6);
  const Report r6 = verify_section2(z6, principal_ideal(z6, 2), "Zmod(6) I=(2)");
  if (!r6.all_passed()) return "Zmod(6)/(2): a section-2 claim failed";
  const SpecInfo s6 = spec(duplication(z6, principal_ideal(z6, 2)).ring);
  if (s6.primes.size() != 3) return "Zmod(6)/(2): |Spec| != 3";
  bool unique_over_two = false, split_over_three = false;
  for (const auto& c : r6.claims) {
    if (c.id == "sec2.unique_prime_over[P={0,2,4}]") unique_over_two = true;
    if (c.id == "sec2.two_primes_over[P={0,3}]") split_over_three = true;
  }
  if (!unique_over_two || !split_over_three) return "Zmod(6)/(2): fiber split mismatch";

  const FiniteRing z4 = zmod(4);
  const Report r4 = verify_section2(z4, principal_ideal(z4, 2), "Zmod(4) I=(2)");
  if (!r4.all_passed()) return "Zmod(4)/(2): a section-2 claim failed";
  const SpecInfo s4 = spec(duplication(z4, principal_ideal(z4, 2)).ring);
  return check(s4.primes.size() == 1 && !s4.reduced && s4.local,
               "Zmod(4)/(2): expected one prime, non-reduced, local");
}

// 5. idealization coincidence when the ideal squares to zero
std::string idealization_coincidence() {
  const FiniteRing z4 = zmod(4);
  if (!verify_idealization_coincidence(z4, principal_ideal(z4, 2)).all_passed())
    return "Zmod(4)/(2): map is not an isomorphism";
  const FiniteRing z9 = zmod(9);
  if (!verify_idealization_coincidence(z9, principal_ideal(z9, 3)).all_passed())
    return "Zmod(9)/(3): map is not an isomorphism";
  return "";
}

// 6. sigma bijective and linear on the positive model, deficient on <2,3>/M
std::string sigma_theorem() {
  const NumericalSemigroup s(std::vector<long>{3, 4, 5});
  const Model m = build_model(s, integralize(s, canonical_ideal(s)).ideal);
  const SigmaMap sig = sigma_matrix(m);
  if (!sig.injective || !sig.surjective) return "<3,4,5> shifted K: sigma not bijective";
  const Report lin = sigma_linearity_check(m, 64, 2026);
  if (!lin.all_passed()) return "<3,4,5> shifted K: linearity or pi sample failed";

  const NumericalSemigroup s23(std::vector<long>{2, 3});
  const Model neg = build_model(s23, maximal_ideal(s23));
  const SigmaMap nsig = sigma_matrix(neg);
  if (nsig.surjective) return "<2,3>/M: sigma unexpectedly surjective";
  const RelativeIdeal ee = ideal_colon(maximal_ideal(s23), maximal_ideal(s23));
  return check(ee != unit_ideal(s23), "<2,3>/M: witness E-E = S, no deficiency");
}

// 7. one hundred sampled ideals of the duplication, stable at doubled window
std::string cor45_sampling() {
  Cor45Options opt;  // samples = 100, double_window_check = true
  const PipelineReport rep = verify_cor45(NumericalSemigroup({3, 4, 5}), opt);
  if (!rep.all_passed()) {
    for (const auto& c : rep.claims)
      if (c.verdict != Verdict::pass) return c.id + ": " + c.witness;
  }
  return "";
}

// 8. the three Gorenstein verdicts agree pairwise on every suite member
std::string gorenstein_agreement() {
  for (const auto& s : suite_semigroups()) {
    const PipelineReport rep = gorenstein_endpoint(s);
    if (!rep.all_passed()) {
      for (const auto& c : rep.claims)
        if (c.verdict != Verdict::pass) return to_string(s) + ": " + c.witness;
    }
  }
  return "";
}

// 9. value-level and window-level colons agree on 50 seeded inputs
std::string cross_engine_oracle() {
  for (const auto& s : suite_semigroups()) {
    const Report rep = cross_engine_colon_check(s, 10);
    if (!rep.all_passed()) return to_string(s) + ": " + rep.claims.front().witness;
  }
  return "";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "duality suite over the five configured semigroups", 10000, duality_suite},
      {2, "m-canonical certification is unique and equals K", 10000, canonical_certification},
      {3, "translate-intersection closure formula on all pairs", 5000, claim1_formula},
      {4, "spectrum counts and fiber splits of the table instances", 5000, spectrum_counts},
      {5, "idealization coincidence when the ideal squares to zero", 5000,
       idealization_coincidence},
      {6, "sigma bijective, linear, and deficient on the negative control", 30000,
       sigma_theorem},
      {7, "100 sampled duplication ideals all divisorial, window-stable", 300000,
       cor45_sampling},
      {8, "Gorenstein endpoint verdicts agree across the suite", 10000,
       gorenstein_agreement},
      {9, "cross-engine colon oracle on 50 seeded inputs", 30000, cross_engine_oracle},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = c.run();
    } catch (const std::exception& ex) {
      reason = std::string("exception: ") + ex.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    if (reason.empty() && ms > c.budget_ms)
      reason = "over budget: " + std::to_string(ms) + " ms";
    const bool ok = reason.empty();
    failures += ok ? 0 : 1;
    std::printf("%s  criterion %d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.name.c_str(), ms, ok ? "" : " -- ", reason.c_str());
  }
  return failures == 0 ? 0 : 1;
}
