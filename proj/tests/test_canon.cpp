#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "duplab/canon.hpp"

using namespace duplab;

namespace {

const ClaimResult* find_claim(const Report& r, const std::string& id) {
  for (const auto& c : r.claims)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("canonical ideal is found by exhaustive duality", "[canon]") {
  SECTION("the symmetric case returns the semigroup itself") {
    const NumericalSemigroup s({2, 3});
    const auto found = find_canonical(s);
    REQUIRE(found.size() == 1);
    REQUIRE(found[0] == unit_ideal(s));
  }

  SECTION("the non-symmetric case returns the gap-dual ideal") {
    const NumericalSemigroup s({3, 4, 5});
    const auto found = find_canonical(s);
    REQUIRE(found.size() == 1);
    REQUIRE(found[0] == canonical_ideal(s));
    REQUIRE(found[0] != unit_ideal(s));
    REQUIRE(found[0].contains(1));
  }

  SECTION("the naturals are their own canonical ideal") {
    const NumericalSemigroup s({1});
    const auto found = find_canonical(s);
    REQUIRE(found.size() == 1);
    REQUIRE(found[0] == unit_ideal(s));
  }

  SECTION("uniqueness holds across the whole suite") {
    for (const auto& s : suite_semigroups()) {
      DYNAMIC_SECTION("S = " << to_string(s)) {
        const auto found = find_canonical(s);
        REQUIRE(found.size() == 1);
        REQUIRE(found[0] == canonical_ideal(s).normalized());
        if (s.is_symmetric()) REQUIRE(found[0] == unit_ideal(s));
      }
    }
  }
}

TEST_CASE("certificates carry the family size and a witness on failure", "[canon]") {
  const NumericalSemigroup s({3, 4, 5});
  const CanonCertificate good = certify_mcanonical(canonical_ideal(s));
  REQUIRE(good.mcanonical);
  REQUIRE(good.checked_family_size == 4);
  REQUIRE_FALSE(good.witness.has_value());

  const CanonCertificate bad = certify_mcanonical(unit_ideal(s));
  REQUIRE_FALSE(bad.mcanonical);
  REQUIRE(bad.witness.has_value());
  // the witness really does break the duality for S itself
  const RelativeIdeal w = *bad.witness;
  REQUIRE(ideal_colon(unit_ideal(s), ideal_colon(unit_ideal(s), w)) != w);
}

TEST_CASE("integralize finds the minimal shift and keeps the verdict", "[canon]") {
  SECTION("shifted gap-dual of <3,4,5>") {
    const NumericalSemigroup s({3, 4, 5});
    const auto r = integralize(s, canonical_ideal(s));
    REQUIRE(r.shift == 3);
    REQUIRE(r.ideal == RelativeIdeal::from_window(s, {3, 4}, 6));
    REQUIRE(is_mcanonical(r.ideal));
  }

  SECTION("already integral ideals keep shift zero") {
    const NumericalSemigroup s23({2, 3});
    REQUIRE(integralize(s23, canonical_ideal(s23)).shift == 0);
    REQUIRE(integralize(s23, unit_ideal(s23)).shift == 0);
  }

  SECTION("fractional ideals are pushed up") {
    const NumericalSemigroup s({2, 3});
    const auto r = integralize(s, unit_ideal(s).translate(-5));
    REQUIRE(r.shift == 5);
    REQUIRE(r.ideal == unit_ideal(s));
  }
}

TEST_CASE("value-level claim suite is exhaustive and green", "[canon]") {
  for (const auto& s : suite_semigroups()) {
    DYNAMIC_SECTION("S = " << to_string(s)) {
      const PipelineReport rep = run_claim_suite(s);
      REQUIRE(rep.claims.size() == 4);
      for (const auto& c : rep.claims) {
        INFO(c.id << ": " << c.witness);
        REQUIRE(c.verdict == Verdict::pass);
      }
    }
  }
}

TEST_CASE("the three Gorenstein verdicts agree on every suite member", "[canon]") {
  for (const auto& s : suite_semigroups()) {
    DYNAMIC_SECTION("S = " << to_string(s)) {
      const PipelineReport rep = gorenstein_endpoint(s);
      REQUIRE(rep.claims.size() == 3);
      REQUIRE(rep.all_passed());
    }
  }

  SECTION("non-symmetric members carry a non-divisorial witness") {
    const PipelineReport rep = gorenstein_endpoint(NumericalSemigroup({3, 4, 5}));
    const ClaimResult* c = find_claim(rep, "gorenstein.symmetric_iff_all_divisorial");
    REQUIRE(c != nullptr);
    REQUIRE(c->witness.find("symmetric=false") != std::string::npos);
    REQUIRE(c->witness.find("witness E=") != std::string::npos);
  }
}

TEST_CASE("the six-stage duplication pipeline passes on <3,4,5>", "[canon]") {
  Cor45Options opt;
  opt.samples = 25;  // the acceptance run uses the full 100
  const PipelineReport rep = verify_cor45(NumericalSemigroup({3, 4, 5}), opt);
  REQUIRE(rep.note == "hypothesis certified at rank 1; conclusion sampled");
  REQUIRE(rep.seed == 2026);
  REQUIRE(rep.claims.size() == 6);
  for (const auto& c : rep.claims) {
    INFO(c.id << ": " << c.witness);
    REQUIRE(c.verdict == Verdict::pass);
  }
  REQUIRE(rep.claims[0].id == "cor45.canonical_certified");
  REQUIRE(rep.claims[5].id == "cor45.divisorial_sampled");
  REQUIRE(rep.claims[5].witness.find("25 sampled ideals") != std::string::npos);
}

TEST_CASE("negative control fails at the sigma stage and skips the rest", "[canon]") {
  const NumericalSemigroup s({2, 3});
  Cor45Options opt;
  opt.ideal = maximal_ideal(s);
  const PipelineReport rep = verify_cor45(s, opt);
  REQUIRE(rep.claims.size() == 6);
  REQUIRE(rep.claims[0].verdict == Verdict::pass);  // K(S) = S is still certified
  REQUIRE(rep.claims[1].verdict == Verdict::pass);
  REQUIRE(rep.claims[2].verdict == Verdict::pass);
  REQUIRE(rep.claims[3].verdict == Verdict::fail);
  REQUIRE(rep.claims[3].witness.find("E-E") != std::string::npos);
  REQUIRE(rep.claims[3].witness.find("!= S") != std::string::npos);
  REQUIRE(rep.claims[4].verdict == Verdict::skipped);
  REQUIRE(rep.claims[5].verdict == Verdict::skipped);
  REQUIRE(rep.any_failed());
  REQUIRE_FALSE(rep.all_passed());

  // monotonicity: nothing after the failed stage may report a pass
  bool failed_seen = false;
  for (const auto& c : rep.claims) {
    if (failed_seen) REQUIRE(c.verdict == Verdict::skipped);
    if (c.verdict == Verdict::fail) failed_seen = true;
  }
}

TEST_CASE("the trivial semigroup is rejected by the pipeline", "[canon]") {
  REQUIRE_THROWS_AS(verify_cor45(NumericalSemigroup({1})), std::invalid_argument);
}

TEST_CASE("oversemigroup canonicals are certified", "[canon]") {
  SECTION("<3,4,5> has three oversemigroups") {
    const PipelineReport rep = verify_oversemigroup_canonical(NumericalSemigroup({3, 4, 5}));
    REQUIRE(rep.claims.size() == 3);
    REQUIRE(rep.all_passed());
    REQUIRE(find_claim(rep, "over.canonical[<1>]") != nullptr);
    REQUIRE(find_claim(rep, "over.canonical[<3,4,5>]") != nullptr);
  }

  SECTION("<2,3> has two") {
    const PipelineReport rep = verify_oversemigroup_canonical(NumericalSemigroup({2, 3}));
    REQUIRE(rep.claims.size() == 2);
    REQUIRE(rep.all_passed());
  }

  SECTION("the whole suite certifies") {
    for (const auto& s : suite_semigroups()) {
      DYNAMIC_SECTION("S = " << to_string(s)) {
        REQUIRE(verify_oversemigroup_canonical(s).all_passed());
      }
    }
  }
}

TEST_CASE("value colon and window colon agree on random inputs", "[canon]") {
  for (const auto& s : suite_semigroups()) {
    DYNAMIC_SECTION("S = " << to_string(s)) {
      const Report rep = cross_engine_colon_check(s, 10);
      REQUIRE(rep.claims.size() == 1);
      INFO(rep.claims[0].witness);
      REQUIRE(rep.all_passed());
    }
  }
}
