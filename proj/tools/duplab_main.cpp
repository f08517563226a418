// duplab: command-line surface over the verification engines. Parses
// instance descriptors, dispatches to the value/series/table engines, renders
// claim reports as text or JSON, and runs batch manifests.
//
// Exit codes: 0 expectations met, 1 claim failure, 2 usage or parse error,
// 3 precision-unsound verdict.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "duplab/canon.hpp"
#include "duplab/finring.hpp"
#include "duplab/parse.hpp"
#include "duplab/report.hpp"
#include "duplab/serring.hpp"

using njson = nlohmann::ordered_json;
using namespace duplab;

namespace {

constexpr const char* kToolVersion = "duplab 0.1.0";
constexpr int kSchema = 1;

struct RenderContext {
  std::string command;  // echo of the tokens that produced this report
  std::string format = "text";
  std::ostream* out = nullptr;
  njson* sink = nullptr;  // batch capture; wins over direct printing
};

njson report_to_json(const RenderContext& ctx, const Report& rep, const njson& info) {
  njson j;
  j["schema"] = kSchema;
  j["tool_version"] = kToolVersion;
  j["command"] = ctx.command;
  j["instance"] = rep.instance;
  j["note"] = rep.note;
  j["seed"] = rep.seed;
  if (!info.is_null()) j["info"] = info;
  njson claims = njson::array();
  for (const auto& c : rep.claims)
    claims.push_back({{"id", c.id},
                      {"paper_locus", c.locus},
                      {"verdict", to_string(c.verdict)},
                      {"witness", c.witness},
                      {"timing_ms", c.timing_ms}});
  j["claims"] = claims;
  return j;
}

void render_text(std::ostream& out, const Report& rep, const njson& info) {
  if (!rep.instance.empty()) out << "instance: " << rep.instance << "\n";
  if (!rep.note.empty()) out << "note: " << rep.note << "\n";
  if (rep.seed) out << "seed: " << rep.seed << "\n";
  if (!info.is_null())
    for (const auto& [key, value] : info.items())
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
          << "\n";
  int pass = 0, fail = 0, skipped = 0;
  for (const auto& c : rep.claims) {
    out << "  " << to_string(c.verdict) << "  " << c.id << " [" << c.locus << "]";
    if (!c.witness.empty()) out << "  " << c.witness;
    out << "\n";
    (c.verdict == Verdict::pass ? pass : c.verdict == Verdict::fail ? fail : skipped)++;
  }
  if (!rep.claims.empty())
    out << rep.claims.size() << " claims: " << pass << " pass, " << fail << " fail, "
        << skipped << " skipped\n";
}

void render(const RenderContext& ctx, const Report& rep, const njson& info = njson()) {
  if (ctx.sink) {
    *ctx.sink = report_to_json(ctx, rep, info);
    return;
  }
  if (ctx.format == "json")
    *ctx.out << report_to_json(ctx, rep, info).dump(2) << "\n";
  else
    render_text(*ctx.out, rep, info);
}

enum class Expect { pass, fail };

int exit_for(const Report& rep, Expect expect) {
  const bool failed = rep.any_failed();
  return ((expect == Expect::fail) == failed) ? 0 : 1;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// info commands (no claims, exit 0 unless the descriptor is bad)

int cmd_sgp_info(const RenderContext& ctx, const std::string& desc) {
  const NumericalSemigroup s = parse_semigroup(desc);
  Report rep;
  rep.instance = to_string(s);
  njson info;
  info["generators"] = s.minimal_generators();
  info["frobenius"] = s.frobenius();
  info["conductor"] = s.conductor();
  info["gaps"] = s.gap_set();
  info["symmetric"] = s.is_symmetric();
  info["canonical_ideal"] = to_string(canonical_ideal(s));
  info["oversemigroups"] = oversemigroups(s).size();
  render(ctx, rep, info);
  return 0;
}

int cmd_ideal_info(const RenderContext& ctx, const std::string& sgp_desc,
                   const std::string& ideal_desc) {
  const NumericalSemigroup s = parse_semigroup(sgp_desc);
  const RelativeIdeal e = parse_ideal(s, ideal_desc);
  Report rep;
  rep.instance = "S=" + to_string(s) + " E=" + to_string(e);
  njson info;
  info["min"] = e.min();
  info["minimal_generators"] = e.minimal_generators();
  info["full_from"] = e.full_from();
  const auto integ = integralize(s, e);
  info["integral"] = integ.shift == 0;
  const CanonCertificate cert = certify_mcanonical(e);
  info["m_canonical"] = cert.mcanonical;
  if (!cert.mcanonical) info["duality_witness"] = to_string(*cert.witness);
  info["self_colon_is_S"] = ideal_colon(e, e) == unit_ideal(s);
  render(ctx, rep, info);
  return 0;
}

int cmd_ideal_colon(const RenderContext& ctx, const std::string& sgp_desc,
                    const std::string& e_desc, const std::string& f_desc) {
  const NumericalSemigroup s = parse_semigroup(sgp_desc);
  const RelativeIdeal e = parse_ideal(s, e_desc);
  const RelativeIdeal f = parse_ideal(s, f_desc);
  Report rep;
  rep.instance = "S=" + to_string(s);
  njson info;
  info["colon"] = to_string(ideal_colon(e, f));
  render(ctx, rep, info);
  return 0;
}

int cmd_finring_spec(const RenderContext& ctx, const std::string& ring_desc) {
  const FiniteRing r = parse_zmod(ring_desc);
  const SpecInfo sp = spec(r);
  Report rep;
  rep.instance = ring_desc;
  njson info;
  info["size"] = r.size();
  njson ideals = njson::array();
  for (const auto& i : sp.ideals) ideals.push_back(to_string(i));
  info["ideals"] = ideals;
  njson primes = njson::array();
  for (const auto& p : sp.primes) primes.push_back(to_string(p));
  info["primes"] = primes;
  info["reduced"] = sp.reduced;
  info["local"] = sp.local;
  render(ctx, rep, info);
  return 0;
}

int cmd_dup_table(const RenderContext& ctx, const std::string& ring_desc,
                  const std::string& ideal_desc) {
  const FiniteRing r = parse_zmod(ring_desc);
  const FiniteIdeal i = parse_principal_ideal(r, ideal_desc);
  const PairRing pr = duplication(r, i);
  const SpecInfo sd = spec(pr.ring);
  Report rep;
  rep.instance = ring_desc + " I=" + ideal_desc;
  njson info;
  info["elements"] = pr.ring.size();
  info["spec_size"] = sd.primes.size();
  info["reduced"] = sd.reduced;
  info["local"] = sd.local;
  render(ctx, rep, info);
  return 0;
}

int cmd_dup_model(const RenderContext& ctx, const std::string& sgp_desc,
                  const std::string& ideal_desc, uint32_t prime, const std::string& window) {
  const NumericalSemigroup s = parse_semigroup(sgp_desc);
  const RelativeIdeal e = integralize(s, parse_ideal(s, ideal_desc)).ideal;
  const Model m = build_model(s, e, prime, parse_window(window));
  Report rep;
  rep.instance = describe(m);
  njson info;
  info["window"] = std::to_string(m.lo) + ":" + std::to_string(m.hi);
  info["dim_R_window"] = m.rwin.dim();
  info["dim_I_window"] = m.iwin.dim();
  info["dim_D_window"] = m.dwin.dim();
  info["dim_end_part"] = m.end_part.dim();
  info["dim_hom"] = m.hom.dim();
  render(ctx, rep, info);
  return 0;
}

// ---------------------------------------------------------------------------
// the verify registry

struct VerifyArgs {
  std::string claim;
  std::string sgp;
  std::string ring;
  std::string ideal;
  uint32_t prime = 101;
  std::string window = "auto";
  uint64_t seed = 2026;
  int samples = 0;  // 0 = the claim's own default
  Expect expect = Expect::pass;
};

const char* kVerifyClaims =
    "spectrum coincidence claims gorenstein cor45 oversgp sigma xengine";

int cmd_verify(const RenderContext& ctx, const VerifyArgs& a) {
  Report rep;

  if (a.claim == "spectrum" || a.claim == "coincidence") {
    if (a.ring.empty() || a.ideal.empty())
      throw ParseError("verify " + a.claim + ": needs --ring Zmod(n) and --ideal (a)");
    const FiniteRing r = parse_zmod(a.ring);
    const FiniteIdeal i = parse_principal_ideal(r, a.ideal);
    const std::string instance = a.ring + " I=" + a.ideal;
    rep = a.claim == "spectrum" ? verify_section2(r, i, instance)
                                : verify_idealization_coincidence(r, i, instance);
  } else if (a.claim == "claims" || a.claim == "gorenstein" || a.claim == "oversgp" ||
             a.claim == "xengine") {
    if (a.sgp.empty()) throw ParseError("verify " + a.claim + ": needs --sgp");
    const NumericalSemigroup s = parse_semigroup(a.sgp);
    if (a.claim == "claims")
      rep = run_claim_suite(s);
    else if (a.claim == "gorenstein")
      rep = gorenstein_endpoint(s);
    else if (a.claim == "oversgp")
      rep = verify_oversemigroup_canonical(s);
    else
      rep = cross_engine_colon_check(s, a.samples > 0 ? a.samples : 50, a.seed, a.prime);
  } else if (a.claim == "cor45") {
    if (a.sgp.empty()) throw ParseError("verify cor45: needs --sgp");
    const NumericalSemigroup s = parse_semigroup(a.sgp);
    Cor45Options opt;
    opt.prime = a.prime;
    opt.window = parse_window(a.window);
    opt.seed = a.seed;
    if (a.samples > 0) opt.samples = a.samples;
    if (!a.ideal.empty()) opt.ideal = parse_ideal(s, a.ideal);
    rep = verify_cor45(s, opt);
  } else if (a.claim == "sigma") {
    if (a.sgp.empty()) throw ParseError("verify sigma: needs --sgp");
    const NumericalSemigroup s = parse_semigroup(a.sgp);
    const RelativeIdeal raw = a.ideal.empty() ? canonical_ideal(s) : parse_ideal(s, a.ideal);
    const Model m = build_model(s, integralize(s, raw).ideal, a.prime, parse_window(a.window));
    const SigmaMap sig = sigma_matrix(m);
    rep.instance = describe(m);
    rep.seed = a.seed;
    rep.add("sigma.injective", "Thm 4.1", sig.injective,
            "rank " + std::to_string(sig.image.rank()));
    std::string wit;
    if (!sig.surjective) {
      const RelativeIdeal ee = ideal_colon(m.ideal, m.ideal);
      wit = "E-E = " + to_string(ee) + (ee == unit_ideal(s) ? " = S" : " != S");
    }
    rep.add("sigma.surjective", "Thm 4.1", sig.surjective, wit);
    rep.append(sigma_linearity_check(m, a.samples > 0 ? a.samples : 64, a.seed));
    rep.append(pi_basis_check(m));
  } else {
    throw ParseError("unknown claim '" + a.claim + "'; available: " + kVerifyClaims);
  }

  render(ctx, rep);
  return exit_for(rep, a.expect);
}

// ---------------------------------------------------------------------------
// dispatch

int duplab_run(const std::vector<std::string>& tokens, std::ostream& out, std::ostream& err,
               njson* sink, bool allow_batch);

int cmd_batch(const std::string& path, const std::string& format, std::ostream& out,
              std::ostream& err) {
  std::ifstream file(path);
  if (!file) {
    err << "batch: cannot read manifest '" << path << "'\n";
    return 2;
  }
  njson entries = njson::array();
  bool all_met = true;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    std::istringstream is(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (is >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    std::ostringstream buffer;
    njson sub;
    int rc;
    if (tokens.front() == "batch") {
      buffer << "batch: manifests cannot nest\n";
      rc = 2;
    } else {
      rc = duplab_run(tokens, buffer, buffer, format == "json" ? &sub : nullptr, false);
    }
    all_met = all_met && rc == 0;
    if (format == "json") {
      entries.push_back({{"line", line_no},
                         {"command", join_tokens(tokens)},
                         {"exit", rc},
                         {"report", sub}});
    } else {
      out << "## line " << line_no << ": " << join_tokens(tokens) << " -> exit " << rc
          << "\n";
      out << buffer.str();
    }
  }
  if (format == "json") {
    njson j;
    j["schema"] = kSchema;
    j["tool_version"] = kToolVersion;
    j["command"] = "batch " + path;
    j["entries"] = entries;
    j["all_met"] = all_met;
    out << j.dump(2) << "\n";
  } else {
    out << (all_met ? "batch: all expectations met\n" : "batch: some entries failed\n");
  }
  return all_met ? 0 : 1;
}

int duplab_run(const std::vector<std::string>& tokens, std::ostream& out, std::ostream& err,
               njson* sink, bool allow_batch) {
  CLI::App app{"exact verification lab for duplicated semigroup rings"};
  app.name("duplab");
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  RenderContext ctx;
  ctx.command = join_tokens(tokens);
  ctx.out = &out;
  ctx.sink = sink;

  std::function<int()> action;

  // sgp info <generators>
  auto* sgp = app.add_subcommand("sgp", "numerical semigroup queries");
  auto* sgp_info = sgp->add_subcommand("info", "gaps, symmetry, canonical ideal");
  std::string sgp_desc;
  sgp_info->add_option("generators", sgp_desc, "e.g. 3,4,5 or <3,4,5>")->required();
  sgp_info->add_option("--format", ctx.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  sgp_info->callback([&] { action = [&] { return cmd_sgp_info(ctx, sgp_desc); }; });

  // ideal info|colon
  auto* ideal = app.add_subcommand("ideal", "relative ideal queries");
  std::string ideal_sgp, ideal_desc, ideal_second;
  auto* ideal_info = ideal->add_subcommand("info", "generators, duality, self-colon");
  ideal_info->add_option("--sgp", ideal_sgp, "base semigroup")->required();
  ideal_info->add_option("ideal", ideal_desc, "S|M|K|shiftK|{a,b}+S|a,b")->required();
  ideal_info->add_option("--format", ctx.format)->check(CLI::IsMember({"text", "json"}));
  ideal_info->callback(
      [&] { action = [&] { return cmd_ideal_info(ctx, ideal_sgp, ideal_desc); }; });
  auto* ideal_colon_cmd = ideal->add_subcommand("colon", "value-level (E - F)");
  ideal_colon_cmd->add_option("--sgp", ideal_sgp, "base semigroup")->required();
  ideal_colon_cmd->add_option("E", ideal_desc, "target ideal")->required();
  ideal_colon_cmd->add_option("F", ideal_second, "divisor ideal")->required();
  ideal_colon_cmd->add_option("--format", ctx.format)->check(CLI::IsMember({"text", "json"}));
  ideal_colon_cmd->callback([&] {
    action = [&] { return cmd_ideal_colon(ctx, ideal_sgp, ideal_desc, ideal_second); };
  });

  // finring spec <ring>
  auto* finring = app.add_subcommand("finring", "finite residue ring queries");
  auto* finring_spec = finring->add_subcommand("spec", "ideals, primes, nilradical");
  std::string ring_desc;
  finring_spec->add_option("ring", ring_desc, "Zmod(n)")->required();
  finring_spec->add_option("--format", ctx.format)->check(CLI::IsMember({"text", "json"}));
  finring_spec->callback([&] { action = [&] { return cmd_finring_spec(ctx, ring_desc); }; });

  // dup table|model
  auto* dup = app.add_subcommand("dup", "duplicated ring construction");
  std::string dup_ring, dup_fin_ideal, dup_sgp, dup_ideal = "shiftK", dup_window = "auto";
  uint32_t dup_prime = 101;
  auto* dup_table = dup->add_subcommand("table", "finite pair ring summary");
  dup_table->add_option("--ring", dup_ring, "Zmod(n)")->required();
  dup_table->add_option("--ideal", dup_fin_ideal, "(a)")->required();
  dup_table->add_option("--format", ctx.format)->check(CLI::IsMember({"text", "json"}));
  dup_table->callback(
      [&] { action = [&] { return cmd_dup_table(ctx, dup_ring, dup_fin_ideal); }; });
  auto* dup_model = dup->add_subcommand("model", "series window model summary");
  dup_model->add_option("--sgp", dup_sgp, "base semigroup")->required();
  dup_model->add_option("--ideal", dup_ideal, "defaults to shiftK");
  dup_model->add_option("--prime", dup_prime, "coefficient field");
  dup_model->add_option("--window", dup_window, "lo:hi or auto");
  dup_model->add_option("--format", ctx.format)->check(CLI::IsMember({"text", "json"}));
  dup_model->callback([&] {
    action = [&] { return cmd_dup_model(ctx, dup_sgp, dup_ideal, dup_prime, dup_window); };
  });

  // verify <claim> [instance flags]
  auto* verify = app.add_subcommand("verify", "run a claim from the registry");
  VerifyArgs va;
  std::string expect_str = "pass";
  verify->add_option("claim", va.claim, std::string("one of: ") + kVerifyClaims)->required();
  verify->add_option("--sgp", va.sgp, "semigroup descriptor");
  verify->add_option("--ring", va.ring, "Zmod(n)");
  verify->add_option("--ideal", va.ideal, "ideal descriptor for the chosen engine");
  verify->add_option("--prime", va.prime, "coefficient field (default 101)");
  verify->add_option("--window", va.window, "lo:hi or auto");
  verify->add_option("--seed", va.seed, "sampling seed (default 2026)");
  verify->add_option("--samples", va.samples, "sample count (0 = claim default)");
  verify->add_option("--format", ctx.format)->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--expect", expect_str, "pass|fail (negative controls)")
      ->check(CLI::IsMember({"pass", "fail"}));
  verify->callback([&] {
    action = [&] {
      va.expect = expect_str == "fail" ? Expect::fail : Expect::pass;
      return cmd_verify(ctx, va);
    };
  });

  // batch <manifest>
  auto* batch = app.add_subcommand("batch", "run a manifest of commands");
  std::string manifest, batch_format = "text";
  batch->add_option("manifest", manifest, "one command per line, # comments")->required();
  batch->add_option("--format", batch_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  batch->callback([&] {
    action = [&] {
      if (!allow_batch) {
        err << "batch: manifests cannot nest\n";
        return 2;
      }
      return cmd_batch(manifest, batch_format, out, err);
    };
  });

  try {
    // CLI11's vector overload consumes the args back to front
    std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!action) {
      err << app.help();
      return 2;
    }
    return action();
  } catch (const PrecisionError& e) {
    err << "precision unsound: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> tokens(argv + 1, argv + argc);
  return duplab_run(tokens, std::cout, std::cerr, nullptr, true);
}
