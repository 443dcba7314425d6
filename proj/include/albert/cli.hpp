#pragma once

// Batch command-line frontend: field-info, build, split, verify, census,
// line-census. Exit codes: 0 pass, 1 counterexample or mismatch, 2 usage.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "albert/census.hpp"
#include "albert/io.hpp"
#include "albert/split_albert.hpp"
#include "albert/verify.hpp"

namespace albert::cli {

enum ExitCode : int { kPass = 0, kCounterexample = 1, kUsage = 2, kInternal = 3 };

struct RunConfig {
  std::string command;
  unsigned q = 0;
  std::optional<std::string> c, norm_target, d, v;
  bool scan_all = false;
  std::string scope = "all";
  std::string theorem;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::uint64_t samples = 2000;
  unsigned workers = 1;
};

inline const std::vector<unsigned> kSupportedOrders{3, 4, 5, 7, 8, 9};

inline void check_order(const RunConfig& cfg) {
  if (cfg.q == 2 && !(cfg.command == "verify" && cfg.theorem == "7.1"))
    throw DomainError(
        "q = 2 is not supported: the norm K^x -> GF(2)^x = {1} is onto, so every c != 0 has N(c) = 1 and no "
        "twisted field exists");
  if (cfg.q == 2) return;
  if (std::find(kSupportedOrders.begin(), kSupportedOrders.end(), cfg.q) == kSupportedOrders.end())
    throw UsageError("q must be one of 3, 4, 5, 7, 8, 9 (got " + std::to_string(cfg.q) + ")");
}

inline TwistedFieldSpec twisted_spec(const RunConfig& cfg) {
  if (cfg.c.has_value() == cfg.norm_target.has_value())
    throw UsageError("give exactly one of --c \"[a0,a1,a2]\" or --norm-target <element of F>");
  const Tower k = Tower::of_order(cfg.q);
  if (cfg.c) return TwistedFieldSpec(k, k.parse(*cfg.c));
  const Elem target = k.base().parse(*cfg.norm_target);
  if (target == k.base().one()) throw DomainError("--norm-target 1 is excluded: N(c) = 1 gives zero divisors");
  const auto c = lex_least_with_norm(k, target);
  if (!c) throw DomainError("no c in K with norm " + *cfg.norm_target);
  return TwistedFieldSpec(k, *c);
}

inline split::SplitAlbertSpec<Field> split_spec(const RunConfig& cfg) {
  const Field f = Field::of_order(cfg.q);
  std::array<Elem, 3> d{f.one(), f.one(), f.one()};
  if (cfg.d) {
    const Tower k(f);
    const KElem parsed = k.parse(*cfg.d);
    if (cfg.d->find('[') == std::string::npos) throw UsageError("--d expects a triple \"[d0,d1,d2]\"");
    d = {parsed[0], parsed[1], parsed[2]};
  }
  return split::SplitAlbertSpec<Field>(f, d);
}

inline census::Parameters split_parameters(const split::SplitAlbertSpec<Field>& spec) {
  census::Parameters p;
  const Field& f = spec.field();
  p.q = f.order();
  p.field_modulus = gf::format_modulus(f.spec());
  for (int i = 0; i < 3; ++i) p.d[i] = f.format(spec.d(i));
  return p;
}

// ---------------------------------------------------------------------------
// Table rendering

inline void table_parameters(std::ostream& os, const census::Parameters& p) {
  os << "q = " << p.q;
  if (!p.field_modulus.empty()) os << ", F modulus " << p.field_modulus;
  if (!p.cubic_modulus.empty()) os << ", K modulus " << p.cubic_modulus;
  if (!p.c.empty()) os << ", c = " << p.c << ", N(c) = " << p.norm_c << " (" << p.isotopy_class << ")";
  if (!p.d[0].empty()) os << ", d = (" << p.d[0] << ", " << p.d[1] << ", " << p.d[2] << ")";
  os << '\n';
}

inline void table_rows(std::ostream& os, const std::vector<census::ClassRow>& obs,
                       const std::optional<std::vector<census::ClassRow>>& pred) {
  os << std::left << std::setw(10) << "dim" << std::right << std::setw(12) << "vectors" << std::setw(12) << "predicted"
     << std::setw(10) << "spaces" << std::setw(12) << "predicted" << '\n';
  for (std::size_t i = 0; i < obs.size(); ++i) {
    os << std::left << std::setw(10) << obs[i].dim << std::right << std::setw(12) << obs[i].vectors << std::setw(12)
       << (pred ? std::to_string((*pred)[i].vectors) : "-") << std::setw(10) << obs[i].spaces << std::setw(12)
       << (pred ? std::to_string((*pred)[i].spaces) : "-") << '\n';
  }
}

inline void render(std::ostream& os, const std::string& format, const census::CensusReport& r, bool lines_only) {
  if (format == "json") {
    os << io::to_json(r).dump(2) << '\n';
  } else if (format == "csv") {
    if (lines_only) {
      os << "line,in_xy_plane,count\n";
      for (const auto& l : r.lines) os << '"' << l.line << "\"," << (l.in_xy_plane ? "true" : "false") << ',' << l.count << '\n';
    } else {
      os << io::to_csv(r);
    }
  } else {
    table_parameters(os, r.parameters);
    os << "v = " << r.v << " (" << r.v_class << ")\n";
    if (!lines_only) {
      table_rows(os, r.observed, r.predicted);
      os << "complementary spaces: " << r.complementary_spaces;
      if (r.predicted_complementary) os << " (predicted " << *r.predicted_complementary << ")";
      os << '\n';
    } else {
      for (const auto& l : r.lines) os << l.line << (l.in_xy_plane ? "  in <x,y>v  " : "             ") << l.count << '\n';
      if (r.predicted_lines)
        os << "predicted: " << r.predicted_lines->in_xy_plane << " in <x,y>v, " << r.predicted_lines->other
           << " otherwise\n";
    }
    os << "match: " << (r.match ? "yes" : "NO") << '\n';
  }
}

inline void render(std::ostream& os, const std::string& format, const census::ScanReport& r) {
  if (format == "json") {
    os << io::to_json(r).dump(2) << '\n';
  } else if (format == "csv") {
    os << io::to_csv(r);
  } else {
    table_parameters(os, r.parameters);
    os << "scope: " << r.scope << ", base vectors: " << r.base_vectors << '\n';
    for (const auto& p : r.profiles) {
      os << '\n' << p.v_class << " x " << p.multiplicity << " (first " << p.first_v << ")\n";
      table_rows(os, p.observed, p.predicted);
      os << "complementary spaces: " << p.complementary_spaces << '\n';
      for (const auto& h : p.line_histogram)
        os << "  " << h.lines << " lines with count " << h.count << " (" << h.in_xy_plane << " in <x,y>v)\n";
    }
    os << "match: " << (r.match ? "yes" : "NO") << '\n';
  }
}

inline void render(std::ostream& os, const std::string& format, const census::Parameters& p, const verify::Verdict& v) {
  if (format == "json") {
    os << io::to_json(p, v).dump(2) << '\n';
  } else if (format == "csv") {
    os << "check,pass,cases,hits\n" << v.check << ',' << (v.pass ? "true" : "false") << ',' << v.cases << ',' << v.hits << '\n';
  } else {
    table_parameters(os, p);
    os << "check " << v.check << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.cases << " cases, " << v.hits
       << " hits)\n";
    for (const auto& n : v.notes) os << "  " << n << '\n';
    for (const auto& [k, w] : v.witnesses) os << "  " << k << " = " << w << '\n';
  }
}

inline void render_json_or_table(std::ostream& os, const std::string& format, const io::Json& j) {
  if (format == "json") {
    os << j.dump(2) << '\n';
    return;
  }
  if (format == "csv") throw UsageError("csv output is available for census, line-census and verify");
  for (const auto& [key, value] : j.items()) os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

// ---------------------------------------------------------------------------
// Commands

inline int field_info(const RunConfig& cfg, std::ostream& os) {
  const Tower k = Tower::of_order(cfg.q);
  const Field& f = k.base();
  io::Json elements = io::Json::array();
  for (Elem e : f.elements()) elements.push_back(f.format(e));
  io::Json fibers = io::Json::object();
  std::map<std::uint16_t, std::uint64_t> count;
  for (unsigned code = 1; code < k.order(); ++code) ++count[k.norm(k.decode(code)).code];
  for (const auto& [n, c] : count) fibers[f.format(Elem{n})] = c;
  io::Json j = {{"q", cfg.q},
                {"field", io::to_json(f.spec())},
                {"field_modulus", gf::format_modulus(f.spec())},
                {"cubic_modulus", k.format_modulus()},
                {"elements", elements},
                {"norm_fibers", fibers}};
  render_json_or_table(os, cfg.format, j);
  return kPass;
}

inline int build(const RunConfig& cfg, std::ostream& os) {
  const TwistedFieldSpec spec = twisted_spec(cfg);
  const Algebra3 alg = to_structure_constants(spec);
  io::Json j = {{"parameters", io::to_json(census::describe(spec))},
                {"spec", io::to_json(spec)},
                {"algebra", io::to_json(alg)},
                {"commutative_tensor", is_commutative(alg)},
                {"division", is_division(alg)}};
  render_json_or_table(os, cfg.format, j);
  return is_division(alg) ? kPass : kCounterexample;
}

inline int split_cmd(const RunConfig& cfg, std::ostream& os) {
  const TwistedFieldSpec spec = twisted_spec(cfg);
  const Tower& k = spec.tower();
  const auto sp = split::split_twisted_field(spec);
  std::uint64_t cases = 0, failures = 0;
  std::string first;
  for (unsigned a = 0; a < k.order(); ++a)
    for (unsigned b = 0; b < k.order(); ++b) {
      const KElem x = k.decode(a), y = k.decode(b);
      const auto ex = split::embed(k, x), ey = split::embed(k, y);
      const auto lhs = split::nu_via_phi(sp, ex, ey);
      ++cases;
      if (lhs != split::embed(k, mu(spec, x, y)) || lhs != split::nu(spec, ex, ey)) {
        if (failures++ == 0) first = k.format(x) + "," + k.format(y);
      }
    }
  io::Json j = {{"parameters", io::to_json(census::describe(spec))},
                {"d", {k.format(sp.spec.d(0)), k.format(sp.spec.d(1)), k.format(sp.spec.d(2))}},
                {"d_product", k.format(sp.spec.product())},
                {"splitting_identity", failures == 0},
                {"cases", cases},
                {"failures", failures}};
  if (failures) j["witness"] = first;
  render_json_or_table(os, cfg.format, j);
  return failures == 0 ? kPass : kCounterexample;
}

inline int verify_cmd(const RunConfig& cfg, std::ostream& os) {
  verify::Verdict v;
  census::Parameters params;
  verify::SampleMode sampled{false, cfg.samples, cfg.seed};
  if (cfg.theorem == "A" || cfg.theorem == "B") {
    const TwistedFieldSpec spec = twisted_spec(cfg);
    const census::Context ctx(spec);
    params = ctx.parameters();
    v = cfg.theorem == "A" ? verify::verify_theorem_A(ctx, cfg.q <= 4 ? verify::SampleMode{} : sampled)
                           : verify::verify_theorem_B(ctx, cfg.workers);
  } else if (cfg.theorem == "3.1" || cfg.theorem == "7.2-analogue") {
    const auto spec = split_spec(cfg);
    params = split_parameters(spec);
    v = cfg.theorem == "3.1" ? verify::verify_split_theorem_3_1(spec, cfg.q <= 4 ? verify::SampleMode{} : sampled)
                             : verify::search_theorem_7_2_analogue(spec);
  } else if (cfg.theorem == "7.1") {
    if (cfg.q > 5) throw UsageError("the exhaustive pair normal form check supports q <= 5");
    const Field f = Field::of_order(cfg.q);
    params.q = cfg.q;
    params.field_modulus = gf::format_modulus(f.spec());
    v = verify::verify_pair_normal_form(f);
  } else {
    throw UsageError("--theorem must be one of A, B, 3.1, 7.1, 7.2-analogue");
  }
  render(os, cfg.format, params, v);
  return v.pass ? kPass : kCounterexample;
}

inline int census_cmd(const RunConfig& cfg, std::ostream& os, bool lines_only) {
  const TwistedFieldSpec spec = twisted_spec(cfg);
  const census::Context ctx(spec);
  if (cfg.scan_all) {
    if (lines_only) throw UsageError("line-census needs a single base vector --v");
    if (cfg.v) throw UsageError("give either --v or --scan-all, not both");
    if (cfg.scope != "all" && cfg.scope != "representatives")
      throw UsageError("--scope must be 'all' or 'representatives'");
    const auto rep = census::scan(
        ctx, cfg.scope == "all" ? census::ScanScope::AllNonzero : census::ScanScope::Representatives,
        {cfg.workers, true});
    render(os, cfg.format, rep);
    return rep.match ? kPass : kCounterexample;
  }
  if (!cfg.v) throw UsageError("give a base vector --v \"[x0,x1,x2],[y0,y1,y2]\" or --scan-all");
  const auto v = engine::parse_pair(ctx.field(), *cfg.v);
  if (lines_only && engine::classify(ctx.field(), v) != engine::VectorClass::Nondegenerate)
    throw DomainError("line-census requires a nondegenerate base vector (x, y independent)");
  const auto rep = census::per_vector_profile(ctx, v, {cfg.workers, true});
  render(os, cfg.format, rep, lines_only);
  return rep.match ? kPass : kCounterexample;
}

/// Parses args (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Albert twisted fields over small finite fields: construction, verification, censuses", "albert"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool with_c) {
    sub->add_option("--q", cfg.q, "order of the base field F")->required();
    sub->add_option("--format", cfg.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    if (with_c) {
      sub->add_option("--c", cfg.c, "twisting element of K as \"[a0,a1,a2]\"");
      sub->add_option("--norm-target", cfg.norm_target, "pick the lex-least c with this norm");
    }
  };
  auto* fi = app.add_subcommand("field-info", "base field, cubic extension and norm fibers");
  common(fi, false);
  auto* bd = app.add_subcommand("build", "structure constants of the twisted field");
  common(bd, true);
  auto* sp = app.add_subcommand("split", "d_i of the splitting and the splitting identity");
  common(sp, true);
  auto* vf = app.add_subcommand("verify", "check a theorem exhaustively or by sampling");
  common(vf, true);
  vf->add_option("--theorem", cfg.theorem, "A, B, 3.1, 7.1 or 7.2-analogue")->required();
  vf->add_option("--d", cfg.d, "split Albert parameters \"[d0,d1,d2]\" (default [1,1,1])");
  vf->add_option("--seed", cfg.seed, "seed for sampled modes");
  vf->add_option("--samples", cfg.samples, "sample count for sampled modes");
  vf->add_option("--workers", cfg.workers, "worker threads");
  auto* cs = app.add_subcommand("census", "intersection dimension census for a base vector");
  common(cs, true);
  cs->add_option("--v", cfg.v, "base vector \"[x0,x1,x2],[y0,y1,y2]\"");
  cs->add_flag("--scan-all", cfg.scan_all, "profile every base vector");
  cs->add_option("--scope", cfg.scope, "with --scan-all: all or representatives");
  cs->add_option("--workers", cfg.workers, "worker threads");
  cs->add_option("--seed", cfg.seed, "accepted for uniformity; censuses are exhaustive");
  auto* lc = app.add_subcommand("line-census", "counts of v' per line of Av");
  common(lc, true);
  lc->add_option("--v", cfg.v, "nondegenerate base vector")->required();
  lc->add_option("--workers", cfg.workers, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    check_order(cfg);
    if (cfg.command == "field-info") return field_info(cfg, out);
    if (cfg.command == "build") return build(cfg, out);
    if (cfg.command == "split") return split_cmd(cfg, out);
    if (cfg.command == "verify") return verify_cmd(cfg, out);
    if (cfg.command == "census") return census_cmd(cfg, out, false);
    return census_cmd(cfg, out, true);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace albert::cli
