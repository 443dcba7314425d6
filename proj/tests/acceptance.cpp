// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "albert/census.hpp"
#include "albert/io.hpp"
#include "albert/split_albert.hpp"
#include "albert/verify.hpp"

using namespace albert;
using engine::VectorClass;

namespace {

// Collects failure messages; an empty list at the end means PASS.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (got == want) return;
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want;
    failures.push_back(os.str());
  }
};

using Body = std::function<void(Check&)>;

bool criterion(int n, const std::string& title, const Body& body) {
  const auto start = std::chrono::steady_clock::now();
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s criterion %d: %s (%.1fs)\n", c.failures.empty() ? "PASS" : "FAIL", n, title.c_str(), secs);
  for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("    %s\n", c.failures[i].c_str());
  if (c.failures.size() > 10) std::printf("    ... %zu more\n", c.failures.size() - 10);
  std::fflush(stdout);
  return c.failures.empty();
}

TwistedFieldSpec with_norm(unsigned q, const std::string& norm) {
  const Tower k = Tower::of_order(q);
  return TwistedFieldSpec(k, *lex_least_with_norm(k, k.base().parse(norm)));
}

// c = -t^sigma / t: norm -1, but the tensor itself is not commutative.
TwistedFieldSpec noncommutative_tensor_with_norm_minus_one(unsigned q) {
  const Tower k = Tower::of_order(q);
  return TwistedFieldSpec(k, k.neg(k.div(k.frobenius(k.root()), k.root())));
}

std::vector<TwistedFieldSpec> all_valid(unsigned q) {
  const Tower k = Tower::of_order(q);
  std::vector<TwistedFieldSpec> out;
  for (unsigned code = 1; code < k.order(); ++code)
    if (k.norm(k.decode(code)) != k.base().one()) out.emplace_back(k, k.decode(code));
  return out;
}

std::string label(const TwistedFieldSpec& s) { return "q=" + std::to_string(s.field().order()) + " c=" + s.tower().format(s.c()); }

std::vector<std::uint64_t> vector_counts(const std::vector<census::ClassRow>& rows) {
  std::vector<std::uint64_t> out;
  for (const auto& r : rows) out.push_back(r.vectors);
  return out;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// Checks every profile of a scan against literal expectations.
void check_scan(Check& c, const census::ScanReport& rep, const std::string& what,
                const std::vector<std::uint64_t>& nondeg_counts, std::uint64_t nondeg_complementary,
                std::uint64_t deg_complementary, const std::vector<census::LineHistogramRow>* nondeg_lines,
                std::uint64_t nondeg_multiplicity, std::uint64_t deg_multiplicity) {
  c.expect(rep.match, what + ": report does not match predictions");
  c.equal(rep.invariant_violations, 0u, what + " invariant violations");
  std::uint64_t nd = 0, dg = 0;
  for (const auto& p : rep.profiles) {
    const auto counts = vector_counts(p.observed);
    if (p.v_class == "nondegenerate") {
      nd += p.multiplicity;
      const std::vector<std::uint64_t> head(counts.begin(), counts.begin() + 4);
      c.equal(join(head), join(nondeg_counts), what + " nondegenerate profile " + p.first_v);
      c.equal(p.complementary_spaces, nondeg_complementary, what + " complementary " + p.first_v);
      if (nondeg_lines && p.line_histogram != *nondeg_lines)
        c.failures.push_back(what + ": line histogram differs for " + p.first_v);
    } else {
      dg += p.multiplicity;
      c.equal(p.complementary_spaces, deg_complementary, what + " degenerate complementary " + p.first_v);
    }
  }
  c.equal(nd, nondeg_multiplicity, what + " nondegenerate base vectors");
  c.equal(dg, deg_multiplicity, what + " degenerate base vectors");
}

io::Json without_runtime(io::Json j) {
  j.erase("runtime_ms");
  return j;
}

using Tri = split::TriVector<Elem>;

Tri tri(const Field& f, unsigned code, split::Space s) {
  const Vec3 v = vec3_from_code(f, code);
  return {{v[0], v[1], v[2]}, s};
}

std::vector<split::SplitAlbertSpec<Field>> all_split_specs(const Field& f) {
  std::vector<split::SplitAlbertSpec<Field>> out;
  const unsigned q = f.order();
  for (unsigned code = 0; code < q * q * q; ++code) {
    const Tri d = tri(f, code, split::Space::U);
    if (!split::is_regular(f, d) || f.mul(f.mul(d.c[0], d.c[1]), d.c[2]) == f.neg(f.one())) continue;
    out.emplace_back(f, d.c);
  }
  return out;
}

}  // namespace

int main() {
  bool ok = true;

  ok &= criterion(1, "global counts at q=3 and q=4", [](Check& c) {
    for (auto [q, want] : {std::pair{3u, census::GlobalCounts{624, 104, 312, 4}},
                           std::pair{4u, census::GlobalCounts{3780, 315, 1260, 5}}}) {
      const census::ActionCache cache(to_structure_constants(all_valid(q).front()));
      const auto got = census::global_counts(cache);
      const std::string at = "q=" + std::to_string(q);
      c.equal(got.nondegenerate, want.nondegenerate, at + " nondegenerate");
      c.equal(got.degenerate_nonzero, want.degenerate_nonzero, at + " degenerate");
      c.equal(got.distinct_nondegenerate_av, want.distinct_nondegenerate_av, at + " distinct nondegenerate Av");
      c.equal(got.distinct_degenerate_av, want.distinct_degenerate_av, at + " distinct degenerate Av");
      c.expect(census::predicted_global_counts(q) == want, at + " closed form disagrees with literal counts");
    }
  });

  ok &= criterion(2, "commutative census at q=3, all 624 nondegenerate v", [](Check& c) {
    const census::Context ctx(with_norm(3, "-1"));
    const auto rep = census::scan(ctx, census::ScanScope::AllNonzero, {1, true});
    const std::vector<census::LineHistogramRow> lines{{18, 4, 4}, {16, 9, 0}};
    check_scan(c, rep, "q=3", {2, 24, 216, 382}, 195, 315, &lines, 624, 104);
  });

  ok &= criterion(3, "noncommutative census at q=4 (all valid c) and q=5 (N(c) = 2, 3)", [](Check& c) {
    auto run = [&](const TwistedFieldSpec& spec, census::ScanScope scope, unsigned workers) {
      const std::uint64_t q = spec.field().order(), q3 = q * q * q;
      const census::Context ctx(spec);
      if (ctx.isotopy() != IsotopyClass::NonCommutativeClass) {
        c.failures.push_back(label(spec) + " is not in the noncommutative class");
        return;
      }
      const auto rep = census::scan(ctx, scope, {workers, true});
      const std::vector<std::uint64_t> counts{q - 1, 0, q * (q + 1) * (q3 - 1),
                                              (q - 1) * (q * q * q3 - 2 * q3 - 3 * q * q - 2 * q - 1)};
      const bool full = scope == census::ScanScope::AllNonzero;
      const std::uint64_t planes = q * q + q + 1;
      check_scan(c, rep, label(spec) + " " + census::to_string(scope), counts, q * q * q3 - 2 * q3 - 3 * q * q - q,
                 q * q * (q3 + q * q - 1), nullptr, full ? (q3 - 1) * (q3 - q) : planes, full ? (q3 - 1) * (q + 1) : planes);
    };
    const auto q4 = all_valid(4);
    run(q4.front(), census::ScanScope::AllNonzero, 4);
    for (const auto& spec : q4) run(spec, census::ScanScope::Representatives, 4);
    const census::Context probe(with_norm(4, "u"));
    c.equal(census::complementary_space_count(probe, engine::parse_pair(probe.field(), "[1,0,0],[0,1,0]")), 844u,
            "q=4 complementary spaces");
    run(with_norm(5, "2"), census::ScanScope::AllNonzero, 4);
    run(with_norm(5, "3"), census::ScanScope::Representatives, 4);
  });

  ok &= criterion(4, "Av = Av' only for proportional v, exhaustive at q=3 and q=4", [](Check& c) {
    std::vector<TwistedFieldSpec> specs{with_norm(3, "-1"), noncommutative_tensor_with_norm_minus_one(3)};
    for (const auto& s : all_valid(4)) specs.push_back(s);
    for (const auto& spec : specs) {
      const auto v = verify::verify_theorem_A(census::Context(spec));
      c.expect(v.pass, label(spec) + ": Av = Av' without Fv = Fv'");
      const std::uint64_t q = spec.field().order(), q3 = q * q * q;
      c.equal(v.cases, (q3 - 1) * (q3 - q), label(spec) + " cases");
    }
  });

  ok &= criterion(5, "2-dimensional intersections exist exactly in the commutative class", [](Check& c) {
    for (const auto& spec : {with_norm(3, "-1"), with_norm(5, "-1")}) {
      const census::Context ctx(spec);
      const auto v = verify::verify_theorem_B(ctx, 4);
      c.expect(v.pass && v.hits > 0, label(spec) + ": no 2-dimensional intersection found");
      if (!v.witnesses.count("v")) continue;
      const auto a = engine::parse_pair(ctx.field(), v.witnesses.at("v"));
      const auto b = engine::parse_pair(ctx.field(), v.witnesses.at("v_prime"));
      c.equal(engine::intersection_dim(ctx.algebra(), a, b), 2u, label(spec) + " witness intersection");
    }
    std::vector<TwistedFieldSpec> noncomm = all_valid(4);
    noncomm.push_back(with_norm(5, "2"));
    noncomm.push_back(with_norm(5, "3"));
    for (const auto& spec : noncomm) {
      const auto v = verify::verify_theorem_B(census::Context(spec), 4);
      c.expect(v.pass, label(spec) + ": verdict failed");
      c.equal(v.hits, 0u, label(spec) + " dim-2 pairs");
    }
  });

  ok &= criterion(6, "split-side identities", [](Check& c) {
    // splitting identity nu(Ex, Ey) = E(mu(x, y))
    for (const auto& spec : {with_norm(3, "-1"), noncommutative_tensor_with_norm_minus_one(3)}) {
      const Tower& k = spec.tower();
      const auto sp = split::split_twisted_field(spec);
      std::uint64_t bad = 0;
      for (unsigned a = 0; a < k.order(); ++a)
        for (unsigned b = 0; b < k.order(); ++b) {
          const KElem x = k.decode(a), y = k.decode(b);
          if (split::nu_via_phi(sp, split::embed(k, x), split::embed(k, y)) != split::embed(k, mu(spec, x, y))) ++bad;
        }
      c.equal(bad, 0u, label(spec) + " splitting identity failures");
    }
    // det L_x = det R_x = (1 + d) x0 x1 x2
    for (unsigned q : {3u, 4u, 5u}) {
      const Field f = Field::of_order(q);
      std::uint64_t bad = 0;
      for (const auto& spec : all_split_specs(f)) {
        const Elem one_plus_d = f.add(f.one(), spec.product());
        for (unsigned code = 0; code < q * q * q; ++code) {
          const Tri x = tri(f, code, split::Space::U), y = tri(f, code, split::Space::V);
          const Elem want = f.mul(one_plus_d, f.mul(f.mul(x.c[0], x.c[1]), x.c[2]));
          if (linalg::det(f, split::lmat(spec, x)) != want || linalg::det(f, split::rmat(spec, y)) != want) ++bad;
        }
      }
      c.equal(bad, 0u, "q=" + std::to_string(q) + " determinant failures");
    }
    // characteristic polynomial of R_{y'}^{-1} R_y is prod (X - y_i / y'_i)
    auto char_poly_ok = [](const split::SplitAlbertSpec<Field>& spec, const Tri& y, const Tri& y2) {
      const Field& f = spec.field();
      const auto m = linalg::multiply(f, linalg::inverse(f, split::rmat(spec, y2)), split::rmat(spec, y));
      return linalg::char_poly3(f, m) == split::poly_from_roots(f, split::char_poly_ratio(spec, y, y2));
    };
    {
      const Field f = Field::of_order(3);
      std::uint64_t bad = 0;
      for (const auto& spec : all_split_specs(f))
        for (unsigned a = 0; a < 27; ++a)
          for (unsigned b = 0; b < 27; ++b) {
            const Tri y = tri(f, a, split::Space::V), y2 = tri(f, b, split::Space::V);
            if (split::is_regular(f, y) && split::is_regular(f, y2) && !char_poly_ok(spec, y, y2)) ++bad;
          }
      c.equal(bad, 0u, "q=3 characteristic polynomial failures");
    }
    {
      const Field f = Field::of_order(7);
      const auto specs = all_split_specs(f);
      std::mt19937 rng(7);
      std::uniform_int_distribution<unsigned> nz(1, 6);
      std::uniform_int_distribution<std::size_t> pick(0, specs.size() - 1);
      auto random_regular = [&] {
        return Tri{{Elem{static_cast<std::uint16_t>(nz(rng))}, Elem{static_cast<std::uint16_t>(nz(rng))},
                    Elem{static_cast<std::uint16_t>(nz(rng))}},
                   split::Space::V};
      };
      std::uint64_t bad = 0;
      for (int t = 0; t < 500; ++t) {
        const auto& spec = specs[pick(rng)];
        const Tri y = random_regular(), y2 = random_regular();
        if (!char_poly_ok(spec, y, y2)) ++bad;
      }
      c.equal(bad, 0u, "q=7 characteristic polynomial failures (500 samples)");
    }
    // U(x, y) = U(x', y') only for proportional frames, exhaustive
    for (const auto& [q, d] : {std::pair{3u, std::array<std::string, 3>{"1", "1", "1"}},
                               std::pair{4u, std::array<std::string, 3>{"u", "1", "1"}}}) {
      const Field f = Field::of_order(q);
      const split::SplitAlbertSpec<Field> spec(f, {f.parse(d[0]), f.parse(d[1]), f.parse(d[2])});
      const auto v = verify::verify_split_theorem_3_1(spec);
      const std::uint64_t n = std::uint64_t(q - 1) * (q - 1) * (q - 1);
      c.expect(v.pass, "pair image equality criterion fails over GF(" + std::to_string(q) + ")");
      c.equal(v.cases, n * n * n * n, "GF(" + std::to_string(q) + ") quadruples");
    }
  });

  ok &= criterion(7, "pair normal form over GF(2) and GF(3)", [](Check& c) {
    for (unsigned q : {2u, 3u}) {
      const auto v = verify::verify_pair_normal_form(Field::of_order(q));
      const std::uint64_t q2 = q * q, gl2 = (q2 - 1) * (q2 - q);
      const std::string at = "GF(" + std::to_string(q) + ")";
      c.expect(v.pass, at + ": a pair has no verified (P, Q)");
      c.equal(v.cases, q2 * q2 * q2 * q2, at + " pairs");
      c.equal(v.hits, gl2 * (q2 - q) / 2 * (q2 - q), at + " I* pairs");
    }
  });

  ok &= criterion(8, "property suites", [](Check& c) {
    // field axioms, exhaustive
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
      const Field f = Field::of_order(q);
      std::uint64_t bad = 0;
      for (Elem a : f.elements()) {
        if (!f.is_zero(a) && f.mul(a, f.inv(a)) != f.one()) ++bad;
        if (f.add(a, f.neg(a)) != f.zero()) ++bad;
        for (Elem b : f.elements())
          for (Elem e : f.elements()) {
            if (f.mul(a, f.add(b, e)) != f.add(f.mul(a, b), f.mul(a, e))) ++bad;
            if (f.mul(f.mul(a, b), e) != f.mul(a, f.mul(b, e))) ++bad;
            if (f.add(f.add(a, b), e) != f.add(a, f.add(b, e))) ++bad;
          }
      }
      c.equal(bad, 0u, "GF(" + std::to_string(q) + ") axiom failures");
    }
    // norm fibers over F^x all have size (q^3 - 1)/(q - 1)
    for (unsigned q : {3u, 4u, 5u, 7u, 8u, 9u}) {
      const Tower k = Tower::of_order(q);
      std::map<std::uint16_t, std::uint64_t> fiber;
      for (unsigned code = 1; code < k.order(); ++code) ++fiber[k.norm(k.decode(code)).code];
      c.equal(fiber.size(), std::size_t{q - 1}, "q=" + std::to_string(q) + " norm image size");
      for (const auto& [n, size] : fiber)
        c.equal(size, std::uint64_t{(q * q * q - 1) / (q - 1)}, "q=" + std::to_string(q) + " norm fiber");
    }
    // RREF canonicity and the modular law on random subspaces of GF(5)^6
    {
      const Field f = Field::of_order(5);
      std::mt19937 rng(8);
      std::uniform_int_distribution<unsigned> el(0, 4), rows(0, 5);
      auto random_mat = [&](std::size_t r) {
        Mat m(r, 6);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < 6; ++j) m(i, j) = Elem{static_cast<std::uint16_t>(el(rng))};
        return m;
      };
      std::uint64_t bad = 0;
      for (int t = 0; t < 2000; ++t) {
        const Mat a = random_mat(rows(rng)), b = random_mat(rows(rng)), e = random_mat(rows(rng));
        const auto sa = linalg::row_space(f, a), sb = linalg::row_space(f, b), se = linalg::row_space(f, e);
        // an invertible recombination of the rows spans the same space
        Mat mixed = a;
        for (std::size_t i = 1; i < mixed.rows(); ++i)
          for (std::size_t j = 0; j < 6; ++j) mixed(i, j) = f.add(mixed(i, j), f.mul(Elem{2}, a(i - 1, j)));
        if (linalg::row_space(f, mixed) != sa) ++bad;
        if (sa.dim() + sb.dim() != linalg::subspace_sum(f, sa, sb).dim() + linalg::intersect(f, sa, sb).dim()) ++bad;
        // modular law: if A <= E then A + (B cap E) = (A + B) cap E
        const auto ae = linalg::subspace_sum(f, sa, se);
        if (linalg::subspace_sum(f, sa, linalg::intersect(f, sb, ae)) != linalg::intersect(f, linalg::subspace_sum(f, sa, sb), ae)) ++bad;
      }
      c.equal(bad, 0u, "RREF and modular law failures");
    }
    // intersection invariants from the action
    for (const auto& spec : {with_norm(3, "-1"), with_norm(4, "u")}) {
      const census::ActionCache cache(to_structure_constants(spec));
      const Field& f = cache.field();
      std::uint64_t bad = 0;
      for (std::uint32_t a = 1; a < cache.size(); ++a) {
        const auto va = engine::decode(f, a);
        const bool deg_a = cache.vector_class(a) == VectorClass::DegenerateNonzero;
        for (std::uint32_t b = 1; b < cache.size(); ++b) {
          const bool deg_b = cache.vector_class(b) == VectorClass::DegenerateNonzero;
          const unsigned dim = cache.intersection_dim(a, b);
          const auto vb = engine::decode(f, b);
          if (deg_a) {
            // degenerate v: intersection 0 or 3, 3 exactly on the same degenerate space
            const bool same = deg_b && cache.space_id(a) == cache.space_id(b);
            if (dim != (same ? 3u : 0u)) ++bad;
            continue;
          }
          if (deg_b) continue;
          // shared x-line with x' = l x: nonzero only when v' = l v
          if (!census::detail::independent(f, va.x, vb.x) && dim != 0) {
            Elem l{};
            for (int i = 0; i < 3; ++i)
              if (!f.is_zero(va.x[i])) l = f.div(vb.x[i], va.x[i]);
            const Vec3 ly{f.mul(l, va.y[0]), f.mul(l, va.y[1]), f.mul(l, va.y[2])};
            if (vb.y != ly) ++bad;
          }
          const bool same_plane = census::detail::same_plane(f, va.x, va.y, vb.x, vb.y);
          const bool spans = census::detail::independent(f, va.x, vb.x) && census::detail::independent(f, va.y, vb.y);
          if (same_plane && spans && dim != 0) ++bad;
          if ((dim == 1 || dim == 2) && (!spans || same_plane)) ++bad;
        }
      }
      c.equal(bad, 0u, label(spec) + " intersection invariant failures");
    }
  });

  ok &= criterion(9, "census JSON is independent of the worker count", [](Check& c) {
    const census::Context q3(with_norm(3, "-1")), q4(with_norm(4, "u"));
    for (const census::Context* ctx : {&q3, &q4}) {
      const auto v = engine::parse_pair(ctx->field(), "[1,0,0],[0,1,1]");
      const auto a = io::to_json(census::per_vector_profile(*ctx, v, {1, true}));
      const auto b = io::to_json(census::per_vector_profile(*ctx, v, {4, true}));
      c.expect(without_runtime(a).dump() == without_runtime(b).dump(), "per-vector census differs across workers");
      const auto s1 = io::to_json(census::scan(*ctx, census::ScanScope::Representatives, {1, true}));
      const auto s3 = io::to_json(census::scan(*ctx, census::ScanScope::Representatives, {3, true}));
      c.expect(without_runtime(s1).dump() == without_runtime(s3).dump(), "scan differs across workers");
    }
    const auto f1 = io::to_json(census::scan(q3, census::ScanScope::AllNonzero, {1, true}));
    const auto f4 = io::to_json(census::scan(q3, census::ScanScope::AllNonzero, {4, true}));
    c.expect(without_runtime(f1).dump() == without_runtime(f4).dump(), "full q=3 scan differs across workers");
  });

  std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: some criteria FAILED");
  return ok ? 0 : 1;
}
