#pragma once

// Censuses of dim(Av cap Av') as v' runs over all of A^2 = F^6, with the
// closed-form counts they are compared against.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "albert/algebra3.hpp"
#include "albert/engine.hpp"
#include "albert/error.hpp"
#include "albert/parallel.hpp"
#include "albert/split_albert.hpp"

namespace albert::census {

using engine::PairVector;
using engine::VectorClass;

enum DimClass : int { Dim3, Dim2, Dim1, Dim0Nondegenerate, Dim0Degenerate, Zero, kClassCount };

inline constexpr std::array<const char*, kClassCount> kClassLabels{"3", "2", "1", "0-nondeg", "0-deg", "zero"};

namespace detail {

/// In-place RREF of a rows x cols block; returns the rank and writes pivot columns.
inline unsigned rref_small(const Field& f, Elem* m, unsigned rows, unsigned cols, std::uint8_t* pivots) {
  unsigned r = 0;
  for (unsigned c = 0; c < cols && r < rows; ++c) {
    unsigned piv = r;
    while (piv < rows && f.is_zero(m[piv * cols + c])) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (unsigned k = 0; k < cols; ++k) std::swap(m[piv * cols + k], m[r * cols + k]);
    const Elem inv = f.inv(m[r * cols + c]);
    for (unsigned k = 0; k < cols; ++k) m[r * cols + k] = f.mul(inv, m[r * cols + k]);
    for (unsigned i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(m[i * cols + c])) continue;
      const Elem factor = m[i * cols + c];
      for (unsigned k = 0; k < cols; ++k) m[i * cols + k] = f.sub(m[i * cols + k], f.mul(factor, m[r * cols + k]));
    }
    if (pivots) pivots[r] = static_cast<std::uint8_t>(c);
    ++r;
  }
  return r;
}

inline bool is_zero3(const Field& f, const Vec3& a) { return f.is_zero(a[0]) && f.is_zero(a[1]) && f.is_zero(a[2]); }

inline Vec3 cross(const Field& f, const Vec3& a, const Vec3& b) {
  return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])), f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
          f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

inline bool independent(const Field& f, const Vec3& a, const Vec3& b) { return !is_zero3(f, cross(f, a, b)); }

inline Elem dot(const Field& f, const Vec3& a, const Vec3& b) {
  return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
}

/// For independent pairs: <a, b> = <c, d>.
inline bool same_plane(const Field& f, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 n = cross(f, a, b);
  return f.is_zero(dot(f, n, c)) && f.is_zero(dot(f, n, d));
}

}  // namespace detail

/// The canonical RREF of Av' for every v' in F^6, indexed by engine::encode.
class ActionCache {
 public:
  explicit ActionCache(Algebra3 alg) : alg_(std::move(alg)) {
    const Field& f = alg_.field;
    const std::uint32_t n = engine::pair_space_size(f);
    rows_.assign(std::size_t{n} * 18, f.zero());
    rank_.resize(n);
    pivots_.assign(std::size_t{n} * 3, 0);
    class_.resize(n);
    space_id_.resize(n);
    std::unordered_map<std::string, std::uint32_t> ids;
    std::string key(36, '\0');
    for (std::uint32_t code = 0; code < n; ++code) {
      const PairVector v = engine::decode(f, code);
      Elem* m = &rows_[std::size_t{code} * 18];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) {
            const Elem s = alg_.s(i, j, k);
            if (f.is_zero(s)) continue;
            m[i * 6 + k] = f.add(m[i * 6 + k], f.mul(v.x[j], s));
            m[i * 6 + 3 + k] = f.add(m[i * 6 + 3 + k], f.mul(v.y[j], s));
          }
      rank_[code] = static_cast<std::uint8_t>(detail::rref_small(f, m, 3, 6, &pivots_[std::size_t{code} * 3]));
      class_[code] = static_cast<std::uint8_t>(engine::classify(f, v));
      for (int i = 0; i < 18; ++i) {
        key[2 * i] = static_cast<char>(m[i].code & 0xff);
        key[2 * i + 1] = static_cast<char>(m[i].code >> 8);
      }
      const auto [it, inserted] = ids.try_emplace(key, static_cast<std::uint32_t>(ids.size()));
      space_id_[code] = it->second;
    }
    space_count_ = static_cast<std::uint32_t>(ids.size());
  }

  const Algebra3& algebra() const { return alg_; }
  const Field& field() const { return alg_.field; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(rank_.size()); }
  unsigned rank(std::uint32_t code) const { return rank_[code]; }
  const Elem* rows(std::uint32_t code) const { return &rows_[std::size_t{code} * 18]; }
  const std::uint8_t* pivots(std::uint32_t code) const { return &pivots_[std::size_t{code} * 3]; }
  VectorClass vector_class(std::uint32_t code) const { return static_cast<VectorClass>(class_[code]); }
  /// Equal ids <=> equal subspaces Av'.
  std::uint32_t space_id(std::uint32_t code) const { return space_id_[code]; }
  std::uint32_t space_count() const { return space_count_; }

  /// Residual of the rows of Av_b after clearing the pivot columns of Av_a.
  void residual(std::uint32_t a, std::uint32_t b, Elem* out) const {
    const Field& f = field();
    const unsigned ra = rank(a), rb = rank(b);
    const Elem* rows_a = rows(a);
    const std::uint8_t* piv = pivots(a);
    std::copy(rows(b), rows(b) + 6 * rb, out);
    for (unsigned j = 0; j < rb; ++j)
      for (unsigned i = 0; i < ra; ++i) {
        const Elem factor = out[j * 6 + piv[i]];
        if (f.is_zero(factor)) continue;
        for (unsigned k = 0; k < 6; ++k) out[j * 6 + k] = f.sub(out[j * 6 + k], f.mul(factor, rows_a[i * 6 + k]));
      }
  }

  unsigned intersection_dim(std::uint32_t a, std::uint32_t b) const {
    Elem res[18];
    residual(a, b, res);
    return rank(b) - detail::rref_small(field(), res, rank(b), 6, nullptr);
  }

  /// A normalized spanning vector of Av_a cap Av_b when that intersection is a line.
  std::array<Elem, 6> intersection_line(std::uint32_t a, std::uint32_t b) const {
    const Field& f = field();
    const unsigned rb = rank(b);
    Elem res[18];
    residual(a, b, res);
    Elem aug[27];  // [residual | identity]
    for (unsigned j = 0; j < rb; ++j) {
      for (unsigned k = 0; k < 6; ++k) aug[j * 9 + k] = res[j * 6 + k];
      for (unsigned k = 0; k < 3; ++k) aug[j * 9 + 6 + k] = j == k ? f.one() : f.zero();
    }
    detail::rref_small(f, aug, rb, 9, nullptr);
    for (unsigned j = 0; j < rb; ++j) {
      bool zero_head = true;
      for (unsigned k = 0; k < 6 && zero_head; ++k) zero_head = f.is_zero(aug[j * 9 + k]);
      if (!zero_head) continue;
      std::array<Elem, 6> w{};
      const Elem* rows_b = rows(b);
      for (unsigned i = 0; i < rb; ++i)
        for (unsigned k = 0; k < 6; ++k) w[k] = f.add(w[k], f.mul(aug[j * 9 + 6 + i], rows_b[i * 6 + k]));
      return normalize(w);
    }
    throw InternalError("intersection_line called on a zero intersection");
  }

  /// Scales w so that its first nonzero coordinate is 1.
  std::array<Elem, 6> normalize(std::array<Elem, 6> w) const {
    const Field& f = field();
    for (Elem e : w)
      if (!f.is_zero(e)) {
        const Elem inv = f.inv(e);
        for (Elem& x : w) x = f.mul(inv, x);
        break;
      }
    return w;
  }

  std::uint32_t line_code(const std::array<Elem, 6>& w) const {
    std::uint32_t code = 0;
    for (int k = 5; k >= 0; --k) code = code * field().order() + w[k].code;
    return code;
  }

  std::array<Elem, 6> line_from_code(std::uint32_t code) const {
    std::array<Elem, 6> w{};
    for (auto& e : w) {
      e = Elem{static_cast<std::uint16_t>(code % field().order())};
      code /= field().order();
    }
    return w;
  }

 private:
  Algebra3 alg_;
  std::vector<Elem> rows_;
  std::vector<std::uint8_t> rank_, pivots_, class_;
  std::vector<std::uint32_t> space_id_;
  std::uint32_t space_count_ = 0;
};

/// Self-describing header echoed by every report.
struct Parameters {
  unsigned q = 0;
  std::string field_modulus, cubic_modulus, c, norm_c, isotopy_class;
  std::array<std::string, 3> d;

  friend bool operator==(const Parameters&, const Parameters&) = default;
};

inline Parameters describe(const TwistedFieldSpec& spec) {
  const Tower& k = spec.tower();
  const Field& f = spec.field();
  Parameters p;
  p.q = f.order();
  p.field_modulus = gf::format_modulus(f.spec());
  p.cubic_modulus = k.format_modulus();
  p.c = k.format(spec.c());
  p.norm_c = f.format(spec.norm_c());
  p.isotopy_class = to_string(isotopy_class(spec));
  const auto sp = split::split_twisted_field(spec);
  for (int i = 0; i < 3; ++i) p.d[i] = k.format(sp.spec.d(i));
  return p;
}

/// Algebra, cache and header for one twisted field (or a raw tensor).
class Context {
 public:
  explicit Context(const TwistedFieldSpec& spec)
      : params_(describe(spec)), class_(isotopy_class(spec)), cache_(to_structure_constants(spec)) {}
  Context(Algebra3 alg, Parameters params, std::optional<IsotopyClass> cls)
      : params_(std::move(params)), class_(cls), cache_(std::move(alg)) {}

  const Parameters& parameters() const { return params_; }
  std::optional<IsotopyClass> isotopy() const { return class_; }
  const ActionCache& cache() const { return cache_; }
  const Algebra3& algebra() const { return cache_.algebra(); }
  const Field& field() const { return cache_.field(); }

 private:
  Parameters params_;
  std::optional<IsotopyClass> class_;
  ActionCache cache_;
};

// ---------------------------------------------------------------------------
// Closed forms

struct LinePrediction {
  std::uint64_t in_xy_plane = 0, other = 0;
  friend bool operator==(const LinePrediction&, const LinePrediction&) = default;
};

struct Prediction {
  std::array<std::uint64_t, kClassCount> vectors{}, spaces{};
  std::uint64_t complementary = 0;
  std::optional<LinePrediction> lines;
};

/// Predicted profile for a base vector of class vc over a twisted field of the given class.
inline std::optional<Prediction> predict(std::uint64_t q, VectorClass vc, std::optional<IsotopyClass> cls) {
  const std::uint64_t q2 = q * q, q3 = q2 * q, q5 = q3 * q2;
  Prediction p;
  p.vectors[Zero] = 1;
  p.spaces[Zero] = 1;
  if (vc == VectorClass::Zero) return std::nullopt;
  if (vc == VectorClass::DegenerateNonzero) {
    p.vectors[Dim3] = q3 - 1;
    p.spaces[Dim3] = 1;
    p.vectors[Dim0Nondegenerate] = (q3 - 1) * (q3 - q);
    p.spaces[Dim0Nondegenerate] = (q3 - 1) * (q2 + q);
    p.vectors[Dim0Degenerate] = (q3 - 1) * q;
    p.spaces[Dim0Degenerate] = q;
    p.complementary = q2 * (q3 + q2 - 1);
    return p;
  }
  if (!cls) return std::nullopt;
  p.vectors[Dim3] = q - 1;
  p.spaces[Dim3] = 1;
  p.vectors[Dim0Degenerate] = (q3 - 1) * (q + 1);
  p.spaces[Dim0Degenerate] = q + 1;
  if (*cls == IsotopyClass::CommutativeIsotopic) {
    const std::uint64_t nondeg0 = q5 - q3 - 2 * q2 - 2 * q - 1;
    p.vectors[Dim2] = q3 - q;
    p.spaces[Dim2] = q2 + q;
    p.vectors[Dim1] = q3 * (q2 - 1);
    p.spaces[Dim1] = q3 * (q + 1);
    p.vectors[Dim0Nondegenerate] = (q - 1) * nondeg0;
    p.spaces[Dim0Nondegenerate] = nondeg0;
    p.complementary = q5 - q3 - 2 * q2 - q;
    p.lines = LinePrediction{q3 - q2, (q2 - 1) * (q - 1)};
  } else {
    const std::uint64_t nondeg0 = q5 - 2 * q3 - 3 * q2 - 2 * q - 1;
    p.vectors[Dim1] = q * (q + 1) * (q3 - 1);
    p.spaces[Dim1] = q * (q2 + q + 1) * (q + 1);
    p.vectors[Dim0Nondegenerate] = (q - 1) * nondeg0;
    p.spaces[Dim0Nondegenerate] = nondeg0;
    p.complementary = q5 - 2 * q3 - 3 * q2 - q;
    p.lines = LinePrediction{q3 - q, q3 - q};
  }
  return p;
}

// ---------------------------------------------------------------------------
// Per-vector sweep

struct Tally {
  std::array<std::uint64_t, kClassCount> vectors{};
  std::array<std::vector<std::uint32_t>, kClassCount> spaces;
  std::array<std::uint32_t, kClassCount> witness;
  std::unordered_map<std::uint32_t, std::uint64_t> lines;
  std::uint64_t violations = 0;

  Tally() { witness.fill(std::numeric_limits<std::uint32_t>::max()); }

  void merge(const Tally& o) {
    for (int k = 0; k < kClassCount; ++k) {
      vectors[k] += o.vectors[k];
      spaces[k].insert(spaces[k].end(), o.spaces[k].begin(), o.spaces[k].end());
      witness[k] = std::min(witness[k], o.witness[k]);
    }
    for (const auto& [line, n] : o.lines) lines[line] += n;
    violations += o.violations;
  }

  std::array<std::uint64_t, kClassCount> distinct_spaces() {
    std::array<std::uint64_t, kClassCount> out{};
    for (int k = 0; k < kClassCount; ++k) {
      auto& s = spaces[k];
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      out[k] = s.size();
    }
    return out;
  }
};

/// Tallies v' codes in [begin, end) against the base vector with code v.
inline void sweep(const ActionCache& cache, std::uint32_t v, std::uint64_t begin, std::uint64_t end, bool lines,
                  Tally& t) {
  const Field& f = cache.field();
  const PairVector base = engine::decode(f, v);
  const bool base_nondegenerate = cache.vector_class(v) == VectorClass::Nondegenerate;
  for (std::uint64_t b = begin; b < end; ++b) {
    const auto code = static_cast<std::uint32_t>(b);
    const VectorClass vc = cache.vector_class(code);
    DimClass cls;
    unsigned dim = 0;
    if (vc == VectorClass::Zero) {
      cls = Zero;
    } else {
      dim = cache.intersection_dim(v, code);
      switch (dim) {
        case 3: cls = Dim3; break;
        case 2: cls = Dim2; break;
        case 1: cls = Dim1; break;
        default: cls = vc == VectorClass::Nondegenerate ? Dim0Nondegenerate : Dim0Degenerate;
      }
    }
    ++t.vectors[cls];
    t.spaces[cls].push_back(cache.space_id(code));
    t.witness[cls] = std::min(t.witness[cls], code);
    if (dim == 1 || dim == 2) {
      // A one- or two-dimensional intersection forces all four spans to be
      // planes and <x, y> != <x', y'>.
      const PairVector w = engine::decode(f, code);
      const bool ok = base_nondegenerate && detail::independent(f, w.x, w.y) &&
                      detail::independent(f, base.x, w.x) && detail::independent(f, base.y, w.y) &&
                      !detail::same_plane(f, base.x, base.y, w.x, w.y);
      if (!ok) ++t.violations;
    }
    if (lines && dim == 1) ++t.lines[cache.line_code(cache.intersection_line(v, code))];
  }
}

struct ClassRow {
  std::string dim;
  std::uint64_t vectors = 0, spaces = 0;
  friend bool operator==(const ClassRow&, const ClassRow&) = default;
};

struct LineRow {
  std::string line;
  bool in_xy_plane = false;
  std::uint64_t count = 0;
  friend bool operator==(const LineRow&, const LineRow&) = default;
};

struct CensusReport {
  Parameters parameters;
  std::string v, v_class;
  std::vector<ClassRow> observed;
  std::uint64_t complementary_spaces = 0;
  std::vector<LineRow> lines;
  std::uint64_t invariant_violations = 0;
  std::optional<std::vector<ClassRow>> predicted;
  std::optional<std::uint64_t> predicted_complementary;
  std::optional<LinePrediction> predicted_lines;
  std::map<std::string, std::string> witnesses;
  bool match = false;
  std::int64_t runtime_ms = 0;

  const ClassRow& row(DimClass k) const { return observed.at(k); }
  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

struct SweepOptions {
  unsigned workers = 1;
  bool lines = true;
};

/// Row-reduced span of <x, y> v = {b v : b in <x, y>}.
inline std::array<Elem, 12> xy_plane(const ActionCache& cache, const PairVector& v, unsigned& rank) {
  const auto a = engine::act(cache.algebra(), v.x, v).flatten();
  const auto b = engine::act(cache.algebra(), v.y, v).flatten();
  std::array<Elem, 12> m{};
  std::copy(a.begin(), a.end(), m.begin());
  std::copy(b.begin(), b.end(), m.begin() + 6);
  rank = detail::rref_small(cache.field(), m.data(), 2, 6, nullptr);
  return m;
}

inline bool in_row_space(const Field& f, const std::array<Elem, 12>& plane, unsigned rank, std::array<Elem, 6> w) {
  std::array<Elem, 18> m{};
  std::copy(plane.begin(), plane.begin() + 6 * rank, m.begin());
  std::copy(w.begin(), w.end(), m.begin() + 6 * rank);
  return detail::rref_small(f, m.data(), rank + 1, 6, nullptr) == rank;
}

inline std::string format_line(const Field& f, const std::array<Elem, 6>& w) {
  return engine::format(f, PairVector{{w[0], w[1], w[2]}, {w[3], w[4], w[5]}});
}

/// Every 1-dimensional L in Av with #{v' : Av cap Av' = L}.
inline std::vector<LineRow> collect_lines(const ActionCache& cache, std::uint32_t v, const Tally& t) {
  const Field& f = cache.field();
  const PairVector base = engine::decode(f, v);
  unsigned plane_rank = 0;
  const auto plane = xy_plane(cache, base, plane_rank);
  const Elem* rows = cache.rows(v);
  const unsigned r = cache.rank(v);
  std::vector<LineRow> out;
  // projective points (a_0 : ... : a_{r-1}) with first nonzero a_i = 1
  std::uint32_t total = 1;
  for (unsigned i = 0; i < r; ++i) total *= f.order();
  for (std::uint32_t code = 1; code < total; ++code) {
    std::array<Elem, 3> a{};
    std::uint32_t c = code;
    for (unsigned i = 0; i < r; ++i) {
      a[i] = Elem{static_cast<std::uint16_t>(c % f.order())};
      c /= f.order();
    }
    unsigned lead = 0;
    while (f.is_zero(a[lead])) ++lead;
    if (a[lead] != f.one()) continue;
    std::array<Elem, 6> w{};
    for (unsigned i = 0; i < r; ++i)
      for (unsigned k = 0; k < 6; ++k) w[k] = f.add(w[k], f.mul(a[i], rows[i * 6 + k]));
    w = cache.normalize(w);
    const auto it = t.lines.find(cache.line_code(w));
    out.push_back({format_line(f, w), plane_rank == 2 && in_row_space(f, plane, plane_rank, w),
                   it == t.lines.end() ? 0 : it->second});
  }
  std::sort(out.begin(), out.end(), [](const LineRow& x, const LineRow& y) { return x.line < y.line; });
  return out;
}

inline std::vector<ClassRow> to_rows(const std::array<std::uint64_t, kClassCount>& vectors,
                                     const std::array<std::uint64_t, kClassCount>& spaces) {
  std::vector<ClassRow> rows;
  for (int k = 0; k < kClassCount; ++k) rows.push_back({kClassLabels[k], vectors[k], spaces[k]});
  return rows;
}

/// Builds the report for base code v from a merged tally.
inline CensusReport finish(const Context& ctx, std::uint32_t v, Tally& t, bool with_lines) {
  const ActionCache& cache = ctx.cache();
  const Field& f = cache.field();
  CensusReport rep;
  rep.parameters = ctx.parameters();
  const VectorClass vc = cache.vector_class(v);
  rep.v = engine::format(f, engine::decode(f, v));
  rep.v_class = engine::to_string(vc);
  const auto spaces = t.distinct_spaces();
  rep.observed = to_rows(t.vectors, spaces);
  rep.complementary_spaces = spaces[Dim0Nondegenerate] + spaces[Dim0Degenerate];
  rep.invariant_violations = t.violations;
  for (int k = 0; k < kClassCount; ++k)
    if (t.vectors[k] > 0) rep.witnesses[kClassLabels[k]] = engine::format(f, engine::decode(f, t.witness[k]));
  if (with_lines && vc == VectorClass::Nondegenerate) rep.lines = collect_lines(cache, v, t);

  std::uint64_t total = 0;
  for (auto n : t.vectors) total += n;
  bool match = total == cache.size() && t.violations == 0;
  if (const auto p = predict(f.order(), vc, ctx.isotopy())) {
    rep.predicted = to_rows(p->vectors, p->spaces);
    rep.predicted_complementary = p->complementary;
    match = match && *rep.predicted == rep.observed && p->complementary == rep.complementary_spaces;
    if (p->lines && !rep.lines.empty()) {
      rep.predicted_lines = p->lines;
      for (const auto& l : rep.lines)
        match = match && l.count == (l.in_xy_plane ? p->lines->in_xy_plane : p->lines->other);
    }
  }
  rep.match = match;
  return rep;
}

/// Tally of all q^6 vectors v' against a nonzero base vector v.
inline CensusReport per_vector_profile(const Context& ctx, const PairVector& v, SweepOptions opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  const ActionCache& cache = ctx.cache();
  const std::uint32_t code = engine::encode(cache.field(), v);
  if (cache.vector_class(code) == VectorClass::Zero) throw UsageError("census base vector v must be nonzero");
  auto parts = parallel::map_chunks(cache.size(), opt.workers, Tally{},
                                    [&](std::uint64_t b, std::uint64_t e, Tally& t) { sweep(cache, code, b, e, opt.lines, t); });
  Tally merged;
  for (const auto& p : parts) merged.merge(p);
  auto rep = finish(ctx, code, merged, opt.lines);
  rep.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// #{distinct Av' : v' != 0, Av cap Av' = 0}.
inline std::uint64_t complementary_space_count(const Context& ctx, const PairVector& v, unsigned workers = 1) {
  return per_vector_profile(ctx, v, {workers, false}).complementary_spaces;
}

inline std::vector<LineRow> line_profile(const Context& ctx, const PairVector& v, unsigned workers = 1) {
  if (engine::classify(ctx.field(), v) != VectorClass::Nondegenerate)
    throw DomainError("line_profile requires a nondegenerate base vector");
  return per_vector_profile(ctx, v, {workers, true}).lines;
}

// ---------------------------------------------------------------------------
// Many base vectors

/// (b0, b1) for the RREF basis of every 2-dimensional subspace of F^3.
inline std::vector<PairVector> plane_representatives(const Field& f) {
  std::vector<PairVector> out;
  const unsigned q3 = f.order() * f.order() * f.order();
  for (unsigned a = 1; a < q3; ++a)
    for (unsigned b = 1; b < q3; ++b) {
      const PairVector v{vec3_from_code(f, a), vec3_from_code(f, b)};
      if (!detail::independent(f, v.x, v.y)) continue;
      Mat m = Mat::from_rows({{v.x.begin(), v.x.end()}, {v.y.begin(), v.y.end()}});
      if (linalg::rref(f, m).matrix == m) out.push_back(v);
    }
  return out;
}

/// (z, 0) for z a normalized representative of every line of F^3.
inline std::vector<PairVector> degenerate_representatives(const Field& f) {
  std::vector<PairVector> out;
  const unsigned q3 = f.order() * f.order() * f.order();
  for (unsigned a = 1; a < q3; ++a) {
    const Vec3 z = vec3_from_code(f, a);
    unsigned lead = 0;
    while (f.is_zero(z[lead])) ++lead;
    if (z[lead] == f.one()) out.push_back({z, Vec3{}});
  }
  return out;
}

struct LineHistogramRow {
  std::uint64_t count = 0, lines = 0, in_xy_plane = 0;
  friend bool operator==(const LineHistogramRow&, const LineHistogramRow&) = default;
};

inline std::vector<LineHistogramRow> line_histogram(const std::vector<LineRow>& lines) {
  std::map<std::uint64_t, LineHistogramRow, std::greater<>> by_count;
  for (const auto& l : lines) {
    auto& row = by_count[l.count];
    row.count = l.count;
    ++row.lines;
    if (l.in_xy_plane) ++row.in_xy_plane;
  }
  std::vector<LineHistogramRow> out;
  for (const auto& [count, row] : by_count) out.push_back(row);
  return out;
}

struct ProfileGroup {
  std::string v_class;
  std::vector<ClassRow> observed;
  std::uint64_t complementary_spaces = 0;
  std::vector<LineHistogramRow> line_histogram;
  std::uint64_t multiplicity = 0;
  std::string first_v;
  bool match = false;
  std::optional<std::vector<ClassRow>> predicted;
  std::optional<std::uint64_t> predicted_complementary;
  friend bool operator==(const ProfileGroup&, const ProfileGroup&) = default;
};

enum class ScanScope { AllNonzero, Representatives };

inline std::string to_string(ScanScope s) { return s == ScanScope::AllNonzero ? "all-nonzero" : "representatives"; }

struct ScanReport {
  Parameters parameters;
  std::string scope;
  std::uint64_t base_vectors = 0;
  std::vector<ProfileGroup> profiles;
  std::uint64_t invariant_violations = 0;
  std::map<std::string, std::string> witnesses;  // first mismatching base vector, if any
  bool match = false;
  std::int64_t runtime_ms = 0;
  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

/// Profiles of many base vectors, grouped into identical profiles. Each base
/// vector is swept on one worker; the base vectors are split across workers.
inline ScanReport scan(const Context& ctx, ScanScope scope, SweepOptions opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  const ActionCache& cache = ctx.cache();
  const Field& f = cache.field();
  std::vector<std::uint32_t> bases;
  if (scope == ScanScope::AllNonzero) {
    for (std::uint32_t c = 1; c < cache.size(); ++c) bases.push_back(c);
  } else {
    for (const auto& v : plane_representatives(f)) bases.push_back(engine::encode(f, v));
    for (const auto& v : degenerate_representatives(f)) bases.push_back(engine::encode(f, v));
  }

  struct Partial {
    std::map<std::string, std::pair<ProfileGroup, std::uint32_t>> groups;  // key -> (group, min base code)
    std::uint32_t first_mismatch = std::numeric_limits<std::uint32_t>::max();
    std::uint64_t violations = 0;
  };
  auto parts = parallel::map_chunks(bases.size(), opt.workers, Partial{},
                                    [&](std::uint64_t b, std::uint64_t e, Partial& part) {
                                      for (std::uint64_t i = b; i < e; ++i) {
                                        const std::uint32_t v = bases[i];
                                        Tally t;
                                        sweep(cache, v, 0, cache.size(), opt.lines, t);
                                        const CensusReport rep = finish(ctx, v, t, opt.lines);
                                        ProfileGroup g{rep.v_class, rep.observed, rep.complementary_spaces,
                                                       line_histogram(rep.lines), 0, "", rep.match,
                                                       rep.predicted, rep.predicted_complementary};
                                        std::string key = g.v_class + "|" + std::to_string(g.complementary_spaces);
                                        for (const auto& r : g.observed)
                                          key += "|" + std::to_string(r.vectors) + "/" + std::to_string(r.spaces);
                                        for (const auto& h : g.line_histogram)
                                          key += "|" + std::to_string(h.count) + "x" + std::to_string(h.lines) + "+" +
                                                 std::to_string(h.in_xy_plane);
                                        auto [it, fresh] = part.groups.try_emplace(key, g, v);
                                        ++it->second.first.multiplicity;
                                        it->second.second = std::min(it->second.second, v);
                                        if (!rep.match) part.first_mismatch = std::min(part.first_mismatch, v);
                                        part.violations += t.violations;
                                      }
                                    });
  Partial all;
  for (auto& p : parts) {
    for (auto& [key, entry] : p.groups) {
      auto [it, fresh] = all.groups.try_emplace(key, entry);
      if (!fresh) {
        it->second.first.multiplicity += entry.first.multiplicity;
        it->second.second = std::min(it->second.second, entry.second);
      }
    }
    all.first_mismatch = std::min(all.first_mismatch, p.first_mismatch);
    all.violations += p.violations;
  }

  ScanReport rep;
  rep.parameters = ctx.parameters();
  rep.scope = to_string(scope);
  rep.base_vectors = bases.size();
  rep.invariant_violations = all.violations;
  rep.match = all.first_mismatch == std::numeric_limits<std::uint32_t>::max();
  for (auto& [key, entry] : all.groups) {
    entry.first.first_v = engine::format(f, engine::decode(f, entry.second));
    rep.profiles.push_back(entry.first);
  }
  std::sort(rep.profiles.begin(), rep.profiles.end(),
            [](const ProfileGroup& a, const ProfileGroup& b) { return a.first_v < b.first_v; });
  if (!rep.match) rep.witnesses["first_mismatch"] = engine::format(f, engine::decode(f, all.first_mismatch));
  rep.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Global counts

struct GlobalCounts {
  std::uint64_t nondegenerate = 0, degenerate_nonzero = 0, distinct_nondegenerate_av = 0, distinct_degenerate_av = 0;
  friend bool operator==(const GlobalCounts&, const GlobalCounts&) = default;
};

inline GlobalCounts global_counts(const ActionCache& cache) {
  GlobalCounts g;
  std::vector<std::uint32_t> nondeg, deg;
  for (std::uint32_t c = 1; c < cache.size(); ++c) {
    if (cache.vector_class(c) == VectorClass::Nondegenerate) {
      ++g.nondegenerate;
      nondeg.push_back(cache.space_id(c));
    } else {
      ++g.degenerate_nonzero;
      deg.push_back(cache.space_id(c));
    }
  }
  for (auto* s : {&nondeg, &deg}) {
    std::sort(s->begin(), s->end());
    s->erase(std::unique(s->begin(), s->end()), s->end());
  }
  g.distinct_nondegenerate_av = nondeg.size();
  g.distinct_degenerate_av = deg.size();
  return g;
}

inline GlobalCounts predicted_global_counts(std::uint64_t q) {
  const std::uint64_t q3 = q * q * q;
  return {(q3 - 1) * (q3 - q), (q3 - 1) * (q + 1), (q3 - 1) * (q3 - q) / (q - 1), q + 1};
}

}  // namespace albert::census
