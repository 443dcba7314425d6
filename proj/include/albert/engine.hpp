#pragma once

// A acting on A^2 by a(x, y) = (a x, a y): the subspaces Av, their
// intersections, and the solution spaces {(a, a') : a v = a' v'}.

#include <array>
#include <cstdint>
#include <string>

#include "albert/algebra3.hpp"
#include "albert/error.hpp"
#include "albert/linalg.hpp"

namespace albert::engine {

using linalg::Subspace;

/// v = (x, y) in A^2; flattened to F^6 as (x || y).
struct PairVector {
  Vec3 x{};
  Vec3 y{};

  std::array<Elem, 6> flatten() const { return {x[0], x[1], x[2], y[0], y[1], y[2]}; }

  friend bool operator==(const PairVector&, const PairVector&) = default;
};

enum class VectorClass { Zero, DegenerateNonzero, Nondegenerate };

inline std::string to_string(VectorClass c) {
  switch (c) {
    case VectorClass::Zero: return "zero";
    case VectorClass::DegenerateNonzero: return "degenerate";
    case VectorClass::Nondegenerate: return "nondegenerate";
  }
  return "?";
}

inline std::size_t rank_of(const Field& f, const std::vector<Vec3>& rows) {
  Mat m(rows.size(), 3);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = rows[i][j];
  return linalg::rank(f, m);
}

/// Nondegenerate iff x, y are linearly independent.
inline VectorClass classify(const Field& f, const PairVector& v) {
  switch (rank_of(f, {v.x, v.y})) {
    case 0: return VectorClass::Zero;
    case 1: return VectorClass::DegenerateNonzero;
    default: return VectorClass::Nondegenerate;
  }
}

/// Codes enumerate F^6 with x_0 varying fastest, matching gf element order.
inline PairVector decode(const Field& f, std::uint32_t code) {
  const unsigned q3 = f.order() * f.order() * f.order();
  return {vec3_from_code(f, code % q3), vec3_from_code(f, code / q3)};
}

inline std::uint32_t encode(const Field& f, const PairVector& v) {
  const unsigned q = f.order();
  auto enc = [q](const Vec3& a) { return a[0].code + q * (a[1].code + q * a[2].code); };
  return enc(v.x) + q * q * q * enc(v.y);
}

inline std::uint32_t pair_space_size(const Field& f) {
  const std::uint32_t q3 = f.order() * f.order() * f.order();
  return q3 * q3;
}

inline std::string format(const Field& f, const Vec3& a) {
  return "[" + f.format(a[0]) + "," + f.format(a[1]) + "," + f.format(a[2]) + "]";
}

inline std::string format(const Field& f, const PairVector& v) { return format(f, v.x) + "," + format(f, v.y); }

/// Parses "[x0,x1,x2],[y0,y1,y2]".
inline PairVector parse_pair(const Field& f, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  const auto mid = s.find("],[");
  if (s.size() < 2 || s.front() != '[' || s.back() != ']' || mid == std::string::npos)
    throw UsageError("malformed pair vector literal '" + std::string(text) + "', expected [x0,x1,x2],[y0,y1,y2]");
  auto parse3 = [&](const std::string& body) {
    Vec3 out{};
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      const auto comma = body.find(',', start);
      if ((i < 2) != (comma != std::string::npos))
        throw UsageError("pair vector component '" + body + "' needs exactly three coordinates");
      out[i] = f.parse(body.substr(start, i < 2 ? comma - start : std::string::npos));
      start = comma + 1;
    }
    return out;
  };
  return {parse3(s.substr(1, mid - 1)), parse3(s.substr(mid + 3, s.size() - mid - 4))};
}

/// a v = (a x, a y).
inline PairVector act(const Algebra3& alg, const Vec3& a, const PairVector& v) {
  return {multiply(alg, a, v.x), multiply(alg, a, v.y)};
}

/// Rows (e_i x, e_i y) spanning Av.
inline Mat av_generators(const Algebra3& alg, const PairVector& v) {
  Mat m(3, 6);
  for (int i = 0; i < 3; ++i) {
    Vec3 e{};
    e[i] = alg.field.one();
    const auto row = act(alg, e, v).flatten();
    for (int k = 0; k < 6; ++k) m(i, k) = row[k];
  }
  return m;
}

inline Subspace<Elem> av_subspace(const Algebra3& alg, const PairVector& v) {
  return linalg::row_space(alg.field, av_generators(alg, v));
}

struct Intersection {
  std::size_t dim = 0;
  Subspace<Elem> space;
};

inline Intersection intersection(const Algebra3& alg, const PairVector& v, const PairVector& w) {
  auto s = linalg::intersect(alg.field, av_subspace(alg, v), av_subspace(alg, w));
  return {s.dim(), std::move(s)};
}

inline std::size_t intersection_dim(const Algebra3& alg, const PairVector& v, const PairVector& w) {
  return intersection(alg, v, w).dim;
}

/// v is regular when a -> a v is injective.
inline bool is_regular(const Algebra3& alg, const PairVector& v) {
  return linalg::rank(alg.field, av_generators(alg, v)) == 3;
}

/// {(a, a') : a v = a' v'} in F^6, the kernel of [R_x | -R_x'; R_y | -R_y'].
inline Subspace<Elem> solution_space(const Algebra3& alg, const PairVector& v, const PairVector& w) {
  if (!is_regular(alg, v) || !is_regular(alg, w))
    throw DomainError("solution_space requires regular v and v' (a -> a v injective)");
  const Field& f = alg.field;
  const Mat rx = right_mul_matrix(alg, v.x), ry = right_mul_matrix(alg, v.y);
  const Mat rx2 = right_mul_matrix(alg, w.x), ry2 = right_mul_matrix(alg, w.y);
  Mat block(6, 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      block(i, j) = rx(i, j);
      block(i, 3 + j) = f.neg(rx2(i, j));
      block(3 + i, j) = ry(i, j);
      block(3 + i, 3 + j) = f.neg(ry2(i, j));
    }
  return linalg::kernel(f, block);
}

/// For commutative A, nondegenerate v = (x, y) and x' outside Fx: the unique
/// y' with x' y = x y', giving dim(Av cap Av') = 2 for v' = (x', y').
inline PairVector construct_two_dim_partner(const Algebra3& alg, const PairVector& v, const Vec3& x_prime) {
  const Field& f = alg.field;
  if (!is_commutative(alg)) throw UsageError("construct_two_dim_partner needs a commutative structure tensor");
  if (classify(f, v) != VectorClass::Nondegenerate) throw UsageError("construct_two_dim_partner needs nondegenerate v");
  if (rank_of(f, {v.x, x_prime}) != 2) throw UsageError("x' must be linearly independent of x");
  const Mat lx_inv = linalg::inverse(f, left_mul_matrix(alg, v.x));
  const Vec3 target = multiply(alg, x_prime, v.y);
  const auto y = linalg::apply(f, lx_inv, std::span<const Elem>(target));
  return {x_prime, {y[0], y[1], y[2]}};
}

/// The F-span <x, y> acting on v: span{x v, y v}, inside Av.
inline Subspace<Elem> span_action(const Algebra3& alg, const PairVector& v, const PairVector& by) {
  const auto a = act(alg, by.x, v).flatten();
  const auto b = act(alg, by.y, v).flatten();
  return linalg::span(alg.field, 6, {{a.begin(), a.end()}, {b.begin(), b.end()}});
}

}  // namespace albert::engine
