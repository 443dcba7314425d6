#pragma once

// Normal form of a pair (G0, G1) of 2x2 matrices under (P G0 Q, P G1 Q),
// P, Q in GL_2(F). The representatives are
//   I(l, m)  : (1, diag(l, m))          II(l)  : (1, [[l, 0], [1, l]])
//   III(l, m): (diag(l, m), 1)          IV(l)  : ([[l, 0], [1, l]], 1)
//   V        : (E11, E22)
//   VI       : both matrices with zero second row
//   VII      : both matrices with zero second column
// plus, over a finite field, IStar : (1, [[0, -n], [1, t]]) when G0 is
// invertible and G0^{-1} G1 has the irreducible characteristic polynomial
// X^2 - t X + n.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "albert/gf.hpp"
#include "albert/linalg.hpp"

namespace albert::pencil {

using gf::Elem;
using gf::Field;
using Mat2 = linalg::Matrix<Elem>;

enum class Tag { I, II, III, IV, V, VI, VII, IStar };

inline std::string to_string(Tag t) {
  switch (t) {
    case Tag::I: return "I";
    case Tag::II: return "II";
    case Tag::III: return "III";
    case Tag::IV: return "IV";
    case Tag::V: return "V";
    case Tag::VI: return "VI";
    case Tag::VII: return "VII";
    case Tag::IStar: return "I*";
  }
  return "?";
}

struct PairNormalForm {
  Tag tag = Tag::I;
  std::optional<Elem> lambda, mu;
  Mat2 P, Q;
  Mat2 N0, N1;  // P G0 Q, P G1 Q
};

inline Mat2 mat2(Elem a, Elem b, Elem c, Elem d) { return Mat2(2, 2, {a, b, c, d}); }

namespace detail {

/// (P, Q) with (P A Q, P B Q) = (1, form) for invertible A; fills tag and eigenvalues.
inline PairNormalForm normalize_invertible(const Field& f, const Mat2& a, const Mat2& b) {
  PairNormalForm out;
  const Mat2 a_inv = linalg::inverse(f, a);
  const Mat2 m = linalg::multiply(f, a_inv, b);
  const Elem tr = f.add(m(0, 0), m(1, 1));
  const Elem n = f.sub(f.mul(m(0, 0), m(1, 1)), f.mul(m(0, 1), m(1, 0)));
  std::vector<Elem> roots;
  for (Elem x : f.elements())
    if (f.is_zero(f.add(f.sub(f.mul(x, x), f.mul(tr, x)), n))) roots.push_back(x);

  Mat2 s = linalg::identity(f, 2);
  if (f.is_zero(m(0, 1)) && f.is_zero(m(1, 0))) {
    out.tag = Tag::I;
    out.lambda = m(0, 0);
    out.mu = m(1, 1);
  } else if (roots.empty()) {
    // cyclic basis (e1, M e1); e1 is no eigenvector since there are none
    out.tag = Tag::IStar;
    s = mat2(f.one(), m(0, 0), f.zero(), m(1, 0));
  } else {
    // A non-scalar matrix with a root has either two distinct roots or one double root.
    const Elem l = roots.front();
    const bool distinct = roots.size() == 2;
    // Eigenvector of m for eigenvalue x: nonzero vector in the kernel of m - x.
    auto eigenvector = [&](Elem x) {
      const Mat2 k = mat2(f.sub(m(0, 0), x), m(0, 1), m(1, 0), f.sub(m(1, 1), x));
      if (!f.is_zero(k(0, 0)) || !f.is_zero(k(0, 1))) return std::pair{f.neg(k(0, 1)), k(0, 0)};
      return std::pair{f.neg(k(1, 1)), k(1, 0)};
    };
    if (distinct) {
      out.tag = Tag::I;
      out.lambda = roots[0];
      out.mu = roots[1];
      const auto v0 = eigenvector(roots[0]);
      const auto v1 = eigenvector(roots[1]);
      s = mat2(v0.first, v1.first, v0.second, v1.second);
    } else {
      // Jordan block [[l, 0], [1, l]] in the basis (s0, (M - l) s0).
      out.tag = Tag::II;
      out.lambda = l;
      const Mat2 nil = mat2(f.sub(m(0, 0), l), m(0, 1), m(1, 0), f.sub(m(1, 1), l));
      Elem s00 = f.one(), s10 = f.zero();
      if (f.is_zero(nil(0, 0)) && f.is_zero(nil(1, 0))) {
        s00 = f.zero();
        s10 = f.one();
      }
      const Elem s01 = f.add(f.mul(nil(0, 0), s00), f.mul(nil(0, 1), s10));
      const Elem s11 = f.add(f.mul(nil(1, 0), s00), f.mul(nil(1, 1), s10));
      s = mat2(s00, s01, s10, s11);
    }
  }
  out.P = linalg::multiply(f, linalg::inverse(f, s), a_inv);
  out.Q = s;
  return out;
}

/// For a rank-one matrix u w^T: (P, Q) with P u = e1 and w^T Q = e1^T.
inline std::pair<Mat2, Mat2> rank_one_to_e11(const Field& f, const Mat2& a) {
  std::size_t r = 0, c = 0;
  bool found = false;
  for (std::size_t i = 0; i < 2 && !found; ++i)
    for (std::size_t j = 0; j < 2 && !found; ++j)
      if (!f.is_zero(a(i, j))) {
        r = i;
        c = j;
        found = true;
      }
  // column u = a(:, c), row w^T = a(r, :) / a(r, c)
  const Elem piv_inv = f.inv(a(r, c));
  const Elem u0 = a(0, c), u1 = a(1, c);
  const Elem w0 = f.mul(a(r, 0), piv_inv), w1 = f.mul(a(r, 1), piv_inv);
  // P^{-1} has first column u; complete with e_{1-r}.
  Mat2 p_inv = r == 0 ? mat2(u0, f.zero(), u1, f.one()) : mat2(u0, f.one(), u1, f.zero());
  // Q^{-1} has first row w^T; complete with e_{1-c}^T.
  Mat2 q_inv = c == 0 ? mat2(w0, w1, f.zero(), f.one()) : mat2(w0, w1, f.one(), f.zero());
  return {linalg::inverse(f, p_inv), linalg::inverse(f, q_inv)};
}

}  // namespace detail

/// Normal form of (g0, g1) following the case split: G0 invertible, then G1
/// invertible (switched forms), then both of rank <= 1.
inline PairNormalForm pair_normal_form(const Field& f, const Mat2& g0, const Mat2& g1) {
  if (g0.rows() != 2 || g0.cols() != 2 || g1.rows() != 2 || g1.cols() != 2)
    throw UsageError("pair_normal_form expects two 2x2 matrices");
  const std::size_t r0 = linalg::rank(f, g0), r1 = linalg::rank(f, g1);
  PairNormalForm out;
  if (r0 == 2) {
    out = detail::normalize_invertible(f, g0, g1);
  } else if (r1 == 2) {
    out = detail::normalize_invertible(f, g1, g0);
    // G0 singular forces an eigenvalue 0, so IStar cannot occur here.
    out.tag = out.tag == Tag::I ? Tag::III : Tag::IV;
  } else if (r0 == 1 && r1 == 1) {
    auto [p, q] = detail::rank_one_to_e11(f, g0);
    Mat2 b = linalg::multiply(f, linalg::multiply(f, p, g1), q);
    if (!f.is_zero(b(1, 1))) {
      // row_0 -= (b01/b11) row_1 and col_0 -= (b10/b11) col_1 leave E11 fixed
      const Elem k = f.div(b(0, 1), b(1, 1));
      const Elem l = f.div(b(1, 0), b(1, 1));
      const Mat2 row_op = mat2(f.one(), f.neg(k), f.zero(), f.inv(b(1, 1)));
      const Mat2 col_op = mat2(f.one(), f.zero(), f.neg(l), f.one());
      p = linalg::multiply(f, row_op, p);
      q = linalg::multiply(f, q, col_op);
      out.tag = Tag::V;
    } else if (f.is_zero(b(1, 0))) {
      out.tag = Tag::VI;
    } else {
      out.tag = Tag::VII;
    }
    out.P = p;
    out.Q = q;
  } else {
    // At least one of the pair is zero and the other has rank <= 1.
    const Mat2& nonzero = r0 == 1 ? g0 : g1;
    if (r0 == 0 && r1 == 0) {
      out.P = linalg::identity(f, 2);
      out.Q = linalg::identity(f, 2);
    } else {
      std::tie(out.P, out.Q) = detail::rank_one_to_e11(f, nonzero);
    }
    out.tag = Tag::VI;
  }
  out.N0 = linalg::multiply(f, linalg::multiply(f, out.P, g0), out.Q);
  out.N1 = linalg::multiply(f, linalg::multiply(f, out.P, g1), out.Q);
  return out;
}

/// The matrices the tag prescribes (VI/VII only constrain the zero pattern).
inline bool matches_representative(const Field& f, const PairNormalForm& nf) {
  const Elem z = f.zero(), o = f.one();
  const Mat2 id = linalg::identity(f, 2);
  auto jordan = [&](Elem l) { return mat2(l, z, o, l); };
  switch (nf.tag) {
    case Tag::I: return nf.N0 == id && nf.N1 == mat2(*nf.lambda, z, z, *nf.mu);
    case Tag::II: return nf.N0 == id && nf.N1 == jordan(*nf.lambda);
    case Tag::III: return nf.N1 == id && nf.N0 == mat2(*nf.lambda, z, z, *nf.mu);
    case Tag::IV: return nf.N1 == id && nf.N0 == jordan(*nf.lambda);
    case Tag::V: return nf.N0 == mat2(o, z, z, z) && nf.N1 == mat2(z, z, z, o);
    case Tag::VI:
      return f.is_zero(nf.N0(1, 0)) && f.is_zero(nf.N0(1, 1)) && f.is_zero(nf.N1(1, 0)) && f.is_zero(nf.N1(1, 1));
    case Tag::VII:
      return f.is_zero(nf.N0(0, 1)) && f.is_zero(nf.N0(1, 1)) && f.is_zero(nf.N1(0, 1)) && f.is_zero(nf.N1(1, 1));
    case Tag::IStar: {
      if (nf.N0 != id || !f.is_zero(nf.N1(0, 0)) || nf.N1(1, 0) != o) return false;
      const Elem t = nf.N1(1, 1), n = f.neg(nf.N1(0, 1));
      for (Elem x : f.elements())
        if (f.is_zero(f.add(f.sub(f.mul(x, x), f.mul(t, x)), n))) return false;
      return true;
    }
  }
  return false;
}

/// P, Q invertible, (P G0 Q, P G1 Q) = (N0, N1), and the result has its tag's shape.
inline bool verify(const Field& f, const Mat2& g0, const Mat2& g1, const PairNormalForm& nf) {
  if (linalg::rank(f, nf.P) != 2 || linalg::rank(f, nf.Q) != 2) return false;
  if (linalg::multiply(f, linalg::multiply(f, nf.P, g0), nf.Q) != nf.N0) return false;
  if (linalg::multiply(f, linalg::multiply(f, nf.P, g1), nf.Q) != nf.N1) return false;
  return matches_representative(f, nf);
}

}  // namespace albert::pencil
