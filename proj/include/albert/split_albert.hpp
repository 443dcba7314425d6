#pragma once

// The split Albert algebra phi = phi_{d0,d1,d2} : U x V -> W,
//   alpha_i beta_i = 0, alpha_i beta_{i+1} = gamma_{i+2},
//   alpha_i beta_{i+2} = d_{i+1} gamma_{i+1}      (indices mod 3),
// its multiplication matrices, isomorphism families, and the splitting of a
// twisted field over K.

#include <array>
#include <string>

#include "albert/algebra3.hpp"
#include "albert/error.hpp"
#include "albert/gf.hpp"
#include "albert/linalg.hpp"

namespace albert::split {

using linalg::FieldLike;
using linalg::Matrix;

/// Index arithmetic mod 3. All index shifts in this module go through here.
constexpr int idx(int i) { return ((i % 3) + 3) % 3; }

enum class Space { U, V, W };

inline const char* to_string(Space s) {
  switch (s) {
    case Space::U: return "U";
    case Space::V: return "V";
    case Space::W: return "W";
  }
  return "?";
}

template <class V>
struct TriVector {
  std::array<V, 3> c{};
  Space space = Space::U;

  friend bool operator==(const TriVector&, const TriVector&) = default;
};

template <FieldLike F>
bool is_regular(const F& field, const TriVector<typename F::value_type>& x) {
  return !field.is_zero(x.c[0]) && !field.is_zero(x.c[1]) && !field.is_zero(x.c[2]);
}

template <FieldLike F>
class SplitAlbertSpec {
 public:
  using V = typename F::value_type;

  SplitAlbertSpec(F field, std::array<V, 3> d) : field_(std::move(field)), d_(d) {
    for (const V& di : d_)
      if (field_.is_zero(di)) throw DomainError("split Albert parameters d_i must be nonzero");
    if (field_.add(product(), field_.one()) == field_.zero())
      throw DomainError("split Albert parameters with d0 d1 d2 = -1 are excluded");
  }

  const F& field() const { return field_; }
  const std::array<V, 3>& d() const { return d_; }
  const V& d(int i) const { return d_[idx(i)]; }
  V product() const { return field_.mul(field_.mul(d_[0], d_[1]), d_[2]); }

  friend bool operator==(const SplitAlbertSpec&, const SplitAlbertSpec&) = default;

 private:
  F field_;
  std::array<V, 3> d_;
};

template <FieldLike F>
TriVector<typename F::value_type> basis_vector(const F& field, Space s, int i) {
  TriVector<typename F::value_type> v;
  v.space = s;
  v.c[idx(i)] = field.one();
  return v;
}

/// Matrix of L_x : V -> W.
template <FieldLike F>
Matrix<typename F::value_type> lmat(const SplitAlbertSpec<F>& spec, const TriVector<typename F::value_type>& x) {
  if (x.space != Space::U) throw UsageError("lmat expects an element of U");
  const F& f = spec.field();
  const auto& c = x.c;
  Matrix<typename F::value_type> m(3, 3);
  m(0, 1) = f.mul(spec.d(0), c[2]);
  m(0, 2) = c[1];
  m(1, 0) = c[2];
  m(1, 2) = f.mul(spec.d(1), c[0]);
  m(2, 0) = f.mul(spec.d(2), c[1]);
  m(2, 1) = c[0];
  return m;
}

/// Matrix of R_y : U -> W.
template <FieldLike F>
Matrix<typename F::value_type> rmat(const SplitAlbertSpec<F>& spec, const TriVector<typename F::value_type>& y) {
  if (y.space != Space::V) throw UsageError("rmat expects an element of V");
  const F& f = spec.field();
  const auto& c = y.c;
  Matrix<typename F::value_type> m(3, 3);
  m(0, 1) = c[2];
  m(0, 2) = f.mul(spec.d(0), c[1]);
  m(1, 0) = f.mul(spec.d(1), c[2]);
  m(1, 2) = c[0];
  m(2, 0) = c[1];
  m(2, 1) = f.mul(spec.d(2), c[0]);
  return m;
}

/// phi(u, v), from the basis table (not from the matrices).
template <FieldLike F>
TriVector<typename F::value_type> phi(const SplitAlbertSpec<F>& spec, const TriVector<typename F::value_type>& u,
                                      const TriVector<typename F::value_type>& v) {
  if (u.space != Space::U || v.space != Space::V) throw UsageError("phi expects (U, V) arguments");
  const F& f = spec.field();
  TriVector<typename F::value_type> w;
  w.space = Space::W;
  for (int i = 0; i < 3; ++i) {
    // alpha_i beta_{i+1} = gamma_{i+2}
    w.c[idx(i + 2)] = f.add(w.c[idx(i + 2)], f.mul(u.c[i], v.c[idx(i + 1)]));
    // alpha_i beta_{i+2} = d_{i+1} gamma_{i+1}
    w.c[idx(i + 1)] = f.add(w.c[idx(i + 1)], f.mul(spec.d(i + 1), f.mul(u.c[i], v.c[idx(i + 2)])));
  }
  return w;
}

/// Closed-form R_y^{-1} for regular y.
template <FieldLike F>
Matrix<typename F::value_type> rmat_inv(const SplitAlbertSpec<F>& spec, const TriVector<typename F::value_type>& y) {
  if (y.space != Space::V) throw UsageError("rmat_inv expects an element of V");
  const F& f = spec.field();
  if (!is_regular(f, y)) throw DomainError("rmat_inv requires a regular element (all coordinates nonzero)");
  const auto& c = y.c;
  const auto& d = spec.d();
  const auto scale = f.inv(f.add(f.one(), spec.product()));
  const auto i0 = f.inv(c[0]), i1 = f.inv(c[1]), i2 = f.inv(c[2]);
  Matrix<typename F::value_type> m(3, 3);
  m(0, 0) = f.neg(f.mul(d[2], f.mul(c[0], f.mul(i1, i2))));
  m(0, 1) = f.mul(f.mul(d[0], d[2]), i2);
  m(0, 2) = i1;
  m(1, 0) = i2;
  m(1, 1) = f.neg(f.mul(d[0], f.mul(c[1], f.mul(i0, i2))));
  m(1, 2) = f.mul(f.mul(d[0], d[1]), i0);
  m(2, 0) = f.mul(f.mul(d[1], d[2]), i1);
  m(2, 1) = i0;
  m(2, 2) = f.neg(f.mul(d[1], f.mul(c[2], f.mul(i0, i1))));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t k = 0; k < 3; ++k) m(r, k) = f.mul(scale, m(r, k));
  return m;
}

/// The eigenvalues y_i / y'_i of R_{y'}^{-1} R_y.
template <FieldLike F>
std::array<typename F::value_type, 3> char_poly_ratio(const SplitAlbertSpec<F>& spec,
                                                      const TriVector<typename F::value_type>& y,
                                                      const TriVector<typename F::value_type>& y_prime) {
  const F& f = spec.field();
  if (y.space != Space::V || y_prime.space != Space::V) throw UsageError("char_poly_ratio expects elements of V");
  if (!is_regular(f, y) || !is_regular(f, y_prime)) throw DomainError("char_poly_ratio requires regular elements");
  return {f.mul(y.c[0], f.inv(y_prime.c[0])), f.mul(y.c[1], f.inv(y_prime.c[1])), f.mul(y.c[2], f.inv(y_prime.c[2]))};
}

/// Coefficients (low to high) of prod_i (X - r_i).
template <FieldLike F>
std::vector<typename F::value_type> poly_from_roots(const F& f, const std::array<typename F::value_type, 3>& r) {
  const auto e1 = f.add(f.add(r[0], r[1]), r[2]);
  const auto e2 = f.add(f.add(f.mul(r[0], r[1]), f.mul(r[1], r[2])), f.mul(r[0], r[2]));
  const auto e3 = f.mul(f.mul(r[0], r[1]), r[2]);
  return {f.neg(e3), e2, f.neg(e1), f.one()};
}

/// An isomorphism (f, g, h) : phi -> phi' of bilinear maps, h phi = phi' (f x g).
template <FieldLike F>
struct SplitIsomorphism {
  SplitAlbertSpec<F> target;
  Matrix<typename F::value_type> f, g, h;
};

template <FieldLike F>
TriVector<typename F::value_type> apply_map(const F& field, const Matrix<typename F::value_type>& m,
                                            const TriVector<typename F::value_type>& x) {
  auto out = linalg::apply(field, m, std::span<const typename F::value_type>(x.c));
  return {{out[0], out[1], out[2]}, x.space};
}

/// h(phi(alpha_i, beta_j)) = phi'(f alpha_i, g beta_j) for all nine basis pairs.
template <FieldLike F>
bool intertwines(const SplitAlbertSpec<F>& source, const SplitIsomorphism<F>& iso) {
  const F& field = source.field();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto a = basis_vector(field, Space::U, i);
      const auto b = basis_vector(field, Space::V, j);
      const auto lhs = apply_map(field, iso.h, phi(source, a, b));
      const auto rhs = phi(iso.target, apply_map(field, iso.f, a), apply_map(field, iso.g, b));
      if (lhs.c != rhs.c) return false;
    }
  return true;
}

/// alpha_i -> r_i alpha_i, beta_i -> s_i beta_i, gamma_i -> r_{i+1} s_{i+2} gamma_i.
template <FieldLike F>
SplitIsomorphism<F> scale_isomorphism(const SplitAlbertSpec<F>& spec, const std::array<typename F::value_type, 3>& r,
                                      const std::array<typename F::value_type, 3>& s) {
  const F& f = spec.field();
  for (int i = 0; i < 3; ++i)
    if (f.is_zero(r[i]) || f.is_zero(s[i])) throw UsageError("scale isomorphism needs nonzero scalars");
  std::array<typename F::value_type, 3> d2{};
  Matrix<typename F::value_type> fm(3, 3), gm(3, 3), hm(3, 3);
  for (int i = 0; i < 3; ++i) {
    d2[i] = f.mul(f.mul(f.mul(r[idx(i + 1)], f.inv(r[idx(i - 1)])), f.mul(s[idx(i - 1)], f.inv(s[idx(i + 1)]))),
                  spec.d(i));
    fm(i, i) = r[i];
    gm(i, i) = s[i];
    hm(i, i) = f.mul(r[idx(i + 1)], s[idx(i + 2)]);
  }
  return {SplitAlbertSpec<F>(f, d2), fm, gm, hm};
}

/// alpha_i -> alpha_{i+1} and likewise for beta, gamma: phi_{d0,d1,d2} -> phi_{d2,d0,d1}.
template <FieldLike F>
SplitIsomorphism<F> cyclic_isomorphism(const SplitAlbertSpec<F>& spec) {
  const F& f = spec.field();
  Matrix<typename F::value_type> p(3, 3);
  for (int i = 0; i < 3; ++i) p(idx(i + 1), i) = f.one();
  return {SplitAlbertSpec<F>(f, {spec.d(2), spec.d(0), spec.d(1)}), p, p, p};
}

/// alpha_i -> alpha_{1-i}, beta_i -> beta_{1-i}, gamma_i -> d_i^{-1} gamma_{1-i}:
/// phi_{d0,d1,d2} -> phi_{1/d1, 1/d0, 1/d2}.
template <FieldLike F>
SplitIsomorphism<F> reversal_isomorphism(const SplitAlbertSpec<F>& spec) {
  const F& f = spec.field();
  Matrix<typename F::value_type> p(3, 3), h(3, 3);
  for (int i = 0; i < 3; ++i) {
    p(idx(1 - i), i) = f.one();
    h(idx(1 - i), i) = f.inv(spec.d(i));
  }
  return {SplitAlbertSpec<F>(f, {f.inv(spec.d(1)), f.inv(spec.d(0)), f.inv(spec.d(2))}), p, p, h};
}

/// U(x, y) = {(u x, u y)} in W^2 = F^6, given by rows (alpha_i x, alpha_i y).
template <FieldLike F>
linalg::Subspace<typename F::value_type> pair_image(const SplitAlbertSpec<F>& spec,
                                                    const TriVector<typename F::value_type>& x,
                                                    const TriVector<typename F::value_type>& y) {
  const F& f = spec.field();
  Matrix<typename F::value_type> m(3, 6);
  for (int i = 0; i < 3; ++i) {
    const auto a = basis_vector(f, Space::U, i);
    const auto ax = phi(spec, a, x);
    const auto ay = phi(spec, a, y);
    for (int k = 0; k < 3; ++k) {
      m(i, k) = ax.c[k];
      m(i, 3 + k) = ay.c[k];
    }
  }
  return linalg::row_space(f, m);
}

// ---------------------------------------------------------------------------
// Splitting a twisted field over K.
//
// K^3 carries nu(xi, eta)_i = xi_i eta_{i+1} - c^{sigma^i} xi_{i+1} eta_i in the
// standard basis (e_i). With alpha_i = beta_i = e_{i-1}, gamma_i = e_i and
// d_i = -c^{sigma^i}, phi over K is exactly nu.

using KVec = std::array<gf::KElem, 3>;

struct Splitting {
  SplitAlbertSpec<gf::Tower> spec;
};

inline Splitting split_twisted_field(const TwistedFieldSpec& tf) {
  const auto& k = tf.tower();
  std::array<gf::KElem, 3> d{};
  for (int i = 0; i < 3; ++i) d[i] = k.neg(k.frobenius(tf.c(), i));
  return {SplitAlbertSpec<gf::Tower>(k, d)};
}

/// E(a) = (a, a^sigma, a^{sigma^2}) in e-coordinates: the image of 1 (x) a.
inline KVec embed(const gf::Tower& k, const gf::KElem& a) {
  return {a, k.frobenius(a, 1), k.frobenius(a, 2)};
}

/// nu on K^3 in e-coordinates, straight from the coordinate formula.
inline KVec nu(const TwistedFieldSpec& tf, const KVec& xi, const KVec& eta) {
  const auto& k = tf.tower();
  KVec out{};
  for (int i = 0; i < 3; ++i) {
    const auto ci = k.frobenius(tf.c(), i);
    out[i] = k.sub(k.mul(xi[i], eta[idx(i + 1)]), k.mul(ci, k.mul(xi[idx(i + 1)], eta[i])));
  }
  return out;
}

/// e-coordinates -> alpha/beta coordinates (alpha_i = e_{i-1}).
inline TriVector<gf::KElem> to_split_coords(const KVec& xi, Space s) {
  return {{xi[idx(-1)], xi[0], xi[1]}, s};
}

/// gamma coordinates -> e-coordinates (gamma_i = e_i).
inline KVec from_w_coords(const TriVector<gf::KElem>& w) {
  if (w.space != Space::W) throw UsageError("from_w_coords expects an element of W");
  return w.c;
}

/// nu evaluated through phi and the basis identification.
inline KVec nu_via_phi(const Splitting& sp, const KVec& xi, const KVec& eta) {
  return from_w_coords(phi(sp.spec, to_split_coords(xi, Space::U), to_split_coords(eta, Space::V)));
}

/// lambda : (x_i) -> (x_{i-1}^sigma), sigma-semilinear, e_i -> e_{i+1}.
inline KVec lambda_map(const gf::Tower& k, const KVec& xi) {
  return {k.frobenius(xi[idx(-1)]), k.frobenius(xi[0]), k.frobenius(xi[1])};
}

/// rho : (x_i) -> (x_{i+1}).
inline KVec rho_map(const KVec& xi) { return {xi[1], xi[2], xi[0]}; }

/// nu(xi, eta) = xi eta^rho - gamma xi^rho eta with gamma = (c^{sigma^i}), componentwise.
inline KVec nu_via_rho(const TwistedFieldSpec& tf, const KVec& xi, const KVec& eta) {
  const auto& k = tf.tower();
  const KVec gamma = embed(k, tf.c());
  const KVec er = rho_map(eta), xr = rho_map(xi);
  KVec out{};
  for (int i = 0; i < 3; ++i) out[i] = k.sub(k.mul(xi[i], er[i]), k.mul(gamma[i], k.mul(xr[i], eta[i])));
  return out;
}

}  // namespace albert::split
