#pragma once

// Twisted fields (K, mu) with mu(x, y) = x y^sigma - c x^sigma y, and
// three-dimensional algebras over F given by structure constants.

#include <array>
#include <optional>
#include <string>

#include "albert/error.hpp"
#include "albert/gf.hpp"
#include "albert/linalg.hpp"

namespace albert {

using gf::Elem;
using gf::Field;
using gf::KElem;
using gf::Tower;
using Vec3 = std::array<Elem, 3>;
using Mat = linalg::Matrix<Elem>;

/// e_i e_j = sum_k s(i, j, k) e_k. No identity element is assumed.
struct Algebra3 {
  Field field;
  std::array<Elem, 27> tensor{};

  Elem s(int i, int j, int k) const { return tensor[9 * i + 3 * j + k]; }
  Elem& s(int i, int j, int k) { return tensor[9 * i + 3 * j + k]; }

  friend bool operator==(const Algebra3&, const Algebra3&) = default;
};

inline Vec3 multiply(const Algebra3& a, const Vec3& x, const Vec3& y) {
  const Field& f = a.field;
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    if (f.is_zero(x[i])) continue;
    for (int j = 0; j < 3; ++j) {
      if (f.is_zero(y[j])) continue;
      const Elem xy = f.mul(x[i], y[j]);
      for (int k = 0; k < 3; ++k) out[k] = f.add(out[k], f.mul(xy, a.s(i, j, k)));
    }
  }
  return out;
}

/// Matrix of L_a : x -> a x in the standard basis (column j is a e_j).
inline Mat left_mul_matrix(const Algebra3& alg, const Vec3& a) {
  const Field& f = alg.field;
  Mat m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m(k, j) = f.add(m(k, j), f.mul(a[i], alg.s(i, j, k)));
  return m;
}

/// Matrix of R_a : x -> x a (column i is e_i a).
inline Mat right_mul_matrix(const Algebra3& alg, const Vec3& a) {
  const Field& f = alg.field;
  Mat m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m(k, i) = f.add(m(k, i), f.mul(a[j], alg.s(i, j, k)));
  return m;
}

inline bool is_commutative(const Algebra3& alg) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (alg.s(i, j, k) != alg.s(j, i, k)) return false;
  return true;
}

inline Vec3 vec3_from_code(const Field& f, unsigned code) {
  const unsigned q = f.order();
  return {Elem{static_cast<std::uint16_t>(code % q)}, Elem{static_cast<std::uint16_t>(code / q % q)},
          Elem{static_cast<std::uint16_t>(code / (q * q))}};
}

/// Every L_a and R_a with a != 0 is invertible (exhaustive over F^3).
inline bool is_division(const Algebra3& alg) {
  const unsigned n = alg.field.order() * alg.field.order() * alg.field.order();
  for (unsigned code = 1; code < n; ++code) {
    const Vec3 a = vec3_from_code(alg.field, code);
    if (alg.field.is_zero(linalg::det(alg.field, left_mul_matrix(alg, a)))) return false;
    if (alg.field.is_zero(linalg::det(alg.field, right_mul_matrix(alg, a)))) return false;
  }
  return true;
}

/// mu(x, y) for an arbitrary c, including the degenerate N(c) = 1.
inline KElem twisted_product(const Tower& k, const KElem& c, const KElem& x, const KElem& y) {
  return k.sub(k.mul(x, k.frobenius(y)), k.mul(c, k.mul(k.frobenius(x), y)));
}

inline Algebra3 structure_constants(const Tower& k, const KElem& c) {
  Algebra3 alg{k.base(), {}};
  const std::array<KElem, 3> basis{k.one(), k.root(), k.mul(k.root(), k.root())};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const KElem prod = twisted_product(k, c, basis[i], basis[j]);
      for (int l = 0; l < 3; ++l) alg.s(i, j, l) = prod[l];
    }
  return alg;
}

/// The associative product of K in the basis (1, t, t^2).
inline Algebra3 field_product_algebra(const Tower& k) {
  Algebra3 alg{k.base(), {}};
  const std::array<KElem, 3> basis{k.one(), k.root(), k.mul(k.root(), k.root())};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const KElem prod = k.mul(basis[i], basis[j]);
      for (int l = 0; l < 3; ++l) alg.s(i, j, l) = prod[l];
    }
  return alg;
}

/// A twisted field (K, mu) with c in K^x and N(c) != 1.
class TwistedFieldSpec {
 public:
  TwistedFieldSpec(Tower tower, KElem c) : tower_(std::move(tower)), c_(c) {
    const Field& f = tower_.base();
    for (Elem e : c_)
      if (!f.contains(e)) throw UsageError("twisting element has coordinates outside the base field");
    if (f.order() == 2)
      throw DomainError(
          "no twisted field over GF(2): the norm K^x -> GF(2)^x = {1} is onto, so N(c) != 1 cannot hold for c != 0");
    if (tower_.is_zero(c_)) throw DomainError("twisting element c must be nonzero");
    if (tower_.norm(c_) == f.one())
      throw DomainError("N(c) = 1 for c = " + tower_.format(c_) + ": the product has zero divisors");
  }

  const Tower& tower() const { return tower_; }
  const Field& field() const { return tower_.base(); }
  const KElem& c() const { return c_; }
  Elem norm_c() const { return tower_.norm(c_); }

  friend bool operator==(const TwistedFieldSpec&, const TwistedFieldSpec&) = default;

 private:
  Tower tower_;
  KElem c_;
};

inline KElem mu(const TwistedFieldSpec& spec, const KElem& x, const KElem& y) {
  return twisted_product(spec.tower(), spec.c(), x, y);
}

inline Algebra3 to_structure_constants(const TwistedFieldSpec& spec) {
  return structure_constants(spec.tower(), spec.c());
}

/// Lex-least (by tower code) nonzero c with N(c) = target.
inline std::optional<KElem> lex_least_with_norm(const Tower& k, Elem target) {
  for (unsigned code = 1; code < k.order(); ++code) {
    const KElem c = k.decode(code);
    if (k.norm(c) == target) return c;
  }
  return std::nullopt;
}

struct IsotopyWitness {
  KElem a;
};

/// a in K^x with c'/c = a^sigma / a; then a mu'(x, y) = mu(a x, y).
inline IsotopyWitness isotopy_witness(const Tower& k, const KElem& c, const KElem& c_prime) {
  if (k.norm(c) != k.norm(c_prime))
    throw NoWitnessError("no isotopy witness: N(c) = " + k.base().format(k.norm(c)) + " differs from N(c') = " +
                         k.base().format(k.norm(c_prime)));
  if (k.is_zero(c) || k.is_zero(c_prime)) throw UsageError("isotopy witness needs nonzero c and c'");
  const KElem ratio = k.div(c_prime, c);
  for (unsigned code = 1; code < k.order(); ++code) {
    const KElem a = k.decode(code);
    if (k.div(k.frobenius(a), a) == ratio) return {a};
  }
  throw InternalError("Hilbert 90 failed: equal norms but no witness");
}

/// Checks a mu'(x, y) = mu(a x, y) on the nine basis pairs.
inline bool witness_intertwines(const Tower& k, const KElem& c, const KElem& c_prime, const IsotopyWitness& w) {
  const std::array<KElem, 3> basis{k.one(), k.root(), k.mul(k.root(), k.root())};
  for (const auto& x : basis)
    for (const auto& y : basis)
      if (k.mul(w.a, twisted_product(k, c_prime, x, y)) != twisted_product(k, c, k.mul(w.a, x), y)) return false;
  return true;
}

enum class IsotopyClass { CommutativeIsotopic, NonCommutativeClass };

inline IsotopyClass isotopy_class(const TwistedFieldSpec& spec) {
  const Field& f = spec.field();
  return spec.norm_c() == f.neg(f.one()) ? IsotopyClass::CommutativeIsotopic : IsotopyClass::NonCommutativeClass;
}

inline std::string to_string(IsotopyClass c) {
  return c == IsotopyClass::CommutativeIsotopic ? "commutative-isotopic" : "noncommutative";
}

}  // namespace albert
