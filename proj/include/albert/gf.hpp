#pragma once

// Small finite fields GF(p^m) and their cubic extensions K = F[t]/(f).
//
// Base-field elements are encoded as integers: the element
// a_0 + a_1 u + ... + a_{m-1} u^{m-1} (u a root of the modulus) has code
// a_0 + a_1 p + ... + a_{m-1} p^{m-1}. Enumeration runs over codes
// 0, 1, ..., q-1, so it starts at zero and a_0 varies fastest.
//
// Arithmetic is schoolbook polynomial arithmetic; the Field constructor
// evaluates it once over all pairs and keeps the Cayley tables, which at
// q <= 256 is a few kilobytes.
//
// Elements of K are coefficient triples over F in the basis (1, t, t^2).
// Their code is c_0 + c_1 q + c_2 q^2 with c_i the base codes.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

#include "albert/error.hpp"

namespace albert::gf {

struct Elem {
  std::uint16_t code = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

/// Element of the cubic extension K, coordinates over F in the basis 1, t, t^2.
using KElem = std::array<Elem, 3>;

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace poly {

// Dense polynomials over GF(p), little-endian, no trailing zeros.
using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

inline unsigned inv_mod(unsigned a, unsigned p) {
  // p is prime and small; Fermat is plenty.
  unsigned r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

/// Remainder of a modulo b (b nonzero).
inline Poly mod(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const unsigned lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const unsigned factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = (a[shift + i] + p - factor * b[i] % p) % p;
    trim(a);
  }
  return a;
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-p digits of `code` (a_0 least significant).
inline Poly monic_from_code(unsigned code, unsigned degree, unsigned p) {
  Poly f(degree + 1, 0);
  for (unsigned i = 0; i < degree; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[degree] = 1;
  return f;
}

/// Irreducibility by trial division with every monic polynomial of degree <= deg/2.
inline bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned n = static_cast<unsigned>(f.size()) - 1;
  for (unsigned d = 1; 2 * d <= n; ++d) {
    unsigned count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned code = 0; code < count; ++code)
      if (mod(f, monic_from_code(code, d, p), p).empty()) return false;
  }
  return true;
}

}  // namespace poly

/// GF(p^m) = GF(p)[u]/(modulus).
struct FieldSpec {
  unsigned p = 2;
  unsigned m = 1;
  std::vector<unsigned> modulus;  // m+1 coefficients, little-endian, monic

  unsigned order() const {
    unsigned q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    return q;
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline void validate(const FieldSpec& spec) {
  if (!is_prime(spec.p)) throw UsageError("field characteristic " + std::to_string(spec.p) + " is not prime");
  if (spec.m < 1 || spec.m > 6) throw UsageError("field degree must lie in 1..6");
  if (spec.order() > 4096) throw UsageError("field order too large for table arithmetic");
  if (spec.modulus.size() != spec.m + 1 || spec.modulus.back() != 1)
    throw UsageError("field modulus must be monic of degree m");
  for (unsigned c : spec.modulus)
    if (c >= spec.p) throw UsageError("field modulus coefficient not reduced mod p");
  // m = 1 modulus is u - a for any a; we require u itself (a = 0) so codes are integers.
  if (spec.m == 1 && spec.modulus[0] != 0) throw UsageError("prime-field modulus must be u");
  if (spec.m > 1 && !poly::is_irreducible(spec.modulus, spec.p))
    throw UsageError("field modulus is reducible over GF(" + std::to_string(spec.p) + ")");
}

/// Lex-least monic irreducible polynomial of degree m over GF(p), scanning
/// the lower coefficients in increasing code order (a_0 fastest).
inline FieldSpec default_field_spec(unsigned q) {
  unsigned p = 0;
  for (unsigned d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) throw UsageError("field order must be a prime power >= 2, got " + std::to_string(q));
  unsigned m = 0;
  for (unsigned r = q; r > 1; r /= p) {
    if (r % p != 0) throw UsageError(std::to_string(q) + " is not a prime power");
    ++m;
  }
  FieldSpec spec{p, m, {}};
  if (m == 1) {
    spec.modulus = {0, 1};
    return spec;
  }
  for (unsigned code = 0; code < q; ++code) {
    auto f = poly::monic_from_code(code, m, p);
    if (poly::is_irreducible(f, p)) {
      spec.modulus = f;
      return spec;
    }
  }
  throw InternalError("no irreducible polynomial found");
}

class Field {
 public:
  using value_type = Elem;

  explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
    validate(spec_);
    q_ = spec_.order();
    build_tables();
  }

  static Field of_order(unsigned q) { return Field(default_field_spec(q)); }

  const FieldSpec& spec() const { return spec_; }
  unsigned p() const { return spec_.p; }
  unsigned m() const { return spec_.m; }
  unsigned order() const { return q_; }

  Elem zero() const { return {}; }
  Elem one() const { return Elem{1}; }
  bool is_zero(Elem a) const { return a.code == 0; }

  Elem add(Elem a, Elem b) const { return add_[a.code * q_ + b.code]; }
  Elem mul(Elem a, Elem b) const { return mul_[a.code * q_ + b.code]; }
  Elem neg(Elem a) const { return neg_[a.code]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem inv(Elem a) const {
    if (a.code == 0) throw DomainError("inverse of zero in GF(" + std::to_string(q_) + ")");
    return inv_[a.code];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Image of an integer in the prime subfield.
  Elem from_int(long long n) const {
    long long r = n % static_cast<long long>(spec_.p);
    if (r < 0) r += spec_.p;
    return Elem{static_cast<std::uint16_t>(r)};
  }

  /// Checked conversion from a code; rejects codes outside the field.
  Elem elem(unsigned code) const {
    if (code >= q_) throw UsageError("element code " + std::to_string(code) + " outside GF(" + std::to_string(q_) + ")");
    return Elem{static_cast<std::uint16_t>(code)};
  }

  bool contains(Elem a) const { return a.code < q_; }

  std::vector<unsigned> coeffs(Elem a) const {
    std::vector<unsigned> c(spec_.m);
    unsigned code = a.code;
    for (auto& x : c) {
      x = code % spec_.p;
      code /= spec_.p;
    }
    return c;
  }

  Elem from_coeffs(const std::vector<unsigned>& c) const {
    unsigned code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * spec_.p + c[i] % spec_.p;
    return elem(code);
  }

  /// The generator u of GF(p^m) over GF(p) (for m = 1 this is 0).
  Elem generator() const { return spec_.m == 1 ? zero() : Elem{static_cast<std::uint16_t>(spec_.p)}; }

  auto elements() const {
    return std::views::iota(0u, q_) | std::views::transform([](unsigned c) { return Elem{static_cast<std::uint16_t>(c)}; });
  }

  std::string format(Elem a) const;
  Elem parse(std::string_view text) const;

  friend bool operator==(const Field& a, const Field& b) { return a.spec_ == b.spec_; }

 private:
  void build_tables() {
    const unsigned p = spec_.p;
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.resize(q_);
    std::vector<poly::Poly> as_poly(q_);
    for (unsigned a = 0; a < q_; ++a) {
      auto c = coeffs(Elem{static_cast<std::uint16_t>(a)});
      as_poly[a] = poly::Poly(c.begin(), c.end());
      poly::trim(as_poly[a]);
    }
    auto encode = [&](const poly::Poly& f) {
      unsigned code = 0;
      for (std::size_t i = f.size(); i-- > 0;) code = code * p + f[i];
      return Elem{static_cast<std::uint16_t>(code)};
    };
    for (unsigned a = 0; a < q_; ++a) {
      auto ca = coeffs(Elem{static_cast<std::uint16_t>(a)});
      std::vector<unsigned> cn(spec_.m);
      for (unsigned i = 0; i < spec_.m; ++i) cn[i] = (p - ca[i]) % p;
      neg_[a] = from_coeffs(cn);
      for (unsigned b = 0; b < q_; ++b) {
        auto cb = coeffs(Elem{static_cast<std::uint16_t>(b)});
        std::vector<unsigned> cs(spec_.m);
        for (unsigned i = 0; i < spec_.m; ++i) cs[i] = (ca[i] + cb[i]) % p;
        add_[a * q_ + b] = from_coeffs(cs);
        if (spec_.m == 1)
          mul_[a * q_ + b] = Elem{static_cast<std::uint16_t>(a * b % p)};
        else
          mul_[a * q_ + b] = encode(poly::mod(poly::mul(as_poly[a], as_poly[b], p), spec_.modulus, p));
      }
    }
    for (unsigned a = 1; a < q_; ++a)
      for (unsigned b = 1; b < q_; ++b)
        if (mul_[a * q_ + b].code == 1) {
          inv_[a] = Elem{static_cast<std::uint16_t>(b)};
          break;
        }
  }

  FieldSpec spec_;
  unsigned q_ = 0;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

inline std::string Field::format(Elem a) const {
  if (spec_.m == 1) return std::to_string(a.code);
  auto c = coeffs(a);
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += 'u';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

/// Accepts sums of terms such as "2u^2+u-1", "-1", "u+1", "3".
/// Integer coefficients are reduced into the prime subfield.
inline Elem Field::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&] { return UsageError("malformed field element literal '" + std::string(text) + "' for GF(" + std::to_string(q_) + ")"); };
  if (s.empty()) throw fail();
  Elem total = zero();
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      throw fail();
    }
    long long coef = 1;
    bool has_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        coef = coef * 10 + (s[i] - '0');
        if (coef > 1'000'000) throw fail();
        ++i;
      }
      has_coef = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    unsigned degree = 0;
    if (i < s.size() && s[i] == 'u') {
      if (spec_.m == 1) throw fail();
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) throw fail();
        degree = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          degree = degree * 10 + (s[i] - '0');
          if (degree > 64) throw fail();
          ++i;
        }
      }
    } else if (!has_coef) {
      throw fail();
    }
    Elem term = mul(from_int(coef), pow(generator(), degree));
    if (degree == 0) term = from_int(coef);
    total = negative ? sub(total, term) : add(total, term);
  }
  return total;
}

/// Lex-least monic cubic over F with no root in F: the coefficient triple
/// (f_0, f_1, f_2) is scanned in increasing code order f_0 + f_1 q + f_2 q^2.
inline std::array<Elem, 4> find_cubic_modulus(const Field& base) {
  const unsigned q = base.order();
  for (unsigned code = 0; code < q * q * q; ++code) {
    std::array<Elem, 4> f{Elem{static_cast<std::uint16_t>(code % q)}, Elem{static_cast<std::uint16_t>(code / q % q)},
                          Elem{static_cast<std::uint16_t>(code / (q * q))}, base.one()};
    bool has_root = false;
    for (Elem a : base.elements()) {
      Elem v = base.add(base.mul(base.add(base.mul(base.add(a, f[2]), a), f[1]), a), f[0]);
      if (base.is_zero(v)) {
        has_root = true;
        break;
      }
    }
    if (!has_root) return f;
  }
  throw InternalError("no irreducible cubic found");
}

/// K = F[t]/(f) for a monic cubic f without roots in F.
class Tower {
 public:
  using value_type = KElem;

  Tower(Field base, std::array<Elem, 4> f) : base_(std::move(base)), f_(f) {
    for (Elem c : f_)
      if (!base_.contains(c)) throw UsageError("cubic modulus coefficient outside the base field");
    if (f_[3] != base_.one()) throw UsageError("cubic modulus must be monic");
    for (Elem a : base_.elements())
      if (base_.is_zero(eval_f(a)))
        throw UsageError("cubic modulus has the root " + base_.format(a) + " in the base field");
  }

  explicit Tower(Field base) : Tower(base, find_cubic_modulus(base)) {}

  static Tower of_order(unsigned q) { return Tower(Field::of_order(q)); }

  const Field& base() const { return base_; }
  const std::array<Elem, 4>& modulus() const { return f_; }
  unsigned base_order() const { return base_.order(); }
  unsigned order() const { return base_.order() * base_.order() * base_.order(); }

  KElem zero() const { return {}; }
  KElem one() const { return {base_.one(), Elem{}, Elem{}}; }
  bool is_zero(const KElem& x) const { return x == KElem{}; }
  KElem embed(Elem a) const { return {a, Elem{}, Elem{}}; }
  std::optional<Elem> as_base(const KElem& x) const {
    if (!base_.is_zero(x[1]) || !base_.is_zero(x[2])) return std::nullopt;
    return x[0];
  }
  /// The class of t.
  KElem root() const { return {Elem{}, base_.one(), Elem{}}; }

  KElem add(const KElem& a, const KElem& b) const {
    return {base_.add(a[0], b[0]), base_.add(a[1], b[1]), base_.add(a[2], b[2])};
  }
  KElem sub(const KElem& a, const KElem& b) const {
    return {base_.sub(a[0], b[0]), base_.sub(a[1], b[1]), base_.sub(a[2], b[2])};
  }
  KElem neg(const KElem& a) const { return {base_.neg(a[0]), base_.neg(a[1]), base_.neg(a[2])}; }
  KElem scale(Elem s, const KElem& a) const { return {base_.mul(s, a[0]), base_.mul(s, a[1]), base_.mul(s, a[2])}; }

  KElem mul(const KElem& a, const KElem& b) const {
    std::array<Elem, 5> r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i + j] = base_.add(r[i + j], base_.mul(a[i], b[j]));
    // t^3 = -(f0 + f1 t + f2 t^2)
    for (int k = 4; k >= 3; --k) {
      const Elem top = r[k];
      r[k] = Elem{};
      for (int i = 0; i < 3; ++i) r[k - 3 + i] = base_.sub(r[k - 3 + i], base_.mul(top, f_[i]));
    }
    return {r[0], r[1], r[2]};
  }

  KElem pow(KElem a, std::uint64_t e) const {
    KElem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  KElem inv(const KElem& a) const {
    if (is_zero(a)) throw DomainError("inverse of zero in the cubic extension");
    return pow(a, order() - 2);
  }
  KElem div(const KElem& a, const KElem& b) const { return mul(a, inv(b)); }

  /// x^q, the generator sigma of Gal(K/F).
  KElem frobenius(const KElem& x) const { return pow(x, base_.order()); }
  KElem frobenius(KElem x, int times) const {
    times = ((times % 3) + 3) % 3;
    for (int i = 0; i < times; ++i) x = frobenius(x);
    return x;
  }

  /// x * x^sigma * x^{sigma^2}, returned in F.
  Elem norm(const KElem& x) const {
    const KElem s1 = frobenius(x);
    const KElem s2 = frobenius(s1);
    const KElem n = mul(mul(x, s1), s2);
    auto b = as_base(n);
    if (!b) throw InternalError("norm is not fixed by Frobenius; the tower is broken");
    return *b;
  }

  unsigned encode(const KElem& x) const {
    const unsigned q = base_.order();
    return x[0].code + q * (x[1].code + q * x[2].code);
  }
  KElem decode(unsigned code) const {
    const unsigned q = base_.order();
    return {Elem{static_cast<std::uint16_t>(code % q)}, Elem{static_cast<std::uint16_t>(code / q % q)},
            Elem{static_cast<std::uint16_t>(code / (q * q))}};
  }

  auto elements() const {
    return std::views::iota(0u, order()) | std::views::transform([this](unsigned c) { return decode(c); });
  }

  std::string format(const KElem& x) const {
    return "[" + base_.format(x[0]) + "," + base_.format(x[1]) + "," + base_.format(x[2]) + "]";
  }

  /// "[a0,a1,a2]" with base-field literals, or a bare base-field literal.
  KElem parse(std::string_view text) const {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw UsageError("empty extension-field literal");
    if (s.front() != '[') return embed(base_.parse(s));
    if (s.back() != ']') throw UsageError("malformed extension-field literal '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
    KElem out{};
    std::size_t start = 0;
    for (int i = 0; i < 3; ++i) {
      std::size_t comma = s.find(',', start);
      if ((i < 2) != (comma != std::string::npos))
        throw UsageError("extension-field literal '" + std::string(text) + "' needs exactly three coordinates");
      out[i] = base_.parse(s.substr(start, i < 2 ? comma - start : std::string::npos));
      start = comma + 1;
    }
    return out;
  }

  /// f rendered as a polynomial in t, e.g. "t^3+2t+1".
  std::string format_modulus() const {
    std::string out = "t^3";
    for (int i = 2; i >= 0; --i) {
      if (base_.is_zero(f_[i])) continue;
      std::string c = base_.format(f_[i]);
      bool wrap = c.find('+') != std::string::npos;
      out += '+';
      if (i == 0)
        out += wrap ? "(" + c + ")" : c;
      else if (f_[i] != base_.one())
        out += wrap ? "(" + c + ")" : c;
      if (i >= 1) out += 't';
      if (i == 2) out += "^2";
    }
    return out;
  }

  friend bool operator==(const Tower& a, const Tower& b) { return a.base_ == b.base_ && a.f_ == b.f_; }

 private:
  Elem eval_f(Elem a) const {
    return base_.add(base_.mul(base_.add(base_.mul(base_.add(a, f_[2]), a), f_[1]), a), f_[0]);
  }

  Field base_;
  std::array<Elem, 4> f_;
};

/// Empty for prime fields, which have no modulus to report.
inline std::string format_modulus(const FieldSpec& spec) {
  std::string out;
  if (spec.m == 1) return out;
  for (std::size_t i = spec.modulus.size(); i-- > 0;) {
    unsigned c = spec.modulus[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i >= 1) out += 'u';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out;
}

}  // namespace albert::gf
