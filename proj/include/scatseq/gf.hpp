#pragma once

// Arithmetic in F_{q^n}, q = p^h, realized as F_p[X]/(modulus) with deg modulus = h*n.
//
// Elements are plain indices: the coordinate vector (c_0, ..., c_{hn-1}) over
// F_p with respect to the power basis 1, X, ..., X^{hn-1} is stored as the
// integer sum c_i p^i. For p = 2 this is the usual bit pattern and addition is
// XOR. F_q is the fixed field of the q-Frobenius; every intermediate field
// F_{q^d} is tested the same way, so one representation covers all subfields.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scatseq/error.hpp"

namespace scatseq {

struct Elem {
  std::uint32_t v = 0;
  constexpr auto operator<=>(const Elem&) const = default;
};

namespace detail {

inline bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      out.push_back(d);
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t euler_phi(std::uint64_t x) {
  std::uint64_t r = x;
  for (auto f : prime_factors(x)) r = r / f * (f - 1);
  return r;
}

inline int mod_n(long long e, int n) {
  long long r = e % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

inline Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod_p(f.back(), p);
  while (a.size() > df) {
    const std::size_t shift = a.size() - 1 - df;
    const std::uint64_t c = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= df; ++i) {
      std::uint64_t sub = c * f[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  }
  return poly_mod(std::move(r), f, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

/// Rabin's test: f | X^{p^D} - X and gcd(f, X^{p^{D/r}} - X) = 1 for every prime r | D.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t D = f.size() - 1;
  if (D == 0) return false;
  if (D == 1) return true;
  std::vector<Poly> xp(D + 1);
  xp[0] = poly_mod(Poly{0, 1}, f, p);
  for (std::size_t k = 1; k <= D; ++k) xp[k] = poly_powmod(xp[k - 1], p, f, p);
  const Poly x = poly_mod(Poly{0, 1}, f, p);
  if (!poly_sub(xp[D], x, p).empty()) return false;
  for (auto r : prime_factors(D)) {
    Poly g = poly_gcd(f, poly_sub(xp[D / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// Arithmetic modulo a prime; used as the scalar field of coordinate matrices.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p <= (1u << 16)) {
      inv_.assign(p, 0);
      for (std::uint32_t a = 1; a < p; ++a) inv_[a] = detail::inv_mod_p(a, p);
    }
  }

  std::uint32_t p() const { return p_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    if (p_ == 2) return a ^ b;
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }
  value_type mul(value_type a, value_type b) const {
    if (p_ == 2) return a & b;
    return static_cast<value_type>(std::uint64_t{a} * b % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw Error(Errc::InvalidArgument, "inverse of zero in F_p");
    return inv_.empty() ? detail::inv_mod_p(a, p_) : inv_[a];
  }

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inv_;
};

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

FieldPtr make_field(std::uint32_t p, unsigned h, unsigned n,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

/// The tower F_p ⊂ F_q ⊂ F_{q^n}. Immutable after construction; every member
/// function is const and thread-safe.
class FieldContext {
 public:
  using value_type = Elem;

  std::uint32_t p() const { return p_; }
  unsigned h() const { return h_; }
  unsigned n() const { return n_; }
  /// Degree of F_{q^n} over F_p.
  unsigned degree() const { return D_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t size() const { return Q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const PrimeField& prime_field() const { return pf_; }
  bool has_tables() const { return !log_.empty(); }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  bool is_zero(Elem a) const { return a.v == 0; }
  Elem constant(std::uint32_t c) const { return Elem{c % p_}; }
  /// The canonical generator of F_{q^n}^*: the primitive element with the smallest index.
  Elem generator() const { return gen_; }
  /// The class of X in F_p[X]/(modulus).
  Elem x_class() const { return D_ == 1 ? reduce_digits({0, 1}) : Elem{p_}; }

  std::uint32_t digit(Elem a, unsigned i) const {
    if (p_ == 2) return (a.v >> i) & 1u;
    return (a.v / pow_p_[i]) % p_;
  }
  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(D_);
    for (unsigned i = 0; i < D_; ++i) d[i] = digit(a, i);
    return d;
  }
  Elem from_digits(std::span<const std::uint32_t> d) const {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < D_ && i < d.size(); ++i) v += std::uint64_t{d[i] % p_} * pow_p_[i];
    return Elem{static_cast<std::uint32_t>(v)};
  }
  /// Element whose index is `idx` (any idx < size()).
  Elem element(std::uint64_t idx) const { return Elem{static_cast<std::uint32_t>(idx)}; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return Elem{a.v ^ b.v};
    std::uint64_t r = 0;
    std::uint32_t x = a.v, y = b.v;
    for (unsigned i = 0; i < D_; ++i) {
      std::uint32_t s = x % p_ + y % p_;
      if (s >= p_) s -= p_;
      r += std::uint64_t{s} * pow_p_[i];
      x /= p_;
      y /= p_;
    }
    return Elem{static_cast<std::uint32_t>(r)};
  }
  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    std::uint64_t r = 0;
    std::uint32_t x = a.v;
    for (unsigned i = 0; i < D_; ++i) {
      std::uint32_t c = x % p_;
      r += std::uint64_t{c == 0 ? 0 : p_ - c} * pow_p_[i];
      x /= p_;
    }
    return Elem{static_cast<std::uint32_t>(r)};
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return Elem{0};
    if (!log_.empty()) return Elem{exp_[std::size_t{log_[a.v]} + log_[b.v]]};
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const {
    if (a.v == 0) throw Error(Errc::InvalidArgument, "inverse of zero");
    if (!log_.empty()) return Elem{exp_[(Q_ - 1 - log_[a.v]) % (Q_ - 1)]};
    return pow(a, Q_ - 2);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.v == 0) return zero();
    if (!log_.empty()) return Elem{exp_[detail::powmod(e, 1, Q_ - 1) * log_[a.v] % (Q_ - 1)]};
    Elem r = one(), b = a;
    while (e) {
      if (e & 1) r = mul_slow(r, b);
      b = mul_slow(b, b);
      e >>= 1;
    }
    return r;
  }
  /// g^k for the canonical generator g; k may be negative.
  Elem gen_pow(long long k) const {
    const long long m = static_cast<long long>(Q_ - 1);
    long long r = k % m;
    if (r < 0) r += m;
    return pow(gen_, static_cast<std::uint64_t>(r));
  }

  /// x^{q^e}; e is taken modulo n.
  Elem frob(Elem x, long long e) const {
    const int k = detail::mod_n(e, static_cast<int>(n_));
    if (k == 0 || x.v == 0) return x;
    if (!log_.empty()) return Elem{exp_[std::uint64_t{log_[x.v]} * qpow_mod_[k] % (Q_ - 1)]};
    const auto& M = frob_mats_[k];
    std::vector<std::uint32_t> in = digits(x), out(D_, 0);
    for (unsigned r = 0; r < D_; ++r) {
      std::uint64_t s = 0;
      for (unsigned c = 0; c < D_; ++c) s += std::uint64_t{M[r * D_ + c]} * in[c];
      out[r] = static_cast<std::uint32_t>(s % p_);
    }
    return from_digits(out);
  }

  /// Tr_{q^n/q}(x) = sum_{i<n} x^{q^i}.
  Elem trace(Elem x) const {
    Elem s = zero();
    for (unsigned i = 0; i < n_; ++i) s = add(s, frob(x, i));
    return s;
  }
  /// N_{q^n/q}(x) = prod_{i<n} x^{q^i}.
  Elem norm(Elem x) const {
    Elem s = one();
    for (unsigned i = 0; i < n_; ++i) s = mul(s, frob(x, i));
    return s;
  }
  /// Tr_{q^n/p}(x) as an F_p value.
  std::uint32_t abs_trace(Elem x) const {
    std::uint64_t s = 0;
    for (unsigned i = 0; i < D_; ++i) s += std::uint64_t{digit(x, i)} * abs_trace_basis_[i];
    return static_cast<std::uint32_t>(s % p_);
  }

  /// True iff x lies in F_{q^d} ∩ F_{q^n} = F_{q^{gcd(d,n)}}.
  bool in_subfield(Elem x, unsigned d) const {
    const unsigned g = std::gcd(d, n_);
    return frob(x, g) == x;
  }
  /// Elements of F_{q^{gcd(d,n)}}, sorted by index.
  std::vector<Elem> subfield_elements(unsigned d) const {
    const unsigned g = std::gcd(d, n_);
    const std::uint64_t sub_size = detail::ipow(q_, g);
    const std::uint64_t step = (Q_ - 1) / (sub_size - 1);
    std::vector<Elem> out{zero()};
    Elem g_step = pow(gen_, step), cur = one();
    for (std::uint64_t k = 0; k + 1 < sub_size; ++k) {
      out.push_back(cur);
      cur = mul(cur, g_step);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  const std::vector<Elem>& fq_elements() const { return fq_elems_; }
  /// An F_p-basis of F_q (h elements).
  const std::vector<Elem>& fq_basis_over_fp() const { return fq_basis_; }
  /// An F_q-basis of F_{q^n} (n elements); the power basis when h = 1.
  const std::vector<Elem>& fqn_basis_over_fq() const { return fqn_basis_; }

  /// "p^h^n:modhex", the modulus packed as sum c_i p^i in hexadecimal.
  std::string descriptor() const;

  bool same_field(const FieldContext& o) const {
    return p_ == o.p_ && h_ == o.h_ && n_ == o.n_ && modulus_ == o.modulus_;
  }

 private:
  friend FieldPtr make_field(std::uint32_t, unsigned, unsigned, std::optional<std::vector<std::uint32_t>>);
  FieldContext() : pf_(2) {}

  Elem reduce_digits(detail::Poly a) const {
    detail::Poly r = detail::poly_mod(std::move(a), modulus_, p_);
    return from_digits(r);
  }

  Elem mul_slow(Elem a, Elem b) const {
    if (p_ == 2) {
      std::uint64_t x = a.v, y = b.v, r = 0;
      while (y) {
        if (y & 1) r ^= x;
        x <<= 1;
        y >>= 1;
      }
      for (int bit = 2 * static_cast<int>(D_) - 2; bit >= static_cast<int>(D_); --bit)
        if ((r >> bit) & 1) r ^= mod_bits_ << (bit - D_);
      return Elem{static_cast<std::uint32_t>(r)};
    }
    detail::Poly pa = digits(a), pb = digits(b);
    detail::Poly r(2 * D_ - 1, 0);
    for (unsigned i = 0; i < D_; ++i) {
      if (!pa[i]) continue;
      for (unsigned j = 0; j < D_; ++j) r[i + j] = (r[i + j] + std::uint64_t{pa[i]} * pb[j]) % p_;
    }
    return reduce_digits(std::move(r));
  }

  void init();

  std::uint32_t p_ = 2;
  unsigned h_ = 1, n_ = 1, D_ = 1;
  std::uint64_t q_ = 2, Q_ = 2;
  std::vector<std::uint32_t> modulus_;
  std::uint64_t mod_bits_ = 0;
  PrimeField pf_;
  std::vector<std::uint32_t> pow_p_;
  std::vector<std::uint32_t> exp_, log_;
  std::vector<std::uint64_t> qpow_mod_;
  std::vector<std::vector<std::uint32_t>> frob_mats_;
  std::vector<std::uint32_t> abs_trace_basis_;
  Elem gen_{1};
  std::vector<Elem> fq_elems_, fq_basis_, fqn_basis_;
};

inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

inline void FieldContext::init() {
  pf_ = PrimeField(p_);
  pow_p_.assign(D_, 1);
  for (unsigned i = 1; i < D_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
  if (p_ == 2) {
    mod_bits_ = 0;
    for (unsigned i = 0; i <= D_; ++i)
      if (modulus_[i]) mod_bits_ |= std::uint64_t{1} << i;
  }

  // Canonical generator: smallest index whose order is Q - 1.
  const auto factors = detail::prime_factors(Q_ - 1);
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = one(), b = a;
    while (e) {
      if (e & 1) r = mul_slow(r, b);
      b = mul_slow(b, b);
      e >>= 1;
    }
    return r;
  };
  gen_ = Elem{1};
  if (Q_ > 2) {
    for (std::uint64_t c = 2; c < Q_; ++c) {
      Elem cand{static_cast<std::uint32_t>(c)};
      bool prim = true;
      for (auto r : factors)
        if (slow_pow(cand, (Q_ - 1) / r) == one()) {
          prim = false;
          break;
        }
      if (prim) {
        gen_ = cand;
        break;
      }
    }
  }

  if (Q_ <= kTableLimit) {
    exp_.assign(2 * (Q_ - 1) + 1, 0);
    log_.assign(Q_, 0);
    Elem cur = one();
    for (std::uint64_t k = 0; k < Q_ - 1; ++k) {
      exp_[k] = cur.v;
      log_[cur.v] = static_cast<std::uint32_t>(k);
      cur = mul_slow(cur, gen_);
    }
    for (std::uint64_t k = Q_ - 1; k < exp_.size(); ++k) exp_[k] = exp_[k - (Q_ - 1)];
    qpow_mod_.assign(n_, 1);
    for (unsigned e = 1; e < n_; ++e)
      qpow_mod_[e] = static_cast<std::uint64_t>((unsigned __int128)qpow_mod_[e - 1] * q_ % (Q_ - 1));
  } else {
    // Matrices of x -> x^{q^e} over F_p, columns are images of the power basis.
    frob_mats_.assign(n_, std::vector<std::uint32_t>(D_ * D_, 0));
    for (unsigned e = 1; e < n_; ++e) {
      const std::uint64_t qe = detail::ipow(q_, e);
      for (unsigned c = 0; c < D_; ++c) {
        Elem img = slow_pow(Elem{pow_p_[c]}, qe);
        for (unsigned r = 0; r < D_; ++r) frob_mats_[e][r * D_ + c] = digit(img, r);
      }
    }
  }

  abs_trace_basis_.assign(D_, 0);
  for (unsigned i = 0; i < D_; ++i) {
    Elem w{pow_p_[i]}, s = zero(), cur = w;
    for (unsigned k = 0; k < D_; ++k) {
      s = add(s, cur);
      cur = pow(cur, p_);
    }
    abs_trace_basis_[i] = digit(s, 0);
  }

  fq_elems_ = subfield_elements(1);

  // Greedy bases from F_p-rank tests on digit vectors.
  auto independent_add = [&](std::vector<std::vector<std::uint32_t>>& echelon, std::vector<std::uint32_t> v) {
    for (auto& row : echelon) {
      std::size_t piv = 0;
      while (row[piv] == 0) ++piv;
      if (v[piv]) {
        std::uint64_t c = v[piv];
        for (unsigned i = 0; i < D_; ++i) v[i] = static_cast<std::uint32_t>((v[i] + p_ - c * row[i] % p_) % p_);
      }
    }
    auto it = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
    if (it == v.end()) return false;
    const std::uint32_t inv = pf_.inv(*it);
    for (auto& x : v) x = pf_.mul(x, inv);
    for (auto& row : echelon) {
      std::size_t piv = static_cast<std::size_t>(it - v.begin());
      if (row[piv]) {
        std::uint64_t c = row[piv];
        for (unsigned i = 0; i < D_; ++i) row[i] = static_cast<std::uint32_t>((row[i] + p_ - c * v[i] % p_) % p_);
      }
    }
    echelon.push_back(std::move(v));
    return true;
  };
  {
    std::vector<std::vector<std::uint32_t>> ech;
    fq_basis_.clear();
    for (Elem e : fq_elems_) {
      if (fq_basis_.size() == h_) break;
      if (e.v != 0 && independent_add(ech, digits(e))) fq_basis_.push_back(e);
    }
  }
  {
    fqn_basis_.clear();
    std::vector<std::vector<std::uint32_t>> ech;
    for (unsigned j = 0; j < D_ && fqn_basis_.size() < n_; ++j) {
      Elem cand{pow_p_[j]};
      auto trial = ech;
      bool ok = true;
      for (Elem w : fq_basis_)
        if (!independent_add(trial, digits(mul(w, cand)))) {
          ok = false;
          break;
        }
      if (ok) {
        ech = std::move(trial);
        fqn_basis_.push_back(cand);
      }
    }
  }
}

inline std::string FieldContext::descriptor() const {
  std::uint64_t packed = 0, w = 1;
  for (unsigned i = 0; i <= D_; ++i) {
    packed += w * modulus_[i];
    w *= p_;
  }
  static const char* hexd = "0123456789abcdef";
  std::string hex;
  do {
    hex.insert(hex.begin(), hexd[packed & 0xf]);
    packed >>= 4;
  } while (packed);
  return std::to_string(p_) + "^" + std::to_string(h_) + "^" + std::to_string(n_) + ":" + hex;
}

/// Builds F_{q^n} with q = p^h. Without an explicit modulus the
/// lexicographically least monic irreducible of degree h*n with nonzero
/// constant term is used (coefficients compared from the top degree down).
inline FieldPtr make_field(std::uint32_t p, unsigned h, unsigned n,
                           std::optional<std::vector<std::uint32_t>> modulus) {
  if (!detail::is_prime(p)) throw Error(Errc::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (h == 0 || n == 0) throw Error(Errc::InvalidArgument, "h and n must be positive");
  const unsigned D = h * n;
  long double approx = 1;
  for (unsigned i = 0; i < D; ++i) approx *= p;
  if (approx > 4294967296.0L) throw Error(Errc::FieldTooLarge, "p^(h n) exceeds 2^32");

  std::shared_ptr<FieldContext> ctx(new FieldContext());
  ctx->p_ = p;
  ctx->h_ = h;
  ctx->n_ = n;
  ctx->D_ = D;
  ctx->q_ = detail::ipow(p, h);
  ctx->Q_ = detail::ipow(p, D);

  if (modulus) {
    detail::Poly f = *modulus;
    for (auto& c : f) c %= p;
    detail::trim(f);
    if (f.size() != D + 1)
      throw Error(Errc::DegreeMismatch, "modulus degree " + std::to_string(f.empty() ? 0 : f.size() - 1) +
                                            " but h*n = " + std::to_string(D));
    const std::uint64_t inv = detail::inv_mod_p(f.back(), p);
    for (auto& c : f) c = static_cast<std::uint32_t>(c * inv % p);
    if (!detail::is_irreducible(f, p)) throw Error(Errc::ReducibleModulus, "modulus is reducible over F_p");
    ctx->modulus_ = f;
  } else {
    const std::uint64_t total = ctx->Q_;
    bool found = false;
    // Enumerate c_{D-1} ... c_0 as a base-p counter with c_{D-1} most significant.
    for (std::uint64_t v = 0; v < total && !found; ++v) {
      detail::Poly f(D + 1, 0);
      std::uint64_t x = v;
      for (unsigned i = 0; i < D; ++i) {
        f[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      f[D] = 1;
      if (f[0] == 0) continue;
      if (detail::is_irreducible(f, p)) {
        ctx->modulus_ = f;
        found = true;
      }
    }
    if (!found) throw Error(Errc::InternalInconsistency, "no irreducible polynomial found");
  }
  ctx->init();
  return ctx;
}

/// All (γ', c') in F_q^* x F_q^* with X^2 + γ'X - c' primitive over F_q, as
/// elements of ctx's F_q. Primitivity is decided in F_q[X]/(X^2 + γ'X - c').
inline std::vector<std::pair<Elem, Elem>> primitive_quadratics(const FieldContext& ctx) {
  const auto& fq = ctx.fq_elements();
  const std::uint64_t q = ctx.q();
  const std::uint64_t order = q * q - 1;
  const auto factors = detail::prime_factors(order);
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem g : fq) {
    if (ctx.is_zero(g)) continue;
    for (Elem c : fq) {
      if (ctx.is_zero(c)) continue;
      // Irreducible iff no root in F_q.
      bool has_root = false;
      for (Elem t : fq) {
        Elem val = ctx.sub(ctx.add(ctx.mul(t, t), ctx.mul(g, t)), c);
        if (ctx.is_zero(val)) {
          has_root = true;
          break;
        }
      }
      if (has_root) continue;
      // (a + bX) with X^2 = c - γ'X.
      using Pair = std::pair<Elem, Elem>;
      auto mulp = [&](Pair u, Pair w) {
        Elem a = ctx.mul(u.first, w.first);
        Elem b = ctx.add(ctx.mul(u.first, w.second), ctx.mul(u.second, w.first));
        Elem bb = ctx.mul(u.second, w.second);
        return Pair{ctx.add(a, ctx.mul(bb, c)), ctx.sub(b, ctx.mul(bb, g))};
      };
      auto powp = [&](Pair base, std::uint64_t e) {
        Pair r{ctx.one(), ctx.zero()};
        while (e) {
          if (e & 1) r = mulp(r, base);
          base = mulp(base, base);
          e >>= 1;
        }
        return r;
      };
      bool primitive = true;
      for (auto r : factors) {
        Pair v = powp(Pair{ctx.zero(), ctx.one()}, order / r);
        if (v.first == ctx.one() && ctx.is_zero(v.second)) {
          primitive = false;
          break;
        }
      }
      if (primitive) out.emplace_back(g, c);
    }
  }
  return out;
}

}  // namespace scatseq
