#pragma once

// Multivariate linearized polynomials f = sum_{i,j} f_{i,j} X_i^{q^j} modulo
// X_i^{q^n} - X_i, stored as a dense m x n coefficient grid.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scatseq/gf.hpp"
#include "scatseq/linalg.hpp"

namespace scatseq {

class LinPoly {
 public:
  LinPoly(FieldPtr ctx, std::size_t m) : ctx_(std::move(ctx)), m_(m), coeffs_(m * ctx_->n(), Elem{0}) {}

  /// c * X_var^{q^exp}
  static LinPoly monomial(FieldPtr ctx, std::size_t m, std::size_t var, long long exp, Elem c) {
    LinPoly f(std::move(ctx), m);
    f.set(var, exp, c);
    return f;
  }
  static LinPoly monomial(FieldPtr ctx, std::size_t m, std::size_t var, long long exp = 0) {
    Elem one = ctx->one();
    return monomial(std::move(ctx), m, var, exp, one);
  }
  /// alpha * Tr_{q^n/q}(v_1 X_1 + ... + v_m X_m), i.e. f_{i,j} = alpha v_i^{q^j}.
  static LinPoly trace_form(FieldPtr ctx, std::span<const Elem> v, Elem alpha) {
    LinPoly f(ctx, v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (unsigned j = 0; j < ctx->n(); ++j) f.set(i, j, ctx->mul(alpha, ctx->frob(v[i], j)));
    return f;
  }

  const FieldContext& field() const { return *ctx_; }
  const FieldPtr& field_ptr() const { return ctx_; }
  std::size_t m() const { return m_; }
  unsigned n() const { return ctx_->n(); }

  Elem coeff(std::size_t var, long long exp) const { return coeffs_[var * n() + detail::mod_n(exp, n())]; }
  void set(std::size_t var, long long exp, Elem c) { coeffs_[var * n() + detail::mod_n(exp, n())] = c; }
  /// Row-major grid, entry (i, j) at i * n + j.
  const std::vector<Elem>& grid() const { return coeffs_; }
  std::vector<Elem>& grid() { return coeffs_; }

  bool is_zero() const {
    for (Elem c : coeffs_)
      if (c.v) return false;
    return true;
  }
  bool operator==(const LinPoly& o) const { return m_ == o.m_ && ctx_->same_field(*o.ctx_) && coeffs_ == o.coeffs_; }

 private:
  FieldPtr ctx_;
  std::size_t m_;
  std::vector<Elem> coeffs_;
};

inline void require_same_shape(const LinPoly& f, const LinPoly& g) {
  if (f.m() != g.m() || !f.field().same_field(g.field()))
    throw Error(Errc::ArityMismatch, "polynomials differ in arity or field");
}

inline LinPoly operator+(const LinPoly& f, const LinPoly& g) {
  require_same_shape(f, g);
  LinPoly r = f;
  for (std::size_t t = 0; t < r.grid().size(); ++t) r.grid()[t] = f.field().add(f.grid()[t], g.grid()[t]);
  return r;
}

inline LinPoly operator-(const LinPoly& f, const LinPoly& g) {
  require_same_shape(f, g);
  LinPoly r = f;
  for (std::size_t t = 0; t < r.grid().size(); ++t) r.grid()[t] = f.field().sub(f.grid()[t], g.grid()[t]);
  return r;
}

inline LinPoly scale(Elem c, const LinPoly& f) {
  LinPoly r = f;
  for (auto& x : r.grid()) x = f.field().mul(c, x);
  return r;
}

/// Embeds f into a polynomial ring with `m_total` variables, shifting variable i to i + offset.
inline LinPoly widen(const LinPoly& f, std::size_t m_total, std::size_t offset) {
  if (offset + f.m() > m_total) throw Error(Errc::ArityMismatch, "widen target too small");
  LinPoly r(f.field_ptr(), m_total);
  for (std::size_t i = 0; i < f.m(); ++i)
    for (unsigned j = 0; j < f.n(); ++j) r.set(i + offset, j, f.coeff(i, j));
  return r;
}

inline Elem evaluate(const LinPoly& f, std::span<const Elem> v) {
  if (v.size() != f.m()) throw Error(Errc::ArityMismatch, "evaluate: wrong number of arguments");
  const auto& F = f.field();
  Elem s = F.zero();
  for (std::size_t i = 0; i < f.m(); ++i) {
    if (F.is_zero(v[i])) continue;
    for (unsigned j = 0; j < f.n(); ++j) {
      Elem c = f.coeff(i, j);
      if (!F.is_zero(c)) s = F.add(s, F.mul(c, F.frob(v[i], j)));
    }
  }
  return s;
}

/// F_p-coordinates (power basis) of a vector over F_{q^n}, coordinate blocks concatenated.
inline std::vector<std::uint32_t> fp_coords(const FieldContext& F, std::span<const Elem> v) {
  std::vector<std::uint32_t> out;
  out.reserve(v.size() * F.degree());
  for (Elem x : v)
    for (unsigned t = 0; t < F.degree(); ++t) out.push_back(F.digit(x, t));
  return out;
}

/// Matrix of the F_p-linear map v -> f(v): shape (hn) x (hn m), column i*hn + t is
/// the image of X^t e_i in power-basis coordinates. For h = 1 this is the F_q matrix.
inline Matrix<std::uint32_t> to_matrix(const LinPoly& f) {
  const auto& F = f.field();
  const unsigned D = F.degree();
  Matrix<std::uint32_t> M(D, D * f.m(), 0);
  std::vector<Elem> arg(f.m(), F.zero());
  for (std::size_t i = 0; i < f.m(); ++i)
    for (unsigned t = 0; t < D; ++t) {
      std::uint32_t idx = 1;
      for (unsigned s = 0; s < t; ++s) idx *= F.p();
      arg[i] = Elem{idx};
      Elem img = evaluate(f, arg);
      for (unsigned r = 0; r < D; ++r) M(r, i * D + t) = F.digit(img, r);
      arg[i] = F.zero();
    }
  return M;
}

/// F_q-rank of the induced map (F_{q^n})^m -> F_{q^n}.
inline std::size_t rank(const LinPoly& f) {
  return rank_of(f.field().prime_field(), to_matrix(f)) / f.field().h();
}

struct TraceForm {
  Elem alpha;
  std::vector<Elem> v;
};

/// Recovers (alpha, v) with f = alpha Tr(v X^T) when rank(f) = 1.
inline std::optional<TraceForm> is_rank_one_trace_form(const LinPoly& f) {
  if (rank(f) != 1) return std::nullopt;
  const auto& F = f.field();
  // The image of f is alpha F_q; take alpha as any nonzero value of f.
  Elem alpha = F.zero();
  std::vector<Elem> arg(f.m(), F.zero());
  for (std::size_t i = 0; i < f.m() && F.is_zero(alpha); ++i)
    for (Elem b : F.fqn_basis_over_fq()) {
      arg[i] = b;
      alpha = evaluate(f, arg);
      arg[i] = F.zero();
      if (!F.is_zero(alpha)) break;
    }
  TraceForm out{alpha, std::vector<Elem>(f.m())};
  const Elem inv = F.inv(alpha);
  for (std::size_t i = 0; i < f.m(); ++i) out.v[i] = F.mul(f.coeff(i, 0), inv);
  if (LinPoly::trace_form(f.field_ptr(), out.v, alpha) != f)
    throw Error(Errc::InternalInconsistency, "rank-one polynomial is not a trace form");
  return out;
}

/// f ⋆ g = sum_{i,j} f_{i,j} g_{i,j}.
inline Elem star(const LinPoly& f, const LinPoly& g) {
  require_same_shape(f, g);
  const auto& F = f.field();
  Elem s = F.zero();
  for (std::size_t t = 0; t < f.grid().size(); ++t) s = F.add(s, F.mul(f.grid()[t], g.grid()[t]));
  return s;
}

/// Adjoint w.r.t. Tr(xy): sum a_j X^{q^j} -> sum a_j^{q^{n-j}} X^{q^{n-j}}.
inline LinPoly adjoint(const LinPoly& f) {
  if (f.m() != 1) throw Error(Errc::ArityMismatch, "adjoint is defined for univariate polynomials only");
  const auto& F = f.field();
  LinPoly r(f.field_ptr(), 1);
  const long long n = f.n();
  for (long long j = 0; j < n; ++j) r.set(0, n - j, F.frob(f.coeff(0, j), n - j));
  return r;
}

/// f ∘ g for univariate f, g.
inline LinPoly compose(const LinPoly& f, const LinPoly& g) {
  if (f.m() != 1 || g.m() != 1) throw Error(Errc::ArityMismatch, "compose is defined for univariate polynomials");
  require_same_shape(f, g);
  const auto& F = f.field();
  LinPoly r(f.field_ptr(), 1);
  const unsigned n = f.n();
  for (unsigned j = 0; j < n; ++j) {
    Elem a = f.coeff(0, j);
    if (F.is_zero(a)) continue;
    for (unsigned k = 0; k < n; ++k) {
      Elem b = g.coeff(0, k);
      if (F.is_zero(b)) continue;
      r.set(0, j + k, F.add(r.coeff(0, j + k), F.mul(a, F.frob(b, j))));
    }
  }
  return r;
}

}  // namespace scatseq
