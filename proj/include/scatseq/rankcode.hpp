#pragma once

// F_{q^n}-linear rank-metric codes inside L_{n,q}[X_1, ..., X_m] and their
// associated F_q-subspaces.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "scatseq/error.hpp"
#include "scatseq/gf.hpp"
#include "scatseq/linalg.hpp"
#include "scatseq/linpoly.hpp"
#include "scatseq/parallel.hpp"
#include "scatseq/subspace.hpp"

namespace scatseq {

class RankCode {
 public:
  /// Throws DimensionMismatch when the basis is not F_{q^n}-independent.
  RankCode(FieldPtr ctx, std::size_t m, std::vector<LinPoly> basis)
      : ctx_(std::move(ctx)), m_(m), basis_(std::move(basis)) {
    for (const auto& g : basis_)
      if (g.m() != m_ || !g.field().same_field(*ctx_)) throw Error(Errc::ArityMismatch, "code basis shape");
    if (rank_of(*ctx_, grid_matrix()) != basis_.size())
      throw Error(Errc::DimensionMismatch, "code basis is not F_{q^n}-independent");
  }

  const FieldContext& field() const { return *ctx_; }
  const FieldPtr& field_ptr() const { return ctx_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return ctx_->n(); }
  std::size_t k() const { return basis_.size(); }
  const std::vector<LinPoly>& basis() const { return basis_; }

  /// k x nm matrix of coefficient grids.
  Matrix<Elem> grid_matrix() const {
    Matrix<Elem> M(0, m_ * ctx_->n());
    for (const auto& g : basis_) M.append_row(g.grid());
    return M;
  }

  /// sum_l a_l g_l
  LinPoly codeword(std::span<const Elem> a) const {
    LinPoly f(ctx_, m_);
    for (std::size_t l = 0; l < k(); ++l)
      if (!ctx_->is_zero(a[l])) f = f + scale(a[l], basis_[l]);
    return f;
  }

 private:
  FieldPtr ctx_;
  std::size_t m_;
  std::vector<LinPoly> basis_;
};

/// ⟨X, X^{q^s}, ..., X^{q^{s(k-1)}}⟩ with m = 1.
inline RankCode gabidulin_code(FieldPtr ctx, std::size_t k, long long s = 1) {
  std::vector<LinPoly> b;
  for (std::size_t i = 0; i < k; ++i) b.push_back(LinPoly::monomial(ctx, 1, 0, s * static_cast<long long>(i)));
  return RankCode(ctx, 1, std::move(b));
}

namespace detail {

/// F_p-rank of a list of field elements viewed as vectors in F_p^D.
inline std::size_t fp_rank_elems(const FieldContext& F, std::span<const Elem> vs) {
  if (F.p() == 2) {
    std::uint32_t basis[32] = {};
    std::size_t r = 0;
    for (Elem e : vs) {
      std::uint32_t x = e.v;
      for (int b = 31; b >= 0 && x; --b) {
        if (!((x >> b) & 1)) continue;
        if (!basis[b]) {
          basis[b] = x;
          ++r;
          x = 0;
          break;
        }
        x ^= basis[b];
      }
    }
    return r;
  }
  Matrix<std::uint32_t> M(0, F.degree());
  for (Elem e : vs) M.append_row(F.digits(e));
  return rank_of(F.prime_field(), M);
}

/// Images of each basis polynomial on the F_p-basis X^t e_i (column i*D + t) of the domain.
inline std::vector<std::vector<Elem>> basis_images(const RankCode& C) {
  const auto& F = C.field();
  const unsigned D = F.degree();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> arg(C.m(), F.zero());
  for (const auto& g : C.basis()) {
    std::vector<Elem> imgs;
    for (std::size_t i = 0; i < C.m(); ++i)
      for (unsigned t = 0; t < D; ++t) {
        std::uint32_t idx = 1;
        for (unsigned z = 0; z < t; ++z) idx *= F.p();
        arg[i] = Elem{idx};
        imgs.push_back(evaluate(g, arg));
        arg[i] = F.zero();
      }
    out.push_back(std::move(imgs));
  }
  return out;
}

/// Visits codewords with coefficient-tuple indices in [b, e). The tuple of
/// index idx has a_l = element((idx / Q^{k-1-l}) mod Q). `fn(idx, coeffs, images)`
/// receives the images of the codeword on the domain F_p-basis. Partial sums
/// are kept per prefix so each step only redoes the changed suffix.
template <class Fn>
void for_each_codeword(const RankCode& C, const std::vector<std::vector<Elem>>& E, std::uint64_t b,
                       std::uint64_t e, Fn&& fn) {
  const auto& F = C.field();
  const std::size_t k = C.k(), cols = E.empty() ? 0 : E[0].size();
  const std::uint64_t Q = F.size();
  std::vector<std::uint64_t> digit(k);
  {
    std::uint64_t x = b;
    for (std::size_t l = k; l-- > 0;) {
      digit[l] = x % Q;
      x /= Q;
    }
  }
  // partial[l] = sum_{j<l} a_j E_j
  std::vector<std::vector<Elem>> partial(k + 1, std::vector<Elem>(cols, F.zero()));
  std::vector<Elem> coeffs(k);
  auto rebuild_from = [&](std::size_t from) {
    for (std::size_t l = from; l < k; ++l) {
      coeffs[l] = F.element(digit[l]);
      for (std::size_t c = 0; c < cols; ++c)
        partial[l + 1][c] = F.add(partial[l][c], F.mul(coeffs[l], E[l][c]));
    }
  };
  rebuild_from(0);
  for (std::uint64_t idx = b; idx < e; ++idx) {
    fn(idx, std::span<const Elem>(coeffs), std::span<const Elem>(partial[k]));
    if (idx + 1 == e) break;
    std::size_t l = k;
    while (l-- > 0) {
      if (++digit[l] < Q) break;
      digit[l] = 0;
    }
    rebuild_from(l);
  }
}

inline std::uint64_t codeword_count(const RankCode& C, const Exec& exec, const char* what) {
  long double total = 1;
  for (std::size_t i = 0; i < C.k(); ++i) total *= static_cast<long double>(C.field().size());
  if (total > static_cast<long double>(exec.budget)) require_budget(UINT64_MAX, exec, what);
  return static_cast<std::uint64_t>(total);
}

}  // namespace detail

/// Minimum rank distance over all nonzero codewords.
inline std::size_t min_distance(const RankCode& C, const Exec& exec = {}) {
  if (C.k() == 0) throw Error(Errc::InvalidArgument, "minimum distance of the zero code");
  const auto& F = C.field();
  const std::uint64_t total = detail::codeword_count(C, exec, "codeword enumeration");
  const auto E = detail::basis_images(C);
  const std::size_t init = F.n() * C.m() + 1;
  return parallel_reduce(
      total - 1, exec.threads, init,
      [&](std::uint64_t b, std::uint64_t e) {
        std::size_t best = init;
        detail::for_each_codeword(C, E, b + 1, e + 1, [&](std::uint64_t, auto, auto imgs) {
          best = std::min(best, detail::fp_rank_elems(F, imgs) / F.h());
        });
        return best;
      },
      [](std::size_t a, std::size_t b) { return std::min(a, b); });
}

inline bool is_mrd(const RankCode& C, const Exec& exec = {}) {
  const std::size_t d = min_distance(C, exec);
  return C.k() == C.m() * (C.n() - d + 1);
}

/// Star-orthogonal complement.
inline RankCode dual(const RankCode& C) {
  const auto& F = C.field();
  const std::size_t cols = C.m() * C.n();
  Matrix<Elem> G = C.grid_matrix();
  Matrix<Elem> ker;
  if (G.rows == 0) {
    ker = Matrix<Elem>(cols, cols, F.zero());
    for (std::size_t i = 0; i < cols; ++i) ker(i, i) = F.one();
  } else {
    ker = nullspace(F, G);
  }
  std::vector<LinPoly> b;
  for (std::size_t r = 0; r < ker.rows; ++r) {
    LinPoly f(C.field_ptr(), C.m());
    std::copy(ker.row(r).begin(), ker.row(r).end(), f.grid().begin());
    b.push_back(std::move(f));
  }
  return RankCode(C.field_ptr(), C.m(), std::move(b));
}

/// True iff both codes span the same subspace of coefficient grids.
inline bool same_code(const RankCode& A, const RankCode& B) {
  if (A.k() != B.k() || A.m() != B.m() || !A.field().same_field(B.field())) return false;
  Matrix<Elem> a = A.grid_matrix(), b = B.grid_matrix();
  return rank_of(A.field(), a) == A.k() && [&] {
    Matrix<Elem> both = a;
    for (std::size_t r = 0; r < b.rows; ++r) both.append_row(b.row(r));
    return rank_of(A.field(), both) == A.k();
  }();
}

/// U_G spanned by (g_1(β_j e_i), ..., g_k(β_j e_i)) in (i, j) order, β an F_q-basis of F_{q^n}.
inline std::vector<Vec> evaluation_vectors(const RankCode& C) {
  const auto& F = C.field();
  std::vector<Vec> out;
  std::vector<Elem> arg(C.m(), F.zero());
  for (std::size_t i = 0; i < C.m(); ++i)
    for (Elem b : F.fqn_basis_over_fq()) {
      arg[i] = b;
      Vec v(C.k());
      for (std::size_t l = 0; l < C.k(); ++l) v[l] = evaluate(C.basis()[l], arg);
      out.push_back(std::move(v));
      arg[i] = F.zero();
    }
  return out;
}

inline std::size_t effective_length(const RankCode& C) {
  auto vs = evaluation_vectors(C);
  return FqSubspace::span(C.field_ptr(), C.k(), vs).dim();
}

struct NondegeneracyReport {
  bool full_effective_length = false;  // (a)
  bool basis_kernel_trivial = false;   // (b)
  bool codeword_kernel_trivial = false;  // (c)
  bool dual_distance_above_one = false;  // (d)
  bool nondegenerate() const { return full_effective_length; }
  bool consistent() const {
    return full_effective_length == basis_kernel_trivial && basis_kernel_trivial == codeword_kernel_trivial &&
           codeword_kernel_trivial == dual_distance_above_one;
  }
};

inline NondegeneracyReport nondegeneracy_report(const RankCode& C, const Exec& exec = {}) {
  const auto& F = C.field();
  const std::size_t nm = C.m() * C.n();
  const unsigned D = F.degree();
  NondegeneracyReport r;
  r.full_effective_length = effective_length(C) == nm;

  auto kernel_trivial = [&](const std::vector<LinPoly>& polys) {
    Matrix<std::uint32_t> M(0, D * C.m());
    for (const auto& g : polys) {
      auto A = to_matrix(g);
      for (std::size_t i = 0; i < A.rows; ++i) M.append_row(A.row(i));
    }
    return M.rows > 0 && rank_of(F.prime_field(), M) == D * C.m();
  };
  r.basis_kernel_trivial = kernel_trivial(C.basis());

  std::vector<LinPoly> spanning;
  for (const auto& g : C.basis())
    for (unsigned t = 0; t < D; ++t) {
      std::uint32_t idx = 1;
      for (unsigned z = 0; z < t; ++z) idx *= F.p();
      spanning.push_back(scale(Elem{idx}, g));
    }
  r.codeword_kernel_trivial = kernel_trivial(spanning);

  // Rank-one maps are exactly the F_{q^n}-multiples of Tr(v_1 X_1 + ... + v_m X_m), so the dual has
  // d = 1 iff one of these trace forms lies in it.
  RankCode Cd = dual(C);
  r.dual_distance_above_one = true;
  if (Cd.k() > 0) {
    const auto H = FqnSubspace::from_rows(F, Cd.grid_matrix());
    long double total = 1;
    for (std::size_t i = 0; i < C.m(); ++i) total *= static_cast<long double>(F.size());
    if (total > static_cast<long double>(exec.budget)) require_budget(UINT64_MAX, exec, "rank-one scan");
    const std::uint64_t N = static_cast<std::uint64_t>(total);
    r.dual_distance_above_one = !parallel_find_first(N - 1, exec.threads, [&](std::uint64_t i) -> std::optional<bool> {
      Vec v(C.m());
      std::uint64_t x = i + 1;
      for (auto& e : v) {
        e = F.element(x % F.size());
        x /= F.size();
      }
      const LinPoly t = LinPoly::trace_form(C.field_ptr(), v, F.one());
      if (H.contains(F, t.grid())) return true;
      return std::nullopt;
    });
  }
  return r;
}

/// All four nondegeneracy conditions; throws InternalInconsistency if they disagree.
inline bool is_nondegenerate(const RankCode& C, const Exec& exec = {}) {
  auto r = nondegeneracy_report(C, exec);
  if (!r.consistent()) throw Error(Errc::InternalInconsistency, "nondegeneracy conditions disagree");
  return r.nondegenerate();
}

/// Φ: the subspace U_G, with basis in (i, j) evaluation order.
inline FqSubspace associated_subspace(const RankCode& C) {
  auto vs = evaluation_vectors(C);
  FqSubspace U = FqSubspace::span(C.field_ptr(), C.k(), vs);
  if (U.dim() != C.m() * C.n()) throw Error(Errc::DegenerateCode, "code is degenerate");
  return U;
}

/// Ψ: the code whose evaluation on β_j e_i is the (i n + j)-th basis vector of U.
inline RankCode associated_code(const FqSubspace& U) {
  const auto& F = U.field();
  const std::size_t n = F.n(), k = U.k();
  if (U.dim() == 0 || U.dim() % n != 0) throw Error(Errc::WrongDimension, "dim_{F_q} U must be a positive multiple of n");
  const std::size_t m = U.dim() / n;
  {
    Matrix<Elem> rows(0, k);
    for (const auto& b : U.basis()) rows.append_row(b);
    if (rank_of(F, rows) != k) throw Error(Errc::NotFullSpan, "U does not span V(k, q^n)");
  }
  const auto& beta = F.fqn_basis_over_fq();
  Matrix<Elem> moore(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t t = 0; t < n; ++t) moore(j, t) = F.frob(beta[j], static_cast<long long>(t));
  const Matrix<Elem> minv = mat_inverse(F, moore);
  std::vector<LinPoly> basis;
  for (std::size_t r = 0; r < k; ++r) {
    LinPoly g(U.field_ptr(), m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t t = 0; t < n; ++t) {
        Elem s = F.zero();
        for (std::size_t j = 0; j < n; ++j) s = F.add(s, F.mul(minv(t, j), U.basis()[i * n + j][r]));
        g.set(i, static_cast<long long>(t), s);
      }
    basis.push_back(std::move(g));
  }
  return RankCode(U.field_ptr(), m, std::move(basis));
}

/// d_r = dim U_G - max dim(U_G ∩ H) over F_{q^n}-subspaces H of dimension k - r.
inline std::size_t generalized_rank_weight(const RankCode& C, std::size_t r, const Exec& exec = {}) {
  if (r < 1 || r > C.k()) throw Error(Errc::InvalidArgument, "weight index out of range");
  auto vs = evaluation_vectors(C);
  FqSubspace U = FqSubspace::span(C.field_ptr(), C.k(), vs);
  const std::size_t d = C.k() - r;
  if (d == 0) return U.dim();
  return U.dim() - scan_h_subspaces(U, d, exec).max_dim;
}

inline std::vector<std::size_t> generalized_rank_weights(const RankCode& C, const Exec& exec = {}) {
  std::vector<std::size_t> w;
  for (std::size_t r = 1; r <= C.k(); ++r) w.push_back(generalized_rank_weight(C, r, exec));
  return w;
}

/// Φ(dual(Ψ(U))).
inline FqSubspace delsarte_dual_subspace(const FqSubspace& U, const Exec& exec = {}) {
  std::optional<RankCode> C;
  try {
    C.emplace(associated_code(U));
  } catch (const Error& e) {
    throw Error(Errc::DegenerateCode, e.what());
  }
  if (min_distance(*C, exec) == 1) throw Error(Errc::MinDistanceOne, "associated code has minimum distance 1");
  return associated_subspace(dual(*C));
}

struct MinimalityReport {
  bool minimal = true;
  std::uint64_t supports = 0;  // number of distinct supports of nonzero codewords
  std::uint64_t codewords_examined = 0;
};

/// Supports are compared through kernels: supp f ⊊ supp g iff ker g ⊊ ker f.
/// One codeword per F_{q^n}-multiple class is examined (leading coefficient 1).
inline MinimalityReport minimality_report(const RankCode& C, const Exec& exec = {}) {
  const auto& F = C.field();
  const std::uint64_t Q = F.size(), p = F.p();
  const std::size_t cols = F.degree() * C.m();
  long double dom = 1;
  for (std::size_t i = 0; i < cols; ++i) dom *= static_cast<long double>(p);
  const std::uint64_t total = detail::codeword_count(C, exec, "codeword enumeration");
  if (dom * static_cast<long double>(total) / static_cast<long double>(Q) > static_cast<long double>(exec.budget) * 64)
    require_budget(UINT64_MAX, exec, "support enumeration");
  const std::uint64_t domain = static_cast<std::uint64_t>(dom);
  const std::size_t words = (domain + 63) / 64;
  const auto E = detail::basis_images(C);
  using Bits = std::vector<std::uint64_t>;

  // Powers of p for the lowest-nonzero-digit recurrence on domain indices.
  std::vector<std::uint64_t> ppow(cols + 1, 1);
  for (std::size_t c = 1; c <= cols; ++c) ppow[c] = ppow[c - 1] * p;

  auto kernel_bits = [&](std::span<const Elem> imgs) {
    Bits bits(words, 0);
    std::vector<Elem> val(domain);
    val[0] = F.zero();
    bits[0] |= 1;
    for (std::uint64_t x = 1; x < domain; ++x) {
      std::size_t c = 0;
      while ((x / ppow[c]) % p == 0) ++c;
      val[x] = F.add(val[x - ppow[c]], imgs[c]);
      if (F.is_zero(val[x])) bits[x / 64] |= std::uint64_t{1} << (x % 64);
    }
    return bits;
  };

  auto parts = parallel_reduce(
      total - 1, exec.threads, std::vector<Bits>{},
      [&](std::uint64_t b, std::uint64_t e) {
        std::vector<Bits> out;
        detail::for_each_codeword(C, E, b + 1, e + 1, [&](std::uint64_t, auto coeffs, auto imgs) {
          std::size_t l = 0;
          while (F.is_zero(coeffs[l])) ++l;
          if (coeffs[l] != F.one()) return;
          out.push_back(kernel_bits(imgs));
        });
        return out;
      },
      [](std::vector<Bits> a, std::vector<Bits> b) {
        a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
        return a;
      });
  MinimalityReport rep;
  rep.codewords_examined = parts.size();
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  rep.supports = parts.size();

  auto strict_subset = [&](const Bits& a, const Bits& b) {
    for (std::size_t w = 0; w < words; ++w)
      if (a[w] & ~b[w]) return false;
    return a != b;
  };
  auto hit = parallel_find_first(parts.size(), exec.threads, [&](std::uint64_t i) -> std::optional<std::uint64_t> {
    for (std::uint64_t j = 0; j < parts.size(); ++j)
      if (j != i && strict_subset(parts[i], parts[j])) return j;
    return std::nullopt;
  });
  rep.minimal = !hit.has_value();
  return rep;
}

inline bool is_minimal(const RankCode& C, const Exec& exec = {}) { return minimality_report(C, exec).minimal; }

}  // namespace scatseq
