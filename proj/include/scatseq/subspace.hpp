#pragma once

// F_q-subspaces of V(k, q^n) and their intersections with F_{q^n}-subspaces.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scatseq/error.hpp"
#include "scatseq/gf.hpp"
#include "scatseq/linalg.hpp"
#include "scatseq/linpoly.hpp"
#include "scatseq/parallel.hpp"

namespace scatseq {

using Vec = std::vector<Elem>;

/// Describes U = { (F'_1(x), ..., F'_k(x)) : x ∈ F_{q^n}^m } where coordinate
/// x_pos[i] of F' is X_i^{q^{x_exp[i]}}.
struct Generator {
  std::size_t m = 0;
  std::vector<std::size_t> x_pos;
  std::vector<long long> x_exp;
  std::vector<LinPoly> coords;
};

class FqSubspace {
 public:
  /// F_q-span of `vectors` in V(k, q^n).
  static FqSubspace span(FieldPtr ctx, std::size_t k, std::span<const Vec> vectors) {
    FqSubspace U(std::move(ctx), k);
    for (const auto& v : vectors) U.try_add(v);
    return U;
  }
  static FqSubspace zero(FieldPtr ctx, std::size_t k) { return FqSubspace(std::move(ctx), k); }
  /// V(k, q^n) itself, viewed over F_q.
  static FqSubspace full(FieldPtr ctx, std::size_t k) {
    std::vector<Vec> vs;
    for (std::size_t c = 0; c < k; ++c)
      for (Elem b : ctx->fqn_basis_over_fq()) {
        Vec v(k, ctx->zero());
        v[c] = b;
        vs.push_back(v);
      }
    return span(ctx, k, vs);
  }

  const FieldContext& field() const { return *ctx_; }
  const FieldPtr& field_ptr() const { return ctx_; }
  std::size_t k() const { return k_; }
  /// dim over F_q.
  std::size_t dim() const { return basis_.size(); }
  std::size_t fp_dim() const { return fp_basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<Vec>& fp_basis() const { return fp_basis_; }
  const std::optional<Generator>& generator() const { return gen_; }
  void set_generator(Generator g) { gen_ = std::move(g); }
  /// Number of elements q^dim (saturating).
  std::uint64_t cardinality() const {
    long double c = 1;
    for (std::size_t i = 0; i < dim(); ++i) c *= static_cast<long double>(ctx_->q());
    return c > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(c);
  }

  /// Membership. With a generator, x is read off the identity coordinates and
  /// the remaining coordinates are checked by evaluation.
  bool contains(std::span<const Elem> v) const {
    if (v.size() != k_) throw Error(Errc::DimensionMismatch, "membership: vector length != k");
    if (gen_) return contains_by_generator(v);
    return contains_by_elimination(v);
  }
  bool contains_by_elimination(std::span<const Elem> v) const {
    if (v.size() != k_) throw Error(Errc::DimensionMismatch, "membership: vector length != k");
    return in_row_space(ctx_->prime_field(), rref_, piv_, fp_coords(*ctx_, v));
  }
  bool contains_by_generator(std::span<const Elem> v) const {
    const auto& g = *gen_;
    std::vector<Elem> x(g.m);
    for (std::size_t i = 0; i < g.m; ++i) x[i] = ctx_->frob(v[g.x_pos[i]], -g.x_exp[i]);
    for (std::size_t c = 0; c < k_; ++c)
      if (evaluate(g.coords[c], x) != v[c]) return false;
    return true;
  }

  /// The element sum_i c_i b_i where b_i runs over the F_q-basis and c_i is the
  /// `digit_i(idx)`-th element of F_q (base-q digits of idx, least significant first).
  Vec element(std::uint64_t idx) const {
    const auto& fq = ctx_->fq_elements();
    const std::uint64_t q = ctx_->q();
    Vec v(k_, ctx_->zero());
    for (std::size_t i = 0; i < basis_.size() && idx; ++i) {
      Elem c = fq[idx % q];
      idx /= q;
      if (ctx_->is_zero(c)) continue;
      for (std::size_t j = 0; j < k_; ++j) v[j] = ctx_->add(v[j], ctx_->mul(c, basis_[i][j]));
    }
    return v;
  }

  /// F_q-equality as sets.
  bool same_set(const FqSubspace& o) const {
    if (o.k_ != k_ || o.dim() != dim()) return false;
    for (const auto& b : o.basis_)
      if (!contains_by_elimination(b)) return false;
    return true;
  }

 private:
  FqSubspace(FieldPtr ctx, std::size_t k) : ctx_(std::move(ctx)), k_(k), rref_(0, k * ctx_->degree()) {}

  bool try_add(const Vec& v) {
    if (v.size() != k_) throw Error(Errc::DimensionMismatch, "span: vector length != k");
    if (contains_by_elimination(v)) return false;
    basis_.push_back(v);
    for (Elem w : ctx_->fq_basis_over_fp()) {
      Vec wv(k_);
      for (std::size_t j = 0; j < k_; ++j) wv[j] = ctx_->mul(w, v[j]);
      fp_basis_.push_back(wv);
      auto coords = fp_coords(*ctx_, wv);
      rref_.append_row(coords);
    }
    piv_ = rref_inplace(ctx_->prime_field(), rref_);
    return true;
  }

  FieldPtr ctx_;
  std::size_t k_;
  std::vector<Vec> basis_, fp_basis_;
  Matrix<std::uint32_t> rref_;
  std::vector<std::size_t> piv_;
  std::optional<Generator> gen_;
};

/// U_{I,F}: the F_q-space of (x_1^{q^{i_1}}, ..., x_m^{q^{i_m}}, f_1(x), ..., f_s(x)).
inline FqSubspace from_poly_tuple(FieldPtr ctx, std::span<const long long> I, std::span<const LinPoly> F) {
  const std::size_t m = I.size(), s = F.size(), k = m + s;
  for (const auto& f : F)
    if (f.m() != m || !f.field().same_field(*ctx)) throw Error(Errc::ArityMismatch, "polynomial arity != |I|");
  Generator g;
  g.m = m;
  for (std::size_t i = 0; i < m; ++i) {
    g.x_pos.push_back(i);
    g.x_exp.push_back(I[i]);
    g.coords.push_back(LinPoly::monomial(ctx, m, i, I[i]));
  }
  for (const auto& f : F) g.coords.push_back(f);
  std::vector<Vec> gens;
  std::vector<Elem> x(m, ctx->zero());
  for (std::size_t i = 0; i < m; ++i)
    for (Elem b : ctx->fqn_basis_over_fq()) {
      x[i] = b;
      Vec v(k);
      for (std::size_t c = 0; c < k; ++c) v[c] = evaluate(g.coords[c], x);
      gens.push_back(std::move(v));
      x[i] = ctx->zero();
    }
  FqSubspace U = FqSubspace::span(ctx, k, gens);
  U.set_generator(std::move(g));
  return U;
}

/// An F_{q^n}-subspace of V(k, q^n) in canonical reduced row echelon form.
struct FqnSubspace {
  std::size_t k = 0;
  Matrix<Elem> rref;
  std::vector<std::size_t> pivots;

  std::size_t dim() const { return rref.rows; }

  static FqnSubspace from_rows(const FieldContext& F, Matrix<Elem> rows) {
    FqnSubspace H;
    H.k = rows.cols;
    H.pivots = rref_inplace(F, rows);
    H.rref = std::move(rows);
    return H;
  }
  static FqnSubspace zero(std::size_t k) {
    FqnSubspace H;
    H.k = k;
    H.rref = Matrix<Elem>(0, k);
    return H;
  }

  /// Rows spanning the annihilator: phi with sum_c phi_c h_c = 0 for all h ∈ H.
  Matrix<Elem> annihilator(const FieldContext& F) const {
    std::vector<char> is_piv(k, 0);
    for (auto c : pivots) is_piv[c] = 1;
    Matrix<Elem> out(0, k);
    for (std::size_t free = 0; free < k; ++free) {
      if (is_piv[free]) continue;
      std::vector<Elem> v(k, F.zero());
      v[free] = F.one();
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(rref(r, free));
      out.append_row(v);
    }
    return out;
  }
  bool contains(const FieldContext& F, std::span<const Elem> v) const {
    return in_row_space(F, rref, pivots, std::vector<Elem>(v.begin(), v.end()));
  }
  bool operator==(const FqnSubspace& o) const { return k == o.k && rref == o.rref; }
};

/// Gaussian binomial [k choose d]_Q, saturating at UINT64_MAX.
inline std::uint64_t gaussian_binomial(std::size_t k, std::size_t d, std::uint64_t Q) {
  if (d > k) return 0;
  long double num = 1, den = 1;
  unsigned __int128 exact_num = 1, exact_den = 1;
  bool exact = true;
  for (std::size_t i = 0; i < d; ++i) {
    long double a = std::pow(static_cast<long double>(Q), static_cast<long double>(k - i)) - 1;
    long double b = std::pow(static_cast<long double>(Q), static_cast<long double>(i + 1)) - 1;
    num *= a;
    den *= b;
    if (exact) {
      unsigned __int128 qa = 1, qb = 1;
      for (std::size_t t = 0; t < k - i && exact; ++t) {
        qa *= Q;
        if (qa > (static_cast<unsigned __int128>(1) << 100)) exact = false;
      }
      for (std::size_t t = 0; t < i + 1; ++t) qb *= Q;
      if (exact) {
        unsigned __int128 fa = qa - 1, fb = qb - 1;
        // Keep the running quotient integral: [k choose i+1] = [k choose i] * (Q^{k-i}-1)/(Q^{i+1}-1).
        unsigned __int128 cur = exact_num / exact_den;
        if (cur != 0 && fa > (~static_cast<unsigned __int128>(0)) / cur) {
          exact = false;
        } else {
          exact_num = cur * fa;
          exact_den = fb;
        }
      }
    }
  }
  if (exact) {
    unsigned __int128 r = exact_num / exact_den;
    if (r <= UINT64_MAX) return static_cast<std::uint64_t>(r);
  }
  long double r = num / den;
  return r >= 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(r + 0.5L);
}

/// Random-access enumeration of the d-dimensional F_{q^n}-subspaces of V(k, q^n)
/// by canonical RREF: pivot profiles in lexicographic order, then free entries
/// as base-Q digits.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(FieldPtr ctx, std::size_t k, std::size_t d) : ctx_(std::move(ctx)), k_(k), d_(d) {
    if (d > k) throw Error(Errc::DimensionMismatch, "subspace dimension exceeds ambient");
    std::vector<std::size_t> piv(d);
    for (std::size_t i = 0; i < d; ++i) piv[i] = i;
    std::uint64_t acc = 0;
    const long double Q = static_cast<long double>(ctx_->size());
    while (true) {
      Profile pr;
      pr.pivots = piv;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = piv[r] + 1; c < k; ++c)
          if (!std::binary_search(piv.begin(), piv.end(), c)) pr.free.emplace_back(r, c);
      long double cnt = std::pow(Q, static_cast<long double>(pr.free.size()));
      pr.count = cnt > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(cnt);
      pr.offset = acc;
      acc = (acc > UINT64_MAX - pr.count) ? UINT64_MAX : acc + pr.count;
      profiles_.push_back(std::move(pr));
      // next combination
      if (d == 0) break;
      std::size_t i = d;
      while (i > 0 && piv[i - 1] == k - d + (i - 1)) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
    total_ = acc;
  }

  std::uint64_t size() const { return total_; }
  std::size_t k() const { return k_; }
  std::size_t d() const { return d_; }

  FqnSubspace at(std::uint64_t idx) const {
    auto it = std::upper_bound(profiles_.begin(), profiles_.end(), idx,
                               [](std::uint64_t v, const Profile& p) { return v < p.offset; });
    const Profile& pr = *(it - 1);
    std::uint64_t local = idx - pr.offset;
    FqnSubspace H;
    H.k = k_;
    H.pivots = pr.pivots;
    H.rref = Matrix<Elem>(d_, k_, ctx_->zero());
    for (std::size_t r = 0; r < d_; ++r) H.rref(r, pr.pivots[r]) = ctx_->one();
    const std::uint64_t Q = ctx_->size();
    for (auto [r, c] : pr.free) {
      H.rref(r, c) = ctx_->element(local % Q);
      local /= Q;
    }
    return H;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t i = 0; i < total_; ++i) fn(at(i));
  }

 private:
  struct Profile {
    std::vector<std::size_t> pivots;
    std::vector<std::pair<std::size_t, std::size_t>> free;
    std::uint64_t count = 0, offset = 0;
  };
  FieldPtr ctx_;
  std::size_t k_, d_;
  std::vector<Profile> profiles_;
  std::uint64_t total_ = 0;
};

namespace detail {

/// F_p matrix whose kernel parametrizes U ∩ H: row block l holds the
/// coordinates of phi_l(u_c) for each F_p-basis vector u_c of U.
inline Matrix<std::uint32_t> cut_system(const FqSubspace& U, const Matrix<Elem>& ann) {
  const auto& F = U.field();
  const unsigned D = F.degree();
  const std::size_t cols = U.fp_dim();
  Matrix<std::uint32_t> M(ann.rows * D, cols, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    const auto& u = U.fp_basis()[c];
    for (std::size_t l = 0; l < ann.rows; ++l) {
      Elem s = F.zero();
      for (std::size_t j = 0; j < U.k(); ++j) s = F.add(s, F.mul(ann(l, j), u[j]));
      for (unsigned t = 0; t < D; ++t) M(l * D + t, c) = F.digit(s, t);
    }
  }
  return M;
}

}  // namespace detail

/// dim_{F_q}(U ∩ H), as the F_q-nullity of the functionals cutting out H restricted to U.
inline std::size_t intersection_dim(const FqSubspace& U, const FqnSubspace& H) {
  if (U.k() != H.k) throw Error(Errc::DimensionMismatch, "intersection: ambient dimensions differ");
  const auto& F = U.field();
  auto ann = H.annihilator(F);
  if (ann.rows == 0) return U.dim();
  if (F.p() == 2 && ann.rows * F.degree() <= 64) {
    // Each F_2-basis vector of U maps to the concatenated bit patterns of its
    // functional values; the rank of those words is the rank of the cut.
    std::uint64_t basis[64] = {};
    std::size_t rk = 0;
    for (const auto& u : U.fp_basis()) {
      std::uint64_t w = 0;
      for (std::size_t l = 0; l < ann.rows; ++l) {
        Elem s = F.zero();
        for (std::size_t j = 0; j < U.k(); ++j) s = F.add(s, F.mul(ann(l, j), u[j]));
        w |= std::uint64_t{s.v} << (l * F.degree());
      }
      for (int b = 63; b >= 0 && w; --b) {
        if (!((w >> b) & 1)) continue;
        if (!basis[b]) {
          basis[b] = w;
          ++rk;
          break;
        }
        w ^= basis[b];
      }
    }
    return (U.fp_dim() - rk) / F.h();
  }
  const std::size_t rk = rank_of(F.prime_field(), detail::cut_system(U, ann));
  return (U.fp_dim() - rk) / F.h();
}

/// An F_p-basis of U ∩ H as explicit vectors.
inline std::vector<Vec> intersection_basis(const FqSubspace& U, const FqnSubspace& H) {
  const auto& F = U.field();
  auto ann = H.annihilator(F);
  std::vector<Vec> out;
  if (ann.rows == 0) return U.fp_basis();
  auto kernel = nullspace(F.prime_field(), detail::cut_system(U, ann));
  for (std::size_t r = 0; r < kernel.rows; ++r) {
    Vec v(U.k(), F.zero());
    for (std::size_t c = 0; c < kernel.cols; ++c) {
      std::uint32_t a = kernel(r, c);
      if (!a) continue;
      for (std::size_t j = 0; j < U.k(); ++j) v[j] = F.add(v[j], F.mul(F.constant(a), U.fp_basis()[c][j]));
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Counting oracle: log_q |U ∩ H| by enumerating the elements of U.
inline std::size_t intersection_dim_by_enumeration(const FqSubspace& U, const FqnSubspace& H) {
  const auto& F = U.field();
  std::uint64_t count = 0;
  const std::uint64_t total = U.cardinality();
  for (std::uint64_t i = 0; i < total; ++i)
    if (H.contains(F, U.element(i))) ++count;
  std::size_t d = 0;
  while (count > 1) {
    count /= F.q();
    ++d;
  }
  return d;
}

struct IntersectionScan {
  std::size_t max_dim = 0;
  std::optional<FqnSubspace> witness;  // first subspace (in enumeration order) attaining max_dim
  std::uint64_t examined = 0;
};

/// max dim_{F_q}(U ∩ H) over all d-dimensional F_{q^n}-subspaces H.
inline IntersectionScan max_intersection(const FqSubspace& U, std::size_t d, const Exec& exec = {}) {
  SubspaceEnumerator en(U.field_ptr(), U.k(), d);
  require_budget(en.size(), exec, "subspace enumeration");
  struct Part {
    std::size_t best = 0;
    std::uint64_t idx = UINT64_MAX;
  };
  Part res = parallel_reduce(
      en.size(), exec.threads, Part{},
      [&](std::uint64_t b, std::uint64_t e) {
        Part p;
        for (std::uint64_t i = b; i < e; ++i) {
          std::size_t v = intersection_dim(U, en.at(i));
          if (p.idx == UINT64_MAX || v > p.best) {
            p.best = v;
            p.idx = i;
          }
        }
        return p;
      },
      [](Part a, Part b) {
        if (a.idx == UINT64_MAX) return b;
        if (b.idx != UINT64_MAX && b.best > a.best) return b;
        return a;
      });
  IntersectionScan out;
  out.examined = en.size();
  if (res.idx != UINT64_MAX) {
    out.max_dim = res.best;
    out.witness = en.at(res.idx);
  }
  return out;
}

/// Canonical RREF of the F_{q^n}-line through v ≠ 0.
inline FqnSubspace line_through(const FieldContext& F, std::span<const Elem> v) {
  Matrix<Elem> m(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
  return FqnSubspace::from_rows(F, std::move(m));
}

/// max over F_{q^n}-lines of dim(U ∩ line), scanning only lines through points of U.
/// Lines missing U contribute 0, so the maximum over all lines is the same when U ≠ 0.
inline IntersectionScan max_line_intersection_via_points(const FqSubspace& U, const Exec& exec = {}) {
  const std::uint64_t total = U.cardinality();
  require_budget(total, exec, "point scan");
  struct Part {
    std::size_t best = 0;
    std::uint64_t idx = UINT64_MAX;
  };
  Part res = parallel_reduce(
      total > 0 ? total - 1 : 0, exec.threads, Part{},
      [&](std::uint64_t b, std::uint64_t e) {
        Part p;
        for (std::uint64_t i = b + 1; i < e + 1; ++i) {
          std::size_t v = intersection_dim(U, line_through(U.field(), U.element(i)));
          if (p.idx == UINT64_MAX || v > p.best) {
            p.best = v;
            p.idx = i;
          }
        }
        return p;
      },
      [](Part a, Part b) {
        if (a.idx == UINT64_MAX) return b;
        if (b.idx != UINT64_MAX && b.best > a.best) return b;
        return a;
      });
  IntersectionScan out;
  out.examined = total;
  if (res.idx != UINT64_MAX) {
    out.max_dim = res.best;
    out.witness = line_through(U.field(), U.element(res.idx));
  }
  return out;
}

/// Maximum intersection with h-dimensional subspaces, choosing the cheaper
/// exact route for h = 1.
inline IntersectionScan scan_h_subspaces(const FqSubspace& U, std::size_t h, const Exec& exec = {}) {
  if (h == 1 && U.dim() > 0) {
    const std::uint64_t lines = gaussian_binomial(U.k(), 1, U.field().size());
    if (U.cardinality() < lines) return max_line_intersection_via_points(U, exec);
  }
  return max_intersection(U, h, exec);
}

inline bool is_evasive(const FqSubspace& U, std::size_t h, std::size_t r, const Exec& exec = {}) {
  if (h >= U.k() || h > r) throw Error(Errc::InvalidArgument, "evasive: need h < k and h <= r");
  return scan_h_subspaces(U, h, exec).max_dim <= r;
}

inline bool is_h_scattered(const FqSubspace& U, std::size_t h, const Exec& exec = {}) {
  if (h < 1 || h >= U.k()) throw Error(Errc::InvalidArgument, "h-scattered: need 1 <= h < k");
  return scan_h_subspaces(U, h, exec).max_dim <= h;
}

/// λ-scan oracle for 1-scatteredness: some u ∈ U \ {0} and λ ∉ F_q with λu ∈ U.
struct LambdaWitness {
  Vec u;
  Elem lambda;
};

inline std::optional<LambdaWitness> lambda_scan(const FqSubspace& U, const Exec& exec = {}) {
  const auto& F = U.field();
  const std::uint64_t total = U.cardinality();
  require_budget(total * F.size(), exec, "lambda scan");
  std::vector<Elem> lambdas;
  for (std::uint64_t x = 0; x < F.size(); ++x)
    if (!F.in_subfield(F.element(x), 1)) lambdas.push_back(F.element(x));
  auto hit = parallel_find_first(total > 0 ? total - 1 : 0, exec.threads,
                                 [&](std::uint64_t i) -> std::optional<LambdaWitness> {
                                   Vec u = U.element(i + 1);
                                   Vec w(u.size());
                                   for (Elem l : lambdas) {
                                     for (std::size_t j = 0; j < u.size(); ++j) w[j] = F.mul(l, u[j]);
                                     if (U.contains(w)) return LambdaWitness{u, l};
                                   }
                                   return std::nullopt;
                                 });
  if (!hit) return std::nullopt;
  return hit->second;
}

struct CuttingReport {
  bool cutting = true;
  std::optional<FqnSubspace> failing_hyperplane;
  std::uint64_t examined = 0;
};

/// Checks ⟨U ∩ H⟩_{F_{q^n}} = H for every hyperplane H.
inline CuttingReport cutting_report(const FqSubspace& U, const Exec& exec = {}) {
  const auto& F = U.field();
  if (U.k() < 1) return {};
  SubspaceEnumerator en(U.field_ptr(), U.k(), U.k() - 1);
  require_budget(en.size(), exec, "hyperplane enumeration");
  auto hit = parallel_find_first(en.size(), exec.threads, [&](std::uint64_t i) -> std::optional<FqnSubspace> {
    FqnSubspace H = en.at(i);
    auto vs = intersection_basis(U, H);
    Matrix<Elem> m(0, U.k());
    for (const auto& v : vs) m.append_row(v);
    if (m.rows == 0 || rank_of(F, m) != U.k() - 1) return H;
    return std::nullopt;
  });
  CuttingReport rep;
  rep.examined = en.size();
  if (hit) {
    rep.cutting = false;
    rep.failing_hyperplane = hit->second;
  }
  return rep;
}

inline bool is_cutting(const FqSubspace& U, const Exec& exec = {}) { return cutting_report(U, exec).cutting; }

/// U1 ⊕ U2 in V(k1 + k2, q^n), coordinates of U1 first.
inline FqSubspace direct_sum(const FqSubspace& U1, const FqSubspace& U2) {
  if (!U1.field().same_field(U2.field())) throw Error(Errc::InvalidArgument, "direct sum over different fields");
  const std::size_t k1 = U1.k(), k2 = U2.k();
  std::vector<Vec> vs;
  for (const auto& b : U1.basis()) {
    Vec v(k1 + k2, U1.field().zero());
    std::copy(b.begin(), b.end(), v.begin());
    vs.push_back(std::move(v));
  }
  for (const auto& b : U2.basis()) {
    Vec v(k1 + k2, U1.field().zero());
    std::copy(b.begin(), b.end(), v.begin() + static_cast<std::ptrdiff_t>(k1));
    vs.push_back(std::move(v));
  }
  FqSubspace S = FqSubspace::span(U1.field_ptr(), k1 + k2, vs);
  if (U1.generator() && U2.generator()) {
    const auto& g1 = *U1.generator();
    const auto& g2 = *U2.generator();
    Generator g;
    g.m = g1.m + g2.m;
    for (std::size_t i = 0; i < g1.m; ++i) {
      g.x_pos.push_back(g1.x_pos[i]);
      g.x_exp.push_back(g1.x_exp[i]);
    }
    for (std::size_t i = 0; i < g2.m; ++i) {
      g.x_pos.push_back(g2.x_pos[i] + k1);
      g.x_exp.push_back(g2.x_exp[i]);
    }
    for (const auto& f : g1.coords) g.coords.push_back(widen(f, g.m, 0));
    for (const auto& f : g2.coords) g.coords.push_back(widen(f, g.m, g1.m));
    S.set_generator(std::move(g));
  }
  return S;
}

enum class Decomposability { Indecomposable, Inconclusive };

struct IndecomposabilityReport {
  Decomposability verdict = Decomposability::Inconclusive;
  struct Window {
    std::size_t r;
    std::size_t bound;     // rn/(h+1) - 1
    std::size_t max_dim;   // max dim(U ∩ H), dim H = r
    bool evasive;
  };
  std::vector<Window> windows;
};

/// Sufficient criterion for indecomposability of a maximum h-scattered U:
/// U is (r, rn/(h+1) - 1)-evasive for every r in [h+1, floor(k/2)] with (h+1) | rn.
inline IndecomposabilityReport indecomposability_criterion(const FqSubspace& U, std::size_t h, const Exec& exec = {}) {
  const std::size_t n = U.field().n(), k = U.k();
  if (U.dim() * (h + 1) != k * n || !is_h_scattered(U, h, exec))
    throw Error(Errc::NotMaximumScattered, "criterion applies to maximum h-scattered subspaces only");
  IndecomposabilityReport rep;
  bool all = true;
  for (std::size_t r = h + 1; r <= k / 2; ++r) {
    if ((r * n) % (h + 1) != 0) continue;
    const std::size_t bound = r * n / (h + 1) - 1;
    auto scan = max_intersection(U, r, exec);
    const bool ev = scan.max_dim <= bound;
    rep.windows.push_back({r, bound, scan.max_dim, ev});
    all = all && ev;
  }
  rep.verdict = all ? Decomposability::Indecomposable : Decomposability::Inconclusive;
  return rep;
}

/// Orthogonal complement in V(4, q^n) w.r.t. Tr(σ(u, w)), σ = X0Y3 + X3Y0 - X1Y2 - X2Y1.
inline FqSubspace ordinary_dual(const FqSubspace& U) {
  if (U.k() != 4) throw Error(Errc::WrongAmbient, "ordinary dual is defined on V(4, q^n)");
  const auto& F = U.field();
  const unsigned D = F.degree();
  Matrix<std::uint32_t> sys(0, 4 * D);
  std::vector<std::uint32_t> row(4 * D);
  for (const auto& u : U.fp_basis()) {
    const Elem s[4] = {u[3], F.neg(u[2]), F.neg(u[1]), u[0]};
    for (std::size_t c = 0; c < 4; ++c)
      for (unsigned t = 0; t < D; ++t) {
        std::uint32_t idx = 1;
        for (unsigned z = 0; z < t; ++z) idx *= F.p();
        row[c * D + t] = F.abs_trace(F.mul(s[c], Elem{idx}));
      }
    sys.append_row(row);
  }
  auto ker = nullspace(F.prime_field(), sys);
  std::vector<Vec> vs;
  for (std::size_t r = 0; r < ker.rows; ++r) {
    Vec v(4);
    for (std::size_t c = 0; c < 4; ++c) v[c] = F.from_digits(std::span<const std::uint32_t>(&ker(r, c * D), D));
    vs.push_back(std::move(v));
  }
  return FqSubspace::span(U.field_ptr(), 4, vs);
}

/// R^τ for the F_{q^n}-bilinear form σ on V(4, q^n).
inline FqnSubspace sigma_complement(const FieldContext& F, const FqnSubspace& R) {
  if (R.k != 4) throw Error(Errc::WrongAmbient, "σ is defined on V(4, q^n)");
  Matrix<Elem> rows(0, 4);
  for (std::size_t r = 0; r < R.dim(); ++r) {
    const std::vector<Elem> j{R.rref(r, 3), F.neg(R.rref(r, 2)), F.neg(R.rref(r, 1)), R.rref(r, 0)};
    rows.append_row(j);
  }
  if (rows.rows == 0) {
    Matrix<Elem> id(4, 4, F.zero());
    for (std::size_t i = 0; i < 4; ++i) id(i, i) = F.one();
    return FqnSubspace::from_rows(F, id);
  }
  auto ker = nullspace(F, rows);
  if (ker.rows == 0) return FqnSubspace::zero(4);
  return FqnSubspace::from_rows(F, ker);
}

struct WeightIdentity {
  long long lhs = 0, rhs = 0;
  bool holds() const { return lhs == rhs; }
};

/// dim(U^{τ'} ∩ R^τ) - dim(U ∩ R) against rn - t - sn, r = 4.
inline WeightIdentity duality_weight_identity(const FqSubspace& U, const FqnSubspace& R) {
  if (U.k() != 4 || R.k != 4) throw Error(Errc::WrongAmbient, "identity is checked on V(4, q^n)");
  const auto& F = U.field();
  const long long n = F.n();
  FqSubspace Ud = ordinary_dual(U);
  FqnSubspace Rt = sigma_complement(F, R);
  WeightIdentity w;
  w.lhs = static_cast<long long>(intersection_dim(Ud, Rt)) - static_cast<long long>(intersection_dim(U, R));
  w.rhs = 4 * n - static_cast<long long>(U.dim()) - static_cast<long long>(R.dim()) * n;
  return w;
}

inline bool duality_weight_identity_check(const FqSubspace& U, const FqnSubspace& R) {
  return duality_weight_identity(U, R).holds();
}

}  // namespace scatseq
