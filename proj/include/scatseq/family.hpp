#pragma once

// The subspaces U^{I,J,n}_{α,β,γ} = {(x, y, x^{q^I} + αy^{q^J}, x^{q^J} + βy^{q^I} + γy^{q^J})}
// of V(4, q^n), their projective polynomial, duals and equivalence tests.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scatseq/error.hpp"
#include "scatseq/gf.hpp"
#include "scatseq/linalg.hpp"
#include "scatseq/linpoly.hpp"
#include "scatseq/parallel.hpp"
#include "scatseq/rankcode.hpp"
#include "scatseq/subspace.hpp"

namespace scatseq {

struct FamilyParams {
  FieldPtr ctx;
  long long I = 1, J = 2;
  Elem alpha{1}, beta{1}, gamma{1};

  long long K() const { return std::llabs(J - I); }
  bool i_less_j() const { return I < J; }

  void validate() const {
    const long long n = ctx->n();
    if (I == J) throw Error(Errc::InvalidArgument, "I and J must differ");
    if (I < 1 || J < 1 || I > n - 1 || J > n - 1) throw Error(Errc::InvalidArgument, "I, J must lie in [1, n-1]");
    if (ctx->is_zero(alpha) || ctx->is_zero(beta) || ctx->is_zero(gamma))
      throw Error(Errc::InvalidArgument, "alpha, beta, gamma must be nonzero");
  }
};

/// Coefficients of P = X^{q^K+1} + a X^{q^K} + b X + c0 in the two shapes.
struct ProjectivePoly {
  long long K = 1;
  Elem a, b, c0;  // a is the X^{q^K} coefficient, b the X coefficient

  Elem eval(const FieldContext& F, Elem x) const {
    const Elem xs = F.frob(x, K);
    Elem v = F.mul(xs, x);
    v = F.add(v, F.mul(a, xs));
    v = F.add(v, F.mul(b, x));
    return F.add(v, c0);
  }
};

/// X^{q^K+1} + γX − αβ for I < J, X^{q^K+1} + γX^{q^K} − αβ for I > J.
inline ProjectivePoly p_polynomial(const FamilyParams& P) {
  P.validate();
  const auto& F = *P.ctx;
  ProjectivePoly out;
  out.K = P.K();
  out.c0 = F.neg(F.mul(P.alpha, P.beta));
  if (P.i_less_j()) {
    out.a = F.zero();
    out.b = P.gamma;
  } else {
    out.a = P.gamma;
    out.b = F.zero();
  }
  return out;
}

inline bool p_has_root(const FamilyParams& P, const Exec& exec = {}) {
  const auto poly = p_polynomial(P);
  const auto& F = *P.ctx;
  require_budget(F.size(), exec, "root scan");
  for (std::uint64_t x = 0; x < F.size(); ++x)
    if (F.is_zero(poly.eval(F, F.element(x)))) return true;
  return false;
}

namespace detail {

using Mat2 = std::array<Elem, 4>;  // row-major

inline Mat2 mat2_mul(const FieldContext& F, const Mat2& A, const Mat2& B) {
  return {F.add(F.mul(A[0], B[0]), F.mul(A[1], B[2])), F.add(F.mul(A[0], B[1]), F.mul(A[1], B[3])),
          F.add(F.mul(A[2], B[0]), F.mul(A[3], B[2])), F.add(F.mul(A[2], B[1]), F.mul(A[3], B[3]))};
}

/// True iff X^{q^K+1} + gamma X − c has no root in F_{q^n}, decided by
/// eigenvalues in F_q of C C^σ ... C^{σ^{n-1}}, C = [[0, c], [1, −gamma]], σ = q^K.
inline bool companion_root_free(const FieldContext& F, long long K, Elem c, Elem gamma) {
  const Mat2 C{F.zero(), c, F.one(), F.neg(gamma)};
  Mat2 A{F.one(), F.zero(), F.zero(), F.one()};
  for (unsigned i = 0; i < F.n(); ++i) {
    const long long e = K * static_cast<long long>(i);
    Mat2 Ci{F.frob(C[0], e), F.frob(C[1], e), F.frob(C[2], e), F.frob(C[3], e)};
    A = mat2_mul(F, A, Ci);
  }
  for (Elem t : F.fq_elements()) {
    const Elem det = F.sub(F.mul(F.sub(A[0], t), F.sub(A[3], t)), F.mul(A[1], A[2]));
    if (F.is_zero(det)) return false;
  }
  return true;
}

}  // namespace detail

/// Root-freeness of P through the companion matrix. For I > J the reciprocal
/// X -> 1/X turns P into X^{q^K+1} − (γ/c)X − 1/c with c = αβ.
inline bool companion_criterion(const FamilyParams& P) {
  P.validate();
  const auto& F = *P.ctx;
  const long long K = P.K();
  if (std::gcd(K, static_cast<long long>(F.n())) != 1)
    throw Error(Errc::NonCoprimeShift, "companion criterion needs gcd(K, n) = 1");
  const Elem c = F.mul(P.alpha, P.beta);
  if (P.i_less_j()) return detail::companion_root_free(F, K, c, P.gamma);
  const Elem ci = F.inv(c);
  return detail::companion_root_free(F, K, ci, F.neg(F.mul(P.gamma, ci)));
}

inline std::array<LinPoly, 2> family_polys(const FamilyParams& P) {
  const auto& ctx = P.ctx;
  LinPoly f1(ctx, 2), f2(ctx, 2);
  f1.set(0, P.I, ctx->one());
  f1.set(1, P.J, P.alpha);
  f2.set(0, P.J, ctx->one());
  f2.set(1, P.I, P.beta);
  f2.set(1, P.J, P.gamma);
  return {f1, f2};
}

inline FqSubspace build_subspace(const FamilyParams& P) {
  P.validate();
  const std::vector<long long> I{0, 0};
  const auto fs = family_polys(P);
  return from_poly_tuple(P.ctx, I, fs);
}

/// The code whose associated subspace is U^{I,J,n}_{α,β,γ}: basis X, Y, f_1, f_2.
inline RankCode family_code(const FamilyParams& P) {
  P.validate();
  auto fs = family_polys(P);
  std::vector<LinPoly> b{LinPoly::monomial(P.ctx, 2, 0), LinPoly::monomial(P.ctx, 2, 1), fs[0], fs[1]};
  return RankCode(P.ctx, 2, std::move(b));
}

struct ScatteredReport {
  bool gcd_ok = false;
  bool p_root_free = false;
  bool scattered = false;
  bool converse_applies = false;  // max{I, J} <= n/4
  bool contradiction = false;     // a verified counterexample to the forward or converse statement
  std::size_t max_line_intersection = 0;
  std::optional<FqnSubspace> witness_line;
};

inline ScatteredReport verify_scattered(const FamilyParams& P, const Exec& exec = {}) {
  P.validate();
  const long long n = P.ctx->n();
  ScatteredReport r;
  r.gcd_ok = std::gcd(std::gcd(P.I, P.J), n) == 1;
  r.p_root_free = !p_has_root(P, exec);
  const FqSubspace U = build_subspace(P);
  auto scan = scan_h_subspaces(U, 1, exec);
  r.max_line_intersection = scan.max_dim;
  r.scattered = scan.max_dim <= 1;
  if (!r.scattered) r.witness_line = scan.witness;
  r.converse_applies = 4 * std::max(P.I, P.J) <= n;
  if (r.gcd_ok && r.p_root_free && !r.scattered) r.contradiction = true;
  if (r.converse_applies && r.scattered && !r.p_root_free) r.contradiction = true;
  return r;
}

struct EvasiveReport {
  std::size_t max_plane_intersection = 0;
  std::size_t bound = 0;  // 2 max{I, J}
  bool within_bound = false;
  bool applies = false;   // P root-free
  bool contradiction = false;
  std::optional<FqnSubspace> witness_plane;
};

inline EvasiveReport verify_evasive(const FamilyParams& P, const Exec& exec = {}) {
  P.validate();
  EvasiveReport r;
  r.applies = !p_has_root(P, exec);
  const FqSubspace U = build_subspace(P);
  auto scan = max_intersection(U, 2, exec);
  r.max_plane_intersection = scan.max_dim;
  r.witness_plane = scan.witness;
  r.bound = static_cast<std::size_t>(2 * std::max(P.I, P.J));
  r.within_bound = r.max_plane_intersection <= r.bound;
  r.contradiction = r.applies && !r.within_bound;
  return r;
}

/// λ-scan witness: (x, y) ≠ 0 and λ ∉ F_q with f_i(λx, λy) = λ f_i(x, y) for both f_i.
struct ScatterWitness {
  Elem x, y, lambda;
};

inline std::optional<ScatterWitness> lambda_witness(const FamilyParams& P, const Exec& exec = {}) {
  P.validate();
  const auto& F = *P.ctx;
  const auto fs = family_polys(P);
  const std::uint64_t Q = F.size();
  require_budget(Q * Q, exec, "lambda scan");
  std::vector<Elem> lambdas;
  for (std::uint64_t l = 0; l < Q; ++l)
    if (!F.in_subfield(F.element(l), 1)) lambdas.push_back(F.element(l));
  auto hit = parallel_find_first(Q * Q - 1, exec.threads, [&](std::uint64_t i) -> std::optional<ScatterWitness> {
    const Elem x = F.element((i + 1) / Q), y = F.element((i + 1) % Q);
    const std::array<Elem, 2> xy{x, y};
    const Elem v1 = evaluate(fs[0], xy), v2 = evaluate(fs[1], xy);
    for (Elem l : lambdas) {
      const std::array<Elem, 2> lxy{F.mul(l, x), F.mul(l, y)};
      if (evaluate(fs[0], lxy) == F.mul(l, v1) && evaluate(fs[1], lxy) == F.mul(l, v2)) return ScatterWitness{x, y, l};
    }
    return std::nullopt;
  });
  if (!hit) return std::nullopt;
  return hit->second;
}

/// Re-checks a witness by direct substitution.
inline bool check_lambda_witness(const FamilyParams& P, const ScatterWitness& w) {
  const auto& F = *P.ctx;
  if ((F.is_zero(w.x) && F.is_zero(w.y)) || F.in_subfield(w.lambda, 1)) return false;
  const FqSubspace U = build_subspace(P);
  const auto fs = family_polys(P);
  const std::array<Elem, 2> xy{w.x, w.y};
  const Vec u{w.x, w.y, evaluate(fs[0], xy), evaluate(fs[1], xy)};
  Vec lu(4);
  for (std::size_t j = 0; j < 4; ++j) lu[j] = F.mul(w.lambda, u[j]);
  return U.contains_by_elimination(u) && U.contains_by_elimination(lu);
}

struct TripleCount {
  std::uint64_t root_free_pairs = 0;  // (c, γ) ∈ (F_{q^n}^*)^2 with P root-free
  std::uint64_t exact = 0;            // triples (α, β, γ): (q^n − 1) · root_free_pairs
  std::optional<std::uint64_t> lower_bound;
  std::vector<std::pair<Elem, Elem>> pairs;  // the root-free (c, γ), in index order
};

/// Root-free (c, γ) pairs, scanned exhaustively (α = 1, β = c).
inline TripleCount count_root_free_triples(FieldPtr ctx, long long I, long long J, const Exec& exec = {}) {
  const auto& F = *ctx;
  const std::uint64_t Q = F.size();
  require_budget((Q - 1) * (Q - 1) * Q, exec, "triple count");
  FamilyParams base{ctx, I, J, F.one(), F.one(), F.one()};
  base.validate();
  using Acc = std::vector<std::pair<Elem, Elem>>;
  Acc pairs = parallel_reduce(
      (Q - 1) * (Q - 1), exec.threads, Acc{},
      [&](std::uint64_t b, std::uint64_t e) {
        Acc out;
        Exec inner{1, UINT64_MAX};
        for (std::uint64_t i = b; i < e; ++i) {
          FamilyParams P = base;
          P.beta = F.element(1 + i / (Q - 1));
          P.gamma = F.element(1 + i % (Q - 1));
          if (!p_has_root(P, inner)) out.emplace_back(P.beta, P.gamma);
        }
        return out;
      },
      [](Acc a, Acc b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      });
  TripleCount t;
  t.pairs = std::move(pairs);
  t.root_free_pairs = t.pairs.size();
  t.exact = t.root_free_pairs * (Q - 1);
  const long long K = std::llabs(J - I), n = F.n();
  if (std::gcd(K, n) == 1 && n % static_cast<long long>(F.q() + 1) != 0)
    t.lower_bound = (Q - 1) * detail::euler_phi(F.q() * F.q() - 1) / 2;
  return t;
}

/// Applies a 4x4 matrix over F_{q^n} to every basis vector of U.
inline FqSubspace apply_matrix(const Matrix<Elem>& M, const FqSubspace& U) {
  const auto& F = U.field();
  std::vector<Vec> imgs;
  for (const auto& b : U.basis()) {
    Vec v(M.rows, F.zero());
    for (std::size_t i = 0; i < M.rows; ++i)
      for (std::size_t j = 0; j < M.cols; ++j) v[i] = F.add(v[i], F.mul(M(i, j), b[j]));
    imgs.push_back(std::move(v));
  }
  return FqSubspace::span(U.field_ptr(), M.rows, imgs);
}

struct DualParams {
  FamilyParams params;   // (n − I, n − J, −1, β̄, γ̄)
  FqSubspace exact_dual;  // the orthogonal complement of U as a set
  Matrix<Elem> map;       // T with T(exact_dual) = U(params)
};

/// Closed form of the ordinary dual; checked against the generic complement.
inline DualParams ordinary_dual_params(const FamilyParams& P) {
  P.validate();
  const auto& F = *P.ctx;
  const long long n = F.n(), I0 = n - P.I, J0 = n - P.J;
  const Elem aJ0 = F.frob(P.alpha, J0);
  FamilyParams D{P.ctx, I0, J0, F.neg(F.one()), F.neg(F.div(F.frob(P.beta, I0), aJ0)),
                 F.neg(F.div(F.frob(P.gamma, J0), aJ0))};

  LinPoly g1(P.ctx, 2), g2(P.ctx, 2);
  g1.set(0, I0, F.frob(P.beta, I0));
  g1.set(0, J0, F.frob(P.gamma, J0));
  g1.set(1, J0, F.neg(aJ0));
  g2.set(1, I0, F.one());
  g2.set(0, J0, F.neg(F.one()));
  const std::vector<long long> idx{0, 0};
  const std::vector<LinPoly> gs{g1, g2};
  FqSubspace exact = from_poly_tuple(P.ctx, idx, gs);

  if (!exact.same_set(ordinary_dual(build_subspace(P))))
    throw Error(Errc::InternalInconsistency, "closed-form dual differs from the computed complement");

  Matrix<Elem> T(4, 4, F.zero());
  T(0, 1) = F.one();
  T(1, 0) = F.one();
  T(2, 3) = F.one();
  T(3, 2) = F.neg(F.inv(aJ0));
  return {D, std::move(exact), std::move(T)};
}

/// Gram matrix of σ(u, w) = u0w3 + u3w0 − u1w2 − u2w1.
inline Matrix<Elem> sigma_gram(const FieldContext& F) {
  Matrix<Elem> G(4, 4, F.zero());
  G(0, 3) = F.one();
  G(3, 0) = F.one();
  G(1, 2) = F.neg(F.one());
  G(2, 1) = F.neg(F.one());
  return G;
}

/// σ-adjoint inverse: the map sending W^⊥ to (T W)^⊥, namely G^{-1} (T^T)^{-1} G.
inline Matrix<Elem> sigma_contragredient(const FieldContext& F, const Matrix<Elem>& T) {
  const Matrix<Elem> G = sigma_gram(F);
  return mat_mul(F, mat_mul(F, mat_inverse(F, G), mat_inverse(F, transpose(T))), G);
}

enum class EquivTag { InequivalentByIndexPair, InequivalentBySystem, EquivalentByCorollary, Undetermined };

inline const char* equiv_tag_name(EquivTag t) {
  switch (t) {
    case EquivTag::InequivalentByIndexPair: return "InequivalentByIndexPair";
    case EquivTag::InequivalentBySystem: return "InequivalentBySystem";
    case EquivTag::EquivalentByCorollary: return "EquivalentByCorollary";
    case EquivTag::Undetermined: return "Undetermined";
  }
  return "?";
}

struct SystemCoefficients {
  // Values of ρ^{q^K}, θ^{q^K}, σ^{q^K}, μ^{q^K}, ν^{q^K}, ξ^{q^K}.
  Elem rho, theta, sigma, mu, nu, xi;
};

struct EquivVerdict {
  EquivTag tag = EquivTag::Undetermined;
  bool in_range = false;  // 0 < I, J, I_0, J_0 <= (n − 1)/2
  std::optional<std::size_t> kernel_dim;  // F_q-dimension of the solution space of the system
  std::optional<SystemCoefficients> coefficients;
  bool corollary_holds = false;
  std::optional<std::array<Elem, 4>> witness;  // diag(a11, a22, a33, a44)
  bool witness_verified = false;
  std::string note;
};

/// Coefficients of the system, with K = J − I (signed).
inline SystemCoefficients system_coefficients(const FamilyParams& p1, const FamilyParams& p2) {
  const auto& F = *p1.ctx;
  const long long I = p1.I, K = p1.J - p1.I;
  const Elem a = p1.alpha, b = p1.beta, g = p1.gamma;
  const Elem ab = p2.alpha, bb = p2.beta, gb = p2.gamma;
  SystemCoefficients s;
  const Elem aa = F.frob(F.div(ab, a), -I);
  s.rho = F.mul(F.frob(F.div(b, bb), K - I), aa);
  s.theta = F.mul(s.rho, F.frob(gb, K - I));
  s.sigma = F.neg(F.mul(aa, F.frob(g, -I)));
  s.mu = F.frob(F.div(F.mul(ab, bb), gb), -I);
  s.nu = F.frob(F.div(F.mul(g, ab), F.mul(gb, a)), -I);
  const Elem num = F.mul(F.frob(b, K), F.mul(F.frob(ab, K), ab));
  s.xi = F.neg(F.frob(F.div(num, F.mul(gb, a)), -I));
  return s;
}

/// F_q-dimension of {(a11, a21)} solving
///   a11 = ρ a11^{q^{2K}} + θ a21^{q^{2K}} + σ a21^{q^K}
///   a11 = μ a21 + ν a11^{q^K} + ξ a21^{q^{2K}}
/// (coefficients already raised to q^K), as an F_p-linear kernel.
inline std::size_t system_kernel_dim(const FieldContext& F, long long K, const SystemCoefficients& s) {
  const unsigned D = F.degree();
  Matrix<std::uint32_t> M(2 * D, 2 * D, 0);
  for (unsigned col = 0; col < 2 * D; ++col) {
    const bool is_a21 = col >= D;
    std::uint32_t idx = 1;
    for (unsigned z = 0; z < col % D; ++z) idx *= F.p();
    const Elem a11 = is_a21 ? F.zero() : Elem{idx};
    const Elem a21 = is_a21 ? Elem{idx} : F.zero();
    Elem e1 = F.sub(a11, F.mul(s.rho, F.frob(a11, 2 * K)));
    e1 = F.sub(e1, F.mul(s.theta, F.frob(a21, 2 * K)));
    e1 = F.sub(e1, F.mul(s.sigma, F.frob(a21, K)));
    Elem e2 = F.sub(a11, F.mul(s.mu, a21));
    e2 = F.sub(e2, F.mul(s.nu, F.frob(a11, K)));
    e2 = F.sub(e2, F.mul(s.xi, F.frob(a21, 2 * K)));
    for (unsigned t = 0; t < D; ++t) {
      M(t, col) = F.digit(e1, t);
      M(D + t, col) = F.digit(e2, t);
    }
  }
  return (2 * D - rank_of(F.prime_field(), M)) / F.h();
}

inline Matrix<Elem> diag4(const FieldContext& F, const std::array<Elem, 4>& d) {
  Matrix<Elem> M(4, 4, F.zero());
  for (std::size_t i = 0; i < 4; ++i) M(i, i) = d[i];
  return M;
}

inline EquivVerdict equivalence_verdict(const FamilyParams& p1, const FamilyParams& p2) {
  p1.validate();
  p2.validate();
  if (!p1.ctx->same_field(*p2.ctx)) throw Error(Errc::HypothesisOutOfRange, "parameters live in different fields");
  const auto& F = *p1.ctx;
  const long long n = F.n();
  auto ok = [&](long long v) { return v > 0 && 2 * v <= n - 1; };
  EquivVerdict v;
  v.in_range = ok(p1.I) && ok(p1.J) && ok(p2.I) && ok(p2.J);
  if (p1.I != p2.I || p1.J != p2.J) {
    v.tag = v.in_range ? EquivTag::InequivalentByIndexPair : EquivTag::Undetermined;
    if (!v.in_range) v.note = "index pairs differ but the range hypothesis fails";
    return v;
  }
  const long long K = p1.J - p1.I;
  const SystemCoefficients s = system_coefficients(p1, p2);
  v.coefficients = s;
  v.kernel_dim = system_kernel_dim(F, K, s);
  if (*v.kernel_dim == 0) {
    v.tag = v.in_range ? EquivTag::InequivalentBySystem : EquivTag::Undetermined;
    if (!v.in_range) v.note = "trivial kernel but the range hypothesis fails";
    return v;
  }
  // Sufficient condition: ρ = ν^{q^K+1} and ν a (q^K − 1)-th power.
  const Elem rho = F.frob(s.rho, -K), nu = F.frob(s.nu, -K);
  const Elem nu_pow = F.mul(F.frob(nu, K), nu);
  const std::uint64_t g = detail::ipow(F.q(), std::gcd(static_cast<unsigned>(std::llabs(K)), F.n())) - 1;
  const bool nu_is_power = F.pow(nu, (F.size() - 1) / g) == F.one();
  v.corollary_holds = rho == nu_pow && nu_is_power;
  if (!v.corollary_holds) {
    v.tag = EquivTag::Undetermined;
    v.note = "system has nonzero solutions; corollary conditions fail";
    return v;
  }
  // a11^{q^K − 1} = 1/ν^{q^K}.
  const Elem target = F.inv(s.nu);
  std::optional<Elem> a11;
  for (std::uint64_t i = 1; i < F.size() && !a11; ++i) {
    const Elem a = F.element(i);
    if (F.frob(a, K) == F.mul(a, target)) a11 = a;
  }
  if (!a11) {
    v.tag = EquivTag::Undetermined;
    v.note = "no a11 with a11^{q^K-1} = 1/nu^{q^K}";
    return v;
  }
  const Elem a22 = F.mul(F.frob(F.div(p1.gamma, p2.gamma), -p1.J), *a11);
  v.witness = std::array<Elem, 4>{*a11, a22, F.frob(*a11, p1.I), F.frob(*a11, p1.J)};
  const FqSubspace U1 = build_subspace(p1), U2 = build_subspace(p2);
  v.witness_verified = apply_matrix(diag4(F, *v.witness), U1).same_set(U2);
  if (v.witness_verified && v.in_range) {
    v.tag = EquivTag::EquivalentByCorollary;
  } else {
    v.tag = EquivTag::Undetermined;
    v.note = v.witness_verified ? "witness verified but the range hypothesis fails"
                                : "corollary witness does not map U(p1) onto U(p2)";
  }
  return v;
}

/// Embeds F_{q^n} into a freshly built F_{q^{nℓ}} by sending X to the smallest root of the old modulus.
struct Embedding {
  FieldPtr big;
  Elem root;
  Elem map(const FieldContext& small, Elem x) const {
    Elem s = big->zero(), pw = big->one();
    for (unsigned i = 0; i < small.degree(); ++i) {
      s = big->add(s, big->mul(big->constant(small.digit(x, i)), pw));
      pw = big->mul(pw, root);
    }
    return s;
  }
};

inline Embedding embed_extension(const FieldContext& small, unsigned ell) {
  Embedding e;
  e.big = make_field(small.p(), small.h(), small.n() * ell, std::nullopt);
  const auto& B = *e.big;
  const auto& f = small.modulus();
  for (std::uint64_t i = 1; i < B.size(); ++i) {
    const Elem r = B.element(i);
    Elem acc = B.zero();
    for (std::size_t d = f.size(); d-- > 0;) acc = B.add(B.mul(acc, r), B.constant(f[d]));
    if (B.is_zero(acc)) {
      e.root = r;
      return e;
    }
  }
  throw Error(Errc::NoCompatibleEmbedding, "old modulus has no root in the extension");
}

struct ExtensionReport {
  FamilyParams lifted;
  bool gcd_ok = false;
  bool p_root_free = false;
  bool scattered = false;
};

inline ExtensionReport verify_extension(const FamilyParams& P, unsigned ell, const Exec& exec = {}) {
  P.validate();
  if (ell == 0) throw Error(Errc::InvalidArgument, "extension degree must be positive");
  const auto& F = *P.ctx;
  long double size = 1;
  for (unsigned i = 0; i < F.degree() * ell; ++i) size *= F.p();
  if (size > static_cast<long double>(exec.budget)) require_budget(UINT64_MAX, exec, "extension field");
  Embedding e = embed_extension(F, ell);
  ExtensionReport r;
  r.lifted = FamilyParams{e.big, P.I, P.J, e.map(F, P.alpha), e.map(F, P.beta), e.map(F, P.gamma)};
  const long long N = e.big->n();
  r.gcd_ok = std::gcd(std::gcd(P.I, P.J), N) == 1;
  r.p_root_free = !p_has_root(r.lifted, exec);
  r.scattered = is_h_scattered(build_subspace(r.lifted), 1, exec);
  return r;
}

}  // namespace scatseq
