#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "scatseq/family.hpp"

namespace scatseq::testing {

using Rng = std::mt19937_64;

inline Elem random_elem(const FieldContext& F, Rng& rng, bool nonzero = false) {
  std::uniform_int_distribution<std::uint64_t> d(nonzero ? 1 : 0, F.size() - 1);
  return F.element(d(rng));
}

inline Vec random_vec(const FieldContext& F, std::size_t k, Rng& rng) {
  Vec v(k);
  for (auto& e : v) e = random_elem(F, rng);
  return v;
}

/// Random F_q-subspace of V(k, q^n) of the requested F_q-dimension.
inline FqSubspace random_subspace(FieldPtr F, std::size_t k, std::size_t dim, Rng& rng) {
  std::vector<Vec> vs;
  FqSubspace U = FqSubspace::zero(F, k);
  while (U.dim() < dim) {
    vs.push_back(random_vec(*F, k, rng));
    U = FqSubspace::span(F, k, vs);
  }
  return U;
}

inline FqnSubspace random_fqn_subspace(const FieldContext& F, std::size_t k, std::size_t d, Rng& rng) {
  if (d == 0) return FqnSubspace::zero(k);
  while (true) {
    Matrix<Elem> m(0, k);
    for (std::size_t i = 0; i < d; ++i) m.append_row(random_vec(F, k, rng));
    auto H = FqnSubspace::from_rows(F, m);
    if (H.dim() == d) return H;
  }
}

inline LinPoly random_poly(FieldPtr F, std::size_t m, Rng& rng) {
  LinPoly f(F, m);
  for (auto& c : f.grid()) c = random_elem(*F, rng);
  return f;
}

inline FamilyParams bmn(FieldPtr F) { return FamilyParams{F, 1, 2, F->one(), F->one(), F->one()}; }

/// All vectors of U, by base-q enumeration of the stored basis.
inline std::vector<Vec> all_vectors(const FqSubspace& U) {
  std::vector<Vec> out;
  for (std::uint64_t i = 0; i < U.cardinality(); ++i) out.push_back(U.element(i));
  return out;
}

}  // namespace scatseq::testing
