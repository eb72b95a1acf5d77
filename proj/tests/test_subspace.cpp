#include <gtest/gtest.h>

#include <array>
#include <set>

#include "scatseq/family.hpp"
#include "scatseq/subspace.hpp"
#include "support.hpp"

using namespace scatseq;
using namespace scatseq::testing;

namespace {

// Ordered bases of d-spaces in Q^k divided by |GL(d, Q)|.
std::uint64_t subspace_count_oracle(std::size_t k, std::size_t d, std::uint64_t Q) {
  unsigned __int128 num = 1, den = 1;
  auto qp = [&](std::size_t e) {
    unsigned __int128 r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= Q;
    return r;
  };
  for (std::size_t i = 0; i < d; ++i) {
    num *= qp(k) - qp(i);
    den *= qp(d) - qp(i);
  }
  return static_cast<std::uint64_t>(num / den);
}

FqSubspace bmn_subspace(FieldPtr F) { return build_subspace(bmn(F)); }

// {(x, a x^{q^s})} in V(2, q^n).
FqSubspace pseudoregulus(FieldPtr F, long long s, Elem a) {
  const std::vector<long long> I{0};
  const std::vector<LinPoly> fs{LinPoly::monomial(F, 1, 0, s, a)};
  return from_poly_tuple(F, I, fs);
}

Matrix<Elem> random_invertible(const FieldContext& F, std::size_t k, Rng& rng) {
  while (true) {
    Matrix<Elem> M(k, k);
    for (auto& e : M.data) e = random_elem(F, rng);
    Matrix<Elem> c = M;
    if (rank_of(F, c) == k) return M;
  }
}

}  // namespace

TEST(Subspace, FromPolyTupleDimensions) {
  auto F = make_field(2, 1, 4);
  const std::vector<long long> I0{0};
  EXPECT_EQ(from_poly_tuple(F, I0, std::vector<LinPoly>{}).dim(), 4u);

  LinPoly f1 = LinPoly::monomial(F, 2, 0, 1) + LinPoly::monomial(F, 2, 1, 2);
  LinPoly f2 = LinPoly::monomial(F, 2, 0, 2) + LinPoly::monomial(F, 2, 1, 1) + LinPoly::monomial(F, 2, 1, 2);
  const std::vector<long long> I{0, 0};
  const std::vector<LinPoly> fs{f1, f2};
  FqSubspace U = from_poly_tuple(F, I, fs);
  EXPECT_EQ(U.dim(), 8u);
  EXPECT_TRUE(U.same_set(bmn_subspace(F)));

  // Rank oracle: F_p coordinates of F' evaluated on an F_q-basis of F_{q^n}^2.
  Matrix<std::uint32_t> M(0, 16);
  for (std::size_t var = 0; var < 2; ++var)
    for (Elem b : F->fqn_basis_over_fq()) {
      std::array<Elem, 2> x{F->zero(), F->zero()};
      x[var] = b;
      const std::array<Elem, 4> v{x[0], x[1], evaluate(f1, x), evaluate(f2, x)};
      M.append_row(fp_coords(*F, v));
    }
  EXPECT_EQ(rank_of(F->prime_field(), M), U.fp_dim());
}

TEST(Subspace, NonzeroIndexGenerator) {
  auto F = make_field(2, 1, 4);
  const std::vector<long long> I{2};
  const std::vector<LinPoly> fs{LinPoly::monomial(F, 1, 0, 1)};
  FqSubspace U = from_poly_tuple(F, I, fs);
  EXPECT_EQ(U.dim(), 4u);
  for (std::uint64_t x = 0; x < 16; ++x) {
    const Elem e = F->element(x);
    const std::array<Elem, 2> v{F->frob(e, 2), F->frob(e, 1)};
    EXPECT_TRUE(U.contains(v));
    EXPECT_TRUE(U.contains_by_elimination(v));
  }
}

TEST(Subspace, Membership) {
  auto F = make_field(2, 1, 4);
  FqSubspace U = bmn_subspace(F);
  EXPECT_TRUE(U.contains(std::array<Elem, 4>{}));
  EXPECT_TRUE(U.contains(std::array<Elem, 4>{F->one(), F->zero(), F->one(), F->one()}));
  EXPECT_THROW(U.contains(std::array<Elem, 3>{}), Error);
  Rng rng(21);
  int members = 0;
  for (int i = 0; i < 10000; ++i) {
    Vec v = (i % 2) ? U.element(rng() % U.cardinality()) : random_vec(*F, 4, rng);
    if (i % 4 == 2) v[3] = F->add(v[3], F->one());
    const bool a = U.contains_by_generator(v), b = U.contains_by_elimination(v);
    ASSERT_EQ(a, b);
    members += a;
  }
  EXPECT_GT(members, 2000);
  for (const auto& v : all_vectors(U)) EXPECT_TRUE(U.contains_by_generator(v));
}

TEST(Subspace, EnumeratorCounts) {
  auto F = make_field(2, 1, 4);
  EXPECT_EQ(SubspaceEnumerator(F, 4, 1).size(), 4369u);
  EXPECT_EQ(SubspaceEnumerator(F, 4, 3).size(), 4369u);
  EXPECT_EQ(SubspaceEnumerator(F, 4, 2).size(), subspace_count_oracle(4, 2, 16));
  EXPECT_EQ(SubspaceEnumerator(F, 4, 2).size(), 70161u);
  EXPECT_EQ(gaussian_binomial(4, 2, 16), 70161u);
  EXPECT_EQ(SubspaceEnumerator(F, 4, 0).size(), 1u);
  EXPECT_EQ(SubspaceEnumerator(F, 4, 4).size(), 1u);
  for (std::size_t k = 1; k <= 5; ++k)
    for (std::size_t d = 0; d <= k; ++d)
      for (std::uint64_t Q : {2u, 3u, 4u, 8u, 9u})
        EXPECT_EQ(gaussian_binomial(k, d, Q), subspace_count_oracle(k, d, Q)) << k << d << Q;
}

TEST(Subspace, EnumeratorYieldsDistinctCanonicalSubspaces) {
  auto F = make_field(2, 1, 2);
  for (std::size_t d = 0; d <= 3; ++d) {
    SubspaceEnumerator en(F, 3, d);
    std::set<std::vector<std::uint32_t>> seen;
    en.for_each([&](const FqnSubspace& H) {
      Matrix<Elem> copy = H.rref;
      auto again = FqnSubspace::from_rows(*F, copy);
      EXPECT_EQ(again, H);
      EXPECT_EQ(H.dim(), d);
      std::vector<std::uint32_t> key;
      for (Elem e : H.rref.data) key.push_back(e.v);
      seen.insert(key);
    });
    EXPECT_EQ(seen.size(), en.size());
    EXPECT_EQ(en.size(), subspace_count_oracle(3, d, 4));
  }
}

TEST(Subspace, IntersectionMatchesEnumeration) {
  auto F = make_field(2, 1, 4);
  FqSubspace U = bmn_subspace(F);
  SubspaceEnumerator lines(F, 4, 1);
  for (std::uint64_t i = 0; i < lines.size(); ++i) {
    auto H = lines.at(i);
    ASSERT_EQ(intersection_dim(U, H), intersection_dim_by_enumeration(U, H));
  }
  Rng rng(22);
  SubspaceEnumerator planes(F, 4, 2);
  for (int i = 0; i < 500; ++i) {
    auto H = planes.at(rng() % planes.size());
    ASSERT_EQ(intersection_dim(U, H), intersection_dim_by_enumeration(U, H));
  }
  // Odd characteristic and h > 1 go through the generic path.
  for (auto G : {make_field(3, 1, 2), make_field(2, 2, 2)}) {
    FqSubspace V = random_subspace(G, 3, 3, rng);
    for (std::size_t d = 0; d <= 3; ++d)
      for (int t = 0; t < 30; ++t) {
        auto H = random_fqn_subspace(*G, 3, d, rng);
        EXPECT_EQ(intersection_dim(V, H), intersection_dim_by_enumeration(V, H));
      }
  }
}

TEST(Subspace, IntersectionExtremes) {
  auto F = make_field(2, 1, 4);
  FqSubspace U = bmn_subspace(F);
  SubspaceEnumerator full(F, 4, 4);
  EXPECT_EQ(intersection_dim(U, full.at(0)), U.dim());
  EXPECT_EQ(intersection_dim(U, FqnSubspace::zero(4)), 0u);
  EXPECT_EQ(intersection_basis(U, full.at(0)).size(), U.dim());
}

TEST(Subspace, Scatteredness) {
  auto F = make_field(2, 1, 4);
  // An F_{q^n}-line viewed over F_q.
  std::vector<Vec> line;
  for (Elem b : F->fqn_basis_over_fq()) line.push_back(Vec{b, F->mul(b, F->generator())});
  FqSubspace L = FqSubspace::span(F, 2, line);
  EXPECT_FALSE(is_h_scattered(L, 1));
  EXPECT_EQ(scan_h_subspaces(L, 1).max_dim, 4u);

  FqSubspace U = bmn_subspace(F);
  EXPECT_TRUE(is_h_scattered(U, 1));
  EXPECT_EQ(scan_h_subspaces(U, 1).max_dim, 1u);
  EXPECT_FALSE(lambda_scan(U).has_value());
  EXPECT_THROW(is_h_scattered(U, 4), Error);
}

TEST(Subspace, ScatteredMatchesLambdaScan) {
  auto F = make_field(2, 1, 4);
  Rng rng(23);
  int scattered = 0;
  for (int i = 0; i < 12; ++i) {
    FqSubspace U = random_subspace(F, 4, 8, rng);
    const bool s = is_h_scattered(U, 1);
    EXPECT_EQ(s, !lambda_scan(U).has_value());
    scattered += s;
  }
  // Family members give scattered positives for the same comparison.
  for (std::uint64_t g = 1; g < 16; g += 3) {
    FamilyParams P{F, 1, 2, F->one(), F->one(), F->element(g)};
    FqSubspace U = build_subspace(P);
    const bool s = is_h_scattered(U, 1);
    EXPECT_EQ(s, !lambda_scan(U).has_value());
    scattered += s;
  }
  EXPECT_GT(scattered, 0);
  // The line scan and the point path agree.
  FqSubspace U = random_subspace(F, 4, 3, rng);
  EXPECT_EQ(max_line_intersection_via_points(U).max_dim, max_intersection(U, 1).max_dim);
}

TEST(Subspace, Evasiveness) {
  auto F = make_field(2, 1, 4);
  Rng rng(24);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(is_evasive(random_subspace(F, 3, 6, rng), 1, 4));
  FqSubspace U = bmn_subspace(F);
  EXPECT_TRUE(is_evasive(U, 2, 4));
  EXPECT_TRUE(is_evasive(U, 1, 1));
  EXPECT_FALSE(is_evasive(U, 2, 2));
}

TEST(Subspace, Cutting) {
  auto F = make_field(2, 1, 4);
  EXPECT_TRUE(is_cutting(FqSubspace::full(F, 3)));
  std::vector<Vec> line;
  for (Elem b : F->fqn_basis_over_fq()) line.push_back(Vec{b, F->zero()});
  auto rep = cutting_report(FqSubspace::span(F, 2, line));
  EXPECT_FALSE(rep.cutting);
  ASSERT_TRUE(rep.failing_hyperplane.has_value());
  auto F5 = make_field(2, 1, 5);
  auto P = bmn(F5);
  ASSERT_FALSE(p_has_root(P));
  EXPECT_TRUE(is_cutting(build_subspace(P)));
}

TEST(Subspace, DirectSum) {
  auto F = make_field(2, 1, 3);
  FqSubspace A = pseudoregulus(F, 1, F->one());
  EXPECT_EQ(A.dim(), 3u);
  FqSubspace S = direct_sum(A, A);
  EXPECT_EQ(S.k(), 4u);
  EXPECT_EQ(S.dim(), 6u);
  ASSERT_TRUE(S.generator().has_value());
  std::vector<Vec> expected;
  for (std::uint64_t x = 0; x < 8; ++x)
    for (std::uint64_t y = 0; y < 8; ++y) {
      const Elem ex = F->element(x), ey = F->element(y);
      expected.push_back(Vec{ex, F->frob(ex, 1), ey, F->frob(ey, 1)});
    }
  for (const auto& v : expected) {
    EXPECT_TRUE(S.contains(v));
    EXPECT_TRUE(S.contains_by_elimination(v));
  }
  EXPECT_EQ(S.cardinality(), expected.size());

  FqSubspace Z = direct_sum(A, FqSubspace::zero(F, 1));
  EXPECT_EQ(Z.dim(), A.dim());
  for (const auto& v : all_vectors(A)) EXPECT_TRUE(Z.contains(Vec{v[0], v[1], F->zero()}));
}

TEST(Subspace, IndecomposabilityCriterion) {
  auto F = make_field(2, 1, 4);
  auto rep = indecomposability_criterion(bmn_subspace(F), 1);
  EXPECT_EQ(rep.verdict, Decomposability::Indecomposable);
  ASSERT_EQ(rep.windows.size(), 1u);
  EXPECT_EQ(rep.windows[0].r, 2u);
  EXPECT_EQ(rep.windows[0].bound, 3u);
  EXPECT_EQ(rep.windows[0].max_dim, 3u);

  FqSubspace D = direct_sum(pseudoregulus(F, 1, F->one()), pseudoregulus(F, 1, F->one()));
  auto drep = indecomposability_criterion(D, 1);
  EXPECT_EQ(drep.verdict, Decomposability::Inconclusive);
  EXPECT_EQ(drep.windows[0].max_dim, 4u);

  // Negative controls: random GL(4) images of sums of scattered lines.
  Rng rng(25);
  for (int i = 0; i < 4; ++i) {
    const long long s1 = (i % 2) ? 1 : 3, s2 = (i / 2) ? 1 : 3;
    FqSubspace S = direct_sum(pseudoregulus(F, s1, random_elem(*F, rng, true)),
                              pseudoregulus(F, s2, random_elem(*F, rng, true)));
    FqSubspace T = apply_matrix(random_invertible(*F, 4, rng), S);
    EXPECT_EQ(indecomposability_criterion(T, 1).verdict, Decomposability::Inconclusive);
  }

  Rng r2(26);
  EXPECT_THROW(indecomposability_criterion(random_subspace(F, 4, 6, r2), 1), Error);
}

TEST(Subspace, OrdinaryDual) {
  auto F = make_field(2, 1, 4);
  Rng rng(27);
  for (std::size_t t : {0u, 3u, 8u, 11u, 16u}) {
    FqSubspace U = random_subspace(F, 4, t, rng);
    FqSubspace D = ordinary_dual(U);
    EXPECT_EQ(D.dim(), 16 - t);
    EXPECT_TRUE(ordinary_dual(D).same_set(U));
  }
  EXPECT_THROW(ordinary_dual(random_subspace(F, 3, 2, rng)), Error);

  // Closed form for the BMN subspace: (x, y, x^{q^3} + x^{q^2} - y^{q^2}, y^{q^3} - x^{q^2}).
  FqSubspace D = ordinary_dual(bmn_subspace(F));
  for (std::uint64_t x = 0; x < 16; ++x)
    for (std::uint64_t y = 0; y < 16; ++y) {
      const Elem ex = F->element(x), ey = F->element(y);
      const Vec v{ex, ey, F->sub(F->add(F->frob(ex, 3), F->frob(ex, 2)), F->frob(ey, 2)),
                  F->sub(F->frob(ey, 3), F->frob(ex, 2))};
      EXPECT_TRUE(D.contains(v));
    }
  EXPECT_EQ(D.dim(), 8u);
  EXPECT_TRUE(is_h_scattered(D, 1));

  // Odd characteristic.
  auto G = make_field(3, 1, 2);
  FqSubspace V = random_subspace(G, 4, 3, rng);
  EXPECT_TRUE(ordinary_dual(ordinary_dual(V)).same_set(V));
  EXPECT_EQ(ordinary_dual(V).dim(), 5u);
}

TEST(Subspace, SigmaComplement) {
  auto F = make_field(2, 1, 4);
  Rng rng(28);
  for (std::size_t s = 0; s <= 4; ++s) {
    auto R = random_fqn_subspace(*F, 4, s, rng);
    auto Rt = sigma_complement(*F, R);
    EXPECT_EQ(Rt.dim(), 4 - s);
    EXPECT_EQ(sigma_complement(*F, Rt), R);
  }
}

TEST(Subspace, WeightIdentity) {
  auto F = make_field(2, 1, 4);
  FqSubspace U = bmn_subspace(F);
  auto zero = duality_weight_identity(U, FqnSubspace::zero(4));
  EXPECT_TRUE(zero.holds());
  EXPECT_EQ(zero.lhs, 8);
  SubspaceEnumerator full(F, 4, 4);
  auto all = duality_weight_identity(U, full.at(0));
  EXPECT_TRUE(all.holds());
  Rng rng(29);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(duality_weight_identity_check(U, random_fqn_subspace(*F, 4, 2, rng)));
  for (int i = 0; i < 20; ++i) {
    FqSubspace V = random_subspace(F, 4, rng() % 17, rng);
    EXPECT_TRUE(duality_weight_identity_check(V, random_fqn_subspace(*F, 4, rng() % 5, rng)));
  }
}
