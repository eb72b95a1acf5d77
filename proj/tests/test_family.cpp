#include <gtest/gtest.h>

#include "scatseq/family.hpp"
#include "support.hpp"

using namespace scatseq;
using namespace scatseq::testing;

namespace {

// P(x) evaluated with plain powers instead of Frobenius tables.
bool has_root_by_powers(const FieldContext& F, long long I, long long J, Elem c, Elem gamma) {
  const long long K = std::llabs(J - I);
  std::uint64_t qK = 1;
  for (long long i = 0; i < K; ++i) qK *= F.q();
  for (std::uint64_t i = 0; i < F.size(); ++i) {
    const Elem x = F.element(i);
    Elem v = F.sub(F.pow(x, qK + 1), c);
    v = F.add(v, F.mul(gamma, I < J ? x : F.pow(x, qK)));
    if (F.is_zero(v)) return true;
  }
  return false;
}

Errc error_code(auto fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InternalInconsistency;
}

}  // namespace

TEST(Family, Validation) {
  auto F = make_field(2, 1, 4);
  EXPECT_EQ(error_code([&] { FamilyParams{F, 2, 2, F->one(), F->one(), F->one()}.validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(error_code([&] { FamilyParams{F, 0, 2, F->one(), F->one(), F->one()}.validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(error_code([&] { FamilyParams{F, 1, 2, F->zero(), F->one(), F->one()}.validate(); }), Errc::InvalidArgument);
  EXPECT_NO_THROW((FamilyParams{F, 1, 3, F->one(), F->one(), F->one()}.validate()));
  FamilyParams P{F, 3, 1, F->one(), F->one(), F->one()};
  EXPECT_EQ(P.K(), 2);
  EXPECT_FALSE(P.i_less_j());
}

TEST(Family, ProjectivePolynomialShapes) {
  auto F = make_field(2, 1, 4);
  auto P = p_polynomial(bmn(F));
  EXPECT_EQ(P.K, 1);
  EXPECT_EQ(P.a, F->zero());
  EXPECT_EQ(P.b, F->one());
  EXPECT_EQ(P.c0, F->one());
  auto R = p_polynomial(FamilyParams{F, 2, 1, F->one(), F->one(), F->one()});
  EXPECT_EQ(R.a, F->one());
  EXPECT_EQ(R.b, F->zero());
  EXPECT_EQ(R.c0, F->one());
  // X^3 + X + 1 and X^3 + X^2 + 1 pointwise.
  for (std::uint64_t i = 0; i < 16; ++i) {
    const Elem x = F->element(i), x2 = F->mul(x, x), x3 = F->mul(x2, x);
    EXPECT_EQ(P.eval(*F, x), F->add(F->add(x3, x), F->one()));
    EXPECT_EQ(R.eval(*F, x), F->add(F->add(x3, x2), F->one()));
  }
  const Elem g = F->generator();
  auto S = p_polynomial(FamilyParams{F, 1, 3, g, F->one(), g});
  EXPECT_EQ(S.K, 2);
  EXPECT_EQ(S.b, g);
  auto T = p_polynomial(FamilyParams{F, 3, 1, g, F->one(), g});
  EXPECT_EQ(T.a, g);
}

TEST(Family, RootDetection) {
  auto F = make_field(2, 1, 4);
  EXPECT_FALSE(p_has_root(bmn(F)));
  // P(1) = 1 + γ − αβ = 0 when αβ = 1 + γ.
  const Elem g = F->generator();
  FamilyParams R{F, 1, 2, F->one(), F->add(F->one(), g), g};
  EXPECT_TRUE(p_has_root(R));
  EXPECT_FALSE(companion_criterion(R));
  EXPECT_TRUE(companion_criterion(bmn(F)));
  EXPECT_THROW(p_has_root(bmn(F), Exec{0, 4}), Error);
}

TEST(Family, CompanionMatchesExhaustiveRootSearch) {
  struct Case {
    std::uint32_t p;
    unsigned n;
    long long I, J;
  };
  for (auto c : {Case{2, 4, 1, 2}, Case{2, 4, 2, 1}, Case{2, 5, 1, 3}, Case{2, 5, 3, 1}, Case{3, 4, 1, 2}, Case{3, 4, 2, 1}}) {
    auto F = make_field(c.p, 1, c.n);
    std::size_t disagreements = 0, cases = 0;
    for (std::uint64_t a = 1; a < F->size(); ++a)
      for (std::uint64_t g = 1; g < F->size(); ++g) {
        FamilyParams P{F, c.I, c.J, F->one(), F->element(a), F->element(g)};
        const bool rooted = p_has_root(P);
        disagreements += rooted == companion_criterion(P);
        EXPECT_EQ(rooted, has_root_by_powers(*F, c.I, c.J, F->element(a), F->element(g)));
        ++cases;
        if (cases > 2000 && c.p == 3) break;
      }
    EXPECT_EQ(disagreements, 0u) << c.p << " " << c.n << " " << c.I << c.J;
  }
  auto F = make_field(2, 1, 4);
  EXPECT_EQ(error_code([&] { companion_criterion(FamilyParams{F, 1, 3, F->one(), F->one(), F->one()}); }),
            Errc::NonCoprimeShift);
}

TEST(Family, BuildSubspace) {
  auto F = make_field(2, 1, 4);
  FqSubspace U = build_subspace(bmn(F));
  EXPECT_EQ(U.dim(), 8u);
  for (const auto& v : all_vectors(U)) EXPECT_TRUE(U.contains_by_generator(v));
  // Points read off the defining formula.
  for (std::uint64_t x = 0; x < 16; ++x)
    for (std::uint64_t y = 0; y < 16; ++y) {
      const Elem ex = F->element(x), ey = F->element(y);
      const Vec v{ex, ey, F->add(F->frob(ex, 1), F->frob(ey, 2)),
                  F->add(F->add(F->frob(ex, 2), F->frob(ey, 1)), F->frob(ey, 2))};
      EXPECT_TRUE(U.contains_by_elimination(v));
    }
  Rng rng(41);
  for (int i = 0; i < 10; ++i) {
    const long long I = 1 + rng() % 3, J = 1 + (I + rng() % 2) % 3;
    FamilyParams P{F, I, J, random_elem(*F, rng, true), random_elem(*F, rng, true), random_elem(*F, rng, true)};
    EXPECT_EQ(build_subspace(P).dim(), 8u);
  }
}

TEST(Family, VerifyScatteredBmn) {
  auto F = make_field(2, 1, 4);
  auto r = verify_scattered(bmn(F));
  EXPECT_TRUE(r.gcd_ok);
  EXPECT_TRUE(r.p_root_free);
  EXPECT_TRUE(r.scattered);
  EXPECT_FALSE(r.contradiction);
  EXPECT_EQ(r.max_line_intersection, 1u);
  EXPECT_FALSE(lambda_witness(bmn(F)).has_value());
}

TEST(Family, RootedAtN8IsNotScattered) {
  auto F = make_field(2, 1, 8);
  const Elem g = F->generator();
  FamilyParams P{F, 1, 2, F->one(), F->add(F->one(), g), g};
  ASSERT_TRUE(p_has_root(P));
  auto w = lambda_witness(P);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(check_lambda_witness(P, *w));
  auto r = verify_scattered(P);
  EXPECT_TRUE(r.converse_applies);
  EXPECT_FALSE(r.scattered);
  EXPECT_FALSE(r.contradiction);
  ASSERT_TRUE(r.witness_line.has_value());
  EXPECT_GE(intersection_dim(build_subspace(P), *r.witness_line), 2u);
  // A tampered witness fails re-verification.
  ScatterWitness bad = *w;
  bad.lambda = F->one();
  EXPECT_FALSE(check_lambda_witness(P, bad));
}

TEST(Family, GcdViolationDrawsNoConclusion) {
  auto F = make_field(2, 1, 8);
  FamilyParams P{F, 2, 4, F->one(), F->one(), F->one()};
  auto r = verify_scattered(P);
  EXPECT_FALSE(r.gcd_ok);
  EXPECT_FALSE(r.contradiction);
}

TEST(Family, Evasive) {
  auto F = make_field(2, 1, 4);
  auto r = verify_evasive(bmn(F));
  EXPECT_TRUE(r.applies);
  EXPECT_EQ(r.bound, 4u);
  EXPECT_EQ(r.max_plane_intersection, 3u);
  EXPECT_TRUE(r.within_bound);
  EXPECT_FALSE(r.contradiction);
  ASSERT_TRUE(r.witness_plane.has_value());
  EXPECT_EQ(intersection_dim(build_subspace(bmn(F)), *r.witness_plane), 3u);
  // d_2 = 2n − max plane intersection.
  EXPECT_EQ(generalized_rank_weight(family_code(bmn(F)), 2), 8 - r.max_plane_intersection);
  EXPECT_GE(8 - r.max_plane_intersection, 2u * (4 - 2));
}

TEST(Family, CountRootFreeTriples) {
  auto F = make_field(2, 1, 4);
  auto t = count_root_free_triples(F, 1, 2);
  ASSERT_TRUE(t.lower_bound.has_value());
  EXPECT_EQ(*t.lower_bound, 15u);
  std::uint64_t oracle = 0;
  for (std::uint64_t c = 1; c < 16; ++c)
    for (std::uint64_t g = 1; g < 16; ++g) oracle += !has_root_by_powers(*F, 1, 2, F->element(c), F->element(g));
  EXPECT_EQ(t.root_free_pairs, oracle);
  EXPECT_EQ(t.exact, 15 * oracle);
  // Frozen regression values.
  EXPECT_EQ(t.root_free_pairs, 75u);
  EXPECT_EQ(t.exact, 1125u);
  EXPECT_GE(t.exact, *t.lower_bound);

  auto F3 = make_field(2, 1, 3);
  auto t3 = count_root_free_triples(F3, 1, 2);
  EXPECT_FALSE(t3.lower_bound.has_value());
  EXPECT_GT(t3.exact, 0u);
}

TEST(Family, CuttingAndIndecomposableAtN5) {
  auto F = make_field(2, 1, 5);
  Rng rng(42);
  int tested = 0;
  for (int i = 0; i < 40 && tested < 2; ++i) {
    FamilyParams P{F, 1, 2, random_elem(*F, rng, true), random_elem(*F, rng, true), random_elem(*F, rng, true)};
    if (p_has_root(P)) continue;
    ++tested;
    FqSubspace U = build_subspace(P);
    EXPECT_TRUE(is_cutting(U));
    EXPECT_TRUE(is_h_scattered(U, 1));
    EXPECT_TRUE(is_evasive(U, 2, 4));
    if (tested == 1) EXPECT_EQ(indecomposability_criterion(U, 1).verdict, Decomposability::Indecomposable);
  }
  EXPECT_EQ(tested, 2);
}

TEST(Family, OrdinaryDualParams) {
  auto F = make_field(2, 1, 4);
  auto d = ordinary_dual_params(bmn(F));
  EXPECT_EQ(d.params.I, 3);
  EXPECT_EQ(d.params.J, 2);
  EXPECT_EQ(d.params.alpha, F->one());
  EXPECT_EQ(d.params.beta, F->one());
  EXPECT_EQ(d.params.gamma, F->one());
  EXPECT_EQ(d.exact_dual.dim(), 8u);
  EXPECT_TRUE(apply_matrix(d.map, d.exact_dual).same_set(build_subspace(d.params)));

  Rng rng(43);
  for (auto G : {F, make_field(3, 1, 3), make_field(2, 1, 5)}) {
    for (int i = 0; i < 4; ++i) {
      const long long n = G->n();
      const long long I = 1 + rng() % (n - 1);
      long long J = 1 + rng() % (n - 1);
      if (J == I) J = I % (n - 1) + 1;
      FamilyParams P{G, I, J, random_elem(*G, rng, true), random_elem(*G, rng, true), random_elem(*G, rng, true)};
      auto dp = ordinary_dual_params(P);
      EXPECT_TRUE(dp.exact_dual.same_set(ordinary_dual(build_subspace(P))));
      EXPECT_TRUE(apply_matrix(dp.map, dp.exact_dual).same_set(build_subspace(dp.params)));
      // Dual twice, pulled back through both recorded maps, lands on U(P).
      auto dp2 = ordinary_dual_params(dp.params);
      EXPECT_EQ(dp2.params.I, P.I);
      EXPECT_EQ(dp2.params.J, P.J);
      const Matrix<Elem> M = mat_mul(*G, dp2.map, sigma_contragredient(*G, dp.map));
      EXPECT_TRUE(apply_matrix(M, build_subspace(P)).same_set(build_subspace(dp2.params)));
    }
  }
}

TEST(Family, EquivalenceSelf) {
  auto F = make_field(2, 1, 5);
  auto v = equivalence_verdict(bmn(F), bmn(F));
  EXPECT_EQ(v.tag, EquivTag::EquivalentByCorollary);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(v.witness_verified);
  EXPECT_TRUE(apply_matrix(diag4(*F, *v.witness), build_subspace(bmn(F))).same_set(build_subspace(bmn(F))));
}

TEST(Family, EquivalenceIndexPair) {
  auto F = make_field(2, 1, 5);
  Rng rng(44);
  for (int i = 0; i < 5; ++i) {
    FamilyParams a{F, 1, 2, random_elem(*F, rng, true), random_elem(*F, rng, true), random_elem(*F, rng, true)};
    FamilyParams b{F, 2, 1, random_elem(*F, rng, true), random_elem(*F, rng, true), random_elem(*F, rng, true)};
    EXPECT_EQ(equivalence_verdict(a, b).tag, EquivTag::InequivalentByIndexPair);
  }
  auto F4 = make_field(2, 1, 4);
  EXPECT_EQ(equivalence_verdict(bmn(F4), bmn(F4)).tag, EquivTag::Undetermined);
  EXPECT_EQ(error_code([&] { equivalence_verdict(bmn(F), bmn(F4)); }), Errc::HypothesisOutOfRange);
}

TEST(Family, EquivalenceWitnessesAreSound) {
  auto F = make_field(2, 1, 5);
  const FamilyParams p1 = bmn(F);
  int corollary = 0, inequivalent = 0;
  for (std::uint64_t b = 1; b < 32; b += 2)
    for (std::uint64_t g = 1; g < 32; g += 5) {
      FamilyParams p2{F, 1, 2, F->one(), F->element(b), F->element(g)};
      auto v = equivalence_verdict(p1, p2);
      if (v.tag == EquivTag::EquivalentByCorollary) {
        ++corollary;
        ASSERT_TRUE(v.witness.has_value());
        EXPECT_TRUE(apply_matrix(diag4(*F, *v.witness), build_subspace(p1)).same_set(build_subspace(p2)));
      }
      if (v.tag == EquivTag::InequivalentBySystem) {
        ++inequivalent;
        EXPECT_EQ(*v.kernel_dim, 0u);
      }
      EXPECT_FALSE(v.witness.has_value() && !v.witness_verified) << v.note;
    }
  EXPECT_GT(corollary, 0);
  EXPECT_GT(inequivalent, 0);
}

TEST(Family, Extension) {
  auto F = make_field(2, 1, 4);
  auto e = embed_extension(*F, 2);
  EXPECT_EQ(e.big->size(), 256u);
  Rng rng(45);
  for (int i = 0; i < 50; ++i) {
    const Elem a = random_elem(*F, rng), b = random_elem(*F, rng);
    EXPECT_EQ(e.map(*F, F->mul(a, b)), e.big->mul(e.map(*F, a), e.map(*F, b)));
    EXPECT_EQ(e.map(*F, F->add(a, b)), e.big->add(e.map(*F, a), e.map(*F, b)));
    EXPECT_EQ(e.map(*F, F->frob(a, 1)), e.big->frob(e.map(*F, a), 1));
  }
  auto one = verify_extension(bmn(F), 1);
  EXPECT_TRUE(one.scattered);
  auto two = verify_extension(bmn(F), 2);
  EXPECT_TRUE(two.gcd_ok);
  EXPECT_TRUE(two.p_root_free);
  EXPECT_TRUE(two.scattered);
  EXPECT_THROW(verify_extension(bmn(F), 2, Exec{0, 100}), Error);

  // A root-free cubic over F_16 is irreducible, so it stays root-free over F_256.
  int lifted = 0;
  for (std::uint64_t b = 1; b < 16; ++b)
    for (std::uint64_t g = 1; g < 16; ++g) {
      FamilyParams P{F, 1, 2, F->one(), F->element(b), F->element(g)};
      if (p_has_root(P)) continue;
      FamilyParams L{e.big, 1, 2, e.big->one(), e.map(*F, P.beta), e.map(*F, P.gamma)};
      EXPECT_FALSE(p_has_root(L));
      if (lifted++ % 25 == 0) EXPECT_TRUE(verify_extension(P, 2).scattered);
    }
  EXPECT_EQ(lifted, 75);
}
