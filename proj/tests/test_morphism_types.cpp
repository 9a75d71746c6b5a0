#include "support.hpp"

#include <gtest/gtest.h>

using namespace avt;
using namespace avt::testing;

namespace {

IntVector factors(const CheckReport &r) { return r.kernel->invariant_factors(); }

// Every element of F = M^-1 Z / Z is killed, checked one coset at a time.
bool killed_by_enumeration(const MorphismType &t) {
  return oracle::kernel_killed(t.m, t.p, t.d.dim(), 4096);
}

} // namespace

TEST(IsogenyChecker, DiagonalDegreeP) {
  for (long long p : {2, 3, 5, 7}) {
    const auto r = check_isogeny_type({p}, {1}, IntMatrix{{1, 0}, {0, p}});
    EXPECT_TRUE(r.valid);
    EXPECT_EQ(factors(r), IntVector{p});
    EXPECT_EQ(*r.det_sign, 1);
  }
}

TEST(IsogenyChecker, SymplecticMatricesHaveTrivialKernel) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = random_type(rng, 2);
    const auto r = check_isogeny_type(d, d, random_symplectic(d, 10, seed(rng)));
    EXPECT_TRUE(r.valid);
    EXPECT_TRUE(r.kernel->is_trivial());
  }
}

TEST(IsogenyChecker, WrongDegreeFailsGramEquation) {
  const auto r = check_isogeny_type({2}, {1}, IntMatrix::identity(2));
  EXPECT_FALSE(r.valid);
  EXPECT_TRUE(r.has_failure(failure::gram_equation));
  EXPECT_TRUE(r.kernel->is_trivial());
}

TEST(IsogenyChecker, NegativeDeterminantIsRecorded) {
  // transpose-type matrix with det -2: ^tM J M = -2 J
  const auto r = check_isogeny_type({2}, {1}, IntMatrix{{0, 1}, {2, 0}});
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(*r.det_sign, -1);
  EXPECT_EQ(factors(r), IntVector{2});
}

TEST(IsogenyChecker, ShapeErrors) {
  try {
    check_isogeny_type({1}, {1}, IntMatrix::identity(4));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeMismatch);
  }
}

TEST(IsogenyChecker, DeterminantLawOnRandomValidTypes) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = random_isogeny(rng, static_cast<std::size_t>(uniform(rng, 1, 3)));
    const auto r = check_isogeny_type(t);
    ASSERT_TRUE(r.valid);
    ASSERT_EQ(abs(det(t.matrix)) * t.target.product(), t.source.product());
    ASSERT_EQ(r.kernel->order(), abs(det(t.matrix)));
  }
}

TEST(EmbeddingChecker, ProductOfPrincipalCurves) {
  const IntMatrix m = product_embedding_matrix(1, 1);
  const auto r = check_embedding_type({1}, {1}, {1, 1}, m);
  EXPECT_TRUE(r.valid);
  EXPECT_TRUE(r.kernel->is_trivial());
  // the literal identity mixes the two pairings and fails the Gram equation
  const auto literal = check_embedding_type({1}, {1}, {1, 1}, IntMatrix::identity(4));
  EXPECT_FALSE(literal.valid);
  EXPECT_TRUE(literal.has_failure(failure::gram_product));
}

TEST(EmbeddingChecker, ProductEmbeddingIsValidForAnyChain) {
  EXPECT_TRUE(check_embedding_type({1}, {2}, {1, 2}, product_embedding_matrix(1, 1)).valid);
  EXPECT_TRUE(check_embedding_type({1, 2}, {2}, {1, 2, 2}, product_embedding_matrix(2, 1)).valid);
  EXPECT_TRUE(check_embedding_type({}, {3}, {3}, product_embedding_matrix(0, 1)).valid);
}

TEST(EmbeddingChecker, DiagonalQuotientFailsSaturation) {
  // L = Z^4 + Z (1/2, 0, 1/2, 0) in product coordinates for D = D' = (2) has
  // both halves of order 2; the element (1/2,0,0,0) is absent so both blocks
  // stay saturated. A lattice containing (1/2,0,0,0) breaks the X-block.
  const IntMatrix form = direct_sum(gram({2}), gram({2}));
  const auto good = overlattice(extend(Lattice::standard(4), {Rational(1, 2), 0, Rational(1, 2), 0}), form);
  ASSERT_TRUE(good);
  const auto rg = check_embedding_type({2}, {2}, good->type, good->matrix);
  EXPECT_TRUE(rg.valid);
  EXPECT_EQ(factors(rg), IntVector{2});

  const auto bad = overlattice(extend(Lattice::standard(4), {Rational(1, 2), 0, 0, 0}), form);
  ASSERT_TRUE(bad);
  const auto rb = check_embedding_type({2}, {2}, bad->type, bad->matrix);
  EXPECT_FALSE(rb.valid);
  EXPECT_TRUE(rb.has_failure(failure::saturation_x));
  EXPECT_FALSE(rb.has_failure(failure::saturation_xcomp));
  EXPECT_FALSE(rb.has_failure(failure::gram_product));
}

TEST(EmbeddingChecker, GramFailureIsNamed) {
  const auto r = check_embedding_type({1}, {1}, {1, 1}, IntMatrix{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  EXPECT_FALSE(r.valid);
  EXPECT_TRUE(r.has_failure(failure::gram_product));
}

TEST(EmbeddingChecker, RandomValidTypesAgreeWithEnumeration) {
  Rng rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = random_type(rng, 1, 4), dc = random_type(rng, 1, 4);
    const auto t = random_embedding(rng, d, dc);
    const auto r = check_embedding_type(t);
    ASSERT_TRUE(r.valid);
    const auto brute = oracle::sum_of_embeddings(t.matrix, 1, 1, 4096);
    ASSERT_TRUE(brute.x && brute.x_comp);
  }
}

TEST(MorphismChecker, PrincipalWithoutComplements) {
  const PolarizationType p1{1}, none{};
  const MorphismType t{p1, none, p1, p1, none, p1, IntMatrix::identity(2), IntMatrix::identity(2),
                       IntMatrix::identity(2)};
  const auto r = check_morphism_type(t);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(*r.induced_matrix, IntMatrix::identity(2));
  EXPECT_TRUE(r.kernel->is_trivial());
  EXPECT_TRUE(r.target_kernel->is_trivial());
}

TEST(MorphismChecker, PrincipalWithComplementsProjects) {
  const PolarizationType p1{1}, p11{1, 1};
  const IntMatrix m = product_embedding_matrix(1, 1);
  const MorphismType t{p1, p1, p11, p1, p1, p11, m, m, IntMatrix::identity(2)};
  const auto r = check_morphism_type(t);
  EXPECT_TRUE(r.valid);
  // projection onto the first factor in the ambient pairing
  EXPECT_EQ(*r.induced_matrix, (IntMatrix{{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}}));
}

TEST(MorphismChecker, PureIsogenyMatchesIsogenyChecker) {
  Rng rng(34);
  const PolarizationType none{};
  for (int trial = 0; trial < 40; ++trial) {
    const auto iso = random_isogeny(rng, static_cast<std::size_t>(uniform(rng, 1, 2)));
    const std::size_t n = iso.source.dim();
    IntMatrix p = iso.matrix;
    if (trial % 3 == 0) p(0, 0) += 1; // usually breaks the Gram equation
    const MorphismType t{iso.source, none, iso.source, iso.target, none, iso.target,
                         IntMatrix::identity(2 * n), IntMatrix::identity(2 * n), p};
    ASSERT_EQ(check_morphism_type(t).valid, check_isogeny_type(iso.source, iso.target, p).valid);
  }
}

TEST(MorphismChecker, DimensionErrors) {
  const PolarizationType p1{1}, p11{1, 1}, none{};
  const MorphismType clash{p1, p1, p11, p11, none, p11, IntMatrix::identity(4), IntMatrix::identity(4),
                           IntMatrix::identity(2)};
  try {
    check_morphism_type(clash);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionClash);
  }
  const MorphismType sizes{p1, p1, p11, p1, p1, p11, IntMatrix::identity(2), IntMatrix::identity(4),
                           IntMatrix::identity(2)};
  try {
    check_morphism_type(sizes);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeMismatch);
  }
}

TEST(MorphismChecker, KernelKillAgreesWithEnumeration) {
  Rng rng(35);
  int killed = 0, not_killed = 0;
  for (int trial = 0; trial < 160; ++trial) {
    const auto t = random_morphism(rng, {1, 1, 1}, trial % 2 == 0);
    const auto r = check_morphism_type(t);
    const bool brute = killed_by_enumeration(t);
    ASSERT_EQ(!r.has_failure(failure::kernel_kill), brute);
    ASSERT_EQ(r.valid, brute);
    (brute ? killed : not_killed)++;
    if (r.valid) {
      ASSERT_TRUE(r.induced_matrix);
      ASSERT_TRUE(r.factorization);
      const auto &[p_bar, rr] = *r.factorization;
      ASSERT_EQ(p_bar * rr, t.p);
      ASSERT_EQ(cokernel(rr), *r.kernel);
    }
  }
  EXPECT_GT(killed, 10);
  EXPECT_GT(not_killed, 3);
}

TEST(MorphismChecker, InducedMatrixCommutesWithTheSquare) {
  Rng rng(36);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = random_morphism(rng, {1, 1, 1}, true);
    const auto r = check_morphism_type(t);
    ASSERT_TRUE(r.valid);
    IntMatrix pz(t.n.rows(), t.m.cols());
    pz.set_block(0, 0, t.p);
    ASSERT_EQ(*r.induced_matrix * t.m, t.n * pz);
  }
}

TEST(KernelStructure, Examples) {
  EXPECT_EQ(kernel_structure(IntMatrix{{2, 0}, {0, 6}}).invariant_factors(), (IntVector{2, 6}));
  EXPECT_TRUE(kernel_structure(IntMatrix::identity(4)).is_trivial());
  Rng rng(37);
  int done = 0;
  while (done < 30) {
    const IntMatrix m = random_matrix(rng, 3, 3, -5, 5);
    if (det(m) == 0) continue;
    EXPECT_EQ(kernel_structure(m).order(), abs(det(m)));
    ++done;
  }
  try {
    kernel_structure(IntMatrix{{1, 2}, {2, 4}});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Singular);
  }
}

TEST(EllipticCanonical, Examples) {
  EXPECT_EQ(elliptic_canonical(IntMatrix{{1, 0}, {0, 6}}), (EllipticCanonical{1, 6}));
  EXPECT_EQ(elliptic_canonical(IntMatrix{{2, 2}, {0, 2}}), (EllipticCanonical{2, 2}));
  try {
    elliptic_canonical(IntMatrix::identity(3));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTwoByTwo);
  }
  try {
    elliptic_canonical(IntMatrix{{1, 1}, {1, 1}});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Singular);
  }
}

TEST(EllipticCanonical, ConstantOnUnimodularOrbits) {
  Rng rng(38);
  int done = 0;
  while (done < 100) {
    const IntMatrix m = random_matrix(rng, 2, 2, -6, 6);
    if (det(m) == 0) continue;
    const auto c = elliptic_canonical(m);
    ASSERT_EQ(c.d1 * c.d2, abs(det(m)));
    ASSERT_EQ(c.d2 % c.d1, 0);
    ASSERT_EQ(elliptic_canonical(random_unimodular(rng, 2) * m * random_unimodular(rng, 2)), c);
    ++done;
  }
}

TEST(HeckeFactor, Examples) {
  const IntMatrix m{{1, 0}, {0, 6}};
  const auto f = hecke_factor(m, 3);
  EXPECT_EQ(f.g * f.u, m);
  EXPECT_EQ(elliptic_canonical(f.u), (EllipticCanonical{1, 2}));
  EXPECT_EQ(elliptic_canonical(f.g), (EllipticCanonical{1, 3}));

  for (long long p : {2, 3, 5}) {
    const IntMatrix mp{{1, 0}, {0, p}};
    const auto fp = hecke_factor(mp, p);
    EXPECT_EQ(elliptic_canonical(fp.u), (EllipticCanonical{1, 1}));
    EXPECT_EQ(fp.g, mp);
    EXPECT_EQ(fp.g * fp.u, mp);
  }
}

TEST(HeckeFactor, RejectsInadmissibleDivisors) {
  for (auto [m, p] : std::vector<std::pair<IntMatrix, long long>>{
           {IntMatrix{{1, 0}, {0, 6}}, 4},
           {IntMatrix{{1, 0}, {0, 4}}, 2},
           {IntMatrix{{2, 0}, {0, 4}}, 2},
           {IntMatrix{{1, 0}, {0, 6}}, 0}}) {
    try {
      hecke_factor(m, p);
      FAIL() << m << " p=" << p;
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::BadDivisor);
    }
  }
}

TEST(Stabilizer, IdentityAndLowerUnipotent) {
  const IsogenyType t{{1}, {1}, IntMatrix::identity(2)};
  const auto id = is_in_stabilizer(IntMatrix::identity(2), t);
  EXPECT_TRUE(id.in_stabilizer);
  EXPECT_EQ(*id.image, IntMatrix::identity(2));

  for (long long p : {2, 3, 5}) {
    const IsogenyType tp{{p}, {1}, IntMatrix{{1, 0}, {0, p}}};
    const auto lower = is_in_stabilizer(IntMatrix{{1, 0}, {p, 1}}, tp);
    ASSERT_TRUE(lower.in_stabilizer);
    EXPECT_EQ(*lower.image, (IntMatrix{{1, 0}, {p * p, 1}}));
    EXPECT_EQ((tp.matrix * IntMatrix{{1, 0}, {p, 1}}), *lower.image * tp.matrix);
    EXPECT_FALSE(is_in_stabilizer(IntMatrix{{1, 1}, {0, 1}}, tp).in_stabilizer);
    EXPECT_FALSE(is_in_stabilizer(IntMatrix{{2, 0}, {0, 1}}, tp).in_stabilizer);
  }
}

TEST(Stabilizer, AcceptedElementsFormAGroup) {
  Rng rng(39);
  const IsogenyType t{{3}, {1}, IntMatrix{{1, 0}, {0, 3}}};
  std::vector<IntMatrix> accepted;
  for (int trial = 0; trial < 400 && accepted.size() < 12; ++trial) {
    const IntMatrix a = random_symplectic({3}, static_cast<std::size_t>(uniform(rng, 1, 5)), seed(rng));
    if (is_in_stabilizer(a, t).in_stabilizer) accepted.push_back(a);
  }
  ASSERT_GE(accepted.size(), 4U);
  for (const auto &a : accepted) {
    EXPECT_TRUE(is_in_stabilizer(unimodular_inverse(a), t).in_stabilizer);
    for (const auto &b : accepted) EXPECT_TRUE(is_in_stabilizer(a * b, t).in_stabilizer);
  }
}

TEST(Equivalence, IdentityWitnessesFixTheDatum) {
  Rng rng(40);
  const auto iso = random_isogeny(rng, 2);
  EXPECT_EQ(apply_equivalence(iso, {IntMatrix::identity(4), IntMatrix::identity(4)}), iso);
  const auto t = random_morphism(rng, {1, 1, 1}, true);
  const MorphismWitness id{IntMatrix::identity(2), IntMatrix::identity(2), IntMatrix::identity(4),
                           IntMatrix::identity(2), IntMatrix::identity(2), IntMatrix::identity(4)};
  EXPECT_EQ(apply_equivalence(t, id), t);
}

TEST(Equivalence, PreservesValidityAndKernels) {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto iso = random_isogeny(rng, 2);
    const auto moved = apply_equivalence(
        iso, {random_symplectic(iso.source, 12, seed(rng)), random_symplectic(iso.target, 12, seed(rng))});
    const auto r0 = check_isogeny_type(iso), r1 = check_isogeny_type(moved);
    ASSERT_TRUE(r1.valid);
    ASSERT_EQ(r0.kernel, r1.kernel);

    const auto t = random_morphism(rng, {1, 1, 1}, trial % 2 == 0);
    const auto mt = apply_equivalence(t, random_witness(rng, t, 12));
    const auto s0 = check_morphism_type(t), s1 = check_morphism_type(mt);
    ASSERT_EQ(s0.valid, s1.valid);
    ASSERT_EQ(s0.failures, s1.failures);
    ASSERT_EQ(s0.kernel, s1.kernel);
    ASSERT_EQ(s0.target_kernel, s1.target_kernel);
  }
}

TEST(Equivalence, IsAGroupAction) {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const auto iso = random_isogeny(rng, 2);
    const IsogenyWitness w1{random_symplectic(iso.source, 6, seed(rng)), random_symplectic(iso.target, 6, seed(rng))};
    const IsogenyWitness w2{random_symplectic(iso.source, 6, seed(rng)), random_symplectic(iso.target, 6, seed(rng))};
    EXPECT_EQ(apply_equivalence(apply_equivalence(iso, w1), w2),
              apply_equivalence(iso, {w2.a * w1.a, w2.b * w1.b}));

    const auto emb = random_embedding(rng, {1}, {2});
    const EmbeddingWitness e1{random_symplectic(emb.sub, 6, seed(rng)), random_symplectic(emb.complement, 6, seed(rng)),
                              random_symplectic(emb.ambient, 6, seed(rng))};
    const EmbeddingWitness e2{random_symplectic(emb.sub, 6, seed(rng)), random_symplectic(emb.complement, 6, seed(rng)),
                              random_symplectic(emb.ambient, 6, seed(rng))};
    EXPECT_EQ(apply_equivalence(apply_equivalence(emb, e1), e2),
              apply_equivalence(emb, {e2.a * e1.a, e2.a_comp * e1.a_comp, e2.b * e1.b}));
  }
}

TEST(Equivalence, RejectsNonSymplecticWitnesses) {
  const IsogenyType t{{2}, {1}, IntMatrix{{1, 0}, {0, 2}}};
  try {
    apply_equivalence(t, {IntMatrix{{1, 0}, {0, 2}}, IntMatrix::identity(2)});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSymplectic);
  }
}
