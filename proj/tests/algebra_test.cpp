#include <gtest/gtest.h>

#include <set>

#include "prolie/algebra.hpp"
#include "prolie/catalog.hpp"
#include "prolie/structure.hpp"
#include "support.hpp"

using namespace prolie;
using namespace prolie::testing;

namespace {

// Killing form straight from the structure constants: B(e_i, e_j) = sum_{k,l} c(i,k,l) c(j,l,k).
ExactMatrix killing_oracle(const LieAlgebra& g) {
  const Index n = g.dim();
  ExactMatrix b = zero_matrix<Scalar>(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Scalar s;
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) s += g.constant(i, k, l) * g.constant(j, l, k);
      b(i, j) = s;
    }
  return b;
}

Element el(const LieAlgebra& g, std::initializer_list<std::pair<const char*, Rational>> terms) {
  Element v = g.zero();
  for (const auto& [l, c] : terms) v(g.index_of(l)) += c;
  return v;
}

bool is_zero_bracket(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < b.dim(); ++j)
      if (!is_zero_vector(g.bracket(a.row(i), b.row(j)))) return false;
  return true;
}

}  // namespace

TEST(Validate, CatalogAlgebrasAreValidAndReal) {
  for (const auto& g : {catalog::abelian(4), catalog::mot2(), catalog::osc(), catalog::heisenberg(), catalog::affine_line(),
                        catalog::sl2(), catalog::sl2_rotation_basis(), catalog::so3(), catalog::sl2_ltimes_R2(),
                        catalog::filiform(5)}) {
    EXPECT_TRUE(validate(g).valid) << g.name();
    EXPECT_TRUE(g.is_real()) << g.name();
  }
  EXPECT_TRUE(validate(catalog::sl2_complex()).valid);
}

TEST(Validate, InjectedBracketBreaksJacobiOnUPQ) {
  LieAlgebra g = catalog::mot2();
  g.set_bracket(g.index_of("P"), g.index_of("Q"), g.basis(g.index_of("P")));
  ValidationReport r = validate(g);
  ASSERT_FALSE(r.valid);
  ASSERT_FALSE(r.jacobi_violations.empty());
  std::set<Index> want{g.index_of("U"), g.index_of("P"), g.index_of("Q")};
  bool found = false;
  for (const auto& v : r.jacobi_violations) found = found || std::set<Index>{v.i, v.j, v.k} == want;
  EXPECT_TRUE(found);
}

TEST(Validate, DenseTableChecksAntisymmetryAndShape) {
  const Index n = 3;
  std::vector<std::vector<std::vector<Scalar>>> c(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
  EXPECT_TRUE(validate_dense({"a", "b", "c"}, c).valid);
  c[0][1][2] = 1;  // [a,b] = c without [b,a] = -c
  ValidationReport r = validate_dense({"a", "b", "c"}, c);
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(r.antisymmetry_violations.empty());
  c[1][0][2] = -1;
  EXPECT_TRUE(validate_dense({"a", "b", "c"}, c).valid);
  EXPECT_THROW(validate_dense({"a", "b"}, c), AlgebraError);
  EXPECT_THROW(LieAlgebra::from_dense({"a", "b"}, c), AlgebraError);
}

TEST(Bracket, Mot2Table) {
  LieAlgebra g = catalog::mot2();
  EXPECT_TRUE(equal(g.bracket(el(g, {{"U", 1}}), el(g, {{"P", 1}})), el(g, {{"Q", 1}})));
  EXPECT_TRUE(equal(g.bracket(el(g, {{"U", 1}}), el(g, {{"Q", 1}})), el(g, {{"P", -1}})));
  EXPECT_TRUE(is_zero_vector(g.bracket(el(g, {{"P", 1}}), el(g, {{"Q", 1}}))));
  // ad U on span{P, Q} is the rotation generator
  ExactMatrix ad = g.ad(el(g, {{"U", 1}}));
  const Index P = g.index_of("P"), Q = g.index_of("Q");
  EXPECT_EQ(ad(P, P), Scalar(0));
  EXPECT_EQ(ad(P, Q), Scalar(-1));
  EXPECT_EQ(ad(Q, P), Scalar(1));
  EXPECT_EQ(ad(Q, Q), Scalar(0));
  EXPECT_TRUE(is_zero_matrix(g.ad(g.zero())));
}

TEST(Bracket, RandomAntisymmetryAndSelfBracket) {
  Rng rng(11);
  for (const auto& g : {catalog::osc(), catalog::sl2_ltimes_R2(), catalog::filiform(6)}) {
    for (int s = 0; s < 20; ++s) {
      Element x = random_vector(rng, g.dim()), y = random_vector(rng, g.dim());
      EXPECT_TRUE(is_zero_vector(g.bracket(x, x)));
      EXPECT_TRUE(is_zero_vector(multiply(g.ad(x), x)));
      EXPECT_TRUE(equal(g.bracket(x, y), Element(-g.bracket(y, x))));
    }
  }
}

TEST(FromMatrices, Sl2RotationBasisAgreesWithCommutators) {
  auto mats = catalog::sl2_rotation_matrices();
  LieAlgebra g = catalog::sl2_rotation_basis();
  ASSERT_EQ(mats.size(), 3u);
  // labels P, Q, U in that order; [P,Q] = -U follows from the matrices
  const Index P = g.index_of("P"), Q = g.index_of("Q"), U = g.index_of("U");
  EXPECT_TRUE(equal(commutator(mats[P], mats[Q]), ExactMatrix(-mats[U])));
  EXPECT_TRUE(equal(g.bracket(g.basis(P), g.basis(Q)), Element(-g.basis(U))));
  EXPECT_TRUE(equal(g.bracket(g.basis(U), g.basis(P)), g.basis(Q)));
  EXPECT_TRUE(equal(g.bracket(g.basis(U), g.basis(Q)), Element(-g.basis(P))));
}

TEST(FromMatrices, RandomClosuresMatchCommutatorOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    auto f = static_cast<SolvableFamily>(trial % 5);
    auto basis = matrix_closure({family_element(f, rng), family_element(f, rng)});
    LieAlgebra g = catalog::from_matrices(labels(static_cast<Index>(basis.size())), basis);
    ASSERT_TRUE(validate(g).valid);
    ExactMatrix cols(basis.front().size(), static_cast<Index>(basis.size()));
    for (size_t k = 0; k < basis.size(); ++k) cols.col(static_cast<Index>(k)) = flatten(basis[k]);
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) {
        auto coords = solve(cols, flatten(commutator(basis[i], basis[j])));
        ASSERT_TRUE(coords.has_value());
        EXPECT_TRUE(equal(*coords, g.bracket(g.basis(static_cast<Index>(i)), g.basis(static_cast<Index>(j)))));
      }
  }
  EXPECT_THROW(catalog::from_matrices({"a", "b"}, {catalog::sl2_matrices()[1], catalog::sl2_matrices()[2]}), AlgebraError);
}

TEST(Killing, Sl2Values) {
  LieAlgebra g = catalog::sl2();
  ExactMatrix b = killing_form(g);
  const Index H = g.index_of("H"), E = g.index_of("E"), F = g.index_of("F");
  EXPECT_EQ(b(H, H), Scalar(8));
  EXPECT_EQ(b(E, F), Scalar(4));
  EXPECT_EQ(b(E, E), Scalar(0));
  EXPECT_TRUE(equal(b, killing_oracle(g)));
  EXPECT_EQ(signature(b), (Signature{2, 1, 0}));
}

TEST(Killing, SignaturesAndDegenerateCases) {
  EXPECT_EQ(signature(killing_form(catalog::sl2_rotation_basis())), (Signature{2, 1, 0}));
  EXPECT_EQ(signature(killing_form(catalog::so3())), (Signature{0, 3, 0}));
  EXPECT_TRUE(is_zero_matrix(killing_form(catalog::heisenberg())));
  EXPECT_TRUE(is_zero_matrix(killing_form(catalog::abelian(3))));
  EXPECT_TRUE(is_semisimple(catalog::so3()));
  EXPECT_FALSE(is_semisimple(catalog::mot2()));
}

TEST(Killing, MatchesOracleAfterBasisChange) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    LieAlgebra g = scramble(t % 2 ? catalog::sl2_ltimes_R2() : catalog::osc(), rng);
    EXPECT_TRUE(equal(killing_form(g), killing_oracle(g)));
  }
}

TEST(Series, DerivedAndLowerCentral) {
  auto dims = [](const std::vector<Subspace>& s) {
    std::vector<Index> d;
    for (const auto& x : s) d.push_back(x.dim());
    return d;
  };
  for (const auto& g : {catalog::heisenberg(), catalog::mot2(), catalog::sl2(), catalog::filiform(5), catalog::osc()}) {
    for (auto s : {derived_series(g), lower_central_series(g)}) {
      auto d = dims(s);
      ASSERT_GE(d.size(), 2u);
      EXPECT_EQ(d.front(), g.dim());
      // stops at the first repeat, or at zero
      EXPECT_TRUE(d.back() == 0 || d[d.size() - 1] == d[d.size() - 2]) << g.name();
      for (size_t k = 0; k + 2 < d.size(); ++k) EXPECT_GT(d[k], d[k + 1]);
      if (d.back() == 0) EXPECT_GT(d[d.size() - 2], 0);
      for (const auto& x : s) EXPECT_TRUE(x.is_ideal);
    }
  }
  EXPECT_EQ(dims(lower_central_series(catalog::heisenberg())).back(), 0);
  EXPECT_EQ(dims(derived_series(catalog::mot2()))[1], 2);
  EXPECT_EQ(dims(lower_central_series(catalog::mot2())).back(), 2);
  EXPECT_EQ(dims(derived_series(catalog::sl2())).back(), 3);
  EXPECT_EQ(nilpotency_class(catalog::filiform(5)), 4);
  EXPECT_EQ(nilpotency_class(catalog::heisenberg()), 2);
  EXPECT_EQ(nilpotency_class(catalog::abelian(2)), 1);
  EXPECT_FALSE(nilpotency_class(catalog::mot2()).has_value());
  EXPECT_EQ(derived_length(catalog::osc()), 3);
  EXPECT_FALSE(derived_length(catalog::sl2()).has_value());
}

TEST(Radical, Examples) {
  LieAlgebra g = catalog::sl2_ltimes_R2();
  Subspace r = radical(g);
  EXPECT_EQ(r, make_subspace(g, {el(g, {{"x", 1}}), el(g, {{"y", 1}})}));
  EXPECT_EQ(radical(catalog::sl2()).dim(), 0);
  EXPECT_EQ(radical(catalog::mot2()), whole(catalog::mot2()));
}

TEST(Radical, ContainsRandomSolvableIdeals) {
  Rng rng(17);
  std::vector<LieAlgebra> pool{catalog::sl2_ltimes_R2(), direct_sum(catalog::sl2(), catalog::mot2()),
                               direct_sum(catalog::so3(), catalog::heisenberg()), catalog::osc()};
  for (const auto& base : pool) {
    LieAlgebra g = scramble(base, rng);
    Subspace r = radical(g);
    EXPECT_TRUE(r.is_ideal);
    EXPECT_TRUE(is_solvable(restrict_to(g, r)));
    for (int t = 0; t < 40; ++t) {
      std::vector<Element> gens{random_vector(rng, g.dim())};
      if (t % 3 == 0) gens.push_back(random_vector(rng, g.dim()));
      // sparse candidates hit the small ideals
      for (auto& v : gens)
        for (Index k = 0; k < v.size(); ++k)
          if (rng() % 2) v(k) = 0;
      Subspace i = generated_ideal(g, gens);
      if (i.dim() == 0 || !is_solvable(restrict_to(g, i))) continue;
      EXPECT_TRUE(contains(r.basis, i.basis));
    }
    EXPECT_TRUE(contains(r.basis, radical(g).basis));
  }
}

TEST(Levi, Sl2LtimesR2AfterBasisChange) {
  Rng rng(23);
  for (int t = 0; t < 8; ++t) {
    LieAlgebra g = t == 0 ? catalog::sl2_ltimes_R2() : scramble(catalog::sl2_ltimes_R2(), rng);
    LeviDecomposition d = levi_decomposition(g);
    EXPECT_EQ(d.radical.dim(), 2);
    ASSERT_EQ(d.levi_factor.dim(), 3);
    EXPECT_TRUE(d.levi_factor.is_subalgebra);
    // complementarity
    Echelon<Scalar> both = sum(d.radical.basis, d.levi_factor.basis);
    EXPECT_EQ(both.rank(), g.dim());
    LieAlgebra s = restrict_to(g, d.levi_factor);
    EXPECT_EQ(signature(killing_form(s)).zero, 0);
    EXPECT_TRUE(is_sl2R(g, d.levi_factor));
  }
}

TEST(Levi, TrivialCases) {
  LieAlgebra s = catalog::so3();
  LeviDecomposition d = levi_decomposition(s);
  EXPECT_EQ(d.radical.dim(), 0);
  EXPECT_EQ(d.levi_factor.dim(), 3);
  LieAlgebra r = catalog::osc();
  d = levi_decomposition(r);
  EXPECT_EQ(d.radical.dim(), 4);
  EXPECT_EQ(d.levi_factor.dim(), 0);
  Rng rng(29);
  LieAlgebra m = scramble(direct_sum(catalog::sl2(), catalog::osc()), rng);
  d = levi_decomposition(m);
  EXPECT_EQ(d.radical.dim(), 4);
  EXPECT_TRUE(is_sl2R(m, d.levi_factor));
}

TEST(SimpleIdeals, DirectSums) {
  Rng rng(31);
  for (const auto& base : {direct_sum(catalog::sl2(), catalog::so3()), direct_sum(catalog::sl2(), catalog::sl2())}) {
    LieAlgebra g = scramble(base, rng);
    auto ideals = simple_ideals(g);
    ASSERT_EQ(ideals.size(), 2u);
    Index total = 0;
    for (const auto& i : ideals) {
      EXPECT_TRUE(i.is_ideal);
      total += i.dim();
    }
    EXPECT_EQ(total, g.dim());
    EXPECT_TRUE(is_zero_bracket(g, ideals[0], ideals[1]));
  }
  LieAlgebra g = direct_sum(catalog::sl2(), catalog::so3());
  auto ideals = simple_ideals(g);
  int sl2_count = 0;
  std::set<std::pair<int, int>> sigs;
  for (const auto& i : ideals) {
    sl2_count += is_sl2R(g, i);
    Signature s = signature(killing_form(restrict_to(g, i)));
    sigs.insert({s.positive, s.negative});
  }
  EXPECT_EQ(sl2_count, 1);
  EXPECT_EQ(sigs.size(), 2u);
  ASSERT_EQ(simple_ideals(catalog::so3()).size(), 1u);
  EXPECT_EQ(simple_ideals(catalog::so3())[0], whole(catalog::so3()));
  EXPECT_THROW(simple_ideals(catalog::mot2()), AlgebraError);
}

TEST(Sl2Recognition, InvariantUnderBasisChange) {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    EXPECT_TRUE(is_sl2R(scramble(catalog::sl2(), rng)));
    EXPECT_TRUE(is_sl2R(scramble(catalog::sl2_rotation_basis(), rng)));
    EXPECT_FALSE(is_sl2R(scramble(catalog::so3(), rng)));
  }
  LieAlgebra r = realification(catalog::sl2_complex());
  EXPECT_FALSE(is_sl2R(r));
  EXPECT_EQ(simple_tag(catalog::so3()), "so3");
  EXPECT_EQ(simple_tag(catalog::sl2()), "sl2R");
}

TEST(Contractibility, Examples) {
  EXPECT_TRUE(contractibility_check(catalog::osc()).contractible);
  EXPECT_TRUE(contractibility_check(catalog::sl2_ltimes_R2()).contractible);
  auto so3 = contractibility_check(catalog::so3());
  EXPECT_FALSE(so3.contractible);
  EXPECT_EQ(so3.witness_tag, "so3");
  LieAlgebra g = direct_sum(catalog::sl2(), catalog::so3());
  auto mixed = contractibility_check(g);
  EXPECT_FALSE(mixed.contractible);
  EXPECT_EQ(mixed.witness_tag, "so3");
  ASSERT_TRUE(mixed.witness.has_value());
  EXPECT_EQ(mixed.witness->dim(), 3);
  EXPECT_FALSE(is_sl2R(g, *mixed.witness));
}

TEST(Quotient, ProjectionIsHomomorphism) {
  Rng rng(41);
  std::vector<std::pair<LieAlgebra, bool>> cases{{catalog::osc(), false}, {catalog::sl2_ltimes_R2(), true}, {catalog::filiform(5), false}};
  for (const auto& [g, by_radical] : cases) {
    ExactMatrix p;
    LieAlgebra q = quotient(g, by_radical ? radical(g) : derived_series(g)[1], &p);
    EXPECT_TRUE(validate(q).valid);
    for (int s = 0; s < 10; ++s) {
      Element x = random_vector(rng, g.dim()), y = random_vector(rng, g.dim());
      EXPECT_TRUE(equal(multiply(p, g.bracket(x, y)), q.bracket(multiply(p, x), multiply(p, y))));
    }
  }
  ExactMatrix p;
  LieAlgebra h = quotient(catalog::heisenberg(), lower_central_series(catalog::heisenberg())[1], &p);
  EXPECT_EQ(h.dim(), 2);
  EXPECT_TRUE(is_zero_matrix(killing_form(h)));
  EXPECT_TRUE(is_nilpotent(h) && nilpotency_class(h) == 1);
}

TEST(Morphism, HomomorphismAndRank) {
  auto g = std::make_shared<const LieAlgebra>(catalog::osc());
  auto q = std::make_shared<const LieAlgebra>(catalog::mot2());
  // osc -> mot2 killing Z; labels U, P, Q agree
  ExactMatrix m = zero_matrix<Scalar>(3, 4);
  for (Index k = 0; k < 3; ++k) m(q->index_of(q->labels()[static_cast<size_t>(k)]), g->index_of(q->labels()[static_cast<size_t>(k)])) = 1;
  Morphism f{g, q, m};
  EXPECT_TRUE(f.is_homomorphism());
  EXPECT_TRUE(f.is_surjective());
  EXPECT_EQ(f.kernel().dim(), 1);
  Morphism bad{g, q, ExactMatrix(Scalar(2) * m)};
  EXPECT_FALSE(bad.is_homomorphism());
}

TEST(Realification, Sl2Complex) {
  LieAlgebra r = realification(catalog::sl2_complex());
  EXPECT_EQ(r.dim(), 6);
  EXPECT_TRUE(r.is_real());
  EXPECT_TRUE(validate(r).valid);
  EXPECT_TRUE(is_semisimple(r));
  EXPECT_EQ(simple_ideals(r).size(), 1u);
  EXPECT_EQ(simple_tag(r), "simple6");
  EXPECT_FALSE(contractibility_check(r).contractible);
}
