#include <gtest/gtest.h>

#include "prolie/bch.hpp"
#include "prolie/catalog.hpp"
#include "prolie/grouplaw.hpp"
#include "prolie/structure.hpp"
#include "support.hpp"

using namespace prolie;
using namespace prolie::testing;

namespace {

// Finite exp/log series for nilpotent rational matrices.
ExactMatrix exp_nil(const ExactMatrix& x) {
  const Index n = x.rows();
  ExactMatrix out = identity_matrix<Scalar>(n), term = out;
  for (Index k = 1; k <= n; ++k) {
    term = Scalar(Rational(1, static_cast<long>(k))) * multiply(term, x);
    out += term;
  }
  return out;
}

ExactMatrix log_unipotent(const ExactMatrix& g) {
  const Index n = g.rows();
  ExactMatrix nil = g - identity_matrix<Scalar>(n), pw = nil, out = zero_matrix<Scalar>(n, n);
  for (Index k = 1; k <= n; ++k) {
    out += Scalar(Rational(k % 2 ? 1 : -1, static_cast<long>(k))) * pw;
    pw = multiply(pw, nil);
  }
  return out;
}

struct MatrixAlgebra {
  LieAlgebra g;
  std::vector<ExactMatrix> basis;
  ExactMatrix cols;  // flattened basis as columns

  ExactMatrix to_matrix(const Element& x) const {
    ExactMatrix m = zero_matrix<Scalar>(basis[0].rows(), basis[0].cols());
    for (Index k = 0; k < x.size(); ++k) m += x(k) * basis[static_cast<size_t>(k)];
    return m;
  }
  Element from_matrix(const ExactMatrix& m) const { return *solve(cols, flatten(m)); }
};

// Strictly upper triangular n x n matrices: nilpotent of class n - 1.
MatrixAlgebra strictly_upper(Index n) {
  MatrixAlgebra a;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      ExactMatrix m = zero_matrix<Scalar>(n, n);
      m(i, j) = 1;
      a.basis.push_back(m);
    }
  a.g = catalog::from_matrices(labels(static_cast<Index>(a.basis.size())), a.basis);
  a.cols = ExactMatrix(n * n, static_cast<Index>(a.basis.size()));
  for (size_t k = 0; k < a.basis.size(); ++k) a.cols.col(static_cast<Index>(k)) = flatten(a.basis[k]);
  return a;
}

Element unit(const LieAlgebra& g, const char* l) { return g.basis(g.index_of(l)); }

Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  int s = std::max(0, static_cast<int>(std::ceil(std::log2(std::max(a.norm(), 1e-300)))) + 1);
  Eigen::MatrixXd b = a / std::pow(2.0, s), term = Eigen::MatrixXd::Identity(a.rows(), a.cols()), e = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / k;
    e += term;
  }
  for (int i = 0; i < s; ++i) e = e * e;
  return e;
}

}  // namespace

TEST(Bch, UnitAndLowDegrees) {
  Rng rng(1);
  LieAlgebra g = catalog::filiform(6);
  for (int s = 0; s < 10; ++s) {
    Element x = random_vector(rng, 6), y = random_vector(rng, 6);
    EXPECT_TRUE(equal(bch(g, x, g.zero()), x));
    EXPECT_TRUE(equal(bch(g, g.zero(), y), y));
    EXPECT_TRUE(equal(bch(g, x, y, 2), Element(x + y + Scalar(Rational(1, 2)) * g.bracket(x, y))));
    EXPECT_TRUE(equal(bch_component(g, x, y, 1), Element(x + y)));
    // degree 3: ([x,[x,y]] + [y,[y,x]]) / 12
    Element c3 = Scalar(Rational(1, 12)) * (g.bracket(x, g.bracket(x, y)) + g.bracket(y, g.bracket(y, x)));
    EXPECT_TRUE(equal(bch_component(g, x, y, 3), c3));
    // degree 4: -[y,[x,[x,y]]] / 24
    Element c4 = Scalar(Rational(-1, 24)) * g.bracket(y, g.bracket(x, g.bracket(x, y)));
    EXPECT_TRUE(equal(bch_component(g, x, y, 4), c4));
  }
  EXPECT_THROW(bch(g, g.zero(), g.zero(), 0), AlgebraError);
  EXPECT_THROW(bch(catalog::mot2(), catalog::mot2().zero(), catalog::mot2().zero()), AlgebraError);
}

TEST(Bch, HeisenbergHandExpansion) {
  LieAlgebra h = catalog::heisenberg();
  Element P = unit(h, "P"), Q = unit(h, "Q"), Z = unit(h, "Z");
  Element pq = bch(h, P, Q, 2);
  EXPECT_TRUE(equal(pq, Element(P + Q + Scalar(Rational(1, 2)) * Z)));
  Element back = bch(h, bch(h, pq, Element(-P), 2), Element(-Q), 2);
  EXPECT_TRUE(equal(back, Z));
}

TEST(Bch, MatchesExactMatrixLogarithm) {
  Rng rng(2);
  for (Index n = 3; n <= 6; ++n) {
    MatrixAlgebra a = strictly_upper(n);
    ASSERT_EQ(nilpotency_class(a.g), n - 1);
    for (int s = 0; s < 6; ++s) {
      Element x = random_vector(rng, a.g.dim(), 3, 2), y = random_vector(rng, a.g.dim(), 3, 2);
      ExactMatrix oracle = log_unipotent(multiply(exp_nil(a.to_matrix(x)), exp_nil(a.to_matrix(y))));
      EXPECT_TRUE(equal(bch(a.g, x, y), a.from_matrix(oracle))) << "n = " << n;
    }
  }
}

TEST(Bch, AssociativityInverseAndOneParameter) {
  Rng rng(3);
  std::vector<LieAlgebra> pool{catalog::heisenberg(), catalog::filiform(4), catalog::filiform(6),
                               scramble(strictly_upper(5).g, rng), scramble(strictly_upper(6).g, rng)};
  for (const auto& g : pool) {
    ASSERT_LE(*nilpotency_class(g), 5);
    for (int s = 0; s < 5; ++s) {
      Element x = random_vector(rng, g.dim(), 2, 2), y = random_vector(rng, g.dim(), 2, 2), z = random_vector(rng, g.dim(), 2, 2);
      EXPECT_TRUE(equal(bch(g, bch(g, x, y), z), bch(g, x, bch(g, y, z)))) << g.name();
      EXPECT_TRUE(is_zero_vector(bch(g, x, Element(-x))));
      Rational a = random_rational(rng), b = random_rational(rng);
      EXPECT_TRUE(equal(bch(g, Element(Scalar(a) * x), Element(Scalar(b) * x)), Element(Scalar(Rational(a + b)) * x)));
    }
  }
}

TEST(Bch, AxiomSuite) {
  AxiomReport h = check_local_group_axioms(catalog::heisenberg(), 100, 1);
  EXPECT_EQ(h.samples, 100);
  EXPECT_TRUE(h.all());
  EXPECT_TRUE(h.counterexamples.empty());
  AxiomReport f = check_local_group_axioms(catalog::filiform(4), 100, 2);
  EXPECT_TRUE(f.all());
  EXPECT_EQ(*nilpotency_class(catalog::filiform(4)), 3);
}

TEST(PhiLaw, HeisenbergExample) {
  LieAlgebra h = catalog::heisenberg();
  Element P = unit(h, "P"), Q = unit(h, "Q"), Z = unit(h, "Z");
  PhiLaw law = PhiLaw::exact(h, {P, Q});
  EXPECT_EQ(law.backend(), PhiLaw::Backend::ExactNilpotent);
  EXPECT_EQ(law.commutator_ideal().dim(), 1);
  PhiCoordinates a{h.zero(), P}, b{h.zero(), Q};
  PhiCoordinates ab = phi_multiply(law, a, b);
  EXPECT_TRUE(equal(ab.e_part, Element(P + Q)));
  EXPECT_TRUE(equal(ab.n_part, Element(Scalar(Rational(1, 2)) * Z)));
  EXPECT_TRUE(equal(law.to_log(ab), bch(h, P, Q)));
  PhiCoordinates id{h.zero(), h.zero()};
  PhiCoordinates same = phi_multiply(law, a, id);
  EXPECT_TRUE(equal(same.n_part, a.n_part) && equal(same.e_part, a.e_part));
}

TEST(PhiLaw, AbelianIsComponentwiseAddition) {
  LieAlgebra g = catalog::abelian(3);
  PhiLaw law = PhiLaw::exact(g, {g.basis(0), g.basis(1), g.basis(2)});
  Rng rng(4);
  for (int s = 0; s < 5; ++s) {
    PhiCoordinates a = law.split(random_vector(rng, 3)), b = law.split(random_vector(rng, 3));
    PhiCoordinates c = phi_multiply(law, a, b);
    EXPECT_TRUE(equal(c.e_part, Element(a.e_part + b.e_part)));
    EXPECT_TRUE(is_zero_vector(c.n_part));
  }
}

TEST(PhiLaw, AgreesWithBchOracle) {
  Rng rng(5);
  std::vector<LieAlgebra> pool{catalog::heisenberg(), catalog::filiform(5), scramble(strictly_upper(4).g, rng)};
  for (const auto& g : pool) {
    Subspace n = derived_series(g)[1];
    std::vector<Element> e;
    for (Index c : free_columns(n.basis)) e.push_back(g.basis(c));
    PhiLaw law = PhiLaw::exact(g, e);
    for (int s = 0; s < 8; ++s) {
      Element x = random_vector(rng, g.dim(), 2, 2), y = random_vector(rng, g.dim(), 2, 2);
      // Phi-coordinates of exp(x): split log into exp(n) exp(e) via BCH with -e
      auto coords = [&](const Element& v) {
        PhiCoordinates p = law.split(v);
        p.n_part = bch(g, v, Element(-p.e_part));
        return p;
      };
      PhiCoordinates a = coords(x), b = coords(y);
      EXPECT_TRUE(equal(law.to_log(a), x));
      EXPECT_TRUE(equal(law.to_log(phi_multiply(law, a, b)), bch(g, x, y))) << g.name();
    }
  }
  LieAlgebra h = catalog::heisenberg();
  EXPECT_THROW(PhiLaw::exact(h, {unit(h, "P")}), AlgebraError);
  EXPECT_THROW(PhiLaw::exact(catalog::mot2(), {unit(catalog::mot2(), "U")}), AlgebraError);
  EXPECT_THROW(PhiLaw::make(catalog::mot2(), {unit(catalog::mot2(), "U")}), AlgebraError);
}

TEST(PhiLaw, NumericBackendIsAHomomorphismOnMot2) {
  LieAlgebra g = catalog::mot2();
  std::vector<Eigen::MatrixXd> rep(3, Eigen::MatrixXd::Zero(3, 3));
  rep[static_cast<size_t>(g.index_of("U"))] << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  rep[static_cast<size_t>(g.index_of("P"))](0, 2) = 1;
  rep[static_cast<size_t>(g.index_of("Q"))](1, 2) = 1;
  PhiLaw law = PhiLaw::make(g, {unit(g, "U")}, rep);
  EXPECT_EQ(law.backend(), PhiLaw::Backend::NumericMatrix);
  Rng rng(6);
  auto rho = [&](const Element& v) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    for (Index k = 0; k < 3; ++k) m += v(k).re.get_d() * rep[static_cast<size_t>(k)];
    return m;
  };
  for (int s = 0; s < 10; ++s) {
    PhiCoordinates a = law.split(random_vector(rng, 3)), b = law.split(random_vector(rng, 3));
    Eigen::MatrixXd ga = expm(rho(a.n_part)) * expm(rho(a.e_part));
    Eigen::MatrixXd gb = expm(rho(b.n_part)) * expm(rho(b.e_part));
    EXPECT_LT((law.group_matrix(a) - ga).norm(), 1e-10);
    PhiCoordinates c = phi_multiply(law, a, b);
    EXPECT_LT((law.group_matrix(c) - ga * gb).norm(), 1e-9);
    EXPECT_TRUE(equal(c.e_part, Element(a.e_part + b.e_part)));
  }
  auto bad = rep;
  bad[0] *= 2;
  EXPECT_THROW(PhiLaw::numeric(g, bad, {unit(g, "U")}), AlgebraError);
}

TEST(LimitFormulas, CommutingPairSitsAtTheFloor) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 2), y = x;
  x(0, 0) = 1;
  y(1, 1) = -2;
  ConvergenceTable t = limit_formula_check(x, y, 64);
  ASSERT_EQ(t.rows.size(), 64u);
  for (const auto& r : t.rows) {
    EXPECT_LT(r.addition, 1e-12);
    EXPECT_LT(r.commutator, 1e-10);  // n^2 factors of rounding
  }
}

TEST(LimitFormulas, Sl2PairConvergesAtRateOneOverN) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 2), y = x;
  x(0, 1) = 1;
  y(1, 0) = 1;
  ConvergenceTable t = limit_formula_check(x, y, 256);
  EXPECT_LT(t.at(256).addition, 1e-2);
  for (int n : {32, 64, 128}) {
    double ratio = t.at(n).addition / t.at(2 * n).addition;
    EXPECT_GE(ratio, 1.7) << n;
    EXPECT_LE(ratio, 2.3) << n;
  }
}

TEST(LimitFormulas, HeisenbergCommutatorConverges) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 3), y = x;
  x(0, 1) = 1;
  y(1, 2) = 1;
  ConvergenceTable t = limit_formula_check(x, y, 512);
  EXPECT_LT(t.at(512).commutator, 1e-6);
}

TEST(LimitFormulas, MonotoneBeyondEight) {
  std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> pairs;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2), b = a;
  a(0, 1) = 1;
  b(1, 0) = 1;
  pairs.push_back({a, b});
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(3, 3), k = h;
  h(0, 1) = 1;
  k(1, 2) = 1;
  pairs.push_back({h, k});
  Eigen::MatrixXd u(2, 2), v(2, 2);
  u << 0, -1, 1, 0;
  v << 1, 0, 0, -1;
  pairs.push_back({u, v});
  for (const auto& [x, y] : pairs) {
    ConvergenceTable t = limit_formula_check(x, y, 128);
    for (int n = 9; n < 128; ++n) {
      EXPECT_LE(t.at(n + 1).addition, t.at(n).addition + 1e-13) << n;
      EXPECT_LE(t.at(n + 1).commutator, t.at(n).commutator + 1e-13) << n;
    }
  }
}

TEST(LimitFormulas, CsvAndMatrixPower) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 2), y = x;
  x(0, 1) = 1;
  y(1, 0) = 1;
  ConvergenceTable t = limit_formula_check(x, y, 5);
  std::string csv = t.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,addition_deviation,commutator_deviation");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  Eigen::MatrixXd m(2, 2);
  m << 1, 1, 0, 1;
  Eigen::MatrixXd p = matrix_power(m, 37);
  EXPECT_DOUBLE_EQ(p(0, 1), 37.0);
  EXPECT_DOUBLE_EQ(p(0, 0), 1.0);
  EXPECT_TRUE(matrix_power(m, 0).isIdentity());
}
