#include <gtest/gtest.h>

#include <numbers>

#include "prolie/catalog.hpp"
#include "prolie/expfun.hpp"
#include "prolie/roots.hpp"
#include "prolie/spectrum.hpp"
#include "prolie/structure.hpp"
#include "support.hpp"

using namespace prolie;
using namespace prolie::testing;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex I(0.0, 1.0);

// Exact determinant by elimination over the Gaussian rationals.
Scalar det_oracle(ExactMatrix m) {
  const Index n = m.rows();
  Scalar d = 1;
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.row(p).swap(m.row(c));
      d = -d;
    }
    d *= m(c, c);
    for (Index r = c + 1; r < n; ++r) {
      Scalar f = m(r, c) / m(c, c);
      for (Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return d;
}

std::vector<Complex> eigen_multiset(const SpectrumReport& s) {
  std::vector<Complex> out;
  for (const auto& e : s.eigenvalues)
    for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.value);
  return out;
}

Element unit(const LieAlgebra& g, const char* l) { return g.basis(g.index_of(l)); }

}  // namespace

TEST(Spectrum, ZeroMatrixHasFullMultiplicityZero) {
  SpectrumReport s = spectrum(zero_matrix<Scalar>(4, 4));
  ASSERT_EQ(s.eigenvalues.size(), 1u);
  EXPECT_EQ(s.eigenvalues[0].multiplicity, 4);
  ASSERT_TRUE(s.eigenvalues[0].exact.has_value());
  EXPECT_TRUE(s.eigenvalues[0].exact->is_zero());
}

TEST(Spectrum, AdUInMot2) {
  LieAlgebra g = catalog::mot2();
  SpectrumReport s = spectrum(g.ad(unit(g, "U")));
  EXPECT_EQ(s.total_multiplicity(), 3);
  // det(l - ad U) = l^3 + l
  EXPECT_EQ(s.exact_char_poly(), (std::vector<Scalar>{0, 1, 0, 1}));
  EXPECT_TRUE(multisets_match(eigen_multiset(s), {0.0, I, -I}, [](size_t) { return 1e-12; }));
  for (const auto& e : s.eigenvalues) EXPECT_TRUE(e.exact.has_value());
}

TEST(Spectrum, CharPolyMatchesDeterminantOracle) {
  Rng rng(2);
  for (int t = 0; t < 12; ++t) {
    LieAlgebra g = random_solvable(rng);
    ExactMatrix a = g.ad(random_vector(rng, g.dim()));
    SpectrumReport s = spectrum(a);
    const Index n = a.rows();
    ASSERT_EQ(s.char_poly.degree(), n);
    for (int lam = -2; lam <= n; ++lam) {
      ExactMatrix m = Scalar(lam) * identity_matrix<Scalar>(n) - a;
      EXPECT_EQ(s.char_poly(Scalar(lam)), det_oracle(m));
    }
    EXPECT_EQ(s.total_multiplicity(), n);
    for (const auto& e : s.eigenvalues) {
      if (e.exact) {
        EXPECT_TRUE(s.char_poly(*e.exact).is_zero());
        EXPECT_EQ(e.radius, 0.0);
      }
    }
  }
}

TEST(Spectrum, ScalingCovariance) {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    LieAlgebra g = random_solvable(rng);
    Element x = random_vector(rng, g.dim());
    Rational s = random_rational(rng);
    if (sgn(s) == 0) s = 3;
    auto p = spectrum(g.ad(x)).exact_char_poly();
    auto q = spectrum(g.ad(Element(Scalar(s) * x))).exact_char_poly();
    const size_t n = p.size() - 1;
    ASSERT_EQ(p.size(), q.size());
    Scalar pw = 1;
    // q_k = s^(n-k) p_k
    for (size_t k = n + 1; k-- > 0;) {
      EXPECT_EQ(q[k], pw * p[k]);
      pw *= Scalar(s);
    }
  }
}

TEST(Spectrum, CertifiedRadiiOnIrrationalRoots) {
  // x^2 - 2 and x^2 + x + 1
  for (const auto& f : {ExactPolynomial({-2, 0, 1}), ExactPolynomial({1, 1, 1})}) {
    auto roots = certified_roots(f);
    ASSERT_EQ(roots.size(), 2u);
    for (const auto& r : roots) {
      EXPECT_FALSE(r.exact.has_value());
      EXPECT_GT(r.radius, 0.0);
      EXPECT_LT(r.radius, 1e-9);
    }
  }
  auto r2 = certified_roots(ExactPolynomial({-2, 0, 1}));
  EXPECT_TRUE(multisets_match({r2[0].value, r2[1].value}, {std::sqrt(2.0), -std::sqrt(2.0)},
                              [&](size_t i) { return r2[i].radius + 1e-15; }));
  EXPECT_EQ(exact_roots(ExactPolynomial({Scalar(Rational(0), Rational(-1)), Scalar(1)})).size(), 1u);
}

TEST(Regularity, Mot2Examples) {
  LieAlgebra g = catalog::mot2();
  EXPECT_EQ(is_exp_regular(g, g.zero()).status, Regularity::Regular);
  EXPECT_EQ(is_exp_regular(g, unit(g, "U")).status, Regularity::Regular);
  RegularityVerdict v = is_exp_regular_2pi(g, unit(g, "U"));
  EXPECT_EQ(v.status, Regularity::Singular);
  EXPECT_TRUE(v.exact);
  ASSERT_TRUE(v.offending_integer.has_value());
  EXPECT_EQ(std::abs(*v.offending_integer), 1);
  ASSERT_TRUE(v.offending_eigenvalue.has_value());
  EXPECT_LT(std::abs(std::abs(v.offending_eigenvalue->imag()) - kTwoPi), 1e-9);
  // numeric path through the spectrum of ad U scaled by 2 pi
  RegularityVerdict n = regularity_from_spectrum(spectrum(g.ad(unit(g, "U"))), kTwoPi, 1e-9);
  EXPECT_EQ(n.status, Regularity::Singular);
  EXPECT_EQ(std::abs(*n.offending_integer), 1);
  EXPECT_LE(n.distance, 1e-9);
  // 3 pi U: eigenvalues +-3 pi i avoid 2 pi i Z
  EXPECT_EQ(regularity_from_spectrum(spectrum(g.ad(unit(g, "U"))), 1.5 * kTwoPi, 1e-9).status, Regularity::Regular);
  EXPECT_EQ(is_exp_regular_2pi(g, Element(Scalar(2) * unit(g, "U"))).offending_integer.value_or(0) % 2, 0);
}

TEST(Regularity, SingularVerdictCarriesAnEigenvalueNearTwoPiIk) {
  Rng rng(6);
  int singular = 0;
  for (int t = 0; t < 30; ++t) {
    LieAlgebra g = random_solvable(rng);
    Element y = random_vector(rng, g.dim());
    RegularityVerdict v = is_exp_regular_2pi(g, y);
    if (v.status != Regularity::Singular) continue;
    ++singular;
    ASSERT_TRUE(v.offending_integer && v.offending_eigenvalue);
    EXPECT_NE(*v.offending_integer, 0);
    EXPECT_LE(std::abs(*v.offending_eigenvalue - Complex(0, kTwoPi * static_cast<double>(*v.offending_integer))), 1e-9);
  }
  SUCCEED() << singular << " singular samples";
}

TEST(SC, Examples) {
  EXPECT_EQ(satisfies_SC(catalog::abelian(3)).verdict, Verdict::True);
  EXPECT_EQ(satisfies_SC(catalog::heisenberg()).verdict, Verdict::True);
  EXPECT_EQ(satisfies_SC(catalog::affine_line()).verdict, Verdict::True);
  EXPECT_EQ(satisfies_SC(catalog::filiform(5)).verdict, Verdict::True);
  LieAlgebra g = catalog::mot2();
  SCResult r = satisfies_SC(g);
  EXPECT_EQ(r.verdict, Verdict::False);
  EXPECT_TRUE(r.exact);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(std::abs(std::abs((*r.witness)(unit(g, "U"))) - 1.0), 1e-12);
  EXPECT_LT(std::abs(std::abs((*r.witness)(unit(g, "U")).imag()) - 1.0), 1e-12);
  EXPECT_LT(std::abs((*r.witness)(unit(g, "P"))), 1e-12);
  EXPECT_LT(std::abs((*r.witness)(unit(g, "Q"))), 1e-12);
  EXPECT_EQ(satisfies_SC(catalog::osc()).verdict, Verdict::False);
  SCResult s = satisfies_SC(catalog::sl2());
  EXPECT_EQ(s.verdict, Verdict::False);
  EXPECT_FALSE(s.solvable);
}

TEST(Roots, Mot2AndAffine) {
  LieAlgebra g = catalog::mot2();
  auto roots = roots_solvable(g);
  ASSERT_EQ(roots.size(), 3u);
  std::vector<Complex> at_u;
  for (const auto& r : roots) {
    EXPECT_TRUE(r.is_exact());
    EXPECT_EQ(root_flag_defect(g, r), 0.0);
    EXPECT_LT(std::abs(r(unit(g, "P"))) + std::abs(r(unit(g, "Q"))), 1e-12);
    at_u.push_back(r(unit(g, "U")));
  }
  EXPECT_TRUE(multisets_match(at_u, {0.0, I, -I}, [](size_t) { return 1e-12; }));

  LieAlgebra a = catalog::affine_line();
  auto ar = roots_solvable(a);
  ASSERT_EQ(ar.size(), 2u);
  std::vector<Complex> at_e1, at_e2;
  for (const auto& r : ar) {
    at_e1.push_back(r(a.basis(0)));
    at_e2.push_back(r(a.basis(1)));
  }
  EXPECT_TRUE(multisets_match(at_e1, {0.0, 1.0}, [](size_t) { return 1e-12; }));
  EXPECT_TRUE(multisets_match(at_e2, {0.0, 0.0}, [](size_t) { return 1e-12; }));
  for (const auto& r : roots_solvable(catalog::abelian(3)))
    for (const auto& v : r.values) EXPECT_EQ(v, Complex(0.0));
  EXPECT_THROW(roots_solvable(catalog::so3()), AlgebraError);
}

TEST(Roots, MatchSpectrumOnRandomSolvableAlgebras) {
  Rng rng(7);
  for (int t = 0; t < 25; ++t) {
    LieAlgebra g = random_solvable(rng);
    auto roots = roots_solvable(g);
    ASSERT_EQ(static_cast<Index>(roots.size()), g.dim());
    for (const auto& r : roots) {
      EXPECT_LE(root_flag_defect(g, r), r.is_exact() ? 0.0 : 1e-8);
      if (r.is_exact()) EXPECT_TRUE(r.n2_exact && r.n1_exact && r.n2_exact->dim() == r.n1_exact->dim() + 1);
    }
    for (int s = 0; s < 8; ++s) {
      Element x = random_vector(rng, g.dim());
      SpectrumReport sp = spectrum(g.ad(x));
      std::vector<Complex> from_roots, radius_by_value;
      for (const auto& r : roots) from_roots.push_back(r(x));
      std::vector<Complex> ev;
      std::vector<double> rad;
      for (const auto& e : sp.eigenvalues)
        for (int k = 0; k < e.multiplicity; ++k) {
          ev.push_back(e.value);
          rad.push_back(e.radius);
        }
      double worst = *std::max_element(rad.begin(), rad.end());
      EXPECT_TRUE(multisets_match(from_roots, ev, [&](size_t) { return worst + 1e-7; })) << "algebra " << t << " sample " << s;
    }
  }
}

TEST(SC, DownwardClosedUnderQuotients) {
  Rng rng(8);
  int passing = 0;
  for (int t = 0; t < 30 && passing < 10; ++t) {
    LieAlgebra g = random_solvable(rng);
    if (satisfies_SC(g).verdict != Verdict::True) continue;
    ++passing;
    std::vector<Subspace> ideals{derived_series(g)[1], lower_central_series(g).back(),
                                 generated_ideal(g, {random_vector(rng, g.dim())})};
    for (const auto& i : ideals) {
      if (i.dim() == g.dim()) continue;
      EXPECT_NE(satisfies_SC(quotient(g, i)).verdict, Verdict::False);
    }
  }
  EXPECT_GE(passing, 5);
}

TEST(Kappa, Examples) {
  LieAlgebra g = catalog::mot2();
  Eigen::MatrixXcd k0 = kappa(g, g.zero());
  EXPECT_LT((k0 - Eigen::MatrixXcd::Identity(3, 3)).norm(), 1e-14);
  EXPECT_GT(sigma_min<Complex>(kappa(g, unit(g, "U"))), 1e-2);
  Eigen::MatrixXcd k = kappa_scaled(g, unit(g, "U"), kTwoPi);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k);
  auto sv = svd.singularValues();
  int deficit = 0;
  for (Index i = 0; i < sv.size(); ++i) deficit += sv(i) < 1e-8;
  EXPECT_EQ(deficit, 2);
}

TEST(Kappa, AgreesWithRegularityOnSamples) {
  Rng rng(9);
  std::vector<LieAlgebra> pool{catalog::mot2(), catalog::osc(), catalog::sl2(), catalog::so3(), catalog::sl2_ltimes_R2()};
  int definite = 0;
  for (int s = 0; s < 60; ++s) {
    const LieAlgebra& g = pool[static_cast<size_t>(s) % pool.size()];
    Element y = random_vector(rng, g.dim());
    if (s % 3 == 0) y = g.basis(static_cast<Index>(rng() % static_cast<uint64_t>(g.dim())));
    RegularityVerdict v = s % 2 ? is_exp_regular_2pi(g, y) : is_exp_regular(g, y);
    if (v.status == Regularity::Uncertain) continue;
    ++definite;
    double smin = kappa_sigma_min(g, y, s % 2 ? kTwoPi : 1.0);
    EXPECT_EQ(smin > 1e-8, v.status == Regularity::Regular) << "sample " << s << " smin " << smin;
  }
  EXPECT_GT(definite, 40);
}

TEST(Kappa, IllConditionedButRegular) {
  // ad y has real eigenvalues near +-63 at scale 2 pi: kappa spans ~27 orders of
  // magnitude and its double SVD loses the small end
  LieAlgebra g = catalog::sl2();
  Element y = g.zero();
  y(0) = 5;
  y(1) = Rational(1, 4);
  y(2) = Rational(3, 2);
  ASSERT_EQ(is_exp_regular_2pi(g, y).status, Regularity::Regular);
  EXPECT_LT(sigma_min<Complex>(kappa_scaled(g, y, kTwoPi)), 1e-8);
  const double s = kappa_sigma_min(g, y, kTwoPi);
  EXPECT_GT(s, 1e-8);
  // eigenvalue oracle: kappa is (1 - e^{-l}) / l on each eigenvector; the
  // smallest singular value cannot exceed the smallest such modulus
  SpectrumReport sp = spectrum(g.ad(y));
  double least = INFINITY;
  for (const auto& e : sp.eigenvalues) {
    const Complex l = kTwoPi * e.value;
    least = std::min(least, std::abs(l) < 1e-12 ? 1.0 : std::abs((1.0 - std::exp(-l)) / l));
  }
  EXPECT_LE(s, least * (1 + 1e-9));
  // a true singular point stays singular on the wide path
  Element u = g.basis(1) - g.basis(2);
  EXPECT_LT(kappa_sigma_min(g, Element(Scalar(Rational(1, 2)) * u), kTwoPi), 1e-8);
}

TEST(Beta, IdentityAtZero) {
  for (double t : {-1.0, 0.0, 0.5, 3.0}) {
    Eigen::MatrixXd b = beta_operator<double>(Eigen::MatrixXd::Zero(4, 4), t);
    EXPECT_LT((b - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-15);
  }
}

TEST(Beta, NilpotentIsAnExactPolynomialInT) {
  ExactMatrix d = zero_matrix<Scalar>(4, 4);
  d(0, 1) = 2;
  d(1, 2) = Rational(1, 3);
  d(2, 3) = -5;
  d(0, 3) = 7;
  auto c = beta_nilpotent_exact(d);
  ASSERT_GE(c.size(), 4u);
  ExactMatrix pw = identity_matrix<Scalar>(4);
  Rational fact = 1;
  for (size_t k = 0; k < c.size(); ++k) {
    fact *= static_cast<long>(k + 1);
    EXPECT_TRUE(equal(c[k], ExactMatrix(Scalar(Rational(1) / fact) * pw))) << k;
    pw = multiply(pw, d);
  }
  Eigen::MatrixXd dd = to_complex_matrix(d).real();
  for (double t : {-1.0, 0.25, 2.0}) {
    Eigen::MatrixXd poly = Eigen::MatrixXd::Zero(4, 4);
    for (size_t k = 0; k < c.size(); ++k) poly += std::pow(t, static_cast<double>(k)) * to_complex_matrix(c[k]).real();
    EXPECT_LT((beta_operator<double>(dd, t) - poly).norm(), 1e-12);
  }
  EXPECT_THROW(beta_nilpotent_exact(identity_matrix<Scalar>(2)), AlgebraError);
}

TEST(Beta, DiagonalTwoPiINKillsTheNthCoordinate) {
  const int N = 16;
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(N, N);
  for (int n = 1; n <= N; ++n) d(n - 1, n - 1) = Complex(0, kTwoPi * n);
  for (int n = 1; n <= N; ++n) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Unit(N, n - 1);
    const double t = 1.0 / n;
    EXPECT_LT((beta_operator<Complex>(d, t) * e).norm(), 1e-12) << n;
    EXPECT_FALSE(in_semidirect_image<Complex>(e, t, d)) << n;
    // coordinates m not divisible by n stay reachable; at n = 1 beta vanishes
    if (n > 1) EXPECT_TRUE(in_semidirect_image<Complex>(Eigen::VectorXcd::Unit(N, n % N), t, d)) << n;
  }
}

TEST(Beta, PositiveDiagonalIsInvertibleOnMinusOneToOne) {
  const int N = 16;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N, N);
  for (int n = 1; n <= N; ++n) d(n - 1, n - 1) = n;
  for (int k = -20; k <= 20; ++k) EXPECT_GT(sigma_min<double>(beta_operator<double>(d, k / 20.0)), 1e-8);
}

TEST(Beta, SemidirectExpOnEigenvector) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = Complex(1, 2);
  d(1, 1) = -3;
  d(2, 2) = Complex(0, 1);
  d(0, 1) = 4;  // e_0 stays an eigenvector
  Eigen::VectorXcd v = Eigen::VectorXcd::Unit(3, 0);
  for (double t : {-0.7, 0.3, 1.0}) {
    auto [w, s] = semidirect_exp<Complex>(v, t, d);
    Complex tl = t * d(0, 0);
    Eigen::VectorXcd want = (std::exp(tl) - 1.0) / tl * v;
    EXPECT_LT((w - want).norm(), 1e-13);
    EXPECT_EQ(s, t);
  }
  auto [w0, s0] = semidirect_exp<Complex>(v, 0.0, d);
  EXPECT_LT((w0 - v).norm(), 1e-15);
  EXPECT_EQ(s0, 0.0);
}

TEST(LogCertificate, Examples) {
  LieAlgebra a = catalog::affine_line();
  EXPECT_EQ(log_certificate(a, {a.basis(0)}).status, LogCertificate::Status::ExistsUnique);
  LieAlgebra g = catalog::mot2();
  LogCertificate c = log_certificate(g, {unit(g, "U")}, kTwoPi);
  EXPECT_EQ(c.status, LogCertificate::Status::Inconclusive);
  ASSERT_TRUE(c.witness && c.value && c.k);
  EXPECT_LT(std::abs(std::abs(*c.value) - kTwoPi), 1e-9);
  EXPECT_EQ(std::abs(*c.k), 1);
  EXPECT_EQ(log_certificate(g, {unit(g, "U")}, 1.0).status, LogCertificate::Status::ExistsUnique);
  Rng rng(10);
  LieAlgebra h = catalog::heisenberg();
  for (int s = 0; s < 10; ++s) {
    std::vector<Element> word{random_vector(rng, 3), random_vector(rng, 3), random_vector(rng, 3)};
    EXPECT_EQ(log_certificate(h, word, kTwoPi * (s + 1)).status, LogCertificate::Status::ExistsUnique);
  }
}
