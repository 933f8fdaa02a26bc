#include "prolie/expfun.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace prolie {

Eigen::MatrixXd ad_double(const LieAlgebra& g, const Element& x) {
  ExactMatrix a = g.ad(x);
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_real()) throw AlgebraError("ad_double: algebra or element is not real");
      out(i, j) = a(i, j).re.get_d();
    }
  return out;
}

Eigen::MatrixXcd to_complex_matrix(const ExactMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

Eigen::MatrixXcd kappa(const LieAlgebra& g, const Element& x) { return kappa_scaled(g, x, 1.0); }

Eigen::MatrixXcd kappa_scaled(const LieAlgebra& g, const Element& y, double scale) {
  Eigen::MatrixXcd a = to_complex_matrix(g.ad(y));
  return phi1<std::complex<double>>(Eigen::MatrixXcd(-scale * a));
}

namespace {

using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>, boost::multiprecision::et_off>;

Wide wide(const Rational& q) { return Wide(q.get_num().get_str()) / Wide(q.get_den().get_str()); }

}  // namespace

double kappa_sigma_min(const LieAlgebra& g, const Element& y, double scale) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(kappa_scaled(g, y, scale));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return INFINITY;
  const double smin = sv(sv.size() - 1);
  if (smin > 1e-12 * sv(0)) return smin;
  // [[Re, -Im], [Im, Re]] of -scale * ad y
  const ExactMatrix a = g.ad(y);
  const Index n = a.rows();
  Dense<Wide> r(2 * n, 2 * n);
  const Wide s(scale);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Wide re = -s * wide(a(i, j).re), im = -s * wide(a(i, j).im);
      r(i, j) = re;
      r(i + n, j + n) = re;
      r(i, j + n) = -im;
      r(i + n, j) = im;
    }
  Eigen::JacobiSVD<Dense<Wide>> wsvd(phi1<Wide>(r));
  return static_cast<double>(wsvd.singularValues().minCoeff());
}

std::vector<ExactMatrix> beta_nilpotent_exact(const ExactMatrix& d) {
  const Index n = d.rows();
  std::vector<ExactMatrix> out;
  ExactMatrix pw = identity_matrix<Scalar>(n);
  Rational fact = 1;
  for (Index k = 0; k <= n; ++k) {
    if (is_zero_matrix(pw)) return out;
    fact *= Rational(static_cast<long>(k + 1));
    ExactMatrix c = pw;
    Scalar inv = Scalar(Rational(1) / fact);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (!c(i, j).is_zero()) c(i, j) *= inv;
    out.push_back(std::move(c));
    pw = multiply(pw, d);
  }
  throw AlgebraError("beta_nilpotent_exact: operator is not nilpotent");
}

}  // namespace prolie
