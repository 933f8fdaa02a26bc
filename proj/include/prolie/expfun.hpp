#pragma once

// Entire functions of matrices used by the exponential-map criteria:
//   phi1(A)        = sum_k A^k/(k+1)! = (e^A - I) A^{-1}
//   kappa(x)       = phi1(-ad x)       = int_0^1 e^{-t ad x} dt
//   beta(D, t)     = phi1(t D)         = int_0^1 e^{s t D} ds
// Evaluated by scaling A to norm <= 1/2, a Taylor series, and the doubling
// identity phi1(2A) = phi1(A) (e^A + I) / 2 with e^{2A} = (e^A)^2.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "prolie/algebra.hpp"

namespace prolie {

template <class T>
using Dense = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
Dense<T> phi1(const Dense<T>& a) {
  using Real = typename Eigen::NumTraits<T>::Real;
  const Eigen::Index n = a.rows();
  const Dense<T> id = Dense<T>::Identity(n, n);
  if (n == 0) return a;
  const double norm = static_cast<double>(Real(a.cwiseAbs().colwise().sum().maxCoeff()));
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  Dense<T> b = a / T(std::pow(2.0, s));
  // Taylor at norm <= 1/2 until the terms drop below the working precision
  const Real stop = Eigen::NumTraits<T>::epsilon() * Real(1e-3);
  Dense<T> term = id;
  Dense<T> p = id;  // phi1
  Dense<T> e = id;  // exp
  for (int k = 1; k <= 400; ++k) {
    term = term * b / T(k);  // b^k / k!
    e += term;
    p += term / T(k + 1);
    if (k >= 4 && Real(term.cwiseAbs().maxCoeff()) < stop) break;
  }
  for (int i = 0; i < s; ++i) {
    p = (p * (e + id)) * T(0.5);
    e = e * e;
  }
  return p;
}

template <class T>
Dense<T> beta_operator(const Dense<T>& d, double t) {
  return phi1<T>(Dense<T>(t * d));
}

/// exp(v, t) = (beta(t) v, t) in V x|_D R.
template <class T>
std::pair<Eigen::Matrix<T, Eigen::Dynamic, 1>, double> semidirect_exp(const Eigen::Matrix<T, Eigen::Dynamic, 1>& v, double t,
                                                                      const Dense<T>& d) {
  return {beta_operator<T>(d, t) * v, t};
}

/// Smallest singular value.
template <class T>
double sigma_min(const Dense<T>& m) {
  if (m.size() == 0) return INFINITY;
  Eigen::JacobiSVD<Dense<T>> svd(m);
  return svd.singularValues().minCoeff();
}

/// (w, t) lies in the image of semidirect_exp iff beta(t) x = w is solvable.
/// Decided on the numerical range: singular values below
/// rel_tol * max(sigma_max, 1) are treated as zero (beta itself may vanish).
template <class T>
bool in_semidirect_image(const Eigen::Matrix<T, Eigen::Dynamic, 1>& w, double t, const Dense<T>& d, double rel_tol = 1e-10) {
  Dense<T> b = beta_operator<T>(d, t);
  Eigen::JacobiSVD<Dense<T>> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  svd.setThreshold(smax > 1.0 ? rel_tol : rel_tol / std::max(smax, 1e-300));
  Eigen::Matrix<T, Eigen::Dynamic, 1> x = svd.solve(w);
  return (b * x - w).norm() <= 1e-8 * std::max(1.0, w.norm());
}

/// Real matrix of ad x (requires a real algebra).
Eigen::MatrixXd ad_double(const LieAlgebra& g, const Element& x);
Eigen::MatrixXcd to_complex_matrix(const ExactMatrix& m);

/// kappa(x) = int_0^1 e^{-t ad x} dt; complex-valued for complex algebras.
Eigen::MatrixXcd kappa(const LieAlgebra& g, const Element& x);
/// Same, for x = scale * y (used for 2 pi multiples of exact elements).
Eigen::MatrixXcd kappa_scaled(const LieAlgebra& g, const Element& y, double scale);
/// Smallest singular value of kappa(scale * y). When double precision cannot
/// resolve it (sigma_min below 1e-12 sigma_max), it is recomputed with
/// 100-digit floats on the realified operator, which has the same singular values.
double kappa_sigma_min(const LieAlgebra& g, const Element& y, double scale = 1.0);

/// beta(t) = sum_k t^k D^k / (k+1)! for nilpotent D, as exact coefficient
/// matrices C_k (beta(t) = sum_k t^k C_k). Throws AlgebraError if D is not nilpotent.
std::vector<ExactMatrix> beta_nilpotent_exact(const ExactMatrix& d);

}  // namespace prolie
