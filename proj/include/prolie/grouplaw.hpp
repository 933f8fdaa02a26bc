#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prolie/algebra.hpp"

namespace prolie {

/// Group element exp(n_part) exp(e_part) of a solvable algebra r, with
/// n_part in n = [r,r] and e_part in a fixed complement e. Both parts are
/// stored in the ambient coordinates of r.
struct PhiCoordinates {
  Element n_part;
  Element e_part;
};

/// Multiplication in the coordinates above:
///   (x,y)(x',y') = (x * e^{ad y} x' * f(y,y'), y + y'),
///   f(y,y') = (y * y') * (-(y + y')),
/// with * the BCH product. The exact backend needs r nilpotent; the numeric
/// backend works in a faithful matrix representation.
class PhiLaw {
 public:
  enum class Backend { ExactNilpotent, NumericMatrix };

  /// Throws AlgebraError if r is not nilpotent or the complement is not complementary to [r,r].
  static PhiLaw exact(const LieAlgebra& r, const std::vector<Element>& complement);
  /// rep[k] is the matrix of basis element k. Throws AlgebraError if r is
  /// not solvable, rep is not a faithful homomorphism (tolerance 1e-9), or
  /// the complement is not complementary to [r,r].
  static PhiLaw numeric(const LieAlgebra& r, std::vector<Eigen::MatrixXd> rep, const std::vector<Element>& complement);
  /// Picks the exact backend for nilpotent r, numeric if a representation is given; otherwise throws.
  static PhiLaw make(const LieAlgebra& r, const std::vector<Element>& complement,
                     std::optional<std::vector<Eigen::MatrixXd>> rep = std::nullopt);

  Backend backend() const { return backend_; }
  const Subspace& commutator_ideal() const { return n_; }
  const std::vector<Element>& complement() const { return e_; }

  /// Split v = n_part + e_part along n (+) e (vector-space decomposition).
  PhiCoordinates split(const Element& v) const;
  PhiCoordinates multiply(const PhiCoordinates& a, const PhiCoordinates& b) const;

  /// Logarithm of Phi(a) = exp(n_part) exp(e_part): exact for the nilpotent
  /// backend (BCH), principal matrix logarithm expressed in the basis for the
  /// numeric one.
  Element to_log(const PhiCoordinates& a) const;
  /// Matrix of exp(n_part) exp(e_part) (numeric backend only).
  Eigen::MatrixXd group_matrix(const PhiCoordinates& a) const;

 private:
  std::shared_ptr<const LieAlgebra> r_;
  Backend backend_ = Backend::ExactNilpotent;
  int class_ = 1;
  Subspace n_;
  std::vector<Element> e_;
  ExactMatrix split_inverse_;  // coordinates along (rows of n, then e)
  std::vector<Eigen::MatrixXd> rep_;
  Eigen::MatrixXd rep_flat_;  // columns: vectorised basis matrices

  void init(const LieAlgebra& r, const std::vector<Element>& complement);
  Eigen::MatrixXd rho(const Element& v) const;
  Element from_matrix(const Eigen::MatrixXd& m) const;
};

PhiCoordinates phi_multiply(const PhiLaw& law, const PhiCoordinates& a, const PhiCoordinates& b);

struct ConvergenceRow {
  int n = 0;
  double addition = 0.0;    // |(e^{X/n} e^{Y/n})^n - e^{X+Y}|
  double commutator = 0.0;  // |(e^{X/n} e^{Y/n} e^{-X/n} e^{-Y/n})^{n^2} - e^{[X,Y]}|
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  const ConvergenceRow& at(int n) const;
  std::string to_csv() const;
};

/// Deviations for n = 1..n_max (Frobenius norm).
ConvergenceTable limit_formula_check(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, int n_max);

/// Matrix power by repeated squaring.
Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, long long k);

}  // namespace prolie
