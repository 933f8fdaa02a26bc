#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "prolie/algebra.hpp"
#include "prolie/polynomial.hpp"

namespace prolie {

using Complex = std::complex<double>;
using ExactPolynomial = Polynomial<Scalar>;

struct Eigenvalue {
  Complex value;
  int multiplicity = 1;
  double radius = 0.0;           // every true root of its factor lies within this distance
  std::optional<Gaussian> exact;  // set when the value was reconstructed and verified exactly
};

struct SpectrumReport {
  std::vector<Eigenvalue> eigenvalues;
  ExactPolynomial char_poly;

  const std::vector<Scalar>& exact_char_poly() const { return char_poly.coeffs(); }
  int total_multiplicity() const;
};

/// Roots of a square-free polynomial with inclusion radii (Aberth iteration,
/// radii from the exact residual at each approximation). Roots that are
/// Gaussian rationals come back exact with radius 0.
std::vector<Eigenvalue> certified_roots(const ExactPolynomial& squarefree);

/// Distinct Gaussian-rational roots of f.
std::vector<Gaussian> exact_roots(const ExactPolynomial& f);

SpectrumReport spectrum(const ExactMatrix& m);

enum class Regularity { Regular, Singular, Uncertain };
std::string to_string(Regularity r);

struct RegularityVerdict {
  Regularity status = Regularity::Regular;
  std::optional<Complex> offending_eigenvalue;
  std::optional<long> offending_integer;
  double distance = 0.0;  // |lambda - 2 pi i k| for the offending pair
  bool exact = false;     // Singular established without tolerance
};

/// Regularity of x = scale * y from the spectrum of ad y: an eigenvalue near
/// 2 pi i k (k != 0) is Singular within tol, Uncertain within radius + tol.
RegularityVerdict regularity_from_spectrum(const SpectrumReport& s, double scale, double tol);

RegularityVerdict is_exp_regular(const LieAlgebra& g, const Element& x, double tol = 1e-9);

/// Regularity of 2 pi y with y given exactly. ad(2 pi y) has 2 pi i k as an
/// eigenvalue iff i k is a root of the exact characteristic polynomial of
/// ad y, so the Singular case is decided without tolerance.
RegularityVerdict is_exp_regular_2pi(const LieAlgebra& g, const Element& y, double tol = 1e-9);

}  // namespace prolie
