#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prolie/spectrum.hpp"

namespace prolie {

/// A root of a solvable algebra: a functional alpha on g_C with a flag
/// witness n1 in n2 (ideals of g_C, dim n2/n1 = 1) such that ad x acts on
/// n2/n1 by alpha(x).
struct Root {
  std::vector<Complex> values;                 // alpha(e_k)
  std::optional<std::vector<Gaussian>> exact;  // exact coordinates when available
  // flag witness; exact subspaces of g_C when the root is exact, otherwise
  // orthonormal column bases
  std::optional<Subspace> n1_exact, n2_exact;
  Eigen::MatrixXcd n1, n2;

  bool is_exact() const { return exact.has_value(); }
  Complex operator()(const Element& x) const;
  std::optional<Gaussian> exact_value(const Element& x) const;
};

/// All dim(g) roots (with multiplicity), bottom of the flag first. Runs the
/// constructive Lie theorem exactly when every eigenvalue met on the way is a
/// Gaussian rational, otherwise in complex double precision.
/// Throws AlgebraError if g is not solvable.
std::vector<Root> roots_solvable(const LieAlgebra& g);

/// Max over basis x of the defect of (ad x - alpha(x))(n2) in n1: exactly 0
/// for exact roots, a residual norm otherwise.
double root_flag_defect(const LieAlgebra& g, const Root& r);

enum class Verdict { True, False, Uncertain };
std::string to_string(Verdict v);

struct SCResult {
  Verdict verdict = Verdict::True;
  bool solvable = true;
  std::optional<Root> witness;
  std::string note;
  bool exact = true;
};

/// Spectral condition: Spec(ad x) meets iR only in 0 for every x.
SCResult satisfies_SC(const LieAlgebra& g);

/// Numeric tolerances for the SC test on floating-point roots: a defect of
/// Im(alpha) from span Re(alpha) below `accept` passes, above `reject` fails.
struct SCTolerance {
  double accept = 1e-7;
  double reject = 1e-5;
};
SCResult satisfies_SC(const LieAlgebra& g, const std::vector<Root>& roots, SCTolerance tol = {});

struct LogCertificate {
  enum class Status { ExistsUnique, Inconclusive } status = Status::ExistsUnique;
  std::optional<Root> witness;
  std::optional<Complex> value;  // Gamma(alpha)(g) for the witness
  std::optional<long> k;
  bool exact = false;
};

/// For g = exp(scale y_1) ... exp(scale y_k): every root gives the additive
/// character value scale * sum alpha(y_i); if none lies in 2 pi i Z \ {0}
/// (within tol) the element has a unique logarithm.
LogCertificate log_certificate(const LieAlgebra& g, const std::vector<Element>& factors, double scale = 1.0,
                               double tol = 1e-9);
LogCertificate log_certificate(const LieAlgebra& g, const std::vector<Root>& roots, const std::vector<Element>& factors,
                               double scale = 1.0, double tol = 1e-9);

}  // namespace prolie
