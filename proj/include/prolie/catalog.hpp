#pragma once

// Small algebras used throughout the tests, the acceptance suite and the
// shipped .lie corpus.

#include <string>
#include <vector>

#include "prolie/algebra.hpp"

namespace prolie::catalog {

LieAlgebra abelian(int n);
/// U, P, Q with [U,P] = Q, [U,Q] = -P.
LieAlgebra mot2();
/// U, P, Q, Z with [U,P] = Q, [U,Q] = -P, [P,Q] = Z.
LieAlgebra osc();
/// P, Q, Z with [P,Q] = Z.
LieAlgebra heisenberg();
/// e1, e2 with [e1,e2] = e2.
LieAlgebra affine_line();
/// P, Q, U: the 2x2 matrices P = (E12+E21)/2, Q = (E11-E22)/2, U = (E12-E21)/2.
LieAlgebra sl2_rotation_basis();
/// H, E, F with [H,E] = 2E, [H,F] = -2F, [E,F] = H.
LieAlgebra sl2();
/// L1, L2, L3 with [L1,L2] = L3 and cyclic.
LieAlgebra so3();
/// x, y, H, E, F: sl2 acting on R^2 by its defining representation.
LieAlgebra sl2_ltimes_R2();
/// e1..en with [e1, ei] = e(i+1) for 2 <= i < n; nilpotency class n - 1.
LieAlgebra filiform(int n);
/// sl2 over the Gaussian rationals (complex algebra, basis H, E, F).
LieAlgebra sl2_complex();

/// Structure constants of the span of the given matrices under the
/// commutator. Throws AlgebraError if the span is not closed or the
/// matrices are dependent.
LieAlgebra from_matrices(const std::vector<std::string>& labels, const std::vector<ExactMatrix>& mats, std::string name = {});

/// Defining-representation matrices matching sl2() and sl2_rotation_basis().
std::vector<ExactMatrix> sl2_matrices();
std::vector<ExactMatrix> sl2_rotation_matrices();

}  // namespace prolie::catalog
