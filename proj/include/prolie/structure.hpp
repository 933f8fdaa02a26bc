#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prolie/algebra.hpp"

namespace prolie {

/// g = D^0, D^1 = [g,g], ... up to and including the first repeated term; ends at 0 without repeating it.
std::vector<Subspace> derived_series(const LieAlgebra& g);
/// g = C^0, C^1 = [g,g], C^2 = [g,C^1], ... likewise.
std::vector<Subspace> lower_central_series(const LieAlgebra& g);

bool is_solvable(const LieAlgebra& g);
bool is_nilpotent(const LieAlgebra& g);
/// Smallest c with C^c = 0 (abelian: 1, zero algebra: 0); nullopt if not nilpotent.
std::optional<int> nilpotency_class(const LieAlgebra& g);
/// Number of nonzero terms of the derived series; nullopt if not solvable.
std::optional<int> derived_length(const LieAlgebra& g);

ExactMatrix killing_form(const LieAlgebra& g);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a real symmetric matrix by exact congruence diagonalisation.
Signature signature(const ExactMatrix& symmetric);

bool is_semisimple(const LieAlgebra& g);

/// Maximal solvable ideal, as the Killing-orthogonal of [g,g].
Subspace radical(const LieAlgebra& g);

struct LeviDecomposition {
  Subspace radical;
  Subspace levi_factor;
};

/// Levi factor by lifting a complement of the radical through the derived
/// series of the radical, one linear system per step.
LeviDecomposition levi_decomposition(const LieAlgebra& g);

/// Simple ideals of a semisimple algebra (throws AlgebraError otherwise).
std::vector<Subspace> simple_ideals(const LieAlgebra& semisimple);

/// True iff the simple algebra spanned by `simple` (a subalgebra of g) is
/// isomorphic to sl2(R): dimension 3 and Killing signature (2,1).
bool is_sl2R(const LieAlgebra& g, const Subspace& simple);
bool is_sl2R(const LieAlgebra& simple);

/// Short tag for a simple real algebra: "sl2R", "so3" (dim 3, definite), or "simple<dim>".
std::string simple_tag(const LieAlgebra& simple);

struct ContractibilityResult {
  bool contractible = true;
  std::optional<Subspace> witness;  // first simple Levi ideal that is not sl2(R)
  std::string witness_tag;
};

ContractibilityResult contractibility_check(const LieAlgebra& g);

struct LeviSummary {
  Index dim = 0;
  Index radical_dim = 0;
  std::vector<Index> levi_factor_dims;
  std::vector<std::string> simple_factor_tags;
};

LeviSummary levi_summary(const LieAlgebra& g);

}  // namespace prolie
