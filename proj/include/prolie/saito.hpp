#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prolie/roots.hpp"

namespace prolie {

/// [U,P] = Q, [U,Q] = -P with (P,Q) != 0. `exact` is false for a candidate
/// built from floating-point roots whose relations could not be verified.
struct RotationTriple {
  Element U, P, Q;
  bool exact = true;
};

/// True iff the relations hold exactly.
bool is_rotation_triple(const LieAlgebra& g, const RotationTriple& t);

/// Some triple, or none if every root is real on g. Cheap path first: basis
/// vectors outside [g,g] whose ad has an eigenvalue i*l (l rational); then
/// the roots. Throws AlgebraError if g is not solvable.
std::optional<RotationTriple> find_rotation_triple(const LieAlgebra& g);

/// Every candidate triple, one per distinct source (basis vector or root),
/// for restarts.
std::vector<RotationTriple> rotation_triples(const LieAlgebra& g);

/// Triple with the given U, provided ad U has eigenvalue i exactly.
std::optional<RotationTriple> triple_from_U(const LieAlgebra& g, const Element& U);

enum class SaitoKind { Mot2, Osc, Exhausted };
std::string to_string(SaitoKind k);

struct SaitoOutcome {
  SaitoKind kind = SaitoKind::Exhausted;
  int depth = 0;
  std::optional<Subspace> subalgebra;  // span{U,P_i,Q_i} or span{U,P_i,Q_i,Z_i}
  RotationTriple final_triple;         // U, P_i, Q_i at the stopping depth
  Element last_Z;                      // Z at the stopping depth (last nonzero one when Exhausted)
  std::vector<Element> Z;              // Z_1, Z_2, ...
  bool z_in_derived_series = true;     // Z_i lies in D^i(g) for every i reached
  bool truncation_artifact = false;
};

/// P_1 = P, Q_1 = Q, Z_i = [P_i,Q_i], P_{i+1} = [Z_i,P_i], Q_{i+1} = [Z_i,Q_i].
/// Stops with Mot2 when Z_i = 0, with Osc when Z_i commutes with U, P_i, Q_i.
SaitoOutcome saito_recursion(const LieAlgebra& g, const RotationTriple& t, int max_depth);

/// Recursion on a truncation `coarse` = proj(fine) of a finer level. The fine
/// triple is pushed down through proj; a Mot2/Osc stop at the coarse level
/// whose Z (resp. P, Q) is still nonzero upstairs is a truncation artifact and
/// is reported as Exhausted with the flag set. The fine-level outcome is
/// stored in `fine_outcome` when given.
SaitoOutcome saito_truncation_check(const Morphism& proj, const RotationTriple& fine_triple, int max_depth,
                                    SaitoOutcome* fine_outcome = nullptr);

struct SaitoVerdict {
  Verdict exponential = Verdict::True;
  std::optional<RotationTriple> triple;
  std::optional<SaitoOutcome> outcome;
  int restarts = 0;
  std::string note;
};

/// Not exponential iff some triple runs into mot2 or osc. Triples that stall
/// (Exhausted) are replaced by the next candidate; if all stall, or only
/// inexact candidates exist, the verdict is Uncertain.
SaitoVerdict is_exponential_saito(const LieAlgebra& g, int max_depth);

}  // namespace prolie
