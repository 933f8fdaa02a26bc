#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prolie/roots.hpp"
#include "prolie/saito.hpp"
#include "prolie/spectrum.hpp"

namespace prolie {

/// A direction y whose multiples are scanned for singular points. `factor` is
/// the 1-based factor index for product towers (0 otherwise); `level` is the
/// first level carrying y, in that level's coordinates.
struct WitnessDirection {
  int level = 0;
  int factor = 0;
  std::string label;
  Element y;
};

/// Finite truncation of an inverse system; levels[0] is the coarsest and
/// connectors[j] maps levels[j+1] onto levels[j].
struct Tower {
  std::string name;
  std::vector<std::shared_ptr<const LieAlgebra>> levels;
  std::vector<Morphism> connectors;
  std::vector<WitnessDirection> witnesses;  // shipped families, probed before basis vectors

  int size() const { return static_cast<int>(levels.size()); }
  const LieAlgebra& level(int j) const { return *levels[static_cast<size_t>(j)]; }
  /// Composite levels[from] -> levels[to], from >= to.
  Morphism projection(int from, int to) const;
  /// Zero-padding section of the composite projection (the connectors of the
  /// shipped generators are coordinate projections).
  Element lift(const Element& x, int from, int to) const;
};

struct TowerValidation {
  bool valid = true;
  std::vector<std::string> problems;
};

/// Every level satisfies the Lie axioms, every connector is a surjective
/// homomorphism, and composites agree with the stored chain.
TowerValidation validate(const Tower& t);

struct CoherentElement {
  std::vector<Element> components;
};

bool is_coherent(const Tower& t, const CoherentElement& x);
/// Components are the images of an element of the top level.
CoherentElement coherent_from_top(const Tower& t, const Element& top);
CoherentElement coherent_add(const CoherentElement& a, const CoherentElement& b);
CoherentElement coherent_bracket(const Tower& t, const CoherentElement& a, const CoherentElement& b);

/// Outer element adjoined to a series tower, acting on the base by `action`
/// (a derivation of the base) in every degree.
struct Adjoined {
  std::string label;
  ExactMatrix action;
};

/// Levels k = 1..N: base (x) X R[X]/(X^{k+1}) with [a X^i, b X^j] = [a,b] X^{i+j},
/// labels "<a>_<i>", optionally with the adjoined element placed last.
Tower make_series_tower(const LieAlgebra& base, int N, const std::optional<Adjoined>& adjoin = std::nullopt);

/// Head algebra acting on every factor; action(n, factor)[k] is the derivation of
/// factor n given by head basis vector k.
struct ProductHead {
  LieAlgebra algebra;
  std::function<std::vector<ExactMatrix>(int, const LieAlgebra&)> action;
};

/// Level k = r_1 x ... x r_k (x| head). Factor labels get the suffix "_n";
/// basis order is factor 1, ..., factor k, then the head.
Tower make_product_tower(const std::function<LieAlgebra(int)>& factor_at, int N,
                         const std::optional<ProductHead>& head = std::nullopt);

/// r_n = C^2 x|_{D_n} R t_n, D_n = (1 + n i) Id, with realified sl2(C) acting
/// on each C^2, and witnesses y_n = (t_n - H)/n (so x_n = 2 pi y_n).
Tower make_final_example_tower(int N);
/// sl2(X R[[X]]) x| R U, truncated at degree N; witness U.
Tower make_sl2_series_tower(int N);

struct LevelSmoothness {
  int level = 0;
  Index dim = 0;
  Index radical_dim = 0;
  int sl2_count = 0;
  int non_sl2_simple_count = 0;
  std::vector<std::string> tags;
};

struct SmoothnessReport {
  std::vector<LevelSmoothness> per_level;
  bool stabilized = false;            // non-sl2 count constant over the last three levels
  bool verdict_at_truncation = true;  // a finite count, always the case at a finite level
  // limit verdict: smooth iff the non-sl2 count has stopped growing; unset below three levels
  std::optional<bool> smooth_extrapolated;
  int verified_through = 0;
  std::string note;
};

SmoothnessReport smoothness_check(const Tower& t);

struct SingularPoint {
  int level = 0;   // first level carrying the point
  int factor = 0;  // 0 when not tied to a factor
  std::string label;
  Element y;             // direction, exact
  double scale = 0.0;    // x = scale * y
  double norm = 0.0;     // Euclidean coefficient norm of x
  Complex eigenvalue;    // offending eigenvalue of ad x
  long k = 0;            // eigenvalue ~ 2 pi i k
  bool exact_2pi = false;  // eigenvalue is 2 pi i k exactly (scale a rational multiple of 2 pi)
  bool reverified = false;
};

struct ProbeLevel {
  int level = 0;
  std::vector<SingularPoint> new_points;
  std::optional<double> min_norm;  // over all points carried by this level
};

enum class LocalExp { LocallyExponential, NotLocallyExponential };
std::string to_string(LocalExp v);

struct ProbeReport {
  std::vector<ProbeLevel> per_level;
  LocalExp verdict = LocalExp::LocallyExponential;
  int verified_through = 0;
  double norm_budget = 0.0;
  std::string note;
};

/// Scans witness directions (shipped ones, then basis vectors of each level):
/// the smallest singular multiple of y is 2 pi / |l| for the largest purely
/// imaginary eigenvalue i l of ad y. Directions are examined at the first
/// level carrying them; singular points persist upward since Spec of a
/// quotient is contained in Spec upstairs. The verdict is
/// NotLocallyExponential when the minimal singular norm strictly decreases
/// over the last three levels.
ProbeReport local_exponentiality_probe(const Tower& t, double norm_budget = 1e300, bool scan_basis = true);

struct ExponentialIdealReport {
  int level = 0;
  Index kernel_dim = 0;
  Index codimension = 0;
  SCResult sc;
  std::optional<SaitoVerdict> saito;  // cross-check when SC fails
};

/// SC on the kernel of levels[level] -> levels[0].
ExponentialIdealReport exponential_ideal_check(const Tower& t, int level);

/// Saito recursion on a series tower at level N (coarse) against level 3N
/// (fine). The triple is found at level N from the adjoined element (or any
/// exact triple) and zero-extended. The short overload is the sl2 example.
struct SeriesSaitoReport {
  int N = 0;
  int fine = 0;
  bool i_in_spectrum = false;
  std::optional<RotationTriple> triple;
  SaitoOutcome coarse;
  SaitoOutcome fine_outcome;
};
SeriesSaitoReport series_saito_check(const LieAlgebra& base, const Adjoined& adjoin, int N, int max_depth);
SeriesSaitoReport series_saito_check(int N, int max_depth);

/// Z = [P', Q'] = -(a^2 + b^2) (x) U for the eigenvector (Q + iP) (x) (a + ib)
/// of ad U; per truncation degree, Z != 0 exactly when 2 * min(lowdeg a,
/// lowdeg b) <= degree.
struct FormalRealityRow {
  int degree = 0;
  int samples = 0;
  int nonzero = 0;
  int predicted_nonzero = 0;
  bool agree = true;
};
std::vector<FormalRealityRow> formal_reality_report(int N, int samples, std::uint64_t seed);

}  // namespace prolie
