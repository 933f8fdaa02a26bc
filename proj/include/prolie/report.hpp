#pragma once

// JSON fragments for the command-line driver. Exact values are strings
// ("3/2", "1/2+i"), floating values are numbers, complex numbers are [re, im].

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "prolie/dsl.hpp"
#include "prolie/grouplaw.hpp"
#include "prolie/lattice.hpp"
#include "prolie/tower.hpp"

namespace prolie::report {

using Json = nlohmann::ordered_json;

struct Options {
  double tol = 1e-9;           // regularity and spectrum matching
  double kappa_sigma = 1e-8;   // kappa(x) counts as singular below this smallest singular value
  int max_depth = 64;          // Saito recursion
  std::uint64_t seed = 1;
  int samples = 100;           // sampled property checks
  int recombinations = 20;     // lattice invariance check
  bool probe_basis = true;
};

Json tolerances(const Options& o);

/// A report fragment and whether any verdict in it is Uncertain.
struct Fragment {
  Json body;
  bool uncertain = false;
};

Json exact(const Gaussian& z);
Json complex(const Complex& z);
/// {label: coefficient} over the nonzero coordinates.
Json element(const LieAlgebra& g, const Element& x);
/// Same, as floating values (numeric backends).
Json element_approx(const LieAlgebra& g, const Element& x);
Json subspace(const LieAlgebra& g, const Subspace& s);
Json root(const LieAlgebra& g, const Root& r);
Json triple(const LieAlgebra& g, const RotationTriple& t);

Fragment sc(const LieAlgebra& g);
Fragment saito(const LieAlgebra& g, int max_depth);
Json saito_outcome(const LieAlgebra& g, const SaitoOutcome& o);
Fragment series_saito(const dsl::SeriesInfo& s, int max_depth);
Json validation(const LieAlgebra& g);

/// Full classification of one algebra.
Fragment classify(const LieAlgebra& g, const Options& o);
/// Tower: per-level structure, exponentiality at every level, smoothness, probe.
Fragment classify(const dsl::TowerEntry& t, const Options& o);
Fragment classify(const LatticeSubgroup& l, const Options& o);

Fragment smoothness(const Tower& t);
Fragment probe(const Tower& t, const Options& o);
Fragment discreteness(const LatticeSubgroup& l, const Options& o);

/// Regularity of scale * y; `two_pi` selects the symbolic 2 pi path.
Fragment regular_point(const LieAlgebra& g, const Element& y, const Rational& scale, bool two_pi, const Options& o);
/// kappa(x) invertibility against is_exp_regular(x).
Fragment kappa_check(const LieAlgebra& g, const Element& x, const Options& o);

Json convergence(const ConvergenceTable& t, const std::vector<int>& ns);

}  // namespace prolie::report
