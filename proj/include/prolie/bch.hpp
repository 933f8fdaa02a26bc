#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prolie/algebra.hpp"

namespace prolie {

/// Dynkin coefficient of the right-nested bracket [w1,[w2,[...,wm]]] for a
/// word over {X, Y} ('x'/'y'), memoised; thread-safe.
Rational dynkin_coefficient(const std::string& word);

/// log(exp x exp y) through bracket degree `class_bound`; exact whenever the
/// algebra is nilpotent of class <= class_bound. Throws AlgebraError on
/// class_bound == 0.
Element bch(const LieAlgebra& g, const Element& x, const Element& y, int class_bound);

/// Same, with the bound taken from the nilpotency class (throws if g is not nilpotent).
Element bch(const LieAlgebra& g, const Element& x, const Element& y);

/// Degree-d homogeneous part of the series.
Element bch_component(const LieAlgebra& g, const Element& x, const Element& y, int degree);

struct AxiomReport {
  int samples = 0;
  bool associativity = true;  // E1
  bool unit = true;           // E2
  bool one_parameter = true;  // E3
  bool second_order = true;   // E4
  std::vector<std::string> counterexamples;
  bool all() const { return associativity && unit && one_parameter && second_order; }
};

/// Local group axioms for x*y = bch(x,y) on random rational samples, with
/// strict equality.
AxiomReport check_local_group_axioms(const LieAlgebra& g, int samples, std::uint64_t seed = 1);

}  // namespace prolie
