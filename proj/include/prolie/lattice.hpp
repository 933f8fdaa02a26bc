#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prolie/linalg.hpp"

namespace prolie {

/// a + b sqrt(d) in Q(sqrt d); d is a positive non-square, or 0 when b = 0
/// throughout. Mixed radicands are rejected.
class QuadraticNumber {
 public:
  Rational a, b;
  Integer d = 0;

  QuadraticNumber() = default;
  QuadraticNumber(Rational x) : a(std::move(x)) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(Rational x, Rational y, Integer rad);

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  bool is_rational() const { return sgn(b) == 0; }
  double to_double() const;

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);
  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a == y.a && x.b == y.b && (x.is_rational() || x.d == y.d);
  }

 private:
  void unify(const QuadraticNumber& o);
};

std::string to_string(const QuadraticNumber& q);

/// Finitely generated subgroup of R^m x Z^J: each generator has m entries in
/// Q(sqrt d) followed by J integer entries.
struct LatticeSubgroup {
  std::string name;
  Index real_dim = 0;
  Index int_dim = 0;
  std::vector<std::vector<QuadraticNumber>> generators;
};

/// Throws AlgebraError on wrong lengths, non-integer Z entries, or mixed radicands.
void check_lattice(const LatticeSubgroup& l);

struct DiscretenessResult {
  bool discrete = true;
  Index abstract_rank = 0;  // r1: rank of Gamma intersected with R^m as an abstract group
  Index span_dim = 0;       // r2: dimension of its real span
  std::vector<Index> F;     // 1-based integer coordinates on which the projection is injective
  std::vector<std::vector<Integer>> relations;  // Z-basis of integer combinations with zero Z^J part
  std::string method;
};

/// Pure Z^J: always discrete, with F the pivot columns of the integer row
/// reduction. Otherwise Gamma is discrete iff Gamma intersected with R^m is,
/// and a finitely generated subgroup of R^m is discrete iff its rank over Q
/// equals the dimension of its real span.
DiscretenessResult is_discrete(const LatticeSubgroup& l);

/// Generators replaced by U * generators for a random unimodular integer U.
LatticeSubgroup random_unimodular_recombination(const LatticeSubgroup& l, std::uint64_t seed);

/// Integer row reduction: returns (H, T) with H = T * B in row echelon form
/// and T unimodular; pivots receives the pivot columns.
struct HermiteResult {
  std::vector<std::vector<Integer>> H, T;
  std::vector<Index> pivots;
};
HermiteResult hermite(std::vector<std::vector<Integer>> B);

}  // namespace prolie
