#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <gmpxx.h>
#include <Eigen/Core>

namespace prolie {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

/// Best rational approximation p/q with q <= max_den whose distance to x is at most tol.
std::optional<Rational> reconstruct_rational(double x, double tol = 1e-9, long max_den = 1000000);

std::string to_string(const Rational& q);

/// Gaussian rational re + im*i. All structure constants live in this field;
/// real algebras keep im == 0 everywhere.
class Gaussian {
 public:
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(int v) : re(v) {}                      // NOLINT(google-explicit-constructor)
  Gaussian(long v) : re(v) {}                     // NOLINT(google-explicit-constructor)
  Gaussian(Rational r) : re(std::move(r)) {}      // NOLINT(google-explicit-constructor)
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Gaussian conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

using Scalar = Gaussian;

Gaussian gaussian_from_complex(std::complex<double> z);
std::optional<Gaussian> reconstruct_gaussian(std::complex<double> z, double tol = 1e-9, long max_den = 1000000);

/// Canonical text: "0", "3/2", "-i", "1/2+3i", "-2-1/3i".
std::string to_string(const Gaussian& g);
std::ostream& operator<<(std::ostream& os, const Gaussian& g);

/// Per-field hooks used by the templated exact kernels.
template <class F>
struct field_traits;

template <>
struct field_traits<Rational> {
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
};

template <>
struct field_traits<Gaussian> {
  static bool is_zero(const Gaussian& x) { return x.is_zero(); }
  static Gaussian zero() { return {}; }
  static Gaussian one() { return 1; }
};

template <class F>
bool is_zero(const F& x) {
  return field_traits<F>::is_zero(x);
}

}  // namespace prolie

namespace Eigen {

template <>
struct NumTraits<prolie::Gaussian> : GenericNumTraits<prolie::Gaussian> {
  using Real = prolie::Gaussian;
  using NonInteger = prolie::Gaussian;
  using Nested = prolie::Gaussian;
  using Literal = prolie::Gaussian;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 64
  };
  static inline int digits10() { return 0; }
  static inline int max_digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 32
  };
  static inline int digits10() { return 0; }
  static inline int max_digits10() { return 0; }
};

}  // namespace Eigen
