#include "prolie/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace prolie {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite input");
  Rational q;
  q = x;  // mpq_set_d is exact
  return q;
}

std::optional<Rational> reconstruct_rational(double x, double tol, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // continued-fraction convergents
  long double rem = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long double a = std::floor(rem);
    if (std::fabs(a) > 1e18L) break;
    Integer ai = static_cast<long>(a);
    Integer p2 = ai * p1 + p0;
    Integer q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational cand(p1, q1);
    cand.canonicalize();
    if (std::fabs(cand.get_d() - x) <= tol) return cand;
    long double frac = rem - a;
    if (frac == 0) break;
    rem = 1.0L / frac;
  }
  return std::nullopt;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  if (o.is_zero()) throw std::domain_error("Gaussian: division by zero");
  if (sgn(o.im) == 0) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  Rational n = o.norm2();
  Rational r = (re * o.re + im * o.im) / n;
  Rational i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Gaussian gaussian_from_complex(std::complex<double> z) {
  return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

std::optional<Gaussian> reconstruct_gaussian(std::complex<double> z, double tol, long max_den) {
  auto r = reconstruct_rational(z.real(), tol, max_den);
  auto i = reconstruct_rational(z.imag(), tol, max_den);
  if (!r || !i) return std::nullopt;
  return Gaussian(*r, *i);
}

std::string to_string(const Gaussian& g) {
  if (g.is_zero()) return "0";
  if (sgn(g.im) == 0) return g.re.get_str();
  std::string imag;
  Rational a = abs(g.im);
  imag = (a == 1) ? "i" : a.get_str() + "i";
  if (sgn(g.re) == 0) return (sgn(g.im) < 0 ? "-" : "") + imag;
  return g.re.get_str() + (sgn(g.im) < 0 ? "-" : "+") + imag;
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << to_string(g); }

}  // namespace prolie
