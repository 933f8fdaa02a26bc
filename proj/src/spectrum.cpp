#include "prolie/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace prolie {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Complex> to_complex_coeffs(const ExactPolynomial& f) {
  std::vector<Complex> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.push_back(v.to_complex());
  return c;
}

std::vector<Complex> aberth(const std::vector<Complex>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<Complex> z(static_cast<size_t>(d));
  if (d == 0) return z;
  const Complex lc = c.back();
  double bound = 0.0;  // Fujiwara
  for (int k = 1; k <= d; ++k) bound = std::max(bound, std::pow(std::abs(c[static_cast<size_t>(d - k)] / lc), 1.0 / k));
  bound = std::max(2.0 * bound, 1e-3);
  for (int k = 0; k < d; ++k) z[static_cast<size_t>(k)] = std::polar(bound, kTwoPi * k / d + 0.4);

  auto horner = [&](Complex x, Complex& p, Complex& dp) {
    p = c.back();
    dp = 0;
    for (int k = d - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + c[static_cast<size_t>(k)];
    }
  };
  std::vector<bool> done(static_cast<size_t>(d), false);
  for (int iter = 0; iter < 2000; ++iter) {
    bool all = true;
    for (int k = 0; k < d; ++k) {
      if (done[static_cast<size_t>(k)]) continue;
      Complex p, dp;
      horner(z[static_cast<size_t>(k)], p, dp);
      if (p == Complex(0)) {
        done[static_cast<size_t>(k)] = true;
        continue;
      }
      Complex ratio = p / dp;
      Complex s = 0;
      for (int j = 0; j < d; ++j)
        if (j != k) s += 1.0 / (z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)]);
      Complex w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      z[static_cast<size_t>(k)] -= w;
      if (std::abs(w) <= 1e-17 * std::max(1.0, std::abs(z[static_cast<size_t>(k)])))
        done[static_cast<size_t>(k)] = true;
      else
        all = false;
    }
    if (all) break;
  }
  return z;
}

double abs_exact_value(const ExactPolynomial& f, Complex z) {
  Gaussian v = f(gaussian_from_complex(z));
  return std::abs(v.to_complex());
}

}  // namespace

int SpectrumReport::total_multiplicity() const {
  int s = 0;
  for (const auto& e : eigenvalues) s += e.multiplicity;
  return s;
}

std::vector<Eigenvalue> certified_roots(const ExactPolynomial& sqf) {
  std::vector<Eigenvalue> out;
  const int d = sqf.degree();
  if (d <= 0) return out;
  ExactPolynomial f = sqf.monic();
  if (d == 1) {
    Gaussian r = -f[0];
    out.push_back({r.to_complex(), 1, 0.0, r});
    return out;
  }
  std::vector<Complex> z = aberth(to_complex_coeffs(f));
  std::vector<double> rad(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    double prod = 1.0;
    for (int j = 0; j < d; ++j)
      if (j != i) prod *= std::abs(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
    double r = d * abs_exact_value(f, z[static_cast<size_t>(i)]) / prod;
    rad[static_cast<size_t>(i)] = std::isfinite(r) ? r * (1.0 + 1e-9) + 1e-300 : INFINITY;
  }
  // overlapping disks: each component holds as many roots as disks, so
  // widen every radius to cover its whole component
  std::vector<int> comp(static_cast<size_t>(d));
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int a) { return comp[static_cast<size_t>(a)] == a ? a : comp[static_cast<size_t>(a)] = find(comp[static_cast<size_t>(a)]); };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]) <= rad[static_cast<size_t>(i)] + rad[static_cast<size_t>(j)])
        comp[static_cast<size_t>(find(i))] = find(j);
  for (int i = 0; i < d; ++i) {
    double r = rad[static_cast<size_t>(i)];
    for (int j = 0; j < d; ++j)
      if (j != i && find(i) == find(j))
        r = std::max(r, std::abs(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]) + rad[static_cast<size_t>(j)]);
    Eigenvalue e{z[static_cast<size_t>(i)], 1, r, std::nullopt};
    double rtol = std::max(1e-9, std::min(1e-3, 10 * r));
    if (auto g = reconstruct_gaussian(z[static_cast<size_t>(i)], rtol)) {
      if (f(*g).is_zero()) {
        e.exact = *g;
        e.value = g->to_complex();
        e.radius = 0.0;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Gaussian> exact_roots(const ExactPolynomial& f) {
  std::vector<Gaussian> out;
  for (const auto& fac : squarefree_decomposition(f))
    for (const auto& e : certified_roots(fac))
      if (e.exact) out.push_back(*e.exact);
  return out;
}

SpectrumReport spectrum(const ExactMatrix& m) {
  SpectrumReport rep;
  rep.char_poly = characteristic_polynomial(m);
  auto fac = squarefree_decomposition(rep.char_poly);
  for (size_t k = 0; k < fac.size(); ++k) {
    for (auto e : certified_roots(fac[k])) {
      e.multiplicity = static_cast<int>(k) + 1;
      rep.eigenvalues.push_back(std::move(e));
    }
  }
  return rep;
}

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::Regular: return "Regular";
    case Regularity::Singular: return "Singular";
    case Regularity::Uncertain: return "Uncertain";
  }
  return "?";
}

RegularityVerdict regularity_from_spectrum(const SpectrumReport& s, double scale, double tol) {
  RegularityVerdict best;
  double best_slack = INFINITY;
  for (const auto& e : s.eigenvalues) {
    Complex lam = scale * e.value;
    double radius = std::abs(scale) * e.radius;
    long k = std::lround(lam.imag() / kTwoPi);
    if (k == 0) k = lam.imag() >= 0 ? 1 : -1;
    double dist = std::abs(lam - Complex(0.0, kTwoPi * static_cast<double>(k)));
    Regularity st = dist <= tol ? Regularity::Singular : dist <= radius + tol ? Regularity::Uncertain : Regularity::Regular;
    if (st == Regularity::Regular) continue;
    bool better = best.status == Regularity::Regular || (st == Regularity::Singular && best.status == Regularity::Uncertain) ||
                  (st == best.status && dist < best_slack);
    if (better) {
      best.status = st;
      best.offending_eigenvalue = lam;
      best.offending_integer = k;
      best.distance = dist;
      best_slack = dist;
    }
  }
  return best;
}

RegularityVerdict is_exp_regular(const LieAlgebra& g, const Element& x, double tol) {
  return regularity_from_spectrum(spectrum(g.ad(x)), 1.0, tol);
}

RegularityVerdict is_exp_regular_2pi(const LieAlgebra& g, const Element& y, double tol) {
  SpectrumReport s = spectrum(g.ad(y));
  for (const auto& e : s.eigenvalues) {
    if (!e.exact || sgn(e.exact->re) != 0) continue;
    const Rational& im = e.exact->im;
    if (im.get_den() != 1 || sgn(im) == 0) continue;
    RegularityVerdict v;
    v.status = Regularity::Singular;
    v.offending_integer = im.get_num().get_si();
    v.offending_eigenvalue = Complex(0.0, kTwoPi * static_cast<double>(*v.offending_integer));
    v.distance = 0.0;
    v.exact = true;
    return v;
  }
  return regularity_from_spectrum(s, kTwoPi, tol);
}

}  // namespace prolie
