#pragma once

#include <utility>
#include <vector>

#include "prolie/linalg.hpp"

namespace prolie {

/// Dense univariate polynomial, coefficients in ascending degree order.
/// The zero polynomial has no coefficients.
template <class F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(F v) { return Polynomial(std::vector<F>{std::move(v)}); }
  static Polynomial monomial(int degree, F v = field_traits<F>::one()) {
    std::vector<F> c(static_cast<size_t>(degree) + 1, field_traits<F>::zero());
    c.back() = std::move(v);
    return Polynomial(std::move(c));
  }
  /// x - root
  static Polynomial linear_root(const F& root) { return Polynomial(std::vector<F>{-root, field_traits<F>::one()}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coeffs() const { return c_; }
  const F& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  const F& leading() const { return c_.back(); }

  F operator()(const F& x) const {
    F acc = field_traits<F>::zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<F> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = F(static_cast<int>(k)) * c_[k];
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    F inv = field_traits<F>::one() / leading();
    std::vector<F> d = c_;
    for (auto& v : d) v *= inv;
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), field_traits<F>::zero());
    for (size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), field_traits<F>::zero());
    for (size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) r[k] -= b.c_[k];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, field_traits<F>::zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (prolie::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        if (!prolie::is_zero(b.c_[j])) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const F& s, const Polynomial& p) {
    std::vector<F> r = p.c_;
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division: returns (quotient, remainder).
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("Polynomial: division by zero");
    if (a.degree() < b.degree()) return {Polynomial{}, a};
    std::vector<F> rem = a.c_;
    std::vector<F> quo(static_cast<size_t>(a.degree() - b.degree() + 1), field_traits<F>::zero());
    F inv = field_traits<F>::one() / b.leading();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      F q = rem[static_cast<size_t>(k + b.degree())] * inv;
      if (prolie::is_zero(q)) continue;
      for (int j = 0; j <= b.degree(); ++j) {
        if (prolie::is_zero(b.c_[static_cast<size_t>(j)])) continue;
        rem[static_cast<size_t>(k + j)] -= q * b.c_[static_cast<size_t>(j)];
      }
      quo[static_cast<size_t>(k)] = std::move(q);
    }
    rem.resize(static_cast<size_t>(b.degree()));
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

 private:
  void trim() {
    while (!c_.empty() && prolie::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<F> c_;
};

/// Monic greatest common divisor.
template <class F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second.monic();
    a = std::move(b).monic();
    b = std::move(r);
  }
  return a.monic();
}

template <class F>
Polynomial<F> exact_quotient(const Polynomial<F>& a, const Polynomial<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_quotient: nonzero remainder");
  return q;
}

/// Square-free factorisation (Yun). Entry k holds the monic product of all
/// irreducible factors of multiplicity k + 1; entries may be constant 1.
template <class F>
std::vector<Polynomial<F>> squarefree_decomposition(const Polynomial<F>& f) {
  std::vector<Polynomial<F>> out;
  if (f.degree() <= 0) return out;
  Polynomial<F> fm = f.monic();
  // strip x^m first; zero is a very common eigenvalue with large multiplicity
  int low = 0;
  while (is_zero(fm[low])) ++low;
  std::vector<F> shifted(fm.coeffs().begin() + low, fm.coeffs().end());
  Polynomial<F> g(std::move(shifted));

  if (g.degree() > 0) {
    Polynomial<F> dg = g.derivative();
    Polynomial<F> a0 = gcd(g, dg);
    Polynomial<F> b = exact_quotient(g, a0);
    Polynomial<F> c = exact_quotient(dg, a0);
    Polynomial<F> d = c - b.derivative();
    while (b.degree() > 0) {
      Polynomial<F> a = gcd(b, d);
      out.push_back(a);
      b = exact_quotient(b, a);
      c = exact_quotient(d, a);
      d = c - b.derivative();
    }
  }
  if (low > 0) {
    if (static_cast<int>(out.size()) < low) out.resize(static_cast<size_t>(low), Polynomial<F>::constant(field_traits<F>::one()));
    out[static_cast<size_t>(low - 1)] = out[static_cast<size_t>(low - 1)] * Polynomial<F>::monomial(1);
  }
  return out;
}

/// Characteristic polynomial det(x I - m) via Hessenberg reduction, O(n^3).
template <class F>
Polynomial<F> characteristic_polynomial(Matrix<F> h) {
  const Index n = h.rows();
  if (h.cols() != n) throw std::invalid_argument("characteristic_polynomial: matrix not square");
  // similarity transform to upper Hessenberg form
  for (Index m = 1; m + 1 < n; ++m) {
    Index piv = -1;
    for (Index i = m; i < n; ++i)
      if (!is_zero(h(i, m - 1))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      h.row(piv).swap(h.row(m));
      h.col(piv).swap(h.col(m));
    }
    F inv = field_traits<F>::one() / h(m, m - 1);
    for (Index i = m + 1; i < n; ++i) {
      if (is_zero(h(i, m - 1))) continue;
      F u = h(i, m - 1) * inv;
      for (Index j = 0; j < n; ++j)
        if (!is_zero(h(m, j))) h(i, j) -= u * h(m, j);
      for (Index j = 0; j < n; ++j)
        if (!is_zero(h(j, i))) h(j, m) += u * h(j, i);
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
  std::vector<Polynomial<F>> p;
  p.reserve(static_cast<size_t>(n) + 1);
  p.push_back(Polynomial<F>::constant(field_traits<F>::one()));
  for (Index k = 0; k < n; ++k) {
    Polynomial<F> next = Polynomial<F>::linear_root(h(k, k)) * p.back();
    F prod = field_traits<F>::one();
    for (Index i = k - 1; i >= 0; --i) {
      prod *= h(i + 1, i);
      if (is_zero(prod)) break;
      if (is_zero(h(i, k))) continue;
      next = next - (h(i, k) * prod) * p[static_cast<size_t>(i)];
    }
    p.push_back(std::move(next));
  }
  return p.back();
}

}  // namespace prolie
