#include "prolie/lattice.hpp"

#include <cmath>
#include <random>

#include "prolie/algebra.hpp"

namespace prolie {

namespace {

bool is_square(const Integer& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

using QVec = std::vector<QuadraticNumber>;

/// Rank by elimination over Q(sqrt d).
template <class T>
Index elimination_rank(std::vector<std::vector<T>> m) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && m[p][c] == T{}) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == T{}) continue;
      T f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<Index>(r);
}

}  // namespace

QuadraticNumber::QuadraticNumber(Rational x, Rational y, Integer rad) : a(std::move(x)), b(std::move(y)), d(std::move(rad)) {
  if (sgn(b) != 0) {
    if (sgn(d) <= 0) throw AlgebraError("quadratic number: radicand must be positive");
    if (is_square(d)) throw AlgebraError("quadratic number: sqrt(" + d.get_str() + ") is rational");
  } else {
    d = 0;
  }
}

double QuadraticNumber::to_double() const { return a.get_d() + b.get_d() * std::sqrt(d.get_d()); }

void QuadraticNumber::unify(const QuadraticNumber& o) {
  if (o.is_rational()) return;
  if (is_rational()) {
    d = o.d;
    return;
  }
  if (d != o.d) throw AlgebraError("quadratic number: mixed radicands sqrt(" + d.get_str() + ") and sqrt(" + o.d.get_str() + ")");
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  unify(o);
  a += o.a;
  b += o.b;
  if (sgn(b) == 0) d = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  unify(o);
  a -= o.a;
  b -= o.b;
  if (sgn(b) == 0) d = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  unify(o);
  Rational na = a * o.a + b * o.b * Rational(d), nb = a * o.b + b * o.a;
  a = na;
  b = nb;
  if (sgn(b) == 0) d = 0;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  if (o.is_zero()) throw AlgebraError("quadratic number: division by zero");
  unify(o);
  // (a + b r)/(c + e r) = (a + b r)(c - e r)/(c^2 - d e^2); the norm is nonzero as d is not a square
  Rational nrm = o.a * o.a - Rational(o.d) * o.b * o.b;
  QuadraticNumber conj = o;
  conj.b = -conj.b;
  *this *= conj;
  a /= nrm;
  b /= nrm;
  return *this;
}

std::string to_string(const QuadraticNumber& q) {
  if (q.is_rational()) return to_string(q.a);
  std::string s = sgn(q.a) != 0 ? to_string(q.a) + (sgn(q.b) > 0 ? "+" : "") : std::string{};
  s += to_string(q.b) + "*sqrt(" + q.d.get_str() + ")";
  return s;
}

void check_lattice(const LatticeSubgroup& l) {
  Integer rad = 0;
  for (const auto& g : l.generators) {
    if (static_cast<Index>(g.size()) != l.real_dim + l.int_dim) throw AlgebraError("lattice: generator has the wrong length");
    for (Index k = 0; k < static_cast<Index>(g.size()); ++k) {
      const auto& x = g[static_cast<size_t>(k)];
      if (!x.is_rational()) {
        if (sgn(rad) != 0 && rad != x.d) throw AlgebraError("lattice: generators mix different square roots");
        rad = x.d;
      }
      if (k >= l.real_dim && (!x.is_rational() || x.a.get_den() != 1))
        throw AlgebraError("lattice: integer coordinate " + std::to_string(k + 1) + " is not an integer");
    }
  }
}

HermiteResult hermite(std::vector<std::vector<Integer>> B) {
  const size_t r = B.size(), c = r ? B[0].size() : 0;
  HermiteResult out;
  out.T.assign(r, std::vector<Integer>(r, 0));
  for (size_t i = 0; i < r; ++i) out.T[i][i] = 1;
  auto sub = [&](size_t dst, size_t src, const Integer& q) {
    for (size_t j = 0; j < c; ++j) B[dst][j] -= q * B[src][j];
    for (size_t j = 0; j < r; ++j) out.T[dst][j] -= q * out.T[src][j];
  };
  size_t p = 0;
  for (size_t col = 0; col < c && p < r; ++col) {
    while (true) {
      // smallest nonzero entry at or below p moves to p
      size_t best = r;
      for (size_t i = p; i < r; ++i)
        if (sgn(B[i][col]) != 0 && (best == r || abs(B[i][col]) < abs(B[best][col]))) best = i;
      if (best == r) break;
      std::swap(B[best], B[p]);
      std::swap(out.T[best], out.T[p]);
      bool done = true;
      for (size_t i = p + 1; i < r; ++i) {
        if (sgn(B[i][col]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), B[i][col].get_mpz_t(), B[p][col].get_mpz_t());
        sub(i, p, q);
        done = done && sgn(B[i][col]) == 0;
      }
      if (done) break;
    }
    if (p < r && sgn(B[p][col]) != 0) {
      out.pivots.push_back(static_cast<Index>(col));
      ++p;
    }
  }
  out.H = std::move(B);
  return out;
}

DiscretenessResult is_discrete(const LatticeSubgroup& l) {
  check_lattice(l);
  DiscretenessResult res;
  const size_t r = l.generators.size();
  std::vector<std::vector<Integer>> B(r, std::vector<Integer>(static_cast<size_t>(l.int_dim)));
  for (size_t i = 0; i < r; ++i)
    for (Index k = 0; k < l.int_dim; ++k) B[i][static_cast<size_t>(k)] = l.generators[i][static_cast<size_t>(l.real_dim + k)].a.get_num();
  HermiteResult h = hermite(B);
  for (Index p : h.pivots) res.F.push_back(p + 1);
  if (l.real_dim == 0) {
    res.method = "finite projection";
    res.abstract_rank = res.span_dim = static_cast<Index>(h.pivots.size());
    return res;
  }
  // rows of T below the pivot rows: Z-basis of combinations with vanishing Z^J part
  for (size_t i = h.pivots.size(); i < r; ++i) res.relations.push_back(h.T[i]);
  std::vector<QVec> kernel;
  for (const auto& rel : res.relations) {
    QVec v(static_cast<size_t>(l.real_dim));
    for (size_t j = 0; j < r; ++j) {
      if (sgn(rel[j]) == 0) continue;
      QuadraticNumber c{Rational(rel[j])};
      for (Index k = 0; k < l.real_dim; ++k) v[static_cast<size_t>(k)] += c * l.generators[j][static_cast<size_t>(k)];
    }
    kernel.push_back(std::move(v));
  }
  std::vector<std::vector<Rational>> split;
  for (const auto& v : kernel) {
    std::vector<Rational> row;
    for (const auto& x : v) {
      row.push_back(x.a);
      row.push_back(x.b);
    }
    split.push_back(std::move(row));
  }
  res.abstract_rank = elimination_rank(split);
  res.span_dim = elimination_rank(kernel);
  res.discrete = res.abstract_rank == res.span_dim;
  res.method = l.int_dim == 0 ? "rank comparison" : "real slice of a finitely generated group";
  return res;
}

LatticeSubgroup random_unimodular_recombination(const LatticeSubgroup& l, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const size_t r = l.generators.size();
  LatticeSubgroup out = l;
  if (r < 2) {
    if (r == 1 && (rng() & 1))
      for (auto& x : out.generators[0]) x = QuadraticNumber{} - x;
    return out;
  }
  std::uniform_int_distribution<size_t> pick(0, r - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int step = 0; step < 4 * static_cast<int>(r); ++step) {
    size_t i = pick(rng), j = pick(rng);
    if (i == j) {
      std::swap(out.generators[i], out.generators[(i + 1) % r]);
      continue;
    }
    QuadraticNumber c{Rational(coef(rng))};
    for (size_t k = 0; k < out.generators[i].size(); ++k) out.generators[i][k] += c * out.generators[j][k];
  }
  return out;
}

}  // namespace prolie
