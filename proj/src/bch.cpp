#include "prolie/bch.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "prolie/random.hpp"
#include "prolie/structure.hpp"

namespace prolie {

namespace {

Rational factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

Rational compute_dynkin(const std::string& w) {
  const int m = static_cast<int>(w.size());
  // ways[pos][n]: sum over splittings of w[0,pos) into n blocks x^r y^s of prod 1/(r! s!)
  std::vector<std::vector<Rational>> ways(static_cast<size_t>(m) + 1, std::vector<Rational>(static_cast<size_t>(m) + 1));
  ways[0][0] = 1;
  for (int pos = 0; pos < m; ++pos) {
    int xs = 0;
    while (pos + xs < m && w[static_cast<size_t>(pos + xs)] == 'x') ++xs;
    int ys = 0;
    while (pos + xs + ys < m && w[static_cast<size_t>(pos + xs + ys)] == 'y') ++ys;
    for (int n = 0; n < m; ++n) {
      const Rational& here = ways[static_cast<size_t>(pos)][static_cast<size_t>(n)];
      if (sgn(here) == 0) continue;
      for (int r = 0; r <= xs; ++r) {
        int smax = r == xs ? ys : 0;
        for (int s = 0; s <= smax; ++s) {
          if (r + s == 0) continue;
          ways[static_cast<size_t>(pos + r + s)][static_cast<size_t>(n + 1)] += here / (factorial(r) * factorial(s));
        }
      }
    }
  }
  Rational c = 0;
  for (int n = 1; n <= m; ++n) {
    Rational t = ways[static_cast<size_t>(m)][static_cast<size_t>(n)] / n;
    if (n % 2 == 0) t = -t;
    c += t;
  }
  return c / m;
}

void accumulate_words(const LieAlgebra& g, const Element& x, const Element& y, const Element& nested, std::string& suffix,
                      int lo, int hi, Element& out) {
  const int m = static_cast<int>(suffix.size());
  if (m >= lo) {
    std::string word(suffix.rbegin(), suffix.rend());
    Rational c = dynkin_coefficient(word);
    if (sgn(c) != 0) out += Scalar(c) * nested;
  }
  if (m >= hi) return;
  for (char letter : {'x', 'y'}) {
    Element next = g.bracket(letter == 'x' ? x : y, nested);
    if (is_zero_vector(next)) continue;
    suffix.push_back(letter);
    accumulate_words(g, x, y, next, suffix, lo, hi, out);
    suffix.pop_back();
  }
}

Element bch_range(const LieAlgebra& g, const Element& x, const Element& y, int lo, int hi) {
  if (x.size() != g.dim() || y.size() != g.dim()) throw AlgebraError("bch: element does not belong to the algebra");
  Element out = g.zero();
  // words are read right to left: the innermost letter comes first
  std::string suffix;
  for (char letter : {'x', 'y'}) {
    const Element& v = letter == 'x' ? x : y;
    if (is_zero_vector(v)) continue;
    suffix.assign(1, letter);
    accumulate_words(g, x, y, v, suffix, lo, hi, out);
  }
  return out;
}

}  // namespace

Rational dynkin_coefficient(const std::string& word) {
  static std::mutex mu;
  static std::map<std::string, Rational> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(word);
    if (it != memo.end()) return it->second;
  }
  Rational c = compute_dynkin(word);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(word, c);
  return c;
}

Element bch(const LieAlgebra& g, const Element& x, const Element& y, int class_bound) {
  if (class_bound <= 0) throw AlgebraError("bch: class bound must be positive");
  return bch_range(g, x, y, 1, class_bound);
}

Element bch(const LieAlgebra& g, const Element& x, const Element& y) {
  auto c = nilpotency_class(g);
  if (!c) throw AlgebraError("bch: algebra is not nilpotent; pass an explicit class bound");
  return bch(g, x, y, std::max(*c, 1));
}

Element bch_component(const LieAlgebra& g, const Element& x, const Element& y, int degree) {
  if (degree <= 0) throw AlgebraError("bch_component: degree must be positive");
  return bch_range(g, x, y, degree, degree);
}

AxiomReport check_local_group_axioms(const LieAlgebra& g, int samples, std::uint64_t seed) {
  auto c = nilpotency_class(g);
  if (!c) throw AlgebraError("check_local_group_axioms: algebra is not nilpotent");
  const int k = std::max(*c, 1);
  AxiomReport rep;
  rep.samples = samples;
  Rng rng(seed);
  auto mul = [&](const Element& a, const Element& b) { return bch(g, a, b, k); };
  auto note = [&](const std::string& axiom, int i) {
    std::ostringstream os;
    os << axiom << " fails at sample " << i;
    rep.counterexamples.push_back(os.str());
  };
  const Element zero = g.zero();
  for (int i = 0; i < samples; ++i) {
    Element x = random_vector(rng, g.dim()), y = random_vector(rng, g.dim()), z = random_vector(rng, g.dim());
    if (!equal(mul(x, mul(y, z)), mul(mul(x, y), z))) {
      rep.associativity = false;
      note("E1", i);
    }
    if (!equal(mul(x, zero), x) || !equal(mul(zero, x), x)) {
      rep.unit = false;
      note("E2", i);
    }
    Rational s = random_rational(rng, 4, 4), t = random_rational(rng, 4, 4);
    if (abs(s) > 1) s = 1 / s;
    if (abs(t) > 1) t = 1 / t;
    if (!equal(mul(Scalar(s) * x, Scalar(t) * x), Element(Scalar(s + t) * x))) {
      rep.one_parameter = false;
      note("E3", i);
    }
    // E4: degree-one part x + y, degree-two part [x,y]/2
    Element half = Scalar(Rational(1, 2)) * g.bracket(x, y);
    if (!equal(bch_component(g, x, y, 1), Element(x + y)) || (k >= 2 && !equal(bch_component(g, x, y, 2), half)) ||
        (k == 1 && !is_zero_vector(half))) {
      rep.second_order = false;
      note("E4", i);
    }
  }
  return rep;
}

}  // namespace prolie
