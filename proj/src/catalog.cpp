#include "prolie/catalog.hpp"

namespace prolie::catalog {

namespace {

void set(LieAlgebra& g, const std::string& a, const std::string& b, const std::vector<std::pair<std::string, Scalar>>& value) {
  Element v = g.zero();
  for (const auto& [label, c] : value) v(g.index_of(label)) += c;
  g.set_bracket(g.index_of(a), g.index_of(b), v);
}

ExactMatrix mat2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  ExactMatrix m(2, 2);
  m << Scalar(a), Scalar(b), Scalar(c), Scalar(d);
  return m;
}

}  // namespace

LieAlgebra abelian(int n) {
  std::vector<std::string> labels;
  for (int k = 1; k <= n; ++k) labels.push_back("e" + std::to_string(k));
  return LieAlgebra(labels, "abelian" + std::to_string(n));
}

LieAlgebra mot2() {
  LieAlgebra g({"U", "P", "Q"}, "mot2");
  set(g, "U", "P", {{"Q", 1}});
  set(g, "U", "Q", {{"P", -1}});
  return g;
}

LieAlgebra osc() {
  LieAlgebra g({"U", "P", "Q", "Z"}, "osc");
  set(g, "U", "P", {{"Q", 1}});
  set(g, "U", "Q", {{"P", -1}});
  set(g, "P", "Q", {{"Z", 1}});
  return g;
}

LieAlgebra heisenberg() {
  LieAlgebra g({"P", "Q", "Z"}, "heisenberg");
  set(g, "P", "Q", {{"Z", 1}});
  return g;
}

LieAlgebra affine_line() {
  LieAlgebra g({"e1", "e2"}, "aff1");
  set(g, "e1", "e2", {{"e2", 1}});
  return g;
}

LieAlgebra sl2_rotation_basis() {
  LieAlgebra g({"P", "Q", "U"}, "sl2");
  set(g, "U", "P", {{"Q", 1}});
  set(g, "U", "Q", {{"P", -1}});
  set(g, "P", "Q", {{"U", -1}});
  return g;
}

LieAlgebra sl2() {
  LieAlgebra g({"H", "E", "F"}, "sl2");
  set(g, "H", "E", {{"E", 2}});
  set(g, "H", "F", {{"F", -2}});
  set(g, "E", "F", {{"H", 1}});
  return g;
}

LieAlgebra so3() {
  LieAlgebra g({"L1", "L2", "L3"}, "so3");
  set(g, "L1", "L2", {{"L3", 1}});
  set(g, "L2", "L3", {{"L1", 1}});
  set(g, "L3", "L1", {{"L2", 1}});
  return g;
}

LieAlgebra sl2_ltimes_R2() {
  auto m = sl2_matrices();
  return semidirect(LieAlgebra({"x", "y"}), sl2(), m, "sl2_R2");
}

LieAlgebra filiform(int n) {
  LieAlgebra g = abelian(n);
  g.set_name("filiform" + std::to_string(n));
  for (int i = 2; i < n; ++i) set(g, "e1", "e" + std::to_string(i), {{"e" + std::to_string(i + 1), 1}});
  return g;
}

LieAlgebra sl2_complex() {
  LieAlgebra g = sl2();
  g.set_name("sl2C");
  return g;
}

LieAlgebra from_matrices(const std::vector<std::string>& labels, const std::vector<ExactMatrix>& mats, std::string name) {
  if (labels.size() != mats.size()) throw AlgebraError("from_matrices: one label per matrix");
  const Index n = static_cast<Index>(mats.size());
  if (n == 0) return LieAlgebra({}, std::move(name));
  const Index r = mats[0].rows();
  auto flat = [&](const ExactMatrix& m) {
    ExactVector v(r * r);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < r; ++j) v(i * r + j) = m(i, j);
    return v;
  };
  ExactMatrix cols(r * r, n);
  for (Index k = 0; k < n; ++k) cols.col(k) = flat(mats[static_cast<size_t>(k)]);
  if (rank(cols) != n) throw AlgebraError("from_matrices: matrices are linearly dependent");
  LieAlgebra g(labels, std::move(name));
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const auto& x = mats[static_cast<size_t>(a)];
      const auto& y = mats[static_cast<size_t>(b)];
      ExactMatrix c = multiply(x, y) - multiply(y, x);
      auto coef = solve(cols, flat(c));
      if (!coef) throw AlgebraError("from_matrices: span is not closed under the commutator");
      g.set_bracket(a, b, *coef);
    }
  return g;
}

std::vector<ExactMatrix> sl2_matrices() {
  return {mat2(1, 0, 0, -1), mat2(0, 1, 0, 0), mat2(0, 0, 1, 0)};
}

std::vector<ExactMatrix> sl2_rotation_matrices() {
  Rational h(1, 2);
  return {mat2(0, h, h, 0), mat2(h, 0, 0, -h), mat2(0, h, -h, 0)};
}

}  // namespace prolie::catalog
