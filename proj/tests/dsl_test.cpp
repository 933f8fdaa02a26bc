#include <gtest/gtest.h>

#include <filesystem>
#include <regex>

#include "prolie/catalog.hpp"
#include "prolie/dsl.hpp"
#include "prolie/tower.hpp"
#include "support.hpp"

using namespace prolie;
using namespace prolie::testing;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> lie_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".lie") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

const fs::path kData = PROLIE_DATA_DIR;

// Random coefficient expression together with its exact value.
struct Sample {
  std::string text;
  Gaussian value;
};

Sample random_expr(Rng& rng, int depth) {
  std::uniform_int_distribution<int> op(0, depth > 0 ? 6 : 1), small(0, 9), den(1, 5);
  switch (op(rng)) {
    case 0: {
      int p = small(rng), q = den(rng);
      Rational v(p, q);
      v.canonicalize();
      return {std::to_string(p) + "/" + std::to_string(q), v};
    }
    case 1: {
      int k = small(rng) + 1;
      return {std::to_string(k) + "i", Gaussian(Rational(0), Rational(k))};
    }
    case 2: {
      auto a = random_expr(rng, depth - 1), b = random_expr(rng, depth - 1);
      return {"(" + a.text + " + " + b.text + ")", a.value + b.value};
    }
    case 3: {
      auto a = random_expr(rng, depth - 1), b = random_expr(rng, depth - 1);
      return {a.text + " - (" + b.text + ")", a.value - b.value};
    }
    case 4: {
      auto a = random_expr(rng, depth - 1), b = random_expr(rng, depth - 1);
      return {"(" + a.text + ")*(" + b.text + ")", a.value * b.value};
    }
    case 5: {
      auto a = random_expr(rng, depth - 1);
      return {"-(" + a.text + ")", -a.value};
    }
    default: {
      auto a = random_expr(rng, depth - 1), b = random_expr(rng, depth - 1);
      if (b.value.is_zero()) return a;
      return {"(" + a.text + ")/(" + b.text + ")", a.value / b.value};
    }
  }
}

}  // namespace

TEST(Dsl, CorpusRoundTrips) {
  auto files = lie_files(kData);
  ASSERT_GE(files.size(), 15u);
  for (const auto& f : files) {
    SCOPED_TRACE(f.string());
    dsl::SourceFile s = dsl::parse(read_file(f));
    EXPECT_FALSE(s.declarations.empty());
    std::string printed = dsl::print(s);
    dsl::SourceFile again = dsl::parse(printed);
    EXPECT_EQ(again, s);
    EXPECT_EQ(dsl::print(again), printed);
    EXPECT_NO_THROW(dsl::evaluate(s));
  }
}

TEST(Dsl, MalformedFilesReportPositions) {
  auto files = lie_files(kData / "malformed");
  ASSERT_GE(files.size(), 8u);
  const std::regex header(R"(# expect (\d+):(\d+) (.*))");
  for (const auto& f : files) {
    SCOPED_TRACE(f.string());
    std::string text = read_file(f);
    std::smatch m;
    std::string first = text.substr(0, text.find('\n'));
    ASSERT_TRUE(std::regex_match(first, m, header));
    const int line = std::stoi(m[1]), col = std::stoi(m[2]);
    const std::string needle = m[3];
    try {
      dsl::evaluate(dsl::parse(text));
      ADD_FAILURE() << "accepted";
    } catch (const dsl::DslError& e) {
      EXPECT_EQ(e.pos.line, line) << e.what();
      EXPECT_EQ(e.pos.col, col) << e.what();
      EXPECT_NE(e.message.find(needle), std::string::npos) << e.what();
    }
  }
}

TEST(Dsl, Mot2Table) {
  auto env = dsl::evaluate(dsl::parse(read_file(kData / "mot2.lie")));
  const auto* a = env.algebra("mot2");
  ASSERT_NE(a, nullptr);
  const LieAlgebra& g = *a->algebra;
  ASSERT_EQ(g.dim(), 3);
  EXPECT_EQ(g.labels(), (std::vector<std::string>{"U", "P", "Q"}));
  LieAlgebra ref = catalog::mot2();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 3; ++k) EXPECT_EQ(g.constant(i, j, k), ref.constant(i, j, k)) << i << j << k;
  EXPECT_TRUE(equal(g.bracket(g.basis(1), g.basis(0)), Element(-g.basis(2))));
}

TEST(Dsl, EmptyBracketsGiveAbelian) {
  auto env = dsl::evaluate(dsl::parse("algebra e { basis X; }"));
  const LieAlgebra& g = *env.algebra("e")->algebra;
  EXPECT_EQ(g.dim(), 1);
  EXPECT_TRUE(is_zero_vector(g.bracket(g.basis(0), g.basis(0))));
  auto env2 = dsl::evaluate(dsl::parse("algebra a { basis X Y Z; }"));
  const LieAlgebra& h = *env2.algebra("a")->algebra;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) EXPECT_TRUE(is_zero_vector(h.bracket(h.basis(i), h.basis(j))));
}

TEST(Dsl, BracketDeclarations) {
  // the reversed pair is implied; restating it consistently is allowed
  const char* ok = "algebra g {\n basis X Y;\n bracket [X, Y] = Y;\n bracket [Y, X] = -Y;\n}";
  auto env = dsl::evaluate(dsl::parse(ok));
  const LieAlgebra& g = *env.algebra("g")->algebra;
  EXPECT_TRUE(equal(g.bracket(g.basis(0), g.basis(1)), g.basis(1)));
  const char* bad = "algebra g {\n basis X Y;\n bracket [X, Y] = Y;\n  bracket [X, Y] = 2*Y;\n}";
  try {
    dsl::evaluate(dsl::parse(bad));
    FAIL();
  } catch (const dsl::DslError& e) {
    EXPECT_EQ(e.pos.line, 4);
    EXPECT_EQ(e.pos.col, 3);
  }
  EXPECT_THROW(dsl::evaluate(dsl::parse("algebra g { basis X Y; bracket [X, X] = Y; }")), dsl::DslError);
}

TEST(Dsl, RandomExpressionsEvaluateExactly) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    Sample a = random_expr(rng, 4), b = random_expr(rng, 3);
    std::string src = "matrix m {\n  A = [[" + a.text + ", 1], [0, " + b.text + "]];\n}\n";
    dsl::SourceFile s = dsl::parse(src);
    ASSERT_EQ(dsl::parse(dsl::print(s)), s) << src;
    for (const auto& text : {src, dsl::print(s)}) {
      auto env = dsl::evaluate(dsl::parse(text));
      const auto* m = env.algebra("m");
      ASSERT_TRUE(m && m->matrices.has_value());
      const ExactMatrix& A = m->matrices->front();
      EXPECT_EQ(A(0, 0), a.value) << a.text;
      EXPECT_EQ(A(1, 1), b.value) << b.text;
    }
  }
}

TEST(Dsl, RandomAlgebrasRoundTripThroughText) {
  Rng rng(32);
  for (int t = 0; t < 30; ++t) {
    LieAlgebra g = random_solvable(rng, 5);
    std::string src = "algebra g {\n  basis";
    for (const auto& l : g.labels()) src += " " + l;
    src += ";\n";
    for (Index i = 0; i < g.dim(); ++i)
      for (Index j = i + 1; j < g.dim(); ++j) {
        Element v = g.bracket(g.basis(i), g.basis(j));
        if (is_zero_vector(v)) continue;
        src += "  bracket [" + g.labels()[i] + ", " + g.labels()[j] + "] =";
        bool first = true;
        for (Index k = 0; k < g.dim(); ++k) {
          if (v(k).is_zero()) continue;
          src += (first ? " " : " + ") + std::string("(") + v(k).re.get_str() + ")*" + g.labels()[k];
          first = false;
        }
        src += ";\n";
      }
    src += "}\n";
    auto env = dsl::evaluate(dsl::parse(dsl::print(dsl::parse(src))));
    const LieAlgebra& h = *env.algebra("g")->algebra;
    ASSERT_EQ(h.dim(), g.dim());
    for (Index i = 0; i < g.dim(); ++i)
      for (Index j = 0; j < g.dim(); ++j) EXPECT_TRUE(equal(h.bracket(h.basis(i), h.basis(j)), g.bracket(g.basis(i), g.basis(j))));
  }
}

TEST(Dsl, SeriesAndProductTowers) {
  auto env = dsl::evaluate(dsl::parse(read_file(kData / "series_sl2.lie")));
  const auto* v = env.find("sl2_series");
  ASSERT_NE(v, nullptr);
  const auto& te = std::get<dsl::TowerEntry>(*v);
  ASSERT_TRUE(te.series.has_value());
  EXPECT_EQ(te.series->N, 4);
  EXPECT_EQ(te.tower.size(), 4);
  Tower ref = make_sl2_series_tower(4);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(te.tower.level(k).dim(), ref.level(k).dim());
}

TEST(Dsl, MatrixElementsAndLattices) {
  auto env = dsl::evaluate(dsl::parse(read_file(kData / "matrices.lie")));
  const auto* rot = env.element("rot");
  ASSERT_NE(rot, nullptr);
  EXPECT_EQ(rot->algebra, "sl2m");
  const LieAlgebra& s = *env.algebra("sl2m")->algebra;
  EXPECT_EQ(s.dim(), 3);
  EXPECT_EQ(env.algebra("heism")->algebra->dim(), 3);
  auto lat = dsl::evaluate(dsl::parse(read_file(kData / "lattices.lie")));
  for (const char* n : {"dense", "standard", "rational", "mixed", "golden"})
    EXPECT_TRUE(std::holds_alternative<LatticeSubgroup>(*lat.find(n))) << n;
  auto decl = std::get<dsl::LatticeDecl>(dsl::parse("lattice L in R^1 x Z^0 { gen [(1 + sqrt(5))/2]; }").declarations[0]);
  QuadraticNumber phi = dsl::eval_quadratic(decl.gens[0][0]);
  EXPECT_EQ(phi, QuadraticNumber(Rational(1, 2), Rational(1, 2), 5));
  EXPECT_EQ(phi * phi, phi + QuadraticNumber(Rational(1)));
}
