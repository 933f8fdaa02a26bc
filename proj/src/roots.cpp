#include "prolie/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prolie/structure.hpp"

namespace prolie {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct NeedNumeric {};

Eigen::MatrixXcd to_cd(const ExactMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

Eigen::MatrixXcd echelon_columns(const Echelon<Scalar>& e) { return to_cd(transpose(ExactMatrix(e.rows))); }

bool gaussian_less(const Gaussian& a, const Gaussian& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

/// alpha on the whole basis from its values on the complement of [g,g]:
/// row j of the echelon form of [g,g] is e_p + sum_f R(j,f) e_f and alpha
/// vanishes on it.
template <class T, class Conv>
std::vector<T> extend_functional(const Echelon<Scalar>& derived, const std::vector<Index>& free, const std::vector<T>& on_free,
                                 Conv conv) {
  const Index n = derived.ambient();
  std::vector<T> out(static_cast<size_t>(n), T{});
  for (size_t a = 0; a < free.size(); ++a) out[static_cast<size_t>(free[a])] = on_free[a];
  for (Index j = 0; j < derived.rank(); ++j) {
    T s{};
    for (size_t a = 0; a < free.size(); ++a) {
      const Scalar& r = derived.rows(j, free[a]);
      if (!r.is_zero()) s += conv(r) * on_free[a];
    }
    out[static_cast<size_t>(derived.pivots[static_cast<size_t>(j)])] = T{} - s;
  }
  return out;
}

struct PeelOptions {
  Index lead = -1;              // position in the complement basis handled first
  bool prefer_imaginary = false;  // pick a purely imaginary nonzero eigenvalue when there is one
  bool stop_at_violation = false;
};

bool purely_imaginary(const Gaussian& z) { return sgn(z.re) == 0 && sgn(z.im) != 0; }

/// Elements whose brackets generate [g,g] as a Lie algebra: a complement of
/// [[g,g],[g,g]] inside [g,g]. Their common kernel equals that of all of [g,g].
std::vector<Element> derived_generators(const LieAlgebra& g, const Subspace& derived) {
  Subspace second = bracket_span(g, derived, derived);
  std::vector<Element> out;
  Echelon<Scalar> acc = second.basis;
  for (Index j = 0; j < derived.dim(); ++j) {
    Element v = derived.row(j);
    if (contains(acc, v)) continue;
    acc = extend(acc, v);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Root> roots_exact(const LieAlgebra& g, const Subspace& derived, const PeelOptions& opt = {}) {
  const Index n = g.dim();
  std::vector<Index> free = free_columns(derived.basis);
  std::vector<ExactMatrix> ad_free, ad_derived;
  for (Index f : free) ad_free.push_back(g.ad_basis(f));
  for (const auto& d : derived_generators(g, derived)) ad_derived.push_back(g.ad(d));
  std::vector<size_t> order(free.size());
  for (size_t a = 0; a < order.size(); ++a) order[a] = a;
  if (opt.lead >= 0) std::rotate(order.begin(), order.begin() + opt.lead, order.begin() + opt.lead + 1);

  std::vector<Root> out;
  Echelon<Scalar> cur = empty_echelon<Scalar>(n);
  while (cur.rank() < n) {
    std::vector<Index> wfree = free_columns(cur);
    const Index w = static_cast<Index>(wfree.size());
    auto quot = [&](const ExactMatrix& a) {
      ExactMatrix q(w, w);
      for (Index c = 0; c < w; ++c) {
        Element v = reduce(cur, Element(a.col(wfree[static_cast<size_t>(c)])));
        for (Index r = 0; r < w; ++r) q(r, c) = v(wfree[static_cast<size_t>(r)]);
      }
      return q;
    };
    ExactMatrix s;
    if (ad_derived.empty()) {
      s = identity_matrix<Scalar>(w);
    } else {
      ExactMatrix stack(w * static_cast<Index>(ad_derived.size()), w);
      for (size_t d = 0; d < ad_derived.size(); ++d) stack.middleRows(static_cast<Index>(d) * w, w) = quot(ad_derived[d]);
      s = nullspace(stack);
    }
    if (s.cols() == 0) throw AlgebraError("roots_solvable: algebra is not solvable");
    std::vector<Gaussian> lam(free.size());
    for (size_t a : order) {
      const ExactMatrix& adf = ad_free[a];
      Echelon<Scalar> e = rref(transpose(s));
      s = transpose(ExactMatrix(e.rows));
      ExactMatrix qa = quot(adf);
      ExactMatrix m(s.cols(), s.cols());
      for (Index j = 0; j < s.cols(); ++j) {
        auto c = coordinates(e, multiply(qa, Element(s.col(j))));
        if (!c) throw std::logic_error("roots_solvable: common kernel is not invariant");
        m.col(j) = *c;
      }
      auto roots = exact_roots(characteristic_polynomial(m));
      if (static_cast<int>(roots.size()) == 0) throw NeedNumeric{};
      std::sort(roots.begin(), roots.end(), gaussian_less);
      Gaussian pick = roots.front();
      if (opt.prefer_imaginary)
        for (const auto& z : roots)
          if (purely_imaginary(z)) {
            pick = z;
            break;
          }
      ExactMatrix shifted = m - pick * identity_matrix<Scalar>(m.rows());
      s = multiply(s, nullspace(shifted));
      lam[a] = pick;
    }
    Element v = zero_vector<Scalar>(n);
    for (Index c = 0; c < w; ++c) v(wfree[static_cast<size_t>(c)]) = s(c, 0);
    Root r;
    r.exact = extend_functional<Gaussian>(derived.basis, free, lam, [](const Scalar& x) { return x; });
    for (const auto& x : *r.exact) r.values.push_back(x.to_complex());
    r.n1_exact = make_subspace(g, cur);
    cur = extend(cur, v);
    r.n2_exact = make_subspace(g, cur);
    r.n1 = echelon_columns(r.n1_exact->basis);
    r.n2 = echelon_columns(r.n2_exact->basis);
    bool stop = false;
    if (opt.stop_at_violation)
      for (const auto& z : lam) stop = stop || purely_imaginary(z);
    out.push_back(std::move(r));
    if (stop) break;
  }
  return out;
}

Eigen::MatrixXcd numeric_null(const Eigen::MatrixXcd& m) {
  const Index c = m.cols();
  if (m.rows() == 0) return Eigen::MatrixXcd::Identity(c, c);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  double thr = 1e-8 * std::max(1.0, smax);
  std::vector<Index> keep;
  for (Index i = 0; i < c; ++i) {
    double s = i < sv.size() ? sv(i) : 0.0;
    if (s <= thr) keep.push_back(i);
  }
  if (keep.empty()) keep.push_back(c - 1);
  Eigen::MatrixXcd out(c, static_cast<Index>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Index>(k)) = svd.matrixV().col(keep[k]);
  return out;
}

Eigen::MatrixXcd orthonormal_complement(const Eigen::MatrixXcd& q, Index n) {
  if (q.cols() == 0) return Eigen::MatrixXcd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(q);
  Eigen::MatrixXcd full = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  return full.rightCols(n - q.cols());
}

std::vector<Root> roots_numeric(const LieAlgebra& g, const Subspace& derived) {
  const Index n = g.dim();
  std::vector<Index> free = free_columns(derived.basis);
  std::vector<Eigen::MatrixXcd> ad_free, ad_derived;
  for (Index f : free) ad_free.push_back(to_cd(g.ad_basis(f)));
  for (const auto& d : derived_generators(g, derived)) ad_derived.push_back(to_cd(g.ad(d)));

  std::vector<Root> out;
  Eigen::MatrixXcd q(n, 0);
  while (q.cols() < n) {
    Eigen::MatrixXcd c = orthonormal_complement(q, n);
    const Index w = c.cols();
    Eigen::MatrixXcd s;
    if (ad_derived.empty()) {
      s = Eigen::MatrixXcd::Identity(w, w);
    } else {
      Eigen::MatrixXcd stack(w * static_cast<Index>(ad_derived.size()), w);
      for (size_t d = 0; d < ad_derived.size(); ++d)
        stack.middleRows(static_cast<Index>(d) * w, w) = c.adjoint() * ad_derived[d] * c;
      s = numeric_null(stack);
    }
    for (const auto& adf : ad_free) {
      Eigen::MatrixXcd a = c.adjoint() * adf * c;
      Eigen::MatrixXcd m = s.adjoint() * a * s;
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
      auto ev = es.eigenvalues();
      Index pick = 0;
      for (Index i = 1; i < ev.size(); ++i)
        if (ev(i).real() < ev(pick).real() - 1e-9 ||
            (std::abs(ev(i).real() - ev(pick).real()) <= 1e-9 && ev(i).imag() < ev(pick).imag()))
          pick = i;
      Eigen::MatrixXcd shifted = m - ev(pick) * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
      s = s * numeric_null(shifted);
    }
    Eigen::VectorXcd sv = s.col(0).normalized();
    std::vector<Complex> lam;
    for (const auto& adf : ad_free) {
      Eigen::MatrixXcd a = c.adjoint() * adf * c;
      lam.push_back(sv.dot(a * sv));  // Rayleigh quotient; dot conjugates its first argument
    }
    Root r;
    r.values = extend_functional<Complex>(derived.basis, free, lam, [](const Scalar& x) { return x.to_complex(); });
    r.n1 = q;
    Eigen::VectorXcd v = c * sv;
    v -= q * (q.adjoint() * v);
    Eigen::MatrixXcd next(n, q.cols() + 1);
    next << q, v.normalized();
    q = next;
    r.n2 = q;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Complex Root::operator()(const Element& x) const {
  Complex s = 0;
  for (Index k = 0; k < x.size(); ++k)
    if (!x(k).is_zero()) s += x(k).to_complex() * values[static_cast<size_t>(k)];
  return s;
}

std::optional<Gaussian> Root::exact_value(const Element& x) const {
  if (!exact) return std::nullopt;
  Gaussian s;
  for (Index k = 0; k < x.size(); ++k)
    if (!x(k).is_zero()) s += x(k) * (*exact)[static_cast<size_t>(k)];
  return s;
}

std::vector<Root> roots_solvable(const LieAlgebra& g) {
  if (!is_solvable(g)) throw AlgebraError("roots_solvable: algebra is not solvable");
  Subspace derived = bracket_span(g, whole(g), whole(g));
  try {
    return roots_exact(g, derived);
  } catch (const NeedNumeric&) {
    return roots_numeric(g, derived);
  }
}

double root_flag_defect(const LieAlgebra& g, const Root& r) {
  const Index n = g.dim();
  if (r.is_exact()) {
    for (Index x = 0; x < n; ++x) {
      ExactMatrix a = g.ad_basis(x);
      const Gaussian& ax = (*r.exact)[static_cast<size_t>(x)];
      for (Index k = 0; k < r.n2_exact->dim(); ++k) {
        Element v = r.n2_exact->row(k);
        Element u = multiply(a, v) - ax * v;
        if (!contains(r.n1_exact->basis, u)) return INFINITY;
      }
    }
    return 0.0;
  }
  double worst = 0.0;
  Eigen::MatrixXcd q1 = r.n1;
  for (Index x = 0; x < n; ++x) {
    Eigen::MatrixXcd a = to_cd(g.ad_basis(x));
    Eigen::MatrixXcd u = a * r.n2 - r.values[static_cast<size_t>(x)] * r.n2;
    if (q1.cols() > 0) u -= q1 * q1.completeOrthogonalDecomposition().solve(u);
    worst = std::max(worst, u.norm());
  }
  return worst;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Uncertain: return "uncertain";
  }
  return "?";
}

SCResult satisfies_SC(const LieAlgebra& g) {
  if (!g.is_real()) return satisfies_SC(realification(g));
  if (!is_solvable(g)) {
    SCResult res;
    res.verdict = Verdict::False;
    res.solvable = false;
    res.note = "not solvable; an algebra with the spectral condition is solvable";
    return res;
  }
  // a basis vector outside [g,g] with an eigenvalue i*l (l != 0) decides the
  // question; peel the flag from that eigenvalue to get the witness root
  Subspace derived = bracket_span(g, whole(g), whole(g));
  std::vector<Index> free = free_columns(derived.basis);
  for (size_t a = 0; a < free.size(); ++a) {
    SpectrumReport s = spectrum(g.ad_basis(free[a]));
    bool hit = false;
    for (const auto& e : s.eigenvalues) hit = hit || (e.exact && purely_imaginary(*e.exact));
    if (!hit) continue;
    try {
      auto partial = roots_exact(g, derived, {static_cast<Index>(a), true, true});
      SCResult res = satisfies_SC(g, {partial.back()});
      if (res.verdict == Verdict::False) {
        res.note = "decided by the spectrum of ad " + g.labels()[static_cast<size_t>(free[a])];
        return res;
      }
    } catch (const NeedNumeric&) {
    }
  }
  return satisfies_SC(g, roots_solvable(g));
}

SCResult satisfies_SC(const LieAlgebra& g, const std::vector<Root>& roots, SCTolerance tol) {
  (void)g;
  SCResult res;
  std::optional<Root> uncertain;
  auto prefer = [](const Root& cand, const std::optional<Root>& cur) {
    if (!cur) return true;
    auto sign_first = [](const Root& r) {
      for (const auto& v : r.values)
        if (std::abs(v.imag()) > 1e-12) return v.imag() > 0;
      return false;
    };
    return sign_first(cand) && !sign_first(*cur);
  };
  for (const auto& r : roots) {
    bool violates = false, unsure = false;
    if (r.is_exact()) {
      std::vector<Element> re, both;
      Element a(static_cast<Index>(r.exact->size())), b(static_cast<Index>(r.exact->size()));
      for (size_t k = 0; k < r.exact->size(); ++k) {
        a(static_cast<Index>(k)) = (*r.exact)[k].re;
        b(static_cast<Index>(k)) = (*r.exact)[k].im;
      }
      Echelon<Scalar> ea = span_of<Scalar>({a}, a.size());
      violates = !contains(ea, b);
    } else {
      res.exact = false;
      Eigen::VectorXd a(static_cast<Index>(r.values.size())), b(static_cast<Index>(r.values.size()));
      for (size_t k = 0; k < r.values.size(); ++k) {
        a(static_cast<Index>(k)) = r.values[k].real();
        b(static_cast<Index>(k)) = r.values[k].imag();
      }
      double defect = a.norm() > 1e-12 ? (b - (a.dot(b) / a.squaredNorm()) * a).norm() : b.norm();
      violates = defect > tol.reject;
      unsure = !violates && defect > tol.accept;
    }
    if (violates) {
      if (res.verdict != Verdict::False || (r.is_exact() && !res.witness->is_exact()) || prefer(r, res.witness)) {
        res.verdict = Verdict::False;
        res.witness = r;
      }
    } else if (unsure && !uncertain) {
      uncertain = r;
    }
  }
  if (res.verdict != Verdict::False && uncertain) {
    res.verdict = Verdict::Uncertain;
    res.witness = uncertain;
    res.note = "root imaginary part within numerical tolerance band of the real span";
  }
  return res;
}

LogCertificate log_certificate(const LieAlgebra& g, const std::vector<Element>& factors, double scale, double tol) {
  return log_certificate(g, roots_solvable(g), factors, scale, tol);
}

LogCertificate log_certificate(const LieAlgebra& g, const std::vector<Root>& roots, const std::vector<Element>& factors,
                               double scale, double tol) {
  for (const auto& y : factors)
    if (y.size() != g.dim()) throw AlgebraError("log_certificate: factor does not belong to the algebra");
  LogCertificate best;
  const bool two_pi = std::abs(scale - kTwoPi) < 1e-15;
  for (const auto& r : roots) {
    if (r.is_exact()) {
      Gaussian s;
      for (const auto& y : factors) s += *r.exact_value(y);
      // exact path: value = scale * s, which equals 2 pi i k iff s = i k when scale = 2 pi
      if (two_pi && sgn(s.re) == 0 && s.im.get_den() == 1 && sgn(s.im) != 0) {
        best.status = LogCertificate::Status::Inconclusive;
        best.witness = r;
        best.k = s.im.get_num().get_si();
        best.value = Complex(0.0, kTwoPi * static_cast<double>(*best.k));
        best.exact = true;
        return best;
      }
    }
    Complex v = 0;
    for (const auto& y : factors) v += r(y);
    v *= scale;
    long k = std::lround(v.imag() / kTwoPi);
    if (k == 0) continue;
    double dist = std::abs(v - Complex(0.0, kTwoPi * static_cast<double>(k)));
    if (dist <= tol && best.status == LogCertificate::Status::ExistsUnique) {
      best.status = LogCertificate::Status::Inconclusive;
      best.witness = r;
      best.k = k;
      best.value = v;
    }
  }
  return best;
}

}  // namespace prolie
