#include "prolie/grouplaw.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "prolie/bch.hpp"
#include "prolie/expfun.hpp"
#include "prolie/structure.hpp"

namespace prolie {

namespace {

Element exact_from_double(const Eigen::VectorXd& v) {
  Element out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = rational_from_double(v(i));
  return out;
}

Eigen::VectorXd to_double(const Element& v) {
  Eigen::VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_real()) throw AlgebraError("PhiLaw: numeric backend needs real coordinates");
    out(i) = v(i).re.get_d();
  }
  return out;
}

}  // namespace

void PhiLaw::init(const LieAlgebra& r, const std::vector<Element>& complement) {
  r_ = std::make_shared<const LieAlgebra>(r);
  n_ = bracket_span(r, whole(r), whole(r));
  e_ = complement;
  const Index d = r.dim();
  if (n_.dim() + static_cast<Index>(e_.size()) != d)
    throw AlgebraError("PhiLaw: complement has the wrong dimension for [r,r]");
  ExactMatrix cols(d, d);
  for (Index k = 0; k < n_.dim(); ++k) cols.col(k) = n_.row(k);
  for (size_t k = 0; k < e_.size(); ++k) {
    if (e_[k].size() != d) throw AlgebraError("PhiLaw: complement vector does not belong to the algebra");
    cols.col(n_.dim() + static_cast<Index>(k)) = e_[k];
  }
  auto inv = inverse(cols);
  if (!inv) throw AlgebraError("PhiLaw: complement meets [r,r]");
  split_inverse_ = *inv;
}

PhiLaw PhiLaw::exact(const LieAlgebra& r, const std::vector<Element>& complement) {
  auto c = nilpotency_class(r);
  if (!c) throw AlgebraError("PhiLaw: exact backend needs a nilpotent algebra");
  PhiLaw law;
  law.init(r, complement);
  law.backend_ = Backend::ExactNilpotent;
  law.class_ = std::max(*c, 1);
  return law;
}

PhiLaw PhiLaw::numeric(const LieAlgebra& r, std::vector<Eigen::MatrixXd> rep, const std::vector<Element>& complement) {
  if (!is_solvable(r)) throw AlgebraError("PhiLaw: algebra is not solvable");
  if (static_cast<Index>(rep.size()) != r.dim()) throw AlgebraError("PhiLaw: one representation matrix per basis element");
  PhiLaw law;
  law.init(r, complement);
  law.backend_ = Backend::NumericMatrix;
  const Index m = rep.empty() ? 0 : rep[0].rows();
  law.rep_flat_.resize(m * m, r.dim());
  for (Index k = 0; k < r.dim(); ++k) {
    const auto& a = rep[static_cast<size_t>(k)];
    if (a.rows() != m || a.cols() != m) throw AlgebraError("PhiLaw: representation matrices have inconsistent shapes");
    law.rep_flat_.col(k) = Eigen::Map<const Eigen::VectorXd>(a.data(), m * m);
  }
  law.rep_ = std::move(rep);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(law.rep_flat_);
  if (lu.rank() != r.dim()) throw AlgebraError("PhiLaw: representation is not faithful");
  for (Index i = 0; i < r.dim(); ++i)
    for (Index j = i + 1; j < r.dim(); ++j) {
      Eigen::MatrixXd lhs = law.rho(r.bracket(r.basis(i), r.basis(j)));
      const auto& a = law.rep_[static_cast<size_t>(i)];
      const auto& b = law.rep_[static_cast<size_t>(j)];
      if ((lhs - (a * b - b * a)).norm() > 1e-9) throw AlgebraError("PhiLaw: representation is not a homomorphism");
    }
  return law;
}

PhiLaw PhiLaw::make(const LieAlgebra& r, const std::vector<Element>& complement, std::optional<std::vector<Eigen::MatrixXd>> rep) {
  if (is_nilpotent(r)) return exact(r, complement);
  if (rep) return numeric(r, std::move(*rep), complement);
  throw AlgebraError("PhiLaw: unsupported algebra (not nilpotent and no matrix representation)");
}

PhiCoordinates PhiLaw::split(const Element& v) const {
  Element c = prolie::multiply(split_inverse_, v);
  PhiCoordinates out{r_->zero(), r_->zero()};
  for (Index k = 0; k < n_.dim(); ++k)
    if (!c(k).is_zero()) out.n_part += c(k) * n_.row(k);
  for (size_t k = 0; k < e_.size(); ++k) {
    const Scalar& s = c(n_.dim() + static_cast<Index>(k));
    if (!s.is_zero()) out.e_part += s * e_[k];
  }
  return out;
}

Eigen::MatrixXd PhiLaw::rho(const Element& v) const {
  Eigen::VectorXd c = to_double(v);
  const Index m = rep_.empty() ? 0 : rep_[0].rows();
  Eigen::VectorXd flat = rep_flat_ * c;
  return Eigen::Map<Eigen::MatrixXd>(flat.data(), m, m);
}

Element PhiLaw::from_matrix(const Eigen::MatrixXd& m) const {
  Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
  Eigen::VectorXd c = rep_flat_.colPivHouseholderQr().solve(flat);
  return exact_from_double(c);
}

PhiCoordinates PhiLaw::multiply(const PhiCoordinates& a, const PhiCoordinates& b) const {
  const LieAlgebra& r = *r_;
  const Element& x = a.n_part;
  const Element& y = a.e_part;
  const Element& x2 = b.n_part;
  const Element& y2 = b.e_part;
  PhiCoordinates out;
  out.e_part = y + y2;
  if (backend_ == Backend::ExactNilpotent) {
    // e^{ad y} x' terminates because ad y is nilpotent
    Element term = x2, twisted = x2;
    for (int k = 1; k <= r.dim() && !is_zero_vector(term); ++k) {
      term = Scalar(Rational(1, k)) * r.bracket(y, term);
      twisted += term;
    }
    Element f = bch(r, bch(r, y, y2, class_), Element(-(y + y2)), class_);
    out.n_part = bch(r, bch(r, x, twisted, class_), f, class_);
  } else {
    Eigen::MatrixXd ad_y = ad_double(r, y);
    Eigen::VectorXd twisted = ad_y.exp() * to_double(x2);
    Eigen::MatrixXd g = rho(x).exp() * rho(exact_from_double(twisted)).exp() * rho(y).exp() * rho(y2).exp() *
                        Eigen::MatrixXd(-rho(y + y2)).exp();
    out.n_part = from_matrix(g.log());
  }
  return out;
}

Element PhiLaw::to_log(const PhiCoordinates& a) const {
  if (backend_ == Backend::ExactNilpotent) return bch(*r_, a.n_part, a.e_part, class_);
  return from_matrix(group_matrix(a).log());
}

Eigen::MatrixXd PhiLaw::group_matrix(const PhiCoordinates& a) const {
  if (backend_ != Backend::NumericMatrix) throw AlgebraError("PhiLaw: group_matrix needs the numeric backend");
  return rho(a.n_part).exp() * rho(a.e_part).exp();
}

PhiCoordinates phi_multiply(const PhiLaw& law, const PhiCoordinates& a, const PhiCoordinates& b) { return law.multiply(a, b); }

const ConvergenceRow& ConvergenceTable::at(int n) const {
  for (const auto& r : rows)
    if (r.n == n) return r;
  throw std::out_of_range("ConvergenceTable: no row for n = " + std::to_string(n));
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "n,addition_deviation,commutator_deviation\n";
  for (const auto& r : rows) os << r.n << ',' << r.addition << ',' << r.commutator << '\n';
  return os.str();
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& m, long long k) {
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

ConvergenceTable limit_formula_check(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, int n_max) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw std::invalid_argument("limit_formula_check: matrices must be square of equal size");
  ConvergenceTable t;
  const Eigen::MatrixXd sum_exp = Eigen::MatrixXd(x + y).exp();
  const Eigen::MatrixXd comm_exp = Eigen::MatrixXd(x * y - y * x).exp();
  for (int n = 1; n <= n_max; ++n) {
    const double inv = 1.0 / n;
    Eigen::MatrixXd a = Eigen::MatrixXd(x * inv).exp(), b = Eigen::MatrixXd(y * inv).exp();
    Eigen::MatrixXd ai = Eigen::MatrixXd(-x * inv).exp(), bi = Eigen::MatrixXd(-y * inv).exp();
    ConvergenceRow row;
    row.n = n;
    row.addition = (matrix_power(a * b, n) - sum_exp).norm();
    row.commutator = (matrix_power(a * b * ai * bi, static_cast<long long>(n) * n) - comm_exp).norm();
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace prolie
