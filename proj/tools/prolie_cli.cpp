// prolie: command-line driver over .lie files. JSON on stdout (CSV for
// convergence tables), diagnostics on stderr. Exit 0 when every verdict is
// definite, 2 when some verdict is Uncertain, 1 on error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "prolie/bch.hpp"
#include "prolie/expfun.hpp"
#include "prolie/grouplaw.hpp"
#include "prolie/random.hpp"
#include "prolie/report.hpp"
#include "prolie/structure.hpp"

using namespace prolie;
using report::Json;

namespace {

struct Args {
  std::string command;
  std::string file;
  std::string target;
  std::string mode = "sc";
  std::string element;
  std::string scale = "1";
  std::string x, y;
  int class_bound = 0;
  int n_max = 512;
  bool csv = false;
  bool json = true;
  report::Options opt;
};

/// Input or usage problem; reported on stderr with exit status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kind_of(const dsl::Value& v) {
  if (std::holds_alternative<dsl::AlgebraEntry>(v)) return "algebra";
  if (std::holds_alternative<dsl::ElementEntry>(v)) return "element";
  if (std::holds_alternative<dsl::TowerEntry>(v)) return "tower";
  if (std::holds_alternative<LatticeSubgroup>(v)) return "lattice";
  return "template";
}

class Driver {
 public:
  Driver(Args a, dsl::Environment env) : a_(std::move(a)), env_(std::move(env)) {}

  int run(std::ostream& out) {
    const std::string& c = a_.command;
    if (c == "validate") validate_cmd();
    else if (c == "classify") classify_cmd();
    else if (c == "exp-check") exp_check_cmd();
    else if (c == "bch") bch_cmd();
    else if (c == "phi-mul") phi_mul_cmd();
    else if (c == "saito") saito_cmd();
    else if (c == "tower-smooth") each<dsl::TowerEntry>("tower", [&](const dsl::TowerEntry& t) { return report::smoothness(t.tower); });
    else if (c == "tower-probe") each<dsl::TowerEntry>("tower", [&](const dsl::TowerEntry& t) { return report::probe(t.tower, a_.opt); });
    else if (c == "lattice-discrete") each<LatticeSubgroup>("lattice", [&](const LatticeSubgroup& l) { return report::discreteness(l, a_.opt); });
    else if (c == "limit-check") {
      if (limit_check_cmd(out)) return uncertain_ ? 2 : 0;
    } else throw UsageError("unknown command '" + c + "'");
    if (failed_) return 1;
    Json doc{{"tool", "prolie"},
             {"version", PROLIE_VERSION},
             {"command", c},
             {"file", a_.file},
             {"tolerances", report::tolerances(a_.opt)},
             {"seed", a_.opt.seed},
             {"status", uncertain_ ? "uncertain" : "definite"},
             {"results", results_}};
    out << doc.dump(2) << "\n";
    return uncertain_ ? 2 : 0;
  }

 private:
  Args a_;
  dsl::Environment env_;
  Json results_ = Json::array();
  bool uncertain_ = false;
  bool failed_ = false;

  std::vector<std::string> names() const {
    if (a_.target.empty()) return env_.order;
    if (!env_.find(a_.target)) throw UsageError("no declaration named '" + a_.target + "' in " + a_.file);
    return {a_.target};
  }

  void push(const std::string& name, const char* kind, report::Fragment f) {
    Json j{{"name", name}, {"kind", kind}};
    j.update(f.body);
    results_.push_back(std::move(j));
    uncertain_ = uncertain_ || f.uncertain;
  }

  /// Runs `fn` on every declaration of type T; none at all is a command/file mismatch.
  template <class T, class Fn>
  void each(const char* kind, Fn fn) {
    for (const auto& n : names()) {
      const dsl::Value* v = env_.find(n);
      if (const T* t = std::get_if<T>(v)) push(n, kind, fn(*t));
      else if (!a_.target.empty())
        throw UsageError("'" + n + "' is a " + kind_of(*v) + "; " + a_.command + " needs a " + kind);
    }
    if (results_.empty()) throw UsageError(a_.command + " needs a " + std::string(kind) + " declaration; " + a_.file + " has none");
  }

  const dsl::ElementEntry& element(const std::string& name, const char* flag) const {
    if (name.empty()) throw UsageError(a_.command + " needs " + flag + " ELEMENT");
    const dsl::ElementEntry* e = env_.element(name);
    if (!e) throw UsageError("'" + name + "' is not an element declared in " + a_.file);
    return *e;
  }

  const dsl::AlgebraEntry& algebra_of(const dsl::ElementEntry& e) const { return *env_.algebra(e.algebra); }

  void validate_cmd() {
    for (const auto& n : names()) {
      const dsl::Value* v = env_.find(n);
      report::Fragment f;
      if (auto* al = std::get_if<dsl::AlgebraEntry>(v)) {
        f.body = report::validation(*al->algebra);
      } else if (auto* t = std::get_if<dsl::TowerEntry>(v)) {
        TowerValidation tv = validate(t->tower);
        f.body = Json{{"valid", tv.valid}, {"levels", t->tower.size()}, {"problems", tv.problems}};
      } else {
        f.body = Json{{"valid", true}};  // checked during evaluation
      }
      failed_ = failed_ || !f.body["valid"].get<bool>();
      push(n, kind_of(*v), std::move(f));
    }
    if (failed_) {
      Json doc{{"tool", "prolie"}, {"version", PROLIE_VERSION}, {"command", "validate"}, {"file", a_.file}, {"results", results_}};
      std::cout << doc.dump(2) << "\n";
      std::cerr << "prolie: " << a_.file << ": Lie axioms violated\n";
    }
  }

  void classify_cmd() {
    for (const auto& n : names()) {
      const dsl::Value* v = env_.find(n);
      if (auto* al = std::get_if<dsl::AlgebraEntry>(v)) push(n, "algebra", report::classify(*al->algebra, a_.opt));
      else if (auto* t = std::get_if<dsl::TowerEntry>(v)) push(n, "tower", report::classify(*t, a_.opt));
      else if (auto* l = std::get_if<LatticeSubgroup>(v)) push(n, "lattice", report::classify(*l, a_.opt));
      else if (!a_.target.empty()) throw UsageError("'" + n + "' is a " + kind_of(*v) + "; classify needs an algebra, tower or lattice");
    }
    if (results_.empty()) throw UsageError("nothing to classify in " + a_.file);
  }

  void exp_check_cmd() {
    const std::string& m = a_.mode;
    if (m == "sc") {
      each<dsl::AlgebraEntry>("algebra", [&](const dsl::AlgebraEntry& al) { return report::sc(*al.algebra); });
    } else if (m == "saito") {
      each<dsl::AlgebraEntry>("algebra", [&](const dsl::AlgebraEntry& al) { return report::saito(*al.algebra, a_.opt.max_depth); });
    } else if (m == "regular-point") {
      const auto& e = element(a_.element, "--element");
      auto [scale, two_pi] = parse_scale(a_.scale);
      push(a_.element, "element", report::regular_point(*algebra_of(e).algebra, e.value, scale, two_pi, a_.opt));
    } else if (m == "kappa") {
      if (!a_.element.empty()) {
        const auto& e = element(a_.element, "--element");
        push(a_.element, "element", report::kappa_check(*algebra_of(e).algebra, e.value, a_.opt));
        return;
      }
      each<dsl::AlgebraEntry>("algebra", [&](const dsl::AlgebraEntry& al) { return kappa_samples(*al.algebra); });
    } else {
      throw UsageError("unknown exp-check mode '" + m + "' (sc, saito, kappa, regular-point)");
    }
  }

  /// Seeded samples: half random rational points, half 2 pi multiples of
  /// basis vectors and of random points (where singular points live).
  report::Fragment kappa_samples(const LieAlgebra& g) {
    Rng rng(a_.opt.seed);
    int agree = 0, disagree = 0, undecided = 0;
    Json rows = Json::array();
    for (int s = 0; s < a_.opt.samples; ++s) {
      Element x = random_vector(rng, g.dim(), 3, 2);
      report::Fragment f;
      if (s % 2 == 1) {
        // 2 pi y for a sample direction: the Singular side of the comparison
        Element y = (s % 4 == 1) ? g.basis(static_cast<Index>(s / 4) % g.dim()) : x;
        RegularityVerdict v = is_exp_regular_2pi(g, y, a_.opt.tol);
        double sig = kappa_sigma_min(g, y, 2 * M_PI);
        bool inv = sig > a_.opt.kappa_sigma;
        f.body = Json{{"element", report::element(g, y)}, {"scale", "2pi"}, {"kappa_sigma_min", sig}, {"kappa_invertible", inv},
                      {"regularity", to_string(v.status)}};
        if (v.status == Regularity::Uncertain) {
          ++undecided;
          f.body["agree"] = nullptr;
        } else {
          bool ok = inv == (v.status == Regularity::Regular);
          (ok ? agree : disagree)++;
          f.body["agree"] = ok;
        }
      } else {
        f = report::kappa_check(g, x, a_.opt);
        if (f.uncertain) ++undecided;
        else (f.body["agree"].get<bool>() ? agree : disagree)++;
      }
      rows.push_back(f.body);
    }
    report::Fragment out;
    out.body = Json{{"samples", a_.opt.samples}, {"agree", agree}, {"disagree", disagree}, {"undecided", undecided}, {"rows", rows}};
    out.uncertain = undecided > 0;
    return out;
  }

  static std::pair<Rational, bool> parse_scale(std::string s) {
    bool two_pi = false;
    if (s.rfind("2pi", 0) == 0) {
      two_pi = true;
      s = s.substr(3);
      if (s.empty()) s = "1";
      else if (s[0] == '*') s = s.substr(1);
      else throw UsageError("--scale: expected 2pi or 2pi*q");
    }
    Rational q;
    if (q.set_str(s, 10) != 0) throw UsageError("--scale: '" + s + "' is not a rational");
    q.canonicalize();
    return {q, two_pi};
  }

  void bch_cmd() {
    if (!a_.x.empty() || !a_.y.empty()) {
      const auto& ex = element(a_.x, "--x");
      const auto& ey = element(a_.y, "--y");
      if (ex.algebra != ey.algebra) throw UsageError("--x and --y live in different algebras");
      const LieAlgebra& g = *algebra_of(ex).algebra;
      int bound = a_.class_bound;
      if (bound == 0) {
        auto c = nilpotency_class(g);
        if (!c) throw UsageError("'" + ex.algebra + "' is not nilpotent; pass --class to truncate");
        bound = std::max(*c, 1);
      }
      report::Fragment f;
      f.body = Json{{"x", report::element(g, ex.value)},
                    {"y", report::element(g, ey.value)},
                    {"class_bound", bound},
                    {"exact", nilpotency_class(g).has_value() && *nilpotency_class(g) <= bound},
                    {"product", report::element(g, bch(g, ex.value, ey.value, bound))}};
      push(ex.algebra, "algebra", std::move(f));
      return;
    }
    each<dsl::AlgebraEntry>("algebra", [&](const dsl::AlgebraEntry& al) {
      const LieAlgebra& g = *al.algebra;
      if (!is_nilpotent(g)) {
        report::Fragment f;
        f.body = Json{{"applicable", false}, {"note", "not nilpotent; the series does not terminate"}};
        return f;
      }
      AxiomReport r = check_local_group_axioms(g, a_.opt.samples, a_.opt.seed);
      report::Fragment f;
      f.body = Json{{"applicable", true},
                    {"samples", r.samples},
                    {"associativity", r.associativity},
                    {"unit", r.unit},
                    {"one_parameter", r.one_parameter},
                    {"second_order", r.second_order},
                    {"all", r.all()},
                    {"counterexamples", r.counterexamples}};
      return f;
    });
  }

  void phi_mul_cmd() {
    const auto& ex = element(a_.x, "--x");
    const auto& ey = element(a_.y, "--y");
    if (ex.algebra != ey.algebra) throw UsageError("--x and --y live in different algebras");
    const dsl::AlgebraEntry& al = algebra_of(ex);
    const LieAlgebra& g = *al.algebra;
    if (!is_solvable(g)) throw UsageError("'" + ex.algebra + "' is not solvable");
    Subspace n = bracket_span(g, whole(g), whole(g));
    std::vector<Element> complement;
    std::vector<bool> pivot(static_cast<size_t>(g.dim()), false);
    for (Index p : n.basis.pivots) pivot[static_cast<size_t>(p)] = true;
    for (Index k = 0; k < g.dim(); ++k)
      if (!pivot[static_cast<size_t>(k)]) complement.push_back(g.basis(k));
    std::optional<std::vector<Eigen::MatrixXd>> rep;
    if (al.matrices) {
      rep.emplace();
      for (const auto& m : *al.matrices) {
        Eigen::MatrixXd d(m.rows(), m.cols());
        for (Index i = 0; i < m.rows(); ++i)
          for (Index j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).re.get_d();
        rep->push_back(d);
      }
    }
    if (!is_nilpotent(g) && !rep) throw UsageError("'" + ex.algebra + "' is not nilpotent; declare it with 'matrix' for the numeric law");
    PhiLaw law = PhiLaw::make(g, complement, rep);
    PhiCoordinates px = law.split(ex.value), py = law.split(ey.value), pz = law.multiply(px, py);
    const bool exact = law.backend() == PhiLaw::Backend::ExactNilpotent;
    auto show = [&](const Element& v) { return exact ? report::element(g, v) : report::element_approx(g, v); };
    auto coords = [&](const PhiCoordinates& c) { return Json{{"n_part", show(c.n_part)}, {"e_part", show(c.e_part)}}; };
    Json comp = Json::array();
    for (const auto& c : complement) comp.push_back(report::element(g, c));
    report::Fragment f;
    f.body = Json{{"backend", exact ? "exact" : "numeric"},
                  {"complement", comp},
                  {"x", coords(px)},
                  {"y", coords(py)},
                  {"product", coords(pz)}};
    f.body["product_log"] = show(law.to_log(pz));
    push(ex.algebra, "algebra", std::move(f));
  }

  void saito_cmd() {
    for (const auto& n : names()) {
      const dsl::Value* v = env_.find(n);
      if (auto* al = std::get_if<dsl::AlgebraEntry>(v)) push(n, "algebra", report::saito(*al->algebra, a_.opt.max_depth));
      else if (auto* t = std::get_if<dsl::TowerEntry>(v); t && t->series) push(n, "tower", report::series_saito(*t->series, a_.opt.max_depth));
      else if (!a_.target.empty()) throw UsageError("'" + n + "' is a " + kind_of(*v) + "; saito needs an algebra or a series");
    }
    if (results_.empty()) throw UsageError("saito needs an algebra or series declaration; " + a_.file + " has none");
  }

  Eigen::MatrixXd matrix_of(const dsl::ElementEntry& e) const {
    const dsl::AlgebraEntry& al = algebra_of(e);
    if (!al.matrices) throw UsageError("limit-check needs elements of a 'matrix' algebra; '" + e.algebra + "' is abstract");
    const auto& ms = *al.matrices;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(ms[0].rows(), ms[0].cols());
    for (size_t k = 0; k < ms.size(); ++k) {
      const Gaussian& c = e.value(static_cast<Index>(k));
      if (!c.is_real()) throw UsageError("limit-check needs real coefficients");
      for (Index i = 0; i < out.rows(); ++i)
        for (Index j = 0; j < out.cols(); ++j) {
          if (!ms[k](i, j).is_real()) throw UsageError("limit-check needs real matrices");
          out(i, j) += c.re.get_d() * ms[k](i, j).re.get_d();
        }
    }
    return out;
  }

  /// True when the output was written as CSV.
  bool limit_check_cmd(std::ostream& out) {
    const auto& ex = element(a_.x, "--x");
    const auto& ey = element(a_.y, "--y");
    if (ex.algebra != ey.algebra) throw UsageError("--x and --y live in different algebras");
    if (a_.n_max < 1) throw UsageError("--n-max must be positive");
    ConvergenceTable t = limit_formula_check(matrix_of(ex), matrix_of(ey), a_.n_max);
    std::vector<int> ns;
    for (int n = 1; n <= a_.n_max; n *= 2) ns.push_back(n);
    if (a_.csv) {
      ConvergenceTable sel;
      for (int n : ns) sel.rows.push_back(t.at(n));
      out << sel.to_csv();
      return true;
    }
    report::Fragment f;
    f.body = report::convergence(t, ns);
    f.body["x"] = ex.algebra + ":" + a_.x;
    f.body["y"] = ey.algebra + ":" + a_.y;
    push(ex.algebra, "algebra", std::move(f));
    return false;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure and exponentiality checks for Lie algebras and towers of Lie algebras"};
  app.require_subcommand(1);
  Args a;
  auto common = [&](CLI::App* s) {
    s->add_option("file", a.file, ".lie file")->required();
    s->add_option("--target", a.target, "only this declaration");
    s->add_option("--tol", a.opt.tol, "regularity tolerance")->envname("PROLIE_TOL")->capture_default_str();
    s->add_option("--seed", a.opt.seed, "seed for sampled checks")->envname("PROLIE_SEED")->capture_default_str();
    s->add_option("--max-depth", a.opt.max_depth, "Saito recursion depth bound")->envname("PROLIE_MAX_DEPTH")->capture_default_str();
    s->add_option("--samples", a.opt.samples, "sample count")->envname("PROLIE_SAMPLES")->capture_default_str();
    auto* csv = s->add_flag("--csv", a.csv, "CSV output (limit-check)")->envname("PROLIE_CSV");
    s->add_flag("--json", a.json, "JSON output (default)")->excludes(csv);
  };
  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "check the Lie axioms of every declaration"},
      {"classify", "full report per algebra, tower and lattice"},
      {"exp-check", "one exponentiality criterion"},
      {"bch", "BCH product of two elements, or the local group axioms"},
      {"phi-mul", "product in the n x| e coordinates of a solvable algebra"},
      {"saito", "rotation-triple recursion"},
      {"tower-smooth", "simple Levi factors per tower level"},
      {"tower-probe", "singular points of exp per tower level"},
      {"lattice-discrete", "discreteness of a lattice subgroup"},
      {"limit-check", "Trotter and commutator limit formulas"}};
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    if (name == "exp-check") {
      s->add_option("--mode", a.mode, "sc | saito | kappa | regular-point")->envname("PROLIE_MODE")->capture_default_str();
      s->add_option("--element", a.element, "element for kappa / regular-point");
      s->add_option("--scale", a.scale, "rational q, 2pi or 2pi*q (regular-point)")->capture_default_str();
    }
    if (name == "bch" || name == "phi-mul" || name == "limit-check") {
      s->add_option("--x", a.x, "first element");
      s->add_option("--y", a.y, "second element");
    }
    if (name == "bch") s->add_option("--class", a.class_bound, "truncate the series at this bracket degree")->envname("PROLIE_CLASS");
    if (name == "limit-check") s->add_option("--n-max", a.n_max, "largest n")->envname("PROLIE_N_MAX")->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  a.command = app.get_subcommands().front()->get_name();
  try {
    dsl::Environment env = dsl::evaluate(dsl::parse(read_file(a.file)));
    Driver d(a, std::move(env));
    std::ostringstream out;
    int rc = d.run(out);
    std::cout << out.str();
    return rc;
  } catch (const dsl::DslError& e) {
    std::cerr << "prolie: " << a.file << ":" << e.pos.line << ":" << e.pos.col << ": " << e.message << "\n";
  } catch (const UsageError& e) {
    std::cerr << "prolie: " << e.what() << "\n";
  } catch (const AlgebraError& e) {
    std::cerr << "prolie: " << a.file << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "prolie: internal error: " << e.what() << "\n";
  }
  return 1;
}
