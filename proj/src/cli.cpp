#include "lorentz/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "lorentz/capacity.hpp"
#include "lorentz/hyperbolic.hpp"
#include "lorentz/io.hpp"
#include "lorentz/lps.hpp"
#include "lorentz/mixeddisc.hpp"
#include "lorentz/permanent.hpp"
#include "lorentz/spectra.hpp"

namespace lorentz {

namespace {

using io::Json;

struct Options {
  std::string input = "-";
  std::uint64_t seed = 0;
  bool exact = false;
  // permanent
  std::string method = "ryser";
  // capacity
  std::string alpha;
  std::string cone = "none";
  std::string direction;
  std::size_t starts = 16;
  int max_iter = 500;
  double tol = 1e-10;
  // signature / hyperbolic
  std::string point;
  std::optional<double> zero_band;
  std::size_t samples = 256;
  int relaxation = 0;
  // mixed-disc
  bool det_sum = false;
  // gnk
  int n = 0;
  int k = 0;
  bool normalized = false;
  bool check_sign = false;
  bool nested = false;
  bool show_matrix = false;
  // cone-sample
  std::size_t points = 100;
};

std::string read_input(const Options& o, std::istream& in) {
  if (o.input == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(o.input);
  if (!f) throw DomainError("cannot open input file '" + o.input + "'");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

Json read_json(const Options& o, std::istream& in) {
  const std::string text = read_input(o, in);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("malformed JSON input: ") + e.what());
  }
}

bool looks_like_matrix(const Json& j) { return j.is_array() || (j.is_object() && j.contains("rows")); }

std::vector<double> direction_or_ones(const Options& o, std::size_t n) {
  if (o.direction.empty()) return std::vector<double>(n, 1.0);
  auto e = io::parse_vector<double>(o.direction);
  if (e.size() != n) throw DimensionError("--direction length does not match the number of variables");
  return e;
}

template <class T>
Json permanent_exact_or_float(const Matrix<T>& a, const std::string& method) {
  if (method == "ryser") return io::scalar_to_json(permanent_ryser(a));
  if (method == "naive") return io::scalar_to_json(permanent_naive(a));
  if (method == "derivatives") return io::scalar_to_json(permanent_via_derivatives(a));
  throw DomainError("unknown permanent method '" + method + "'");
}

int cmd_permanent(const Options& o, std::istream& in, std::ostream& out) {
  const Json input = read_json(o, in);
  Json diagnostics = {{"exact", o.exact}};
  Json value;
  if (o.method == "capacity") {
    const auto a = io::matrix_from_json<double>(input);
    if (!a.is_square() || a.rows() == 0) throw DimensionError("permanent: matrix must be square and nonempty");
    const std::size_t n = a.rows();
    const auto f = generating_polynomial(a);
    bool nonnegative = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) nonnegative = nonnegative && a(i, j) >= 0.0;
    CapacityConfig cfg;
    cfg.seed = o.seed;
    cfg.starts = o.starts;
    const std::vector<double> ones(n, 1.0);
    CapacityResult cap;
    if (nonnegative) {
      cap = capacity_estimate(f, ones, nullptr, cfg);
      diagnostics["cone"] = "orthant";
    } else {
      auto e = direction_for_matrix(a);
      // For even degree f is also hyperbolic w.r.t. −e with the reflected
      // cone; take the orientation that faces the positive orthant.
      double total = 0.0;
      for (double v : e) total += v;
      if (n % 2 == 0 && total < 0.0)
        for (double& v : e) v = -v;
      const auto cone = ConeSpec::hyperbolicity(f, e, o.seed);
      cap = capacity_estimate(f, ones, &cone, cfg);
      diagnostics["cone"] = "hyperbolicity";
      diagnostics["direction"] = io::vector_to_json(e);
    }
    double vdw = 1.0;  // n!/nⁿ
    for (std::size_t i = 1; i <= n; ++i) vdw *= static_cast<double>(i) / static_cast<double>(n);
    diagnostics["capacity"] = io::capacity_to_json(cap);
    diagnostics["lower_bound"] = io::scalar_to_json(vdw * cap.value);
    diagnostics["bounds_proved"] = nonnegative;
    value = io::scalar_to_json(cap.value);
    diagnostics["n"] = n;
    out << Json{{"value", value}, {"method", o.method}, {"diagnostics", diagnostics}}.dump() << "\n";
    return cap.feasible ? kExitOk : kExitInfeasible;
  }
  std::size_t n = 0;
  if (o.exact) {
    const auto a = io::matrix_from_json<Rational>(input);
    n = a.rows();
    value = permanent_exact_or_float(a, o.method);
  } else {
    const auto a = io::matrix_from_json<double>(input);
    n = a.rows();
    value = permanent_exact_or_float(a, o.method);
    if (n > 20) diagnostics["warning"] = "float Ryser above n = 20 may lose accuracy";
  }
  diagnostics["n"] = n;
  out << Json{{"value", value}, {"method", o.method}, {"diagnostics", diagnostics}}.dump() << "\n";
  return kExitOk;
}

int cmd_capacity(const Options& o, std::istream& in, std::ostream& out) {
  const Json input = read_json(o, in);
  MultiPoly<double> f;
  std::optional<std::vector<double>> matrix_direction;
  if (looks_like_matrix(input)) {
    const auto a = io::matrix_from_json<double>(input);
    f = generating_polynomial(a);
    if (o.cone == "hyperbolicity" && o.direction.empty()) matrix_direction = direction_for_matrix(a);
  } else {
    f = io::poly_from_json<double>(input);
  }
  const std::size_t n = f.nvars();
  const std::vector<double> alpha = o.alpha.empty() ? std::vector<double>(n, 1.0) : io::parse_vector<double>(o.alpha);
  CapacityConfig cfg{o.starts, o.max_iter, o.tol, o.seed};
  std::optional<ConeSpec> cone;
  if (o.cone == "hyperbolicity") {
    cone = ConeSpec::hyperbolicity(f, matrix_direction.value_or(direction_or_ones(o, n)), o.seed);
  } else if (o.cone == "orthant") {
    cone = ConeSpec::orthant(n, o.seed);
  } else if (o.cone != "none") {
    throw DomainError("unknown --cone '" + o.cone + "'");
  }
  const auto result = capacity_estimate(f, alpha, cone ? &*cone : nullptr, cfg);
  Json j = io::capacity_to_json(result);
  j["cone"] = o.cone;
  out << j.dump() << "\n";
  return result.feasible ? kExitOk : kExitInfeasible;
}

int cmd_signature(const Options& o, std::istream& in, std::ostream& out) {
  const Json input = read_json(o, in);
  SymMatrix<double> q;
  if (looks_like_matrix(input)) {
    q = SymMatrix<double>(io::matrix_from_json<double>(input));
  } else {
    const auto f = io::poly_from_json<double>(input);
    if (o.point.empty()) throw DomainError("signature: --point is required for polynomial input");
    const auto a = io::parse_vector<double>(o.point);
    q = hessian_at(f, std::span<const double>(a));
  }
  const auto report = eigen_signature(q, o.zero_band);
  Json j = io::signature_to_json(report);
  j["class"] = std::string(to_string(lorentz_class(report)));
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_hyperbolic(const Options& o, std::istream& in, std::ostream& out) {
  const auto f = io::poly_from_json<double>(read_json(o, in));
  const auto e = direction_or_ones(o, f.nvars());
  const auto cert = hyperbolicity_certificate(f, e, o.samples, o.seed);
  Json j = {{"hyperbolic", cert.hyperbolic},
            {"samples", cert.samples},
            {"seed", cert.seed},
            {"max_imag_ratio", cert.max_imag_ratio},
            {"direction", io::vector_to_json(e)},
            {"probabilistic", true}};
  if (!cert.witness.empty()) j["witness"] = io::vector_to_json(cert.witness);
  if (!o.point.empty()) {
    const auto x = io::parse_vector<double>(o.point);
    j["point"] = io::vector_to_json(x);
    j["in_open_cone"] = cone_membership(f, e, x, ConeClosure::Open);
    j["in_closed_cone"] = cone_membership(f, e, x, ConeClosure::Closed);
  }
  if (o.relaxation > 0) j["relaxation_inclusion"] = relaxation_inclusion_check(f, e, o.relaxation, o.samples, o.seed);
  out << j.dump() << "\n";
  return kExitOk;
}

template <class T>
Json mixed_disc_json(const Json& input, bool det_sum) {
  const Json& list = input.is_array() ? input : input.at("matrices");
  if (!list.is_array() || list.empty()) throw DomainError("mixed-disc: expected a nonempty list of matrices");
  std::vector<MixedArgument<T>> args;
  for (const auto& m : list) {
    MixedArgument<T> a{io::matrix_from_json<T>(m), 1};
    if (m.is_object() && m.contains("multiplicity")) a.multiplicity = m.at("multiplicity").get<int>();
    args.push_back(std::move(a));
  }
  Json j;
  if (det_sum) {
    std::vector<Matrix<T>> ms;
    for (const auto& a : args) ms.push_back(a.matrix);
    const auto ex = det_of_sum_expansion(ms);
    Json terms = Json::array();
    for (const auto& t : ex.terms) terms.push_back({{"multiplicities", t.multiplicities}, {"value", io::scalar_to_json(t.value)}});
    return {{"direct", io::scalar_to_json(ex.direct)},
            {"expanded", io::scalar_to_json(ex.expanded)},
            {"agree", ex.agree},
            {"terms", terms}};
  }
  const T value = mixed_discriminant(args);
  j["value"] = io::scalar_to_json(value);
  if (args.front().matrix.rows() <= kSymbolicDetCap) {
    const T via = md_via_coefficients(args);
    j["via_coefficients"] = io::scalar_to_json(via);
    j["agree"] = nearly_equal(value, via);
  }
  return j;
}

int cmd_mixed_disc(const Options& o, std::istream& in, std::ostream& out) {
  const Json input = read_json(o, in);
  const Json j = o.exact ? mixed_disc_json<Rational>(input, o.det_sum) : mixed_disc_json<double>(input, o.det_sum);
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_gnk(const Options& o, std::ostream& out) {
  const Rational per = gnk_per_closed_form(o.n, o.k);
  Json j = {{"n", o.n}, {"k", o.k}, {"per", io::scalar_to_json(per)}};
  if (o.show_matrix) j["matrix"] = io::matrix_to_json(gnk(o.n, o.k).matrix());
  if (o.normalized) {
    const auto g = gnk_normalized(o.n, o.k);
    j["normalized"] = {{"per", io::scalar_to_json(g.per)}, {"matrix", io::matrix_to_json(g.matrix)}};
  }
  if (o.check_sign) {
    const auto v = nls_positivity_predicate(o.n, o.k);
    j["guaranteed_positive"] = v.guaranteed_positive;
    j["reason"] = v.reason;
    j["sign"] = per > 0 ? 1 : (per < 0 ? -1 : 0);
  }
  if (o.nested) {
    const auto r = gnk_nested_report(o.n);
    Json values = Json::array();
    for (const auto& v : r.values) values.push_back(io::scalar_to_json(v));
    j["nested"] = {{"ks", r.ks}, {"values", values}, {"decreasing", r.decreasing}, {"below_g42", r.below_g42}, {"holds", r.holds}};
  }
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_cone_sample(const Options& o, std::istream& in, std::ostream& out) {
  const auto f = io::poly_from_json<double>(read_json(o, in));
  const std::size_t n = f.nvars();
  const auto e = direction_or_ones(o, n);
  if (!is_hyperbolic(f, e, o.samples, o.seed)) throw DomainError("cone-sample: polynomial is not hyperbolic in direction e");
  if (!cone_membership(f, e, e)) throw DomainError("cone-sample: e is not in its own cone (is f(e) > 0?)");
  std::ostringstream csv;
  for (std::size_t i = 0; i < n; ++i) csv << "x" << (i + 1) << ",";
  csv << "on_boundary\n";
  Rng rng(o.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double enorm = 0.0;
  for (double v : e) enorm += v * v;
  enorm = std::sqrt(enorm);
  constexpr double kFar = 1e6;
  for (std::size_t p = 0; p < o.points; ++p) {
    std::vector<double> dir(n);
    double dn = 0.0;
    for (auto& v : dir) {
      v = gauss(rng);
      dn += v * v;
    }
    dn = std::sqrt(dn);
    for (auto& v : dir) v *= enorm / (dn > 0 ? dn : 1.0);
    auto at = [&](double t) {
      std::vector<double> x(e);
      for (std::size_t i = 0; i < n; ++i) x[i] += t * dir[i];
      return x;
    };
    double lo = 0.0, hi = 1.0;
    while (hi < kFar && cone_membership(f, e, at(hi))) {
      lo = hi;
      hi *= 2.0;
    }
    bool bounded = hi < kFar;
    if (bounded) {
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cone_membership(f, e, at(mid)) ? lo : hi) = mid;
      }
    }
    const auto x = at(lo);
    for (double v : x) csv << to_string(v) << ",";
    csv << (bounded ? 1 : 0) << "\n";
  }
  out << csv.str();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lorentzian polynomials, hyperbolicity cones, mixed discriminants and permanents", "lorentz"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "Input file ('-' for stdin)");
    sub->add_option("--seed", o.seed, "Random seed");
  };

  auto* perm = app.add_subcommand("permanent", "Permanent of a JSON matrix");
  add_common(perm);
  perm->add_option("--method", o.method)->check(CLI::IsMember({"ryser", "naive", "derivatives", "capacity"}));
  perm->add_flag("--exact", o.exact, "Exact rational arithmetic");
  perm->add_option("--starts", o.starts, "Capacity solver starts");

  auto* cap = app.add_subcommand("capacity", "Capacity inf f(x)/x^alpha over the positive orthant (and a cone)");
  add_common(cap);
  cap->add_option("--alpha", o.alpha, "Comma-separated exponent vector (default all ones)");
  cap->add_option("--cone", o.cone)->check(CLI::IsMember({"none", "orthant", "hyperbolicity"}));
  cap->add_option("--direction", o.direction, "Hyperbolicity direction (default all ones)");
  cap->add_option("--starts", o.starts);
  cap->add_option("--max-iter", o.max_iter);
  cap->add_option("--tol", o.tol);

  auto* sig = app.add_subcommand("signature", "Inertia and Lorentz class of a matrix or a Hessian");
  add_common(sig);
  sig->add_option("--point", o.point, "Evaluation point for polynomial input");
  sig->add_option("--zero-band", o.zero_band, "Zero band for eigenvalues");

  auto* hyp = app.add_subcommand("hyperbolic", "Sampled hyperbolicity certificate");
  add_common(hyp);
  hyp->add_option("--direction", o.direction);
  hyp->add_option("--samples", o.samples);
  hyp->add_option("--point", o.point, "Also test cone membership of this point");
  hyp->add_option("--relaxation", o.relaxation, "Check the derivative relaxations up to this order");

  auto* md = app.add_subcommand("mixed-disc", "Mixed discriminant of matrices with multiplicities");
  add_common(md);
  md->add_flag("--exact", o.exact);
  md->add_flag("--det-sum", o.det_sum, "Expand det(sum A_i) into mixed discriminants");

  auto* g = app.add_subcommand("gnk", "G(n,k) permanents and predicates");
  g->add_option("--n", o.n)->required();
  g->add_option("--k", o.k)->required();
  g->add_flag("--normalized", o.normalized);
  g->add_flag("--check-sign", o.check_sign);
  g->add_flag("--nested", o.nested);
  g->add_flag("--matrix", o.show_matrix, "Include the matrix itself");

  auto* cs = app.add_subcommand("cone-sample", "CSV of hyperbolicity-cone boundary points");
  add_common(cs);
  cs->add_option("--direction", o.direction);
  cs->add_option("--points", o.points);
  cs->add_option("--samples", o.samples, "Hyperbolicity check samples");

  std::vector<const char*> argv{"lorentz"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (perm->parsed()) return cmd_permanent(o, in, out);
    if (cap->parsed()) return cmd_capacity(o, in, out);
    if (sig->parsed()) return cmd_signature(o, in, out);
    if (hyp->parsed()) return cmd_hyperbolic(o, in, out);
    if (md->parsed()) return cmd_mixed_disc(o, in, out);
    if (g->parsed()) return cmd_gnk(o, out);
    if (cs->parsed()) return cmd_cone_sample(o, in, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInvalidInput;
}

}  // namespace lorentz
