#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lorentz/capacity.hpp"
#include "lorentz/hyperbolic.hpp"
#include "lorentz/lorentzian.hpp"
#include "lorentz/lps.hpp"
#include "lorentz/mixeddisc.hpp"
#include "lorentz/permanent.hpp"
#include "lorentz/spectra.hpp"

namespace py = pybind11;
using namespace lorentz;

namespace {

// Exact values cross the boundary as "p/q" strings; the Python layer turns
// them into fractions.Fraction.
using StrRows = std::vector<std::vector<std::string>>;
using FloatRows = std::vector<std::vector<double>>;
using TermList = std::vector<std::pair<std::vector<int>, double>>;

Matrix<Rational> exact_matrix(const StrRows& rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : rows) {
    auto& row = out.emplace_back();
    for (const auto& s : r) row.push_back(parse_rational(s));
  }
  return Matrix<Rational>::from_rows(out);
}

StrRows exact_rows(const Matrix<Rational>& m) {
  StrRows out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  return out;
}

MultiPoly<double> make_poly(std::size_t nvars, const TermList& terms) {
  std::vector<Term<double>> t;
  for (const auto& [e, c] : terms) t.push_back({e, c});
  return MultiPoly<double>(nvars, t);
}

TermList poly_terms(const MultiPoly<double>& f) {
  TermList out;
  for (const auto& [e, c] : f.terms()) out.emplace_back(e, c);
  return out;
}

py::dict signature_dict(const SignatureReport& s) {
  py::dict d;
  d["inertia"] = std::make_tuple(s.n_pos, s.n_zero, s.n_neg);
  d["eigenvalues"] = s.eigenvalues;
  d["tolerance"] = s.tolerance;
  d["class"] = std::string(to_string(lorentz_class(s)));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the lorentz package";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  // DimensionError and DomainError derive from std::invalid_argument -> ValueError.

  m.def(
      "permanent_exact",
      [](const StrRows& rows, const std::string& method) {
        const auto a = exact_matrix(rows);
        if (method == "ryser") return to_string(permanent_ryser(a));
        if (method == "naive") return to_string(permanent_naive(a));
        if (method == "derivatives") return to_string(permanent_via_derivatives(a));
        throw DomainError("unknown permanent method '" + method + "'");
      },
      py::arg("rows"), py::arg("method") = "ryser");

  m.def(
      "permanent_float",
      [](const FloatRows& rows) { return permanent_ryser(Matrix<double>::from_rows(rows)); }, py::arg("rows"));

  m.def("gnk", [](int n, int k) { return exact_rows(gnk(n, k).matrix()); }, py::arg("n"), py::arg("k"));
  m.def("gnk_per", [](int n, int k) { return to_string(gnk_per_closed_form(n, k)); }, py::arg("n"), py::arg("k"));
  m.def(
      "nls_positivity",
      [](int n, int k) {
        const auto v = nls_positivity_predicate(n, k);
        return std::make_pair(v.guaranteed_positive, v.reason);
      },
      py::arg("n"), py::arg("k"));
  m.def(
      "gnk_nested",
      [](int n) {
        const auto r = gnk_nested_report(n);
        py::dict d;
        d["ks"] = r.ks;
        std::vector<std::string> vals;
        for (const auto& v : r.values) vals.push_back(to_string(v));
        d["values"] = vals;
        d["decreasing"] = r.decreasing;
        d["below_g42"] = r.below_g42;
        d["holds"] = r.holds;
        return d;
      },
      py::arg("n"));

  m.def(
      "mixed_discriminant_exact",
      [](const std::vector<StrRows>& mats, std::optional<std::vector<int>> mult) {
        std::vector<MixedArgument<Rational>> args;
        for (std::size_t i = 0; i < mats.size(); ++i)
          args.push_back({exact_matrix(mats[i]), mult ? mult->at(i) : 1});
        return to_string(mixed_discriminant(args));
      },
      py::arg("matrices"), py::arg("multiplicities") = std::nullopt);

  m.def(
      "eigen_signature",
      [](const FloatRows& rows, std::optional<double> tol) {
        return signature_dict(eigen_signature(SymMatrix<double>(Matrix<double>::from_rows(rows)), tol));
      },
      py::arg("rows"), py::arg("tol") = std::nullopt);

  m.def(
      "hessian",
      [](std::size_t nvars, const TermList& terms, const std::vector<double>& x) {
        const auto h = hessian_at(make_poly(nvars, terms), x);
        FloatRows out(h.size());
        for (std::size_t i = 0; i < h.size(); ++i)
          for (std::size_t j = 0; j < h.size(); ++j) out[i].push_back(h(i, j));
        return out;
      },
      py::arg("nvars"), py::arg("terms"), py::arg("x"));

  m.def(
      "is_hyperbolic",
      [](std::size_t nvars, const TermList& terms, const std::vector<double>& e, std::size_t samples,
         std::uint64_t seed) { return is_hyperbolic(make_poly(nvars, terms), e, samples, seed); },
      py::arg("nvars"), py::arg("terms"), py::arg("direction"), py::arg("samples") = 256, py::arg("seed") = 0);

  m.def(
      "cone_membership",
      [](std::size_t nvars, const TermList& terms, const std::vector<double>& e, const std::vector<double>& x,
         bool closed) {
        return cone_membership(make_poly(nvars, terms), e, x, closed ? ConeClosure::Closed : ConeClosure::Open);
      },
      py::arg("nvars"), py::arg("terms"), py::arg("direction"), py::arg("x"), py::arg("closed") = false);

  m.def(
      "nuij_approx",
      [](std::size_t nvars, const TermList& terms, const std::vector<double>& e, double s) {
        return poly_terms(nuij_approx(make_poly(nvars, terms), std::span<const double>(e), s));
      },
      py::arg("nvars"), py::arg("terms"), py::arg("direction"), py::arg("s"));

  m.def(
      "lorentzian_over_hyperbolicity_cone",
      [](std::size_t nvars, const TermList& terms, const std::vector<double>& e, std::size_t chains,
         std::uint64_t seed) {
        const auto f = make_poly(nvars, terms);
        const auto cone = ConeSpec::hyperbolicity(f, e, seed);
        const auto r = lorentzian_over_cone(f, cone, chains, seed);
        py::dict d;
        d["holds"] = r.holds;
        d["strict"] = r.strict;
        d["chains"] = r.chains;
        d["not_lorentzian"] = r.not_lorentzian;
        d["nonpositive"] = r.nonpositive;
        return d;
      },
      py::arg("nvars"), py::arg("terms"), py::arg("direction"), py::arg("chains") = 64, py::arg("seed") = 0);

  m.def(
      "capacity",
      [](std::size_t nvars, const TermList& terms, const std::vector<double>& alpha, bool orthant,
         std::size_t starts, int max_iter, double tol, std::uint64_t seed) {
        const auto f = make_poly(nvars, terms);
        CapacityConfig cfg;
        cfg.starts = starts;
        cfg.max_iter = max_iter;
        cfg.tol = tol;
        cfg.seed = seed;
        std::optional<ConeSpec> cone;
        if (orthant) cone = ConeSpec::orthant(nvars, seed);
        const auto r = capacity_estimate(f, alpha, cone ? &*cone : nullptr, cfg);
        py::dict d;
        d["value"] = r.value;
        d["log_value"] = r.log_value;
        d["argmin"] = r.argmin;
        d["iterations"] = r.iterations;
        d["starts"] = r.starts;
        d["converged"] = r.converged;
        d["feasible"] = r.feasible;
        d["upper_bound"] = r.upper_bound;
        return d;
      },
      py::arg("nvars"), py::arg("terms"), py::arg("alpha"), py::arg("orthant") = false, py::arg("starts") = 16,
      py::arg("max_iter") = 500, py::arg("tol") = 1e-10, py::arg("seed") = 0);

  m.def(
      "generating_polynomial",
      [](const FloatRows& rows) { return poly_terms(generating_polynomial(Matrix<double>::from_rows(rows))); },
      py::arg("rows"));
}
