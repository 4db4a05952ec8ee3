#include "lorentz/io.hpp"

#include <cmath>
#include <limits>

namespace lorentz::io {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("JSON: missing key '") + key + "'");
  return j.at(key);
}

double parse_double_token(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return to_double(parse_rational(s));
}

}  // namespace

Json scalar_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json scalar_to_json(const Rational& v) { return to_string(v); }

template <>
double scalar_from_json<double>(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double_token(j.get<std::string>());
  throw DomainError("JSON: expected a number or numeric string");
}

template <>
Rational scalar_from_json<Rational>(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
  }
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw DomainError("JSON: non-finite number in exact mode");
    return parse_rational(to_string(v));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw DomainError("JSON: expected a number or numeric string");
}

template <class T>
Json poly_to_json(const MultiPoly<T>& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", e}, {"coef", scalar_to_json(c)}});
  return {{"nvars", f.nvars()}, {"terms", terms}};
}

template <class T>
MultiPoly<T> poly_from_json(const Json& j) {
  const Json& nv = require(j, "nvars");
  if (!nv.is_number_integer() || nv.get<long long>() < 1) throw DomainError("JSON: nvars must be a positive integer");
  const auto n = nv.get<std::size_t>();
  std::vector<Term<T>> terms;
  const Json& arr = require(j, "terms");
  if (!arr.is_array()) throw DomainError("JSON: terms must be an array");
  for (const auto& t : arr) {
    const Json& ex = require(t, "exp");
    if (!ex.is_array()) throw DomainError("JSON: exp must be an array");
    Exponents e;
    for (const auto& v : ex) {
      if (!v.is_number_integer()) throw DomainError("JSON: exponents must be integers");
      e.push_back(v.get<int>());
    }
    if (e.size() != n) throw DimensionError("JSON: exponent length != nvars");
    terms.push_back({std::move(e), scalar_from_json<T>(require(t, "coef"))});
  }
  return MultiPoly<T>(n, terms);
}

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"rows", rows}};
}

template <class T>
Matrix<T> matrix_from_json(const Json& j) {
  const Json& rows = j.is_array() ? j : require(j, "rows");
  if (!rows.is_array()) throw DomainError("JSON: rows must be an array");
  std::vector<std::vector<T>> out;
  for (const auto& r : rows) out.push_back(vector_from_json<T>(r));
  return Matrix<T>::from_rows(out);
}

template <class T>
Json vector_to_json(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <class T>
std::vector<T> vector_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("JSON: expected an array");
  std::vector<T> out;
  for (const auto& v : j) out.push_back(scalar_from_json<T>(v));
  return out;
}

template <class T>
std::vector<T> parse_vector(std::string_view text) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view tok = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if constexpr (is_exact_v<T>) {
      out.push_back(parse_rational(tok));
    } else {
      out.push_back(parse_double_token(std::string(tok)));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

#define LORENTZ_IO_INSTANTIATE(T)                                  \
  template Json poly_to_json(const MultiPoly<T>&);                 \
  template MultiPoly<T> poly_from_json<T>(const Json&);            \
  template Json matrix_to_json(const Matrix<T>&);                  \
  template Matrix<T> matrix_from_json<T>(const Json&);             \
  template Json vector_to_json(const std::vector<T>&);             \
  template std::vector<T> vector_from_json<T>(const Json&);        \
  template std::vector<T> parse_vector<T>(std::string_view);

LORENTZ_IO_INSTANTIATE(double)
LORENTZ_IO_INSTANTIATE(Rational)

#undef LORENTZ_IO_INSTANTIATE

Json signature_to_json(const SignatureReport& r) {
  return {{"inertia", {r.n_pos, r.n_zero, r.n_neg}},
          {"eigenvalues", vector_to_json(r.eigenvalues)},
          {"tolerance", r.tolerance}};
}

SignatureReport signature_from_json(const Json& j) {
  SignatureReport r;
  const Json& in = require(j, "inertia");
  if (!in.is_array() || in.size() != 3) throw DomainError("JSON: inertia must have three entries");
  r.n_pos = in[0].get<std::size_t>();
  r.n_zero = in[1].get<std::size_t>();
  r.n_neg = in[2].get<std::size_t>();
  r.eigenvalues = vector_from_json<double>(require(j, "eigenvalues"));
  r.tolerance = scalar_from_json<double>(require(j, "tolerance"));
  return r;
}

Json cone_to_json(const ConeSpec& c) {
  Json j = std::visit(
      [](const auto& v) -> Json {
        using C = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<C, OrthantCone>) {
          return {{"variant", "orthant"}, {"n", v.dim}};
        } else if constexpr (std::is_same_v<C, GeneratedCone>) {
          Json gens = Json::array();
          for (const auto& g : v.generators) gens.push_back(vector_to_json(g));
          return {{"variant", "generators"}, {"generators", gens}};
        } else {
          return {{"variant", "hyperbolicity"}, {"poly", poly_to_json(v.poly)}, {"direction", vector_to_json(v.direction)}};
        }
      },
      c.variant());
  j["seed"] = c.seed();
  return j;
}

ConeSpec cone_from_json(const Json& j) {
  const std::string variant = require(j, "variant").get<std::string>();
  const std::uint64_t seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
  if (variant == "orthant") return ConeSpec::orthant(require(j, "n").get<std::size_t>(), seed);
  if (variant == "generators") {
    std::vector<std::vector<double>> gens;
    for (const auto& g : require(j, "generators")) gens.push_back(vector_from_json<double>(g));
    return ConeSpec::generated(std::move(gens), seed);
  }
  if (variant == "hyperbolicity")
    return ConeSpec::hyperbolicity(poly_from_json<double>(require(j, "poly")),
                                   vector_from_json<double>(require(j, "direction")), seed);
  throw DomainError("JSON: unknown cone variant '" + variant + "'");
}

Json capacity_to_json(const CapacityResult& r) {
  return {{"value", scalar_to_json(r.value)},   {"log_value", scalar_to_json(r.log_value)},
          {"argmin", vector_to_json(r.argmin)}, {"iterations", r.iterations},
          {"starts", r.starts},                 {"converged", r.converged},
          {"feasible", r.feasible},             {"upper_bound", r.upper_bound}};
}

Json lorentzian_report_to_json(const LorentzianReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    Json dirs = Json::array();
    for (const auto& d : w.directions) dirs.push_back(vector_to_json(d));
    witnesses.push_back({{"directions", dirs},
                         {"class", std::string(to_string(w.cls))},
                         {"inertia", {w.signature.n_pos, w.signature.n_zero, w.signature.n_neg}},
                         {"contraction", scalar_to_json(w.contraction)}});
  }
  return {{"holds", r.holds},
          {"strict", r.strict},
          {"chains", r.chains},
          {"seed", r.seed},
          {"sign_normalized", r.sign_normalized},
          {"not_lorentzian", r.not_lorentzian},
          {"nonpositive", r.nonpositive},
          {"non_strict", r.non_strict},
          {"sampled", true},
          {"witnesses", witnesses}};
}

}  // namespace lorentz::io
