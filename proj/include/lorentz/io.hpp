#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lorentz/capacity.hpp"
#include "lorentz/hyperbolic.hpp"
#include "lorentz/lorentzian.hpp"
#include "lorentz/matrix.hpp"
#include "lorentz/poly.hpp"
#include "lorentz/spectra.hpp"

namespace lorentz::io {

using Json = nlohmann::json;

/// Rationals become strings ("p/q"); doubles become JSON numbers, which
/// nlohmann prints in shortest round-trip form. Non-finite doubles become
/// the strings "inf", "-inf", "nan".
Json scalar_to_json(double v);
Json scalar_to_json(const Rational& v);

/// Accepts a JSON number or a string holding "p/q", an integer, or a decimal.
/// Floats read into exact mode go through their shortest decimal form.
template <class T>
T scalar_from_json(const Json& j);

template <class T>
Json poly_to_json(const MultiPoly<T>& f);
template <class T>
MultiPoly<T> poly_from_json(const Json& j);

template <class T>
Json matrix_to_json(const Matrix<T>& m);
/// Accepts {"rows": [[...], ...]} or a bare array of rows.
template <class T>
Matrix<T> matrix_from_json(const Json& j);

template <class T>
Json vector_to_json(const std::vector<T>& v);
template <class T>
std::vector<T> vector_from_json(const Json& j);

/// "1,2.5,-3/4" → vector.
template <class T>
std::vector<T> parse_vector(std::string_view text);

Json signature_to_json(const SignatureReport& r);
SignatureReport signature_from_json(const Json& j);

/// {"variant": "orthant", "n": 3}
/// {"variant": "generators", "generators": [[...], ...]}
/// {"variant": "hyperbolicity", "poly": {...}, "direction": [...]}
/// with an optional "seed".
Json cone_to_json(const ConeSpec& c);
ConeSpec cone_from_json(const Json& j);

Json capacity_to_json(const CapacityResult& r);
Json lorentzian_report_to_json(const LorentzianReport& r);

}  // namespace lorentz::io
