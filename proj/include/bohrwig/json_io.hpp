#pragma once

// JSON forms:
//
//   CylFunction     {"kind": "rational" | "real", "terms": [{"freq": "1/2", "re": 1.0, "im": 0.0}, ...]}
//   Gaussian        {"a": [re, im], "b": [re, im], "c": [re, im]}
//
// Rational frequencies are strings "p/q" (or integers / exact decimals); real
// frequencies may be numbers or strings.

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "bohrwig/cyl_function.hpp"
#include "bohrwig/gaussdual.hpp"

namespace bohrwig {

/// Malformed input. The message carries the byte offset for syntax errors.
class JsonInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const CylFunction& psi);
CylFunction cyl_from_json(const nlohmann::json& j, Tolerances tol = {});
CylFunction parse_cyl(const std::string& text, Tolerances tol = {});

GaussianParams gaussian_from_json(const nlohmann::json& j);

/// Parses text, turning syntax errors into JsonInputError with the offset.
nlohmann::json parse_json(const std::string& text);

}  // namespace bohrwig
