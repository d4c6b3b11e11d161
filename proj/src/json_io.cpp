#include "bohrwig/json_io.hpp"

#include <fmt/format.h>

namespace bohrwig {

namespace {

FrequencyKind kind_from_string(const std::string& s) {
  if (s == "rational") return FrequencyKind::rational;
  if (s == "real") return FrequencyKind::real;
  throw JsonInputError(fmt::format("unknown frequency kind '{}'", s));
}

Complex complex_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw JsonInputError(fmt::format("field '{}' must be [re, im]", field));
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonInputError(fmt::format("JSON parse error at byte {}: {}", e.byte, e.what()));
  }
}

nlohmann::json to_json(const CylFunction& psi) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mu, v] : psi) {
    nlohmann::json t;
    if (mu.is_rational()) t["freq"] = mu.to_string();
    else t["freq"] = mu.to_double();
    t["re"] = v.real();
    t["im"] = v.imag();
    terms.push_back(std::move(t));
  }
  return {{"kind", to_string(psi.kind())}, {"terms", std::move(terms)}};
}

CylFunction cyl_from_json(const nlohmann::json& j, Tolerances tol) {
  if (!j.is_object()) throw JsonInputError("expected an object with 'kind' and 'terms'");
  if (!j.contains("kind") || !j["kind"].is_string()) throw JsonInputError("missing string field 'kind'");
  if (!j.contains("terms") || !j["terms"].is_array()) throw JsonInputError("missing array field 'terms'");
  const FrequencyKind kind = kind_from_string(j["kind"].get<std::string>());
  CylAccumulator acc(kind, tol);
  std::size_t index = 0;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("freq"))
      throw JsonInputError(fmt::format("term {} needs a 'freq' field", index));
    const auto& f = t["freq"];
    Frequency mu;
    try {
      if (f.is_string()) mu = Frequency::parse(f.get<std::string>(), kind);
      else if (f.is_number_integer() && kind == FrequencyKind::rational)
        mu = Frequency::rational(f.get<long long>());
      else if (f.is_number() && kind == FrequencyKind::real) mu = Frequency::real(f.get<double>());
      else throw JsonInputError("");
    } catch (const std::exception&) {
      throw JsonInputError(fmt::format("term {}: bad frequency {} for kind {}", index, f.dump(),
                                       to_string(kind)));
    }
    for (const char* part : {"re", "im"}) {
      if (t.contains(part) && !t[part].is_number())
        throw JsonInputError(fmt::format("term {}: field '{}' must be a number", index, part));
    }
    double re = t.value("re", 0.0);
    double im = t.value("im", 0.0);
    acc.add(mu, {re, im});
    ++index;
  }
  return std::move(acc).finish();
}

CylFunction parse_cyl(const std::string& text, Tolerances tol) {
  return cyl_from_json(parse_json(text), tol);
}

GaussianParams gaussian_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw JsonInputError("expected an object with 'a', 'b', 'c'");
  GaussianParams g;
  if (j.contains("a")) g.a = complex_from_json(j["a"], "a");
  if (j.contains("b")) g.b = complex_from_json(j["b"], "b");
  if (j.contains("c")) g.c = complex_from_json(j["c"], "c");
  if (!(g.a.real() > 0.0)) throw JsonInputError("Gaussian needs Re(a) > 0");
  return g;
}

}  // namespace bohrwig
