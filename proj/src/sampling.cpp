#include "bohrwig/sampling.hpp"

#include <array>

namespace bohrwig {

Frequency random_rational(Rng& rng, int range) {
  static constexpr std::array<int, 5> dens{1, 2, 3, 4, 6};
  const int den = dens[std::uniform_int_distribution<int>(0, dens.size() - 1)(rng)];
  const int num = std::uniform_int_distribution<int>(-range * den, range * den)(rng);
  return Frequency::rational(num, den);
}

Frequency random_real(Rng& rng, double range) {
  return Frequency::real(std::uniform_real_distribution<double>(-range, range)(rng));
}

Complex random_complex(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double re = u(rng);
  double im = u(rng);
  return {re, im};
}

namespace {

Frequency random_label(Rng& rng, FrequencyKind kind) {
  return kind == FrequencyKind::rational ? random_rational(rng) : random_real(rng);
}

}  // namespace

CylFunction random_cyl(Rng& rng, FrequencyKind kind, int max_terms, Tolerances tol) {
  const int n = std::uniform_int_distribution<int>(1, max_terms)(rng);
  CylAccumulator acc(kind, tol);
  for (int i = 0; i < n; ++i) {
    Frequency mu = random_label(rng, kind);
    acc.add(mu, random_complex(rng));
  }
  return std::move(acc).finish();
}

DualElement random_gaussian(Rng& rng) {
  double are = std::uniform_real_distribution<double>(0.1, 5.0)(rng);
  double aim = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
  Complex b = 2.0 * random_complex(rng);
  if (std::abs(b) > 2.0) b *= 2.0 / std::abs(b);
  Complex c = random_complex(rng);
  return DualElement::gaussian({are, aim}, b, c);
}

CylCylDualFunction random_dual_function(Rng& rng, FrequencyKind kind, int max_entries) {
  const int n = std::uniform_int_distribution<int>(1, max_entries)(rng);
  std::vector<CylCylDualFunction::Entry> entries;
  for (int i = 0; i < n; ++i) {
    Frequency mu = random_label(rng, kind);
    Frequency nu = random_label(rng, kind);
    entries.push_back({mu, nu, random_complex(rng)});
  }
  return CylCylDualFunction::from_entries(kind, entries);
}

FiniteSymbol random_real_symbol(Rng& rng, FrequencyKind kind, int max_entries) {
  const int n = std::uniform_int_distribution<int>(1, max_entries)(rng);
  std::vector<CylCylDualFunction::Entry> entries;
  for (int i = 0; i < n; ++i) {
    Frequency mu = random_label(rng, kind);
    Frequency nu = random_label(rng, kind);
    Complex v = random_complex(rng);
    entries.push_back({mu, nu, v});
    entries.push_back({mu, -nu, std::conj(v)});
  }
  return FiniteSymbol(CylCylDualFunction::from_entries(kind, entries));
}

}  // namespace bohrwig
