#pragma once

// Seeded generators for property sweeps.

#include <cstdint>
#include <random>

#include "bohrwig/cyl_function.hpp"
#include "bohrwig/gaussdual.hpp"
#include "bohrwig/weylquant.hpp"

namespace bohrwig {

using Rng = std::mt19937_64;

/// p/q with q drawn from {1, 2, 3, 4, 6} and |p/q| <= range.
Frequency random_rational(Rng& rng, int range = 5);
Frequency random_real(Rng& rng, double range = 10.0);
/// Uniform on the square [-1, 1]^2.
Complex random_complex(Rng& rng);

/// 1..max_terms terms with random labels and complex coefficients.
CylFunction random_cyl(Rng& rng, FrequencyKind kind, int max_terms = 4, Tolerances tol = {});

/// Re a in [0.1, 5], Im a in [-2, 2], |b| <= 2, c in the unit square.
DualElement random_gaussian(Rng& rng);

/// 1..max_entries random (mu, nu) entries.
CylCylDualFunction random_dual_function(Rng& rng, FrequencyKind kind, int max_entries = 4);

/// A random symbol that is real: conj(sigma^(-nu, mu)) = sigma^(nu, mu).
FiniteSymbol random_real_symbol(Rng& rng, FrequencyKind kind, int max_entries = 3);

}  // namespace bohrwig
