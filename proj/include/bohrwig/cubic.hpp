#pragma once

#include <vector>

namespace bohrwig {

/// Real roots of the monic cubic x^3 + p2 x^2 + p1 x + p0, sorted ascending.
///
/// Closed form chosen by discriminant: trigonometric for three real roots,
/// Cardano plus deflation otherwise (the deflated quadratic catches a double
/// root at tangency). Each root is then Newton-polished and roots closer than
/// merge_tol (relative) are merged.
std::vector<double> real_cubic_roots(double p2, double p1, double p0, double merge_tol = 1e-9);

/// p(x) = x^3 + p2 x^2 + p1 x + p0 evaluated with Horner.
inline double cubic_value(double p2, double p1, double p0, double x) {
  return ((x + p2) * x + p1) * x + p0;
}

}  // namespace bohrwig
