#include "bohrwig/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bohrwig {

namespace {

double polish(double p2, double p1, double p0, double x) {
  for (int k = 0; k < 8; ++k) {
    double f = cubic_value(p2, p1, p0, x);
    double df = (3.0 * x + 2.0 * p2) * x + p1;
    if (f == 0.0 || df == 0.0) break;
    double next = x - f / df;
    // Near a double root Newton can wander; keep only steps that help.
    if (std::abs(cubic_value(p2, p1, p0, next)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

}  // namespace

std::vector<double> real_cubic_roots(double p2, double p1, double p0, double merge_tol) {
  // x = t - p2/3 gives t^3 + p t + q.
  const double shift = p2 / 3.0;
  const double p = p1 - p2 * p2 / 3.0;
  const double q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);

  std::vector<double> roots;
  if (disc > 0.0) {
    // Three distinct real roots; p < 0 here.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
    }
  } else {
    const double h = q * q / 4.0 + p * p * p / 27.0;
    const double r = std::sqrt(std::max(h, 0.0));
    const double t = std::cbrt(-q / 2.0 + r) + std::cbrt(-q / 2.0 - r);
    const double x0 = polish(p2, p1, p0, t - shift);
    roots.push_back(x0);
    // Deflate: (x - x0)(x^2 + b x + c).
    const double b = p2 + x0;
    const double c = p1 + x0 * b;
    const double qd = b * b - 4.0 * c;
    const double scale = std::max({b * b, std::abs(c), 1.0});
    if (qd >= -1e-14 * scale) {
      const double s = std::sqrt(std::max(qd, 0.0));
      const double r1 = b >= 0.0 ? (-b - s) / 2.0 : (-b + s) / 2.0;
      roots.push_back(r1);
      if (r1 != 0.0) roots.push_back(c / r1);
      else roots.push_back(-b - r1);
    }
  }

  for (auto& x : roots) x = polish(p2, p1, p0, x);
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double x : roots) {
    if (!out.empty() && std::abs(x - out.back()) <= merge_tol * std::max(1.0, std::abs(x))) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace bohrwig
