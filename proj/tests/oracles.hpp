#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
  double flo = f(lo);
  for (int k = 0; k < 200 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++k) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// alpha values with |alpha + beta| (alpha - beta)^2 = C, alpha > beta, found by
/// scanning both cubic branches in d = alpha - beta for sign changes and
/// refining by bisection.
inline std::vector<double> solution_set(double beta, double C, double step = 1e-3) {
  std::vector<double> out;
  const double dmax = 4.0 * std::abs(beta) + 40.0;
  for (double sign : {1.0, -1.0}) {
    auto g = [&](double d) { return d * d * d + 2.0 * beta * d * d - sign * C; };
    auto admissible = [&](double d) { return sign > 0 ? 2.0 * beta + d > 0 : 2.0 * beta + d < 0; };
    double prev = step * 1e-3;
    double gp = g(prev);
    for (double d = step; d <= dmax; d += step) {
      double gd = g(d);
      if ((gd < 0) != (gp < 0)) {
        double root = bisect(g, prev, d);
        if (admissible(root)) out.push_back(beta + root);
      }
      prev = d;
      gp = gd;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Golden-section minimum of f on [lo, hi] (f unimodal there).
inline double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int k = 0; k < 300; ++k) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

/// beta at which branch (ii), d^3 + 2 beta d^2 + C on d > 0, acquires a double
/// root: the zero of beta -> min_d g(d), found numerically.
inline double tangency_beta(double C) {
  auto min_g = [&](double beta) {
    auto g = [&](double d) { return d * d * d + 2.0 * beta * d * d + C; };
    double d = golden_min(g, 1e-9, 4.0 * std::abs(beta) + 10.0);
    return g(d);
  };
  return bisect(min_g, -3.0, -0.5, 1e-15);
}

struct CountScan {
  double last_three;  // largest coarse beta with three solutions
  double first_one;   // smallest coarse beta with one solution
  bool monotone;      // 3 below the bracket and 1 above it throughout
  double transition;  // bracket refined by bisection on the solution count
};

/// Locates the 3 -> 1 change of |S(beta)| on [lo, hi] with the bisection
/// oracle: a coarse scan, then bisection on beta with a fine d-step.
inline CountScan count_scan_critical(double C, double lo = -3.0, double hi = 0.0, double coarse = 1e-2) {
  CountScan out{lo, hi, true, 0.0};
  bool seen_one = false;
  for (double beta = lo; beta <= hi + 1e-12; beta += coarse) {
    auto n = solution_set(beta, C, 1e-3).size();
    if (n == 3 && !seen_one) out.last_three = beta;
    else if (n == 1 && !seen_one) {
      out.first_one = beta;
      seen_one = true;
    } else if (n != 1) {
      out.monotone = false;
    }
  }
  double a = out.last_three, b = out.first_one;
  while (b - a > 1e-8) {
    double mid = 0.5 * (a + b);
    if (solution_set(mid, C, 1e-5).size() >= 2) a = mid;
    else b = mid;
  }
  out.transition = 0.5 * (a + b);
  return out;
}

/// Trapezoid rule on [lo, hi] with n panels.
inline std::complex<double> trapezoid(const std::function<std::complex<double>(double)>& f, double lo,
                                      double hi, int n) {
  double h = (hi - lo) / n;
  std::complex<double> s = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < n; ++i) s += f(lo + i * h);
  return s * h;
}

}  // namespace oracle
