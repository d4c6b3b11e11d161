#include "bohrwig/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "bohrwig/cubic.hpp"

namespace bohrwig {

void MubarScheme::validate() const {
  if (!(area_constant > 0.0) || !std::isfinite(area_constant))
    throw std::invalid_argument(fmt::format("area constant must be positive, got {}", area_constant));
}

double mubar(const MubarScheme& scheme, double mu) {
  if (mu == 0.0) throw std::domain_error("mubar is undefined at mu = 0");
  return std::sqrt(scheme.area_constant / 2.0 / std::abs(mu));
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::outer_plus: return "outer-plus";
    case Branch::outer_minus: return "outer-minus";
    case Branch::inner: return "inner";
  }
  return "?";
}

std::vector<double> SolutionSet::alphas() const {
  std::vector<double> out;
  for (const auto& s : solutions) out.push_back(s.alpha);
  return out;
}

namespace {

double outer_residual(double C, double alpha, double beta) {
  double d = alpha - beta;
  return std::abs(std::abs(alpha + beta) * d * d - C);
}

void sort_solutions(SolutionSet& set) {
  std::sort(set.solutions.begin(), set.solutions.end(),
            [](const Solution& a, const Solution& b) { return a.alpha < b.alpha; });
}

CylFunction require_real(const CylFunction& psi) {
  if (psi.kind() != FrequencyKind::real) throw KindMismatch(FrequencyKind::real, psi.kind());
  return psi;
}

template <class Solver>
CylFunction apply_relation(const CylFunction& psi, Solver&& solve) {
  require_real(psi);
  CylAccumulator acc(FrequencyKind::real, psi.tolerances());
  for (const auto& [label, v] : psi) {
    for (const auto& s : solve(label.to_double()).solutions) acc.add(Frequency::real(s.alpha), v);
  }
  return std::move(acc).finish();
}

}  // namespace

SolutionSet solve_S(const MubarScheme& scheme, double beta) {
  const double C = scheme.area_constant;
  SolutionSet set;
  set.beta = beta;
  for (double d : real_cubic_roots(2.0 * beta, 0.0, -C)) {
    if (d > 0.0 && 2.0 * beta + d > 0.0) set.solutions.push_back({beta + d, Branch::outer_plus, 0.0});
  }
  for (double d : real_cubic_roots(2.0 * beta, 0.0, C)) {
    if (d > 0.0 && 2.0 * beta + d < 0.0) set.solutions.push_back({beta + d, Branch::outer_minus, 0.0});
  }
  for (auto& s : set.solutions) s.residual = outer_residual(C, s.alpha, beta);
  sort_solutions(set);
  return set;
}

SolutionSet solve_S_adjoint(const MubarScheme& scheme, double alpha) {
  const double C = scheme.area_constant;
  SolutionSet set;
  set.beta = alpha;
  for (double d : real_cubic_roots(-2.0 * alpha, 0.0, C)) {
    if (d > 0.0 && 2.0 * alpha - d > 0.0) set.solutions.push_back({alpha - d, Branch::outer_plus, 0.0});
  }
  for (double d : real_cubic_roots(-2.0 * alpha, 0.0, -C)) {
    if (d > 0.0 && 2.0 * alpha - d < 0.0) set.solutions.push_back({alpha - d, Branch::outer_minus, 0.0});
  }
  for (auto& s : set.solutions) s.residual = outer_residual(C, alpha, s.alpha);
  sort_solutions(set);
  return set;
}

double critical_beta(const MubarScheme& scheme) {
  return -std::cbrt(27.0 * scheme.area_constant / 32.0);
}

double spike_halfwidth(const MubarScheme& scheme) {
  // |mubar'(x)| = (k/2)|x|^(-3/2) with k = sqrt(C/2).
  const double k = std::sqrt(scheme.area_constant / 2.0);
  return std::pow(k / 4.0, 2.0 / 3.0);
}

bool on_spike(const MubarScheme& scheme, double alpha, double beta) {
  return std::abs((alpha + beta) / 2.0) < spike_halfwidth(scheme);
}

CylFunction e_op(const MubarScheme& scheme, const CylFunction& psi) {
  return apply_relation(psi, [&](double beta) { return solve_S(scheme, beta); });
}

CylFunction e_adjoint_op(const MubarScheme& scheme, const CylFunction& psi) {
  return apply_relation(psi, [&](double alpha) { return solve_S_adjoint(scheme, alpha); });
}

CylFunction sin_op(const MubarScheme& scheme, const CylFunction& psi) {
  return Complex(0.0, -0.5) * (e_op(scheme, psi) - e_adjoint_op(scheme, psi));
}

CylFunction cos_op(const MubarScheme& scheme, const CylFunction& psi) {
  return Complex(0.5) * (e_op(scheme, psi) + e_adjoint_op(scheme, psi));
}

// --- regularization -----------------------------------------------------------

Regularization::Regularization(const MubarScheme& scheme, double eps,
                               std::function<double(double)> cap)
    : scheme_(scheme), eps_(eps), edge_(0.0), cap_(std::move(cap)) {
  scheme_.validate();
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument(fmt::format("regularization needs eps > 0, got {}", eps));
  edge_ = mubar(scheme_, eps);
}

Regularization Regularization::constant_cap(const MubarScheme& scheme, double eps) {
  return Regularization(scheme, eps, nullptr);
}

Regularization Regularization::concave_cap(const MubarScheme& scheme, double eps,
                                           std::function<double(double)> cap) {
  if (!cap) throw std::invalid_argument("concave cap needs a function");
  Regularization reg(scheme, eps, std::move(cap));
  const double edge = reg.edge_;
  const double tol = 1e-9 * std::max(1.0, edge);
  for (double x : {-eps, eps}) {
    if (std::abs(reg.cap_(x) - edge) > tol)
      throw std::invalid_argument(
          fmt::format("cap({}) = {} does not match mubar(eps) = {}", x, reg.cap_(x), edge));
  }
  constexpr int n = 1000;
  auto grid = [&](int i) { return -eps + 2.0 * eps * i / (n - 1); };
  for (int i = 0; i < n; ++i) {
    double a = grid(i);
    if (!(reg.cap_(a) > 0.0) || !std::isfinite(reg.cap_(a)))
      throw std::invalid_argument(fmt::format("cap must be positive and finite, cap({}) = {}", a, reg.cap_(a)));
    for (int j : {(i + 1) % n, (i * 389 + 17) % n, n - 1 - i}) {
      double b = grid(j);
      double mid = reg.cap_((a + b) / 2.0);
      if (mid < (reg.cap_(a) + reg.cap_(b)) / 2.0 - 1e-12 * std::max(1.0, edge))
        throw std::invalid_argument(fmt::format("cap is not concave between {} and {}", a, b));
    }
  }
  return reg;
}

double Regularization::f(double x) const {
  return std::abs(x) > eps_ ? mubar(scheme_, x) : cap(x);
}

namespace {

// Roots on [-eps, eps] of g(x) = x + sign * cap(x)/2 - target. With sign = -1
// g is convex, with sign = +1 concave, so there are at most two roots either
// side of the extremum.
std::vector<double> cap_roots(const Regularization& reg, double sign, double target) {
  const double eps = reg.epsilon();
  if (reg.is_constant()) {
    double x = target - sign * reg.cap_value() / 2.0;
    if (std::abs(x) <= eps) return {x};
    return {};
  }
  // Orient so that g is convex: h = -g when sign = +1.
  const double orient = sign < 0 ? 1.0 : -1.0;
  auto h = [&](double x) { return orient * (x + sign * reg.cap(x) / 2.0 - target); };
  auto [xm, hm] = boost::math::tools::brent_find_minima(h, -eps, eps, 52);
  std::vector<double> roots;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  auto bracket = [&](double lo, double hi) {
    double hl = h(lo), hh = h(hi);
    if (hl == 0.0) return roots.push_back(lo);
    if (hh == 0.0) return roots.push_back(hi);
    if ((hl < 0.0) == (hh < 0.0)) return;
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(h, lo, hi, hl, hh, tol, iters);
    roots.push_back((r.first + r.second) / 2.0);
  };
  if (hm > 0.0) return roots;
  bracket(-eps, xm);
  bracket(xm, eps);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, eps); }),
              roots.end());
  return roots;
}

}  // namespace

SolutionSet solve_S_reg(const Regularization& reg, double beta) {
  SolutionSet set;
  set.beta = beta;
  const double eps = reg.epsilon();
  for (const auto& s : solve_S(reg.scheme(), beta).solutions) {
    if (std::abs(s.alpha + beta) > 2.0 * eps) set.solutions.push_back(s);
  }
  for (double x : cap_roots(reg, -1.0, beta)) {
    double alpha = beta + reg.cap(x);
    double residual = std::abs(alpha - beta - reg.f((alpha + beta) / 2.0));
    set.solutions.push_back({alpha, Branch::inner, residual});
  }
  sort_solutions(set);
  return set;
}

SolutionSet solve_S_reg_adjoint(const Regularization& reg, double alpha) {
  SolutionSet set;
  set.beta = alpha;
  const double eps = reg.epsilon();
  for (const auto& s : solve_S_adjoint(reg.scheme(), alpha).solutions) {
    if (std::abs(alpha + s.alpha) > 2.0 * eps) set.solutions.push_back(s);
  }
  for (double x : cap_roots(reg, 1.0, alpha)) {
    double beta = alpha - reg.cap(x);
    double residual = std::abs(alpha - beta - reg.f((alpha + beta) / 2.0));
    set.solutions.push_back({beta, Branch::inner, residual});
  }
  sort_solutions(set);
  return set;
}

CylFunction regularized_op(const Regularization& reg, const CylFunction& psi) {
  return apply_relation(psi, [&](double beta) { return solve_S_reg(reg, beta); });
}

ConvergenceReport convergence_check(const MubarScheme& scheme, double beta,
                                    std::span<const double> epsilons) {
  ConvergenceReport report;
  report.beta = beta;
  report.epsilons.assign(epsilons.begin(), epsilons.end());
  const CylFunction start = make_character(Frequency::real(beta));
  const CylFunction target = e_op(scheme, start);

  std::vector<std::vector<double>> spurious, missing;
  std::optional<std::size_t> last_bad;
  for (std::size_t n = 0; n < epsilons.size(); ++n) {
    const CylFunction got = regularized_op(Regularization::constant_cap(scheme, epsilons[n]), start);
    std::vector<double> extra, lost;
    for (const auto& [mu, v] : got) {
      if (!target.find_label(mu)) extra.push_back(mu.to_double());
    }
    for (const auto& [mu, v] : target) {
      if (!got.find_label(mu)) lost.push_back(mu.to_double());
    }
    if (!approx_equal(got, target, 1e-9) || !extra.empty() || !lost.empty()) last_bad = n;
    spurious.push_back(std::move(extra));
    missing.push_back(std::move(lost));
  }

  std::size_t stable_from = last_bad ? *last_bad + 1 : 0;
  if (stable_from < epsilons.size()) report.first_stable = stable_from + 1;
  spurious.resize(std::min(stable_from, spurious.size()));
  missing.resize(std::min(stable_from, missing.size()));
  report.spurious = std::move(spurious);
  report.missing = std::move(missing);
  return report;
}

// --- APS operator -------------------------------------------------------------

double volume_label(double mu) { return std::copysign(std::pow(std::abs(mu), 1.5), mu); }

double volume_label_inverse(double v) { return std::copysign(std::pow(std::abs(v), 2.0 / 3.0), v); }

namespace {

CylFunction volume_shift(double shift, const CylFunction& psi) {
  require_real(psi);
  CylAccumulator acc(FrequencyKind::real, psi.tolerances());
  for (const auto& [label, v] : psi) {
    acc.add(Frequency::real(volume_label_inverse(volume_label(label.to_double()) + shift)), v);
  }
  return std::move(acc).finish();
}

void require_positive_K(double K) {
  if (!(K > 0.0) || !std::isfinite(K))
    throw std::invalid_argument(fmt::format("APS constant K must be positive, got {}", K));
}

}  // namespace

CylFunction aps_op(double K, const CylFunction& psi) {
  require_positive_K(K);
  return volume_shift(-1.0 / K, psi);
}

CylFunction aps_inverse_op(double K, const CylFunction& psi) {
  require_positive_K(K);
  return volume_shift(1.0 / K, psi);
}

// --- symbols ------------------------------------------------------------------

namespace symbols {

namespace {

std::vector<Frequency> labels_of(const SolutionSet& set) {
  std::vector<Frequency> out;
  for (const auto& s : set.solutions) out.push_back(Frequency::real(s.alpha));
  return out;
}

// True when alpha - beta = f((alpha + beta)/2) up to snapping.
template <class F>
Complex graph_indicator(const Frequency& nu, const Frequency& mu, double freq_tol, F&& f) {
  const double n = nu.to_double();
  const double m = mu.to_double();
  const double alpha = m + n / 2.0;
  const double beta = m - n / 2.0;
  const double scale = std::max({1.0, std::abs(alpha), std::abs(beta)});
  auto value = f(m);
  if (!value) return {};
  return std::abs(n - *value) <= freq_tol * scale ? Complex(1.0) : Complex{};
}

}  // namespace

Symbol holonomy(const MubarScheme& scheme, Tolerances tol) {
  scheme.validate();
  return Symbol(
      "e", FrequencyKind::real,
      [scheme, tol](const Frequency& nu, const Frequency& mu) {
        return graph_indicator(nu, mu, tol.freq, [&](double m) -> std::optional<double> {
          if (m == 0.0) return std::nullopt;
          return mubar(scheme, m);
        });
      },
      [scheme](const Frequency& alpha) { return labels_of(solve_S_adjoint(scheme, alpha.to_double())); },
      [scheme](const Frequency& beta) { return labels_of(solve_S(scheme, beta.to_double())); },
      SchurConstants{3.0, 3.0}, tol);
}

Symbol holonomy_regularized(const Regularization& reg, Tolerances tol) {
  return Symbol(
      fmt::format("e_reg:{}", reg.epsilon()), FrequencyKind::real,
      [reg, tol](const Frequency& nu, const Frequency& mu) {
        return graph_indicator(nu, mu, tol.freq,
                               [&](double m) -> std::optional<double> { return reg.f(m); });
      },
      [reg](const Frequency& alpha) { return labels_of(solve_S_reg_adjoint(reg, alpha.to_double())); },
      [reg](const Frequency& beta) { return labels_of(solve_S_reg(reg, beta.to_double())); },
      SchurConstants{5.0, 5.0}, tol);
}

Symbol aps(double K, Tolerances tol) {
  require_positive_K(K);
  auto shifted = [](double x, double s) { return volume_label_inverse(volume_label(x) + s); };
  return Symbol(
      fmt::format("e_aps:{}", K), FrequencyKind::real,
      [K, tol, shifted](const Frequency& nu, const Frequency& mu) {
        const double alpha = mu.to_double() + nu.to_double() / 2.0;
        const double beta = mu.to_double() - nu.to_double() / 2.0;
        const double scale = std::max({1.0, std::abs(alpha), std::abs(beta)});
        return std::abs(alpha - shifted(beta, -1.0 / K)) <= tol.freq * scale ? Complex(1.0) : Complex{};
      },
      [K, shifted](const Frequency& alpha) {
        return std::vector<Frequency>{Frequency::real(shifted(alpha.to_double(), 1.0 / K))};
      },
      [K, shifted](const Frequency& beta) {
        return std::vector<Frequency>{Frequency::real(shifted(beta.to_double(), -1.0 / K))};
      },
      SchurConstants{1.0, 1.0}, tol);
}

}  // namespace symbols

}  // namespace bohrwig
