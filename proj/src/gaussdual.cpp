#include "bohrwig/gaussdual.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "bohrwig/wigner.hpp"

namespace bohrwig {

DualElement DualElement::gaussian(Complex a, Complex b, Complex c) {
  if (!(a.real() > 0.0))
    throw std::domain_error(fmt::format("Gaussian needs Re(a) > 0, got {}", a.real()));
  return DualElement(GaussianParams{a, b, c});
}

DualElement DualElement::finite_map(CylFunction psi) { return DualElement(std::move(psi)); }

Complex DualElement::coefficient(const Frequency& mu) const {
  if (const auto* g = gaussian_params()) {
    double m = mu.to_double();
    return std::exp(-g->a * m * m + g->b * m + g->c);
  }
  return finite()->coefficient(mu);
}

GaussianDensity GaussianDensity::from(const GaussianParams& g) {
  const Complex i(0.0, 1.0);
  return {1.0 / std::sqrt(4.0 * std::numbers::pi * g.a), i * g.b, 4.0 * g.a, g.c};
}

Complex GaussianDensity::operator()(Complex z) const {
  Complex u = z - center_shift;
  return normalization * std::exp(-u * u / width + offset);
}

Complex dual_action(const DualElement& gamma, const CylFunction& phi) {
  Complex s{};
  for (const auto& [mu, v] : phi) s += gamma.coefficient(-mu) * v;
  return s;
}

DualElement embed_cyl(const CylFunction& psi) { return DualElement::finite_map(psi); }

namespace {

using LComplex = std::complex<long double>;

struct Term {
  long double mu;
  LComplex value;
};

// Integrates rho(t + i y) * sum_k v_k exp(i mu_k (t + i y)) over
// t in [center - radius, center + radius], real and imaginary parts separately.
QuadratureResult integrate_window(const GaussianParams& g, const std::vector<Term>& terms, long double y,
                                  long double center, long double radius, unsigned max_depth) {
  const LComplex a(g.a.real(), g.a.imag());
  const LComplex ib(-g.b.imag(), g.b.real());
  const LComplex c(g.c.real(), g.c.imag());
  const LComplex norm = 1.0L / std::sqrt(4.0L * std::numbers::pi_v<long double> * a);
  const LComplex iy(0.0L, y);

  auto integrand = [&](long double t) {
    LComplex z = t + iy;
    LComplex w = z - ib;
    LComplex density = norm * std::exp(-w * w / (4.0L * a) + c);
    LComplex restricted{};
    for (const auto& [mu, v] : terms) restricted += v * std::exp(LComplex(0.0L, mu) * z);
    return density * restricted;
  };

  using boost::math::quadrature::gauss_kronrod;
  constexpr long double tol = 1e-16L;
  long double err_re = 0, err_im = 0;
  long double re = gauss_kronrod<long double, 31>::integrate(
      [&](long double t) { return integrand(t).real(); }, center - radius, center + radius,
      max_depth, tol, &err_re);
  long double im = gauss_kronrod<long double, 31>::integrate(
      [&](long double t) { return integrand(t).imag(); }, center - radius, center + radius,
      max_depth, tol, &err_im);
  QuadratureResult out;
  out.value = Complex(static_cast<double>(re), static_cast<double>(im));
  out.error_estimate = static_cast<double>(std::hypot(err_re, err_im));
  out.radius = static_cast<double>(radius);
  return out;
}

// Doubles the truncation radius until two successive results agree.
QuadratureResult integrate_line(const GaussianParams& g, const std::vector<Term>& terms, double y,
                                double center, const QuadratureOptions& opts) {
  // |rho(t + i y)| decays like exp(-Re(w) (t - t*)^2) with w = 1/(4a).
  const Complex w = 1.0 / (4.0 * g.a);
  double radius = std::sqrt(45.0 / w.real());

  // Floor for the agreement test when the result vanishes by cancellation:
  // a tiny fraction of int |integrand| dt.
  const GaussianDensity rho = GaussianDensity::from(g);
  double peak = 0.0;
  const Complex z0(center, y);
  for (const auto& [mu, v] : terms) {
    peak += std::abs(rho(z0)) * std::abs(std::complex<double>(v)) *
            std::exp(-static_cast<double>(mu) * y);
  }
  const double floor = 1e-14 * peak * std::sqrt(std::numbers::pi / w.real());

  QuadratureResult prev = integrate_window(g, terms, y, center, radius, opts.max_depth);
  double last_diff = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= opts.max_doublings; ++k) {
    radius *= 2.0;
    QuadratureResult next = integrate_window(g, terms, y, center, radius, opts.max_depth);
    next.doublings = k;
    double diff = std::abs(next.value - prev.value);
    double scale = std::max(std::abs(next.value), floor);
    if (diff <= opts.agreement * scale) {
      next.error_estimate = std::max(next.error_estimate, diff);
      return next;
    }
    prev = next;
    last_diff = diff;
  }
  throw QuadratureError(
      fmt::format("reduction quadrature did not settle after {} doublings (last change {:.3e})",
                  opts.max_doublings, last_diff),
      last_diff);
}

}  // namespace

QuadratureResult reduction_action(const DualElement& gamma, const CylFunction& phi,
                                  const QuadratureOptions& opts) {
  const GaussianParams* g = gamma.gaussian_params();
  if (!g) throw std::invalid_argument("reduction_action needs a Gaussian element");
  if (phi.empty()) return {};

  std::vector<Term> terms;
  for (const auto& [mu, v] : phi) {
    terms.push_back({static_cast<long double>(mu.to_double()), LComplex(v.real(), v.imag())});
  }

  if (opts.path == IntegrationPath::real_line) {
    // |exp(-(x - ib)^2 w)| peaks at x* = Re(i b w) / Re(w).
    const Complex w = 1.0 / (4.0 * g->a);
    const double center = (Complex(0.0, 1.0) * g->b * w).real() / w.real();
    return integrate_line(*g, terms, 0.0, center, opts);
  }

  // rho(z) exp(i mu z) has its saddle at z_s = i (b + 2 a mu).
  QuadratureResult total;
  for (const auto& term : terms) {
    const double mu = static_cast<double>(term.mu);
    const Complex zs = Complex(0.0, 1.0) * (g->b + 2.0 * g->a * mu);
    QuadratureResult part = integrate_line(*g, {term}, zs.imag(), zs.real(), opts);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.radius = std::max(total.radius, part.radius);
    total.doublings = std::max(total.doublings, part.doublings);
  }
  return total;
}

double gaussian_wigner_pair_positive(const DualElement& gamma, const CylFunction& xi,
                                     const Frequency& mu0) {
  if (!gamma.is_gaussian()) throw std::invalid_argument("positivity pairing needs a Gaussian");
  CylFunction phi = pointwise_multiply(conjugate(xi), xi);
  if (phi.empty()) return 0.0;
  Complex value = pair(wigner_dual(gamma, gamma), CylCylDualFunction::tensor(phi, mu0));
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real())))
    throw std::logic_error(fmt::format("Gaussian Wigner pairing is not real: imaginary part {:.3e}",
                                       value.imag()));
  return value.real();
}

}  // namespace bohrwig
