#pragma once

// Distributions over Cyl. An element Gamma acts on a cylindrical function by
//
//     Gamma(Phi) = sum_mu Gamma^_mu Phi^_{-mu},
//
// so it is fixed by its coefficient function mu -> Gamma^_mu. Two variants are
// housed: Gaussians, Gamma^_mu = exp(-a mu^2 + b mu + c) with Re a > 0, and the
// image of Cyl itself under the pairing int Psi Phi dc.

#include <stdexcept>
#include <variant>

#include "bohrwig/cyl_function.hpp"

namespace bohrwig {

struct GaussianParams {
  Complex a{1.0};
  Complex b{};
  Complex c{};
};

class DualElement {
 public:
  /// Throws std::domain_error unless Re(a) > 0.
  static DualElement gaussian(Complex a, Complex b = {}, Complex c = {});
  static DualElement finite_map(CylFunction psi);

  /// Gamma^_mu. Gaussians accept labels of either kind.
  Complex coefficient(const Frequency& mu) const;

  bool is_gaussian() const { return std::holds_alternative<GaussianParams>(repr_); }
  const GaussianParams* gaussian_params() const { return std::get_if<GaussianParams>(&repr_); }
  const CylFunction* finite() const { return std::get_if<CylFunction>(&repr_); }

 private:
  explicit DualElement(std::variant<GaussianParams, CylFunction> repr) : repr_(std::move(repr)) {}

  std::variant<GaussianParams, CylFunction> repr_;
};

/// The density on the real line induced by a Gaussian element:
///   rho(x) = exp(-(x - i b)^2 / (4a) + c) / sqrt(4 pi a).
struct GaussianDensity {
  Complex normalization;  // 1 / sqrt(4 pi a), principal branch
  Complex center_shift;   // i b
  Complex width;          // 4 a
  Complex offset;         // c

  static GaussianDensity from(const GaussianParams& g);
  Complex operator()(Complex z) const;
};

Complex dual_action(const DualElement& gamma, const CylFunction& phi);

/// Embedding of Cyl into its dual: the functional Phi -> int Psi Phi dc.
DualElement embed_cyl(const CylFunction& psi);

enum class IntegrationPath {
  /// One horizontal line per character of Phi, through the saddle point
  /// i(b + 2 a mu) of rho(z) exp(i mu z). Same value as the real line by
  /// Cauchy's theorem, without the cancellation.
  saddle_lines,
  /// The real line itself, against Phi restricted to R.
  real_line,
};

struct QuadratureOptions {
  /// Two successive truncation radii must agree to this relative accuracy.
  double agreement = 1e-10;
  IntegrationPath path = IntegrationPath::saddle_lines;
  int max_doublings = 8;
  unsigned max_depth = 20;
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  double radius = 0.0;
  int doublings = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Gamma(Phi) for a Gaussian Gamma, computed by integrating the induced
/// density rho against Phi. Independent of dual_action; the two must agree.
/// On the real line the integrand is O(1) and oscillating while the result
/// can be exponentially small, so the default path integrates each character
/// term on its own shifted line.
QuadratureResult reduction_action(const DualElement& gamma, const CylFunction& phi,
                                  const QuadratureOptions& opts = {});

/// W(Gamma, Gamma)[|Xi|^2 (x) delta_mu0] for a Gaussian Gamma. The test
/// function is certified nonnegative by construction from Xi. Throws
/// std::logic_error if the pairing has a non-negligible imaginary part.
double gaussian_wigner_pair_positive(const DualElement& gamma, const CylFunction& xi,
                                     const Frequency& mu0);

}  // namespace bohrwig
