#pragma once

// The mu-bar scheme holonomy and its Weyl quantization.
//
// The symbol e(c, mu) = h_{mubar(mu)}(c), with e(c, 0) = 0, acts on characters by
//
//     e-hat h_beta = sum_{alpha in S(beta)} h_alpha,
//
// where S(beta) collects the alpha > beta with |alpha + beta| (alpha - beta)^2 = C,
// i.e. alpha - beta = mubar((alpha + beta)/2). With d = alpha - beta the
// relation splits into two cubics in d:
//
//     (i)  d^3 + 2 beta d^2 - C = 0   on 2 beta + d > 0
//     (ii) d^3 + 2 beta d^2 + C = 0   on 2 beta + d < 0

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bohrwig/cyl_function.hpp"
#include "bohrwig/weylquant.hpp"

namespace bohrwig {

struct MubarScheme {
  double area_constant = 3.0 * 1.7320508075688772935;  // 3 sqrt(3)
  double mu0 = 1.5 * 1.7320508075688772935;            // 3 sqrt(3) / 2

  /// Throws std::invalid_argument unless area_constant > 0.
  void validate() const;
};

/// Positive root of mubar(mu)^2 = (C/2)/|mu|. Throws std::domain_error at 0.
double mubar(const MubarScheme& scheme, double mu);

enum class Branch { outer_plus, outer_minus, inner };
std::string to_string(Branch b);

struct Solution {
  double alpha = 0.0;
  Branch branch = Branch::outer_plus;
  /// | |alpha + beta| (alpha - beta)^2 - C | for outer solutions.
  double residual = 0.0;
};

struct SolutionSet {
  double beta = 0.0;
  std::vector<Solution> solutions;  // sorted by alpha

  std::size_t size() const { return solutions.size(); }
  std::vector<double> alphas() const;
};

/// S(beta).
SolutionSet solve_S(const MubarScheme& scheme, double beta);

/// S-dagger(alpha): all beta < alpha with alpha in S(beta). The transposed
/// cubics are d^3 - 2 alpha d^2 + C = 0 (d < 2 alpha) and
/// d^3 - 2 alpha d^2 - C = 0 (d > 2 alpha). The returned `alpha` fields hold
/// the beta values.
SolutionSet solve_S_adjoint(const MubarScheme& scheme, double alpha);

/// Tangency point of branch (ii): -(27 C / 32)^(1/3).
double critical_beta(const MubarScheme& scheme);

/// The half-width x* of the spike: on the curve
/// (alpha, beta) = (x + mubar(x)/2, x - mubar(x)/2) the part with |x| < x*
/// runs against the diagonal. Solves |mubar'(x*)| = 2.
double spike_halfwidth(const MubarScheme& scheme);

/// True when (alpha, beta) lies on the anti-diagonal spike of the graph.
bool on_spike(const MubarScheme& scheme, double alpha, double beta);

CylFunction e_op(const MubarScheme& scheme, const CylFunction& psi);
CylFunction e_adjoint_op(const MubarScheme& scheme, const CylFunction& psi);
/// (e - e-dagger) / 2i
CylFunction sin_op(const MubarScheme& scheme, const CylFunction& psi);
/// (e + e-dagger) / 2
CylFunction cos_op(const MubarScheme& scheme, const CylFunction& psi);

// --- regularization -----------------------------------------------------------

/// f = mubar outside [-eps, eps] and a concave cap inside.
class Regularization {
 public:
  /// The shipped variant: f = mubar(eps) on [-eps, eps].
  static Regularization constant_cap(const MubarScheme& scheme, double eps);
  /// A general cap. Throws std::invalid_argument unless cap(+-eps) matches
  /// mubar(eps) and midpoint concavity holds on 10^3 sample pairs.
  static Regularization concave_cap(const MubarScheme& scheme, double eps,
                                    std::function<double(double)> cap);

  double epsilon() const { return eps_; }
  bool is_constant() const { return !cap_; }
  /// mubar(eps), the value at the edges of the cap.
  double cap_value() const { return edge_; }
  double cap(double x) const { return cap_ ? cap_(x) : edge_; }
  /// The regularized function f.
  double f(double x) const;
  const MubarScheme& scheme() const { return scheme_; }

 private:
  Regularization(const MubarScheme& scheme, double eps, std::function<double(double)> cap);

  MubarScheme scheme_;
  double eps_;
  double edge_;
  std::function<double(double)> cap_;
};

/// S_f(beta): outer solutions with |alpha + beta| > 2 eps plus inner ones.
SolutionSet solve_S_reg(const Regularization& reg, double beta);
/// Transposed relation for the regularized symbol.
SolutionSet solve_S_reg_adjoint(const Regularization& reg, double alpha);

CylFunction regularized_op(const Regularization& reg, const CylFunction& psi);

struct ConvergenceReport {
  double beta = 0.0;
  std::vector<double> epsilons;
  /// 1-based position in `epsilons` from which e_{f_n} h_beta = e h_beta
  /// for every later n; empty when the tail never settles.
  std::optional<std::size_t> first_stable;
  /// Per n < N: labels present in e_{f_n} h_beta but not in e h_beta.
  std::vector<std::vector<double>> spurious;
  /// Per n < N: labels of e h_beta missing from e_{f_n} h_beta.
  std::vector<std::vector<double>> missing;
};

ConvergenceReport convergence_check(const MubarScheme& scheme, double beta,
                                    std::span<const double> epsilons);

// --- APS operator -------------------------------------------------------------

/// v(mu) = sign(mu) |mu|^(3/2) and its inverse.
double volume_label(double mu);
double volume_label_inverse(double v);

/// h_beta -> h_alpha with v(alpha) = v(beta) - 1/K. Throws std::invalid_argument
/// unless K > 0.
CylFunction aps_op(double K, const CylFunction& psi);
/// Inverse shift, v(alpha) = v(beta) + 1/K.
CylFunction aps_inverse_op(double K, const CylFunction& psi);

// --- symbols ------------------------------------------------------------------

namespace symbols {

/// e with declared Schur constants (3, 3).
Symbol holonomy(const MubarScheme& scheme, Tolerances tol = {});
/// e_f with declared Schur constants (5, 5).
Symbol holonomy_regularized(const Regularization& reg, Tolerances tol = {});
/// e_APS with declared Schur constants (1, 1).
Symbol aps(double K, Tolerances tol = {});

}  // namespace symbols

}  // namespace bohrwig
