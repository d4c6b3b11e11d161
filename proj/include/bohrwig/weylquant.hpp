#pragma once

// Weyl quantization of symbols on R_B x R_B-dual.
//
// A symbol is given on the Fourier side by sigma^(nu, mu). Its quantization
// acts on characters through the matrix elements
//
//     M_{alpha beta} = <h_alpha, sigma-hat h_beta> = sigma^(alpha - beta, (alpha + beta)/2).
//
// Evaluating M alone cannot tell which alpha are reached from a given beta, so
// every Symbol also carries row and column support enumerators. These make
// quantize_apply terminate by construction and make the Schur criterion
// checkable.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohrwig/cyl_function.hpp"

namespace bohrwig {

/// Schur constants: sum_beta |M_ab| <= row_sum for every alpha and
/// sum_alpha |M_ab| <= col_sum for every beta.
struct SchurConstants {
  double row_sum = 0.0;
  double col_sum = 0.0;
};

class Symbol {
 public:
  using HatFn = std::function<Complex(const Frequency& nu, const Frequency& mu)>;
  using SupportFn = std::function<std::vector<Frequency>(const Frequency&)>;

  Symbol(std::string name, FrequencyKind kind, HatFn hat, SupportFn row_support,
         SupportFn col_support, std::optional<SchurConstants> schur = std::nullopt,
         Tolerances tol = {});

  const std::string& name() const { return name_; }
  FrequencyKind kind() const { return kind_; }
  const Tolerances& tolerances() const { return tol_; }
  const std::optional<SchurConstants>& schur() const { return schur_; }

  Complex hat(const Frequency& nu, const Frequency& mu) const { return hat_(nu, mu); }
  /// All beta with M_{alpha beta} != 0.
  std::vector<Frequency> row_support(const Frequency& alpha) const;
  /// All alpha with M_{alpha beta} != 0.
  std::vector<Frequency> col_support(const Frequency& beta) const;

 private:
  std::string name_;
  FrequencyKind kind_;
  HatFn hat_;
  SupportFn row_support_;
  SupportFn col_support_;
  std::optional<SchurConstants> schur_;
  Tolerances tol_;
};

/// Raised when a support enumerator breaks the Symbol contract.
class SymbolContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Complex matrix_element(const Symbol& sigma, const Frequency& alpha, const Frequency& beta);

/// (sigma-hat Psi)^_alpha = sum_beta M_{alpha beta} Psi^_beta.
CylFunction quantize_apply(const Symbol& sigma, const CylFunction& psi);

/// Quantization of conj(sigma): M'_{alpha beta} = conj(M_{beta alpha}).
Symbol adjoint(const Symbol& sigma);

/// sqrt(A B); throws std::invalid_argument when no constants are declared.
double schur_norm_bound(const Symbol& sigma);

/// Largest row and column absolute sums of M seen over the sampled labels.
SchurConstants scan_schur_constants(const Symbol& sigma, std::span<const Frequency> labels);

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

struct SectionNorm {
  double value = 0.0;
  std::size_t dimension = 0;
  int iterations = 0;
};

class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(const std::string& what, double last) : std::runtime_error(what), last_(last) {}
  double last_iterate() const { return last_; }

 private:
  double last_;
};

/// Lower bound for the operator norm: the largest singular value of M
/// restricted to the labels reachable from `seeds` in at most `radius` steps
/// along row/column supports.
SectionNorm finite_section_norm(const Symbol& sigma, std::span<const Frequency> seeds, int radius,
                                const PowerIterationOptions& opts = {});

/// Labels reachable from the seeds in at most `radius` support steps, in
/// discovery order.
std::vector<Frequency> reachable_labels(const Symbol& sigma, std::span<const Frequency> seeds,
                                        int radius);

// ---------------------------------------------------------------------------

/// A symbol in Cyl (x) Cyl-dual: sigma(c, lambda), finite on both sides.
class FiniteSymbol {
 public:
  explicit FiniteSymbol(CylCylDualFunction sigma) : sigma_(std::move(sigma)) {}

  const CylCylDualFunction& function() const { return sigma_; }
  Complex hat(const Frequency& nu, const Frequency& mu) const {
    return sigma_.partial_fourier(nu, mu);
  }
  /// True when sigma(c, lambda) is real, i.e. sigma^(nu, mu) = conj(sigma^(-nu, mu)).
  bool is_real() const;

  Symbol as_symbol(std::string name = "finite") const;

 private:
  CylCylDualFunction sigma_;
};

/// B_sigma(Psi1, Psi2) = sigma(W(Psi1, Psi2)), paired through the Wigner data.
Complex form_via_wigner(const FiniteSymbol& sigma, const CylFunction& psi1, const CylFunction& psi2);

namespace symbols {

/// sigma_1(c, lambda) = h_mu0(c); quantizes to h_op(mu0, .).
Symbol character(const Frequency& mu0, Tolerances tol = {});
/// sigma_2(c, lambda) = lambda; quantizes to p_op.
Symbol momentum(FrequencyKind kind, Tolerances tol = {});
/// sigma_3(c, lambda) = lambda h_mu0(c); the symmetric ordering of p exp(i mu0 x).
Symbol momentum_character(const Frequency& mu0, Tolerances tol = {});

}  // namespace symbols

}  // namespace bohrwig
