#pragma once

// Cylindrical functions: finite linear combinations of characters, stored by
// their Fourier coefficients. Also the tensor product Cyl (x) Cyl-dual, stored
// as a finite map from the momentum variable to a cylindrical slice.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bohrwig/frequency.hpp"

namespace bohrwig {

using Terms = std::map<Frequency, Complex, FrequencyLess>;

/// Locates the stored label that `mu` snaps onto, or end(). Rational labels
/// need an exact hit; real labels take the nearest stored label within the
/// snapping relation.
template <class Map>
auto find_snapped(Map& map, const Frequency& mu, double freq_tol) -> decltype(map.begin());

class CylFunction {
 public:
  using Term = std::pair<Frequency, Complex>;

  explicit CylFunction(FrequencyKind kind = FrequencyKind::rational, Tolerances tol = {})
      : kind_(kind), tol_(tol) {}
  CylFunction(FrequencyKind kind, std::span<const Term> terms, Tolerances tol = {});
  CylFunction(FrequencyKind kind, std::initializer_list<Term> terms, Tolerances tol = {})
      : CylFunction(kind, std::span<const Term>(terms.begin(), terms.size()), tol) {}

  FrequencyKind kind() const { return kind_; }
  const Tolerances& tolerances() const { return tol_; }
  const Terms& terms() const { return terms_; }
  Terms::const_iterator begin() const { return terms_.begin(); }
  Terms::const_iterator end() const { return terms_.end(); }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Fourier coefficient at mu (zero off the support).
  Complex coefficient(const Frequency& mu) const;
  /// Canonical stored label that mu snaps onto, or nullptr.
  const Frequency* find_label(const Frequency& mu) const;

  double norm_squared() const;
  double norm() const;
  double max_modulus() const;

  CylFunction with_tolerances(Tolerances tol) const;

  /// Structural equality: same kind, same labels, identical coefficients.
  friend bool operator==(const CylFunction& a, const CylFunction& b) {
    return a.kind_ == b.kind_ && a.terms_ == b.terms_;
  }

 private:
  friend class CylAccumulator;

  FrequencyKind kind_;
  Tolerances tol_;
  Terms terms_;
};

/// Collects terms with snapping and merging, then prunes negligible
/// coefficients on finish(). The first label inserted near a point is the one
/// that survives.
class CylAccumulator {
 public:
  explicit CylAccumulator(FrequencyKind kind, Tolerances tol = {}) : result_(kind, tol) {}

  void add(const Frequency& mu, Complex value);
  CylFunction finish() &&;

 private:
  CylFunction result_;
};

CylFunction make_character(const Frequency& mu, Complex a = 1.0, Tolerances tol = {});

CylFunction add(const CylFunction& a, const CylFunction& b);
CylFunction subtract(const CylFunction& a, const CylFunction& b);
CylFunction scale(const CylFunction& a, Complex z);
/// Pointwise product; on the Fourier side a convolution of supports.
CylFunction pointwise_multiply(const CylFunction& a, const CylFunction& b);
/// Complex conjugation: coefficient at mu becomes conj of the coefficient at -mu.
CylFunction conjugate(const CylFunction& a);

inline CylFunction operator+(const CylFunction& a, const CylFunction& b) { return add(a, b); }
inline CylFunction operator-(const CylFunction& a, const CylFunction& b) { return subtract(a, b); }
inline CylFunction operator*(Complex z, const CylFunction& a) { return scale(a, z); }
inline CylFunction operator*(const CylFunction& a, const CylFunction& b) {
  return pointwise_multiply(a, b);
}

Complex fourier_coefficient(const CylFunction& psi, const Frequency& mu);
/// Sum of conj(psi_mu) * phi_mu; conjugate-linear in the first slot.
Complex inner_product(const CylFunction& psi, const CylFunction& phi);
/// Restriction to the embedded real line: sum of psi_mu * exp(i mu x).
Complex eval_real(const CylFunction& psi, double x);

/// Multiplication by the character h_mu0 (a shift of every label by mu0).
CylFunction h_op(const Frequency& mu0, const CylFunction& psi);
/// Momentum: each coefficient multiplied by its label.
CylFunction p_op(const CylFunction& psi);
/// Frequency reflection mu -> -mu.
CylFunction parity(const CylFunction& psi);

/// Explicit Rational -> Real promotion (identity on real functions).
CylFunction promote_to_real(const CylFunction& psi);

/// Same support under the snapping relation and coefficients within coeff_tol
/// (absolute, scaled by max(1, largest modulus)).
bool approx_equal(const CylFunction& a, const CylFunction& b, double coeff_tol);

/// Number of stored label pairs closer than 2 * freq_tol * max(1, |mu|). Always
/// zero for rational functions.
std::size_t separation_violations(const CylFunction& psi);

// ---------------------------------------------------------------------------

class CylCylDualFunction {
 public:
  using Slices = std::map<Frequency, CylFunction, FrequencyLess>;

  struct Entry {
    Frequency mu;
    Frequency nu;
    Complex value;
  };

  explicit CylCylDualFunction(FrequencyKind kind = FrequencyKind::rational, Tolerances tol = {})
      : kind_(kind), tol_(tol) {}

  /// Builds from (mu, nu, value) entries meaning value * h_nu(c) at momentum mu.
  static CylCylDualFunction from_entries(FrequencyKind kind, std::span<const Entry> entries,
                                         Tolerances tol = {});
  /// phi (x) delta_mu.
  static CylCylDualFunction tensor(const CylFunction& phi, const Frequency& mu);

  FrequencyKind kind() const { return kind_; }
  const Tolerances& tolerances() const { return tol_; }
  const Slices& slices() const { return slices_; }
  bool empty() const { return slices_.empty(); }
  std::size_t entry_count() const;
  std::vector<Entry> entries() const;

  const CylFunction* slice(const Frequency& mu) const;
  /// Partial Fourier transform in the first variable, F^(nu, mu).
  Complex partial_fourier(const Frequency& nu, const Frequency& mu) const;
  /// F(x, mu) with x on the embedded real line.
  Complex eval(double x, const Frequency& mu) const;

  CylCylDualFunction conjugate() const;

  friend bool operator==(const CylCylDualFunction& a, const CylCylDualFunction& b) {
    return a.kind_ == b.kind_ && a.slices_ == b.slices_;
  }

 private:
  FrequencyKind kind_;
  Tolerances tol_;
  Slices slices_;
};

// ---------------------------------------------------------------------------

template <class Map>
auto find_snapped(Map& map, const Frequency& mu, double freq_tol) -> decltype(map.begin()) {
  if (mu.is_rational()) return map.find(mu);
  const double x = mu.to_double();
  const double w = snap_window(x, freq_tol);
  auto first = std::isinf(w) ? map.begin() : map.lower_bound(Frequency::real(x - w));
  auto last = std::isinf(w) ? map.end() : map.upper_bound(Frequency::real(x + w));
  auto best = map.end();
  double best_gap = 0.0;
  for (auto it = first; it != last; ++it) {
    if (!frequencies_match(it->first, mu, freq_tol)) continue;
    double gap = std::abs(it->first.to_double() - x);
    if (best == map.end() || gap < best_gap) {
      best = it;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace bohrwig
