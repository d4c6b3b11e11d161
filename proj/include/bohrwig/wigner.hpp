#pragma once

// Wigner transform on Cyl x Cyl and on pairs of distributions.
//
// For cylindrical Psi, Psi' the transform is
//
//     W(Psi, Psi')(c, mu) = sum_nu conj(Psi^_{mu - nu/2}) Psi'^_{mu + nu/2} h_nu(c),
//
// a finite element of Cyl (x) Cyl-dual. WignerData keeps it on the Fourier side:
// entry(mu, nu) is the coefficient of h_nu in the mu-slice.

#include <map>
#include <vector>

#include "bohrwig/cyl_function.hpp"
#include "bohrwig/gaussdual.hpp"

namespace bohrwig {

class WignerData {
 public:
  using Entry = CylCylDualFunction::Entry;

  FrequencyKind kind() const { return data_.kind(); }
  /// True when built from a pair (Psi, Psi).
  bool is_diagonal() const { return diagonal_; }

  Complex entry(const Frequency& mu, const Frequency& nu) const {
    return data_.partial_fourier(nu, mu);
  }
  std::vector<Entry> entries() const { return data_.entries(); }
  std::size_t size() const { return data_.entry_count(); }
  bool empty() const { return data_.empty(); }

  /// W(c, mu) as an element of Cyl (x) Cyl-dual.
  const CylCylDualFunction& realization() const { return data_; }

  /// Every nonzero entry (mu, nu) has mu - nu/2 in supp(psi) and mu + nu/2 in
  /// supp(psi2).
  bool supports_consistent_with(const CylFunction& psi, const CylFunction& psi2) const;

 private:
  friend WignerData wigner(const CylFunction&, const CylFunction&);
  friend WignerData hermitian_conjugate(const WignerData&);

  WignerData(CylCylDualFunction data, bool diagonal) : data_(std::move(data)), diagonal_(diagonal) {}

  CylCylDualFunction data_;
  bool diagonal_ = false;
};

/// Sesquilinear (conjugate-linear in psi). Built by iterating over support
/// pairs (a, b) with mu = (a + b)/2 and nu = b - a, so midpoints are exact for
/// rational labels.
WignerData wigner(const CylFunction& psi, const CylFunction& psi2);

/// mu -> int W(Psi, Psi)(c, mu) dc = |Psi^_mu|^2. Requires diagonal data.
std::map<Frequency, double, FrequencyLess> marginal_momentum(const WignerData& w);

/// sum_mu W(x, mu); equals |Psi(x)|^2 for diagonal data.
Complex marginal_position(const WignerData& w, double x);

/// sum conj(W1) W2 over (c, mu) computed on the Fourier side.
Complex overlap(const WignerData& w1, const WignerData& w2);

/// Pointwise complex conjugate of the realization: entry (mu, nu) becomes
/// conj(entry(mu, -nu)). Maps W(Psi, Psi') to W(Psi', Psi).
WignerData hermitian_conjugate(const WignerData& w);

/// W(Gamma, Gamma') for distributions, evaluated lazily:
///   (nu, mu) -> conj(Gamma^_{mu - nu/2}) Gamma'^_{mu + nu/2}.
class DistributionalWigner {
 public:
  DistributionalWigner(DualElement gamma, DualElement gamma2)
      : gamma_(std::move(gamma)), gamma2_(std::move(gamma2)) {}

  Complex operator()(const Frequency& nu, const Frequency& mu) const;

  const DualElement& first() const { return gamma_; }
  const DualElement& second() const { return gamma2_; }

 private:
  DualElement gamma_;
  DualElement gamma2_;
};

DistributionalWigner wigner_dual(const DualElement& gamma, const DualElement& gamma2);

/// W(Gamma, Gamma')[F] = sum conj(Gamma^_{mu + nu/2}) Gamma'^_{mu - nu/2} F^(nu, mu),
/// summed over the finite support of F^.
Complex pair(const DistributionalWigner& dw, const CylCylDualFunction& f);

}  // namespace bohrwig
