#include "bohrwig/wigner.hpp"

#include <stdexcept>

namespace bohrwig {

WignerData wigner(const CylFunction& psi, const CylFunction& psi2) {
  require_same_kind(psi.kind(), psi2.kind());
  std::vector<CylCylDualFunction::Entry> entries;
  entries.reserve(psi.size() * psi2.size());
  for (const auto& [a, u] : psi) {
    for (const auto& [b, v] : psi2) {
      entries.push_back({(a + b).half(), b - a, std::conj(u) * v});
    }
  }
  auto data = CylCylDualFunction::from_entries(psi.kind(), entries, psi.tolerances());
  return WignerData(std::move(data), psi == psi2);
}

bool WignerData::supports_consistent_with(const CylFunction& psi, const CylFunction& psi2) const {
  for (const auto& e : data_.entries()) {
    Frequency half_nu = e.nu.half();
    if (!psi.find_label(e.mu - half_nu) || !psi2.find_label(e.mu + half_nu)) return false;
  }
  return true;
}

std::map<Frequency, double, FrequencyLess> marginal_momentum(const WignerData& w) {
  if (!w.is_diagonal())
    throw std::invalid_argument("momentum marginal needs Wigner data of a pair (Psi, Psi)");
  std::map<Frequency, double, FrequencyLess> out;
  const Frequency zero = w.kind() == FrequencyKind::rational ? Frequency() : Frequency::real(0.0);
  for (const auto& [mu, slice] : w.realization().slices()) {
    Complex v = slice.coefficient(zero);
    if (v != Complex{}) out.emplace(mu, v.real());
  }
  return out;
}

Complex marginal_position(const WignerData& w, double x) {
  Complex s{};
  for (const auto& [mu, slice] : w.realization().slices()) s += eval_real(slice, x);
  return s;
}

Complex overlap(const WignerData& w1, const WignerData& w2) {
  require_same_kind(w1.kind(), w2.kind());
  Complex s{};
  for (const auto& e : w1.entries()) s += std::conj(e.value) * w2.entry(e.mu, e.nu);
  return s;
}

WignerData hermitian_conjugate(const WignerData& w) {
  std::vector<CylCylDualFunction::Entry> entries;
  for (const auto& e : w.entries()) entries.push_back({e.mu, -e.nu, std::conj(e.value)});
  auto data = CylCylDualFunction::from_entries(w.kind(), entries, w.realization().tolerances());
  return WignerData(std::move(data), w.is_diagonal());
}

Complex DistributionalWigner::operator()(const Frequency& nu, const Frequency& mu) const {
  Frequency half_nu = nu.half();
  return std::conj(gamma_.coefficient(mu - half_nu)) * gamma2_.coefficient(mu + half_nu);
}

DistributionalWigner wigner_dual(const DualElement& gamma, const DualElement& gamma2) {
  return DistributionalWigner(gamma, gamma2);
}

Complex pair(const DistributionalWigner& dw, const CylCylDualFunction& f) {
  Complex s{};
  for (const auto& [mu, slice] : f.slices()) {
    for (const auto& [nu, value] : slice) {
      Frequency half_nu = nu.half();
      s += std::conj(dw.first().coefficient(mu + half_nu)) * dw.second().coefficient(mu - half_nu) *
           value;
    }
  }
  return s;
}

}  // namespace bohrwig
