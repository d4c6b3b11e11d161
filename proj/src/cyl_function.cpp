#include "bohrwig/cyl_function.hpp"

#include <algorithm>
#include <cmath>

namespace bohrwig {

// --- CylFunction ------------------------------------------------------------

CylFunction::CylFunction(FrequencyKind kind, std::span<const Term> terms, Tolerances tol)
    : kind_(kind), tol_(tol) {
  CylAccumulator acc(kind, tol);
  for (const auto& [mu, value] : terms) acc.add(mu, value);
  *this = std::move(acc).finish();
}

Complex CylFunction::coefficient(const Frequency& mu) const {
  if (mu.kind() != kind_) throw KindMismatch(kind_, mu.kind());
  auto it = find_snapped(terms_, mu, tol_.freq);
  return it == terms_.end() ? Complex{} : it->second;
}

const Frequency* CylFunction::find_label(const Frequency& mu) const {
  if (mu.kind() != kind_) return nullptr;
  auto it = find_snapped(terms_, mu, tol_.freq);
  return it == terms_.end() ? nullptr : &it->first;
}

double CylFunction::norm_squared() const {
  double s = 0.0;
  for (const auto& [mu, value] : terms_) s += std::norm(value);
  return s;
}

double CylFunction::norm() const { return std::sqrt(norm_squared()); }

double CylFunction::max_modulus() const {
  double m = 0.0;
  for (const auto& [mu, value] : terms_) m = std::max(m, std::abs(value));
  return m;
}

CylFunction CylFunction::with_tolerances(Tolerances tol) const {
  CylAccumulator acc(kind_, tol);
  for (const auto& [mu, value] : terms_) acc.add(mu, value);
  return std::move(acc).finish();
}

void CylAccumulator::add(const Frequency& mu, Complex value) {
  if (mu.kind() != result_.kind_) throw KindMismatch(result_.kind_, mu.kind());
  auto& terms = result_.terms_;
  auto it = find_snapped(terms, mu, result_.tol_.freq);
  if (it != terms.end()) {
    it->second += value;
  } else {
    terms.emplace(mu, value);
  }
}

CylFunction CylAccumulator::finish() && {
  auto& terms = result_.terms_;
  double threshold = result_.tol_.coeff * result_.max_modulus();
  std::erase_if(terms, [threshold](const auto& kv) {
    double m = std::abs(kv.second);
    return m == 0.0 || m < threshold;
  });
  return std::move(result_);
}

// --- algebra ----------------------------------------------------------------

CylFunction make_character(const Frequency& mu, Complex a, Tolerances tol) {
  CylAccumulator acc(mu.kind(), tol);
  acc.add(mu, a);
  return std::move(acc).finish();
}

CylFunction add(const CylFunction& a, const CylFunction& b) {
  require_same_kind(a.kind(), b.kind());
  CylAccumulator acc(a.kind(), a.tolerances());
  for (const auto& [mu, v] : a) acc.add(mu, v);
  for (const auto& [mu, v] : b) acc.add(mu, v);
  return std::move(acc).finish();
}

CylFunction subtract(const CylFunction& a, const CylFunction& b) { return add(a, scale(b, -1.0)); }

CylFunction scale(const CylFunction& a, Complex z) {
  CylAccumulator acc(a.kind(), a.tolerances());
  for (const auto& [mu, v] : a) acc.add(mu, z * v);
  return std::move(acc).finish();
}

CylFunction pointwise_multiply(const CylFunction& a, const CylFunction& b) {
  require_same_kind(a.kind(), b.kind());
  CylAccumulator acc(a.kind(), a.tolerances());
  for (const auto& [mu, u] : a) {
    for (const auto& [nu, v] : b) acc.add(mu + nu, u * v);
  }
  return std::move(acc).finish();
}

CylFunction conjugate(const CylFunction& a) {
  CylAccumulator acc(a.kind(), a.tolerances());
  for (const auto& [mu, v] : a) acc.add(-mu, std::conj(v));
  return std::move(acc).finish();
}

Complex fourier_coefficient(const CylFunction& psi, const Frequency& mu) {
  return psi.coefficient(mu);
}

Complex inner_product(const CylFunction& psi, const CylFunction& phi) {
  require_same_kind(psi.kind(), phi.kind());
  Complex s{};
  for (const auto& [mu, v] : psi) s += std::conj(v) * phi.coefficient(mu);
  return s;
}

Complex eval_real(const CylFunction& psi, double x) {
  Complex s{};
  for (const auto& [mu, v] : psi) s += v * std::polar(1.0, mu.to_double() * x);
  return s;
}

CylFunction h_op(const Frequency& mu0, const CylFunction& psi) {
  require_same_kind(psi.kind(), mu0.kind());
  CylAccumulator acc(psi.kind(), psi.tolerances());
  for (const auto& [mu, v] : psi) acc.add(mu + mu0, v);
  return std::move(acc).finish();
}

CylFunction p_op(const CylFunction& psi) {
  CylAccumulator acc(psi.kind(), psi.tolerances());
  for (const auto& [mu, v] : psi) {
    if (mu.is_zero()) continue;
    acc.add(mu, mu.to_double() * v);
  }
  return std::move(acc).finish();
}

CylFunction parity(const CylFunction& psi) {
  CylAccumulator acc(psi.kind(), psi.tolerances());
  for (const auto& [mu, v] : psi) acc.add(-mu, v);
  return std::move(acc).finish();
}

CylFunction promote_to_real(const CylFunction& psi) {
  if (psi.kind() == FrequencyKind::real) return psi;
  CylAccumulator acc(FrequencyKind::real, psi.tolerances());
  for (const auto& [mu, v] : psi) acc.add(mu.promoted(), v);
  return std::move(acc).finish();
}

bool approx_equal(const CylFunction& a, const CylFunction& b, double coeff_tol) {
  if (a.kind() != b.kind()) return false;
  double scale = std::max({1.0, a.max_modulus(), b.max_modulus()});
  double tol = coeff_tol * scale;
  // Every label of either side must either carry a negligible coefficient or
  // match a label on the other side with a close coefficient.
  auto covered = [tol](const CylFunction& x, const CylFunction& y) {
    for (const auto& [mu, v] : x) {
      const Frequency* other = y.find_label(mu);
      Complex w = other ? y.coefficient(*other) : Complex{};
      if (std::abs(v - w) > tol) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

std::size_t separation_violations(const CylFunction& psi) {
  if (psi.kind() == FrequencyKind::rational) return 0;
  const double tol = psi.tolerances().freq;
  std::size_t count = 0;
  for (auto it = psi.begin(); it != psi.end(); ++it) {
    for (auto jt = std::next(it); jt != psi.end(); ++jt) {
      double x = it->first.to_double();
      double y = jt->first.to_double();
      double scale = std::max({1.0, std::abs(x), std::abs(y)});
      if (std::abs(x - y) <= 2.0 * tol * scale) ++count;
    }
  }
  return count;
}

// --- CylCylDualFunction -----------------------------------------------------

CylCylDualFunction CylCylDualFunction::from_entries(FrequencyKind kind,
                                                    std::span<const Entry> entries,
                                                    Tolerances tol) {
  // Group per snapped outer label first so that slice accumulation sees each
  // entry exactly once, in insertion order.
  std::map<Frequency, std::vector<CylFunction::Term>, FrequencyLess> grouped;
  for (const auto& e : entries) {
    if (e.mu.kind() != kind) throw KindMismatch(kind, e.mu.kind());
    auto it = find_snapped(grouped, e.mu, tol.freq);
    if (it == grouped.end()) it = grouped.emplace(e.mu, std::vector<CylFunction::Term>{}).first;
    it->second.emplace_back(e.nu, e.value);
  }
  CylCylDualFunction out(kind, tol);
  for (auto& [mu, terms] : grouped) {
    CylFunction slice(kind, terms, tol);
    if (!slice.empty()) out.slices_.emplace(mu, std::move(slice));
  }
  return out;
}

CylCylDualFunction CylCylDualFunction::tensor(const CylFunction& phi, const Frequency& mu) {
  require_same_kind(phi.kind(), mu.kind());
  CylCylDualFunction out(phi.kind(), phi.tolerances());
  if (!phi.empty()) out.slices_.emplace(mu, phi);
  return out;
}

std::size_t CylCylDualFunction::entry_count() const {
  std::size_t n = 0;
  for (const auto& [mu, slice] : slices_) n += slice.size();
  return n;
}

std::vector<CylCylDualFunction::Entry> CylCylDualFunction::entries() const {
  std::vector<Entry> out;
  out.reserve(entry_count());
  for (const auto& [mu, slice] : slices_) {
    for (const auto& [nu, v] : slice) out.push_back({mu, nu, v});
  }
  return out;
}

const CylFunction* CylCylDualFunction::slice(const Frequency& mu) const {
  if (mu.kind() != kind_) throw KindMismatch(kind_, mu.kind());
  auto it = find_snapped(slices_, mu, tol_.freq);
  return it == slices_.end() ? nullptr : &it->second;
}

Complex CylCylDualFunction::partial_fourier(const Frequency& nu, const Frequency& mu) const {
  const CylFunction* s = slice(mu);
  return s ? s->coefficient(nu) : Complex{};
}

Complex CylCylDualFunction::eval(double x, const Frequency& mu) const {
  const CylFunction* s = slice(mu);
  return s ? eval_real(*s, x) : Complex{};
}

CylCylDualFunction CylCylDualFunction::conjugate() const {
  CylCylDualFunction out(kind_, tol_);
  for (const auto& [mu, slice] : slices_) out.slices_.emplace(mu, bohrwig::conjugate(slice));
  return out;
}

}  // namespace bohrwig
