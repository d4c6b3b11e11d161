#include "bohrwig/weylquant.hpp"

#include <cmath>
#include <deque>
#include <map>

#include <fmt/format.h>

#include "bohrwig/wigner.hpp"

namespace bohrwig {

namespace {

// Upper limit on the size of a single support enumeration. Anything larger is
// treated as a non-finite support.
constexpr std::size_t kMaxSupport = 1u << 20;

void check_support(const Symbol& sigma, const std::vector<Frequency>& support) {
  if (support.size() > kMaxSupport)
    throw SymbolContractError(
        fmt::format("symbol '{}' returned a support of {} labels", sigma.name(), support.size()));
  for (const auto& f : support) {
    if (f.kind() != sigma.kind()) throw KindMismatch(sigma.kind(), f.kind());
  }
}

}  // namespace

Symbol::Symbol(std::string name, FrequencyKind kind, HatFn hat, SupportFn row_support,
               SupportFn col_support, std::optional<SchurConstants> schur, Tolerances tol)
    : name_(std::move(name)),
      kind_(kind),
      hat_(std::move(hat)),
      row_support_(std::move(row_support)),
      col_support_(std::move(col_support)),
      schur_(schur),
      tol_(tol) {}

std::vector<Frequency> Symbol::row_support(const Frequency& alpha) const {
  if (alpha.kind() != kind_) throw KindMismatch(kind_, alpha.kind());
  auto out = row_support_(alpha);
  check_support(*this, out);
  return out;
}

std::vector<Frequency> Symbol::col_support(const Frequency& beta) const {
  if (beta.kind() != kind_) throw KindMismatch(kind_, beta.kind());
  auto out = col_support_(beta);
  check_support(*this, out);
  return out;
}

Complex matrix_element(const Symbol& sigma, const Frequency& alpha, const Frequency& beta) {
  require_same_kind(sigma.kind(), alpha.kind());
  require_same_kind(sigma.kind(), beta.kind());
  return sigma.hat(alpha - beta, (alpha + beta).half());
}

CylFunction quantize_apply(const Symbol& sigma, const CylFunction& psi) {
  require_same_kind(sigma.kind(), psi.kind());
  CylAccumulator acc(psi.kind(), psi.tolerances());
  for (const auto& [beta, v] : psi) {
    for (const auto& alpha : sigma.col_support(beta)) {
      acc.add(alpha, matrix_element(sigma, alpha, beta) * v);
    }
  }
  return std::move(acc).finish();
}

Symbol adjoint(const Symbol& sigma) {
  std::optional<SchurConstants> schur;
  if (sigma.schur()) schur = SchurConstants{sigma.schur()->col_sum, sigma.schur()->row_sum};
  return Symbol(
      "adjoint(" + sigma.name() + ")", sigma.kind(),
      [sigma](const Frequency& nu, const Frequency& mu) { return std::conj(sigma.hat(-nu, mu)); },
      [sigma](const Frequency& alpha) { return sigma.col_support(alpha); },
      [sigma](const Frequency& beta) { return sigma.row_support(beta); }, schur,
      sigma.tolerances());
}

double schur_norm_bound(const Symbol& sigma) {
  if (!sigma.schur())
    throw std::invalid_argument(fmt::format("symbol '{}' declares no Schur constants", sigma.name()));
  return std::sqrt(sigma.schur()->row_sum * sigma.schur()->col_sum);
}

SchurConstants scan_schur_constants(const Symbol& sigma, std::span<const Frequency> labels) {
  SchurConstants out;
  for (const auto& x : labels) {
    double row = 0.0;
    for (const auto& beta : sigma.row_support(x)) row += std::abs(matrix_element(sigma, x, beta));
    double col = 0.0;
    for (const auto& alpha : sigma.col_support(x)) col += std::abs(matrix_element(sigma, alpha, x));
    out.row_sum = std::max(out.row_sum, row);
    out.col_sum = std::max(out.col_sum, col);
  }
  return out;
}

// --- finite sections --------------------------------------------------------

namespace {

class LabelIndex {
 public:
  explicit LabelIndex(double freq_tol) : tol_(freq_tol) {}

  // Returns (index, inserted).
  std::pair<std::size_t, bool> insert(const Frequency& f) {
    auto it = find_snapped(index_, f, tol_);
    if (it != index_.end()) return {it->second, false};
    index_.emplace(f, labels_.size());
    labels_.push_back(f);
    return {labels_.size() - 1, true};
  }

  std::optional<std::size_t> find(const Frequency& f) const {
    auto it = find_snapped(index_, f, tol_);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Frequency>& labels() const { return labels_; }

 private:
  double tol_;
  std::map<Frequency, std::size_t, FrequencyLess> index_;
  std::vector<Frequency> labels_;
};

LabelIndex build_section(const Symbol& sigma, std::span<const Frequency> seeds, int radius) {
  LabelIndex index(sigma.tolerances().freq);
  std::deque<std::pair<Frequency, int>> queue;
  for (const auto& s : seeds) {
    if (s.kind() != sigma.kind()) throw KindMismatch(sigma.kind(), s.kind());
    if (index.insert(s).second) queue.emplace_back(s, 0);
  }
  while (!queue.empty()) {
    auto [f, depth] = queue.front();
    queue.pop_front();
    if (depth >= radius) continue;
    for (const auto& g : sigma.row_support(f)) {
      if (index.insert(g).second) queue.emplace_back(g, depth + 1);
    }
    for (const auto& g : sigma.col_support(f)) {
      if (index.insert(g).second) queue.emplace_back(g, depth + 1);
    }
  }
  return index;
}

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

}  // namespace

std::vector<Frequency> reachable_labels(const Symbol& sigma, std::span<const Frequency> seeds,
                                        int radius) {
  return build_section(sigma, seeds, radius).labels();
}

SectionNorm finite_section_norm(const Symbol& sigma, std::span<const Frequency> seeds, int radius,
                                const PowerIterationOptions& opts) {
  LabelIndex index = build_section(sigma, seeds, radius);
  const auto& labels = index.labels();
  const std::size_t n = labels.size();

  std::vector<SparseEntry> entries;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& alpha : sigma.col_support(labels[j])) {
      auto i = index.find(alpha);
      if (!i) continue;
      Complex m = matrix_element(sigma, labels[*i], labels[j]);
      if (m != Complex{}) entries.push_back({*i, j, m});
    }
  }

  SectionNorm out;
  out.dimension = n;
  if (entries.empty()) return out;

  // Power iteration on M^* M. The start vector is deterministic and has no
  // special alignment with any sparsity pattern.
  std::vector<Complex> v(n), u(n), w(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = 1.0 + 0.25 * std::sin(1.0 + 3.0 * static_cast<double>(k));
  auto normalize = [](std::vector<Complex>& x) {
    double s = 0.0;
    for (auto& z : x) s += std::norm(z);
    s = std::sqrt(s);
    for (auto& z : x) z /= s;
    return s;
  };
  normalize(v);

  double lambda = 0.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    std::fill(u.begin(), u.end(), Complex{});
    for (const auto& e : entries) u[e.row] += e.value * v[e.col];
    double next = 0.0;
    for (const auto& z : u) next += std::norm(z);
    std::fill(w.begin(), w.end(), Complex{});
    for (const auto& e : entries) w[e.col] += std::conj(e.value) * u[e.row];
    out.iterations = it;
    if (next == 0.0) {
      out.value = 0.0;
      return out;
    }
    bool settled = std::abs(next - lambda) <= opts.tolerance * next;
    lambda = next;
    if (settled) {
      out.value = std::sqrt(lambda);
      return out;
    }
    normalize(w);
    v.swap(w);
  }
  throw PowerIterationError(fmt::format("power iteration for '{}' exceeded {} iterations (last {:.12g})",
                                        sigma.name(), opts.max_iterations, std::sqrt(lambda)),
                            std::sqrt(lambda));
}

// --- finite symbols ---------------------------------------------------------

bool FiniteSymbol::is_real() const {
  for (const auto& [mu, slice] : sigma_.slices()) {
    if (!approx_equal(slice, conjugate(slice), 1e-14)) return false;
  }
  return true;
}

Symbol FiniteSymbol::as_symbol(std::string name) const {
  // Precompute the (alpha, beta) pattern: entry (mu, nu) sits at
  // alpha = mu + nu/2, beta = mu - nu/2.
  struct Pattern {
    std::map<Frequency, std::vector<Frequency>, FrequencyLess> by_alpha;
    std::map<Frequency, std::vector<Frequency>, FrequencyLess> by_beta;
    double tol;
  };
  auto pattern = std::make_shared<Pattern>();
  pattern->tol = sigma_.tolerances().freq;
  SchurConstants schur;
  std::map<Frequency, double, FrequencyLess> row_sums, col_sums;
  for (const auto& e : sigma_.entries()) {
    Frequency half_nu = e.nu.half();
    Frequency alpha = e.mu + half_nu;
    Frequency beta = e.mu - half_nu;
    auto insert = [&](auto& map, const Frequency& key, const Frequency& value) {
      auto it = find_snapped(map, key, pattern->tol);
      if (it == map.end()) it = map.emplace(key, std::vector<Frequency>{}).first;
      it->second.push_back(value);
    };
    insert(pattern->by_alpha, alpha, beta);
    insert(pattern->by_beta, beta, alpha);
    row_sums[alpha] += std::abs(e.value);
    col_sums[beta] += std::abs(e.value);
  }
  for (const auto& [k, s] : row_sums) schur.row_sum = std::max(schur.row_sum, s);
  for (const auto& [k, s] : col_sums) schur.col_sum = std::max(schur.col_sum, s);

  auto lookup = [pattern](const std::map<Frequency, std::vector<Frequency>, FrequencyLess>& map,
                          const Frequency& key) {
    auto it = find_snapped(map, key, pattern->tol);
    return it == map.end() ? std::vector<Frequency>{} : it->second;
  };
  CylCylDualFunction sigma = sigma_;
  return Symbol(
      std::move(name), sigma_.kind(),
      [sigma](const Frequency& nu, const Frequency& mu) { return sigma.partial_fourier(nu, mu); },
      [pattern, lookup](const Frequency& alpha) { return lookup(pattern->by_alpha, alpha); },
      [pattern, lookup](const Frequency& beta) { return lookup(pattern->by_beta, beta); }, schur,
      sigma_.tolerances());
}

Complex form_via_wigner(const FiniteSymbol& sigma, const CylFunction& psi1, const CylFunction& psi2) {
  require_same_kind(sigma.function().kind(), psi1.kind());
  // sigma(W) = sum_{mu, nu} W^(nu, mu) * int sigma(c, mu) h_nu(c) dc
  //          = sum_{mu, nu} entry(mu, nu) * sigma^(-nu, mu).
  Complex s{};
  for (const auto& e : wigner(psi1, psi2).entries()) s += e.value * sigma.hat(-e.nu, e.mu);
  return s;
}

// --- built-in symbols ---------------------------------------------------------

namespace symbols {

Symbol character(const Frequency& mu0, Tolerances tol) {
  const FrequencyKind kind = mu0.kind();
  return Symbol(
      fmt::format("sigma1:{}", mu0.to_string()), kind,
      [mu0, tol](const Frequency& nu, const Frequency&) {
        return frequencies_match(nu, mu0, tol.freq) ? Complex(1.0) : Complex{};
      },
      [mu0](const Frequency& alpha) { return std::vector<Frequency>{alpha - mu0}; },
      [mu0](const Frequency& beta) { return std::vector<Frequency>{beta + mu0}; },
      SchurConstants{1.0, 1.0}, tol);
}

Symbol momentum(FrequencyKind kind, Tolerances tol) {
  const Frequency zero = kind == FrequencyKind::rational ? Frequency() : Frequency::real(0.0);
  auto diagonal = [](const Frequency& x) {
    return x.is_zero() ? std::vector<Frequency>{} : std::vector<Frequency>{x};
  };
  return Symbol(
      "sigma2", kind,
      [zero, tol](const Frequency& nu, const Frequency& mu) {
        return frequencies_match(nu, zero, tol.freq) ? Complex(mu.to_double()) : Complex{};
      },
      diagonal, diagonal, std::nullopt, tol);
}

Symbol momentum_character(const Frequency& mu0, Tolerances tol) {
  const FrequencyKind kind = mu0.kind();
  return Symbol(
      fmt::format("sigma3:{}", mu0.to_string()), kind,
      [mu0, tol](const Frequency& nu, const Frequency& mu) {
        return frequencies_match(nu, mu0, tol.freq) ? Complex(mu.to_double()) : Complex{};
      },
      [mu0](const Frequency& alpha) {
        Frequency beta = alpha - mu0;
        return (alpha + beta).is_zero() ? std::vector<Frequency>{} : std::vector<Frequency>{beta};
      },
      [mu0](const Frequency& beta) {
        Frequency alpha = beta + mu0;
        return (alpha + beta).is_zero() ? std::vector<Frequency>{} : std::vector<Frequency>{alpha};
      },
      std::nullopt, tol);
}

}  // namespace symbols

}  // namespace bohrwig
