#include "bohrwig/verify.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bohrwig/gaussdual.hpp"
#include "bohrwig/sampling.hpp"
#include "bohrwig/weylquant.hpp"
#include "bohrwig/wigner.hpp"

namespace bohrwig {

namespace {

class Recorder {
 public:
  explicit Recorder(std::string name) { report_.suite = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++report_.cases;
    if (!ok) report_.failures.push_back(what);
  }

  SuiteReport finish() && { return std::move(report_); }

 private:
  SuiteReport report_;
};

bool close(Complex a, Complex b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Same labels exactly; coefficients equal up to rounding of doubles.
bool same_up_to_rounding(const CylFunction& a, const CylFunction& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [mu, v] : a) {
    if (!b.find_label(mu)) return false;
  }
  return approx_equal(a, b, 4.0 * std::numeric_limits<double>::epsilon());
}

Rng seeded(const VerifyConfig& cfg, std::uint64_t salt) { return Rng(cfg.seed * 1000003u + salt); }

}  // namespace

SuiteReport verify_freqcore(const VerifyConfig& cfg) {
  Recorder r("freqcore");
  Rng rng = seeded(cfg, 1);
  for (int i = 0; i < 50; ++i) {
    CylFunction psi = random_cyl(rng, FrequencyKind::rational, 4);
    Frequency mu0 = random_rational(rng);
    r.check(h_op(-mu0, h_op(mu0, psi)) == psi, fmt::format("shift round trip by {}", mu0.to_string()));
    CylFunction phi = random_cyl(rng, FrequencyKind::rational, 4);
    r.check(close(inner_product(psi, phi), std::conj(inner_product(phi, psi)), 1e-14),
            "inner product conjugate symmetry");
  }
  // Snapping keeps surviving real labels more than 2 eps_freq apart.
  for (int i = 0; i < 50; ++i) {
    CylFunction psi = random_cyl(rng, FrequencyKind::real, 6, cfg.tol);
    std::size_t bad = separation_violations(psi);
    r.check(bad == 0, fmt::format("{} label pairs closer than 2 eps_freq after snapping", bad));
  }
  return std::move(r).finish();
}

SuiteReport verify_wigner(const VerifyConfig& cfg) {
  Recorder r("wigner");
  Rng rng = seeded(cfg, 2);
  for (int i = 0; i < 50; ++i) {
    CylFunction p1 = random_cyl(rng, FrequencyKind::rational);
    CylFunction p2 = random_cyl(rng, FrequencyKind::rational);
    CylFunction f1 = random_cyl(rng, FrequencyKind::rational);
    CylFunction f2 = random_cyl(rng, FrequencyKind::rational);
    Complex lhs = overlap(wigner(p1, p2), wigner(f1, f2));
    Complex rhs = std::conj(inner_product(p1, f1)) * inner_product(p2, f2);
    r.check(close(lhs, rhs, 1e-12), "overlap identity");

    auto marg = marginal_momentum(wigner(p1, p1));
    bool exact = marg.size() == p1.size();
    for (const auto& [mu, v] : p1) {
      auto it = marg.find(mu);
      exact = exact && it != marg.end() && it->second == std::norm(v);
    }
    r.check(exact, "momentum marginal");
    r.check(hermitian_conjugate(wigner(p1, p2)).realization() == wigner(p2, p1).realization(),
            "hermitian conjugate swaps arguments");
  }
  for (int i = 0; i < 20; ++i) {
    Frequency mu0 = random_rational(rng);
    Complex a = random_complex(rng);
    if (a == Complex{}) continue;
    WignerData w = wigner(make_character(mu0, a), make_character(mu0, a));
    bool ok = w.size() == 1 && w.entries()[0].mu == mu0 && w.entries()[0].nu.is_zero() &&
              w.entries()[0].value == Complex(std::norm(a));
    r.check(ok, fmt::format("character Wigner at {}", mu0.to_string()));
  }
  return std::move(r).finish();
}

SuiteReport verify_gaussdual(const VerifyConfig& cfg) {
  Recorder r("gaussdual");
  Rng rng = seeded(cfg, 3);
  for (int i = 0; i < 30; ++i) {
    DualElement g = random_gaussian(rng);
    CylFunction xi = random_cyl(rng, FrequencyKind::rational, 3);
    Frequency mu0 = random_rational(rng);
    try {
      double v = gaussian_wigner_pair_positive(g, xi, mu0);
      r.check(v > 0.0, fmt::format("Gaussian Wigner pairing {} not positive", v));
    } catch (const std::exception& e) {
      r.check(false, e.what());
    }
  }
  for (int i = 0; i < 10; ++i) {
    DualElement g = random_gaussian(rng);
    CylFunction phi = random_cyl(rng, FrequencyKind::rational, 3);
    try {
      QuadratureOptions opts;
      opts.agreement = cfg.quadrature_agreement;
      Complex quad = reduction_action(g, phi, opts).value;
      Complex sum = dual_action(g, phi);
      r.check(std::abs(quad - sum) <= 1e-8 * std::max(std::abs(sum), 1e-300),
              fmt::format("reduction oracle {} vs {}", fmt::format("{}", quad.real()), sum.real()));
    } catch (const std::exception& e) {
      r.check(false, e.what());
    }
  }
  for (int i = 0; i < 20; ++i) {
    DualElement g1 = random_gaussian(rng);
    DualElement g2 = random_gaussian(rng);
    CylFunction p1 = random_cyl(rng, FrequencyKind::rational, 3);
    CylFunction p2 = random_cyl(rng, FrequencyKind::rational, 3);
    Complex lhs = pair(wigner_dual(g1, g2), wigner(p1, p2).realization().conjugate());
    Complex rhs = std::conj(dual_action(g1, conjugate(p1))) * dual_action(g2, conjugate(p2));
    r.check(close(lhs, rhs, 1e-12), "reproducing identity");
  }
  return std::move(r).finish();
}

SuiteReport verify_weylquant(const VerifyConfig& cfg) {
  Recorder r("weylquant");
  Rng rng = seeded(cfg, 4);
  for (int i = 0; i < 30; ++i) {
    FiniteSymbol fs(random_dual_function(rng, FrequencyKind::rational));
    Symbol s = fs.as_symbol();
    CylFunction p1 = random_cyl(rng, FrequencyKind::rational);
    CylFunction p2 = random_cyl(rng, FrequencyKind::rational);
    Complex via_apply = inner_product(p1, quantize_apply(s, p2));
    Complex via_wigner = form_via_wigner(fs, p1, p2);
    Complex via_matrix{};
    for (const auto& [a, u] : p1)
      for (const auto& [b, v] : p2) via_matrix += std::conj(u) * matrix_element(s, a, b) * v;
    r.check(close(via_apply, via_wigner, 1e-12) && close(via_apply, via_matrix, 1e-12),
            "consistency triangle");
    Complex adj = inner_product(quantize_apply(adjoint(s), p1), p2);
    r.check(close(via_apply, adj, 1e-12), "adjoint identity");
  }
  for (int i = 0; i < 30; ++i) {
    Frequency mu0 = random_rational(rng);
    Frequency beta = random_rational(rng);
    CylFunction h = make_character(beta);
    CylFunction lhs = quantize_apply(symbols::momentum_character(mu0), h);
    CylFunction rhs = Complex(0.5) * (h_op(mu0, p_op(h)) + p_op(h_op(mu0, h)));
    r.check(same_up_to_rounding(lhs, rhs), "symmetric ordering");
  }
  for (int i = 0; i < 20; ++i) {
    FiniteSymbol fs = random_real_symbol(rng, FrequencyKind::rational);
    Symbol s = fs.as_symbol();
    Frequency a = random_rational(rng);
    for (const auto& b : s.row_support(a)) {
      r.check(close(matrix_element(s, a, b), std::conj(matrix_element(s, b, a)), 1e-14),
              "real symbol gives a hermitean matrix");
    }
  }
  {
    Symbol e = symbols::holonomy(cfg.scheme, cfg.tol);
    std::vector<Frequency> seeds{Frequency::real(-10.0)};
    for (int radius = 1; radius <= 3; ++radius) {
      double v = finite_section_norm(e, seeds, radius).value;
      r.check(v <= schur_norm_bound(e) + 1e-8, fmt::format("section norm {} above Schur bound", v));
    }
  }
  return std::move(r).finish();
}

SuiteReport verify_holonomy(const VerifyConfig& cfg) {
  Recorder r("holonomy");
  Rng rng = seeded(cfg, 5);
  const double C = cfg.scheme.area_constant;
  std::uniform_real_distribution<double> ub(-30.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    double beta = ub(rng);
    SolutionSet s = solve_S(cfg.scheme, beta);
    bool ok = s.size() >= 1 && s.size() <= 3;
    for (const auto& sol : s.solutions) {
      ok = ok && sol.residual <= 1e-10 * C && sol.alpha > beta && sol.alpha != -beta;
    }
    r.check(ok, fmt::format("solution set at beta = {}", beta));
    std::vector<double> mirrored;
    for (const auto& sol : solve_S(cfg.scheme, -beta).solutions) mirrored.push_back(-sol.alpha);
    std::sort(mirrored.begin(), mirrored.end());
    auto adj = solve_S_adjoint(cfg.scheme, beta).alphas();
    bool same = adj.size() == mirrored.size();
    for (std::size_t k = 0; same && k < adj.size(); ++k)
      same = std::abs(adj[k] - mirrored[k]) <= 1e-9 * std::max(1.0, std::abs(adj[k]));
    r.check(same, fmt::format("adjoint parity at {}", beta));
  }
  const double bc = critical_beta(cfg.scheme);
  r.check(solve_S(cfg.scheme, bc - 1e-3).size() == 3, "three solutions below the critical value");
  r.check(solve_S(cfg.scheme, bc + 1e-3).size() == 1, "one solution above the critical value");

  for (int i = 0; i < 30; ++i) {
    CylFunction h = make_character(random_real(rng, 20.0), 1.0, cfg.tol);
    CylFunction s1 = parity(sin_op(cfg.scheme, h)) + sin_op(cfg.scheme, parity(h));
    CylFunction c1 = parity(cos_op(cfg.scheme, h)) - cos_op(cfg.scheme, parity(h));
    r.check(s1.max_modulus() <= 1e-9, "sin anticommutes with parity");
    r.check(c1.max_modulus() <= 1e-9, "cos commutes with parity");
  }
  std::vector<double> Ks = cfg.K ? std::vector<double>{*cfg.K} : std::vector<double>{0.5, 1.0, 2.0};
  for (double K : Ks) {
    for (int i = 0; i < 30; ++i) {
      CylFunction psi = random_cyl(rng, FrequencyKind::real, 5, cfg.tol);
      CylFunction out = aps_op(K, psi);
      r.check(std::abs(out.norm() - psi.norm()) <= 1e-12 * std::max(1.0, psi.norm()),
              fmt::format("APS norm, K = {}", K));
      r.check(approx_equal(aps_inverse_op(K, out), psi, 1e-12), fmt::format("APS inverse, K = {}", K));
    }
  }
  std::vector<double> eps;
  for (int n = 1; n <= 200; ++n) eps.push_back(1.0 / n);
  for (double beta : {0.0, -1.0, -5.0, -10.0, 7.0}) {
    auto report = convergence_check(cfg.scheme, beta, eps);
    r.check(report.first_stable.has_value(), fmt::format("strong convergence at beta = {}", beta));
  }
  return std::move(r).finish();
}

std::vector<SuiteReport> verify_all(const VerifyConfig& cfg) {
  return {verify_freqcore(cfg), verify_wigner(cfg), verify_gaussdual(cfg), verify_weylquant(cfg),
          verify_holonomy(cfg)};
}

nlohmann::json to_json(const SuiteReport& report) {
  return {{"suite", report.suite}, {"cases", report.cases}, {"failures", report.failures}};
}

}  // namespace bohrwig
