#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "bohrwig/cubic.hpp"
#include "bohrwig/graph.hpp"
#include "bohrwig/holonomy.hpp"
#include "bohrwig/sampling.hpp"
#include "oracles.hpp"

using namespace bohrwig;

namespace {

const MubarScheme kScheme;
const double C = 3.0 * std::sqrt(3.0);

CylFunction hr(double mu, Complex a = 1.0) { return make_character(Frequency::real(mu), a); }

double outer_residual(double alpha, double beta) {
  return std::abs(std::abs(alpha + beta) * (alpha - beta) * (alpha - beta) - C);
}

void expect_alphas(const SolutionSet& s, const std::vector<double>& expect, double tol) {
  auto got = s.alphas();
  ASSERT_EQ(got.size(), expect.size()) << "beta " << s.beta;
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expect[i], tol) << "beta " << s.beta;
}

}  // namespace

TEST(Cubic, KnownRoots) {
  // (x-1)(x-2)(x-3)
  auto r = real_cubic_roots(-6, 11, -6);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], 1, 1e-14);
  EXPECT_NEAR(r[1], 2, 1e-14);
  EXPECT_NEAR(r[2], 3, 1e-14);
  // x^3 - 8
  auto s = real_cubic_roots(0, 0, -8);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0], 2, 1e-15);
  // (x-1)^2 (x+2) has a double root
  auto t = real_cubic_roots(0, -3, 2);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_NEAR(t[0], -2, 1e-12);
  EXPECT_NEAR(t[1], 1, 1e-7);
}

TEST(Mubar, Examples) {
  EXPECT_NEAR(mubar(kScheme, C / 2), 1.0, 1e-15);
  EXPECT_NEAR(mubar(kScheme, C / 8), 2.0, 1e-15);
  EXPECT_NEAR(mubar(kScheme, -C / 8), 2.0, 1e-15);
  EXPECT_THROW(mubar(kScheme, 0.0), std::domain_error);
  EXPECT_GT(mubar(kScheme, 1e-12), 1e5);
  MubarScheme bad{-1.0, 0.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(SolveS, OracleValues) {
  expect_alphas(solve_S(kScheme, 0.0), {std::sqrt(3.0)}, 1e-12);
  expect_alphas(solve_S(kScheme, -10.0), {-9.483575772412008, 9.986992705473899, 10.01297354431253}, 1e-10);
  expect_alphas(solve_S(kScheme, 10.0), {10.503416933061887}, 1e-10);
  expect_alphas(solve_S(kScheme, -5.0), {-4.250523921484584, 4.947488430780648, 5.051431131532539}, 1e-10);
  expect_alphas(solve_S(kScheme, 7.0), {7.596642862902958}, 1e-10);
  auto s = solve_S(kScheme, -10.0);
  EXPECT_EQ(s.solutions[0].branch, Branch::outer_minus);
  EXPECT_EQ(s.solutions[1].branch, Branch::outer_minus);
  EXPECT_EQ(s.solutions[2].branch, Branch::outer_plus);
}

TEST(SolveS, MatchesBisectionOracle) {
  for (double beta = -30.0; beta <= 30.0; beta += 0.37) {
    auto got = solve_S(kScheme, beta).alphas();
    auto expect = oracle::solution_set(beta, C);
    ASSERT_EQ(got.size(), expect.size()) << beta;
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expect[i], 1e-9 * std::max(1.0, std::abs(got[i])));
  }
}

TEST(SolveS, ResidualsAndConstraints) {
  for (int i = 0; i <= 10000; ++i) {
    double beta = -30.0 + 60.0 * i / 10000.0;
    auto s = solve_S(kScheme, beta);
    ASSERT_GE(s.size(), 1u);
    ASSERT_LE(s.size(), 3u);
    for (const auto& sol : s.solutions) {
      EXPECT_LE(outer_residual(sol.alpha, beta), 1e-10 * C) << beta;
      EXPECT_GT(sol.alpha, beta);
      EXPECT_NE(sol.alpha, -beta);
    }
  }
}

TEST(CriticalValue, MatchesCountScan) {
  auto scan = oracle::count_scan_critical(C);
  EXPECT_TRUE(scan.monotone);
  double bc = critical_beta(kScheme);
  EXPECT_NEAR(scan.transition, bc, 1e-6);
  EXPECT_NEAR(oracle::tangency_beta(C), bc, 1e-6);
  EXPECT_GT(bc, scan.last_three);
  EXPECT_LT(bc, scan.first_one);
  // the constant -3^{3/2} 2^{5/3} (exponent sign flipped) is nowhere near the transition
  EXPECT_GT(std::abs(bc + std::pow(3.0, 1.5) * std::pow(2.0, 5.0 / 3.0)), 10.0);
  EXPECT_EQ(solve_S(kScheme, bc + 0.1).size(), 1u);
  EXPECT_EQ(solve_S(kScheme, bc - 0.1).size(), 3u);
}

TEST(CriticalValue, CountTransitionAroundBetaC) {
  double bc = critical_beta(kScheme);
  for (double beta = bc - 1.0; beta <= bc + 1.0; beta += 1e-3) {
    if (beta < bc - 1e-6) EXPECT_EQ(solve_S(kScheme, beta).size(), 3u) << beta;
    if (beta > bc + 1e-6) EXPECT_EQ(solve_S(kScheme, beta).size(), 1u) << beta;
  }
}

TEST(Holonomy, EOperatorExamples) {
  auto e0 = e_op(kScheme, hr(0.0));
  ASSERT_EQ(e0.size(), 1u);
  EXPECT_NEAR(e0.begin()->first.to_double(), std::sqrt(3.0), 1e-12);
  auto e10 = e_op(kScheme, hr(-10.0));
  EXPECT_EQ(e10.size(), 3u);
  EXPECT_NEAR(e10.norm_squared(), 3.0, 1e-15);
  EXPECT_THROW(e_op(kScheme, make_character(Frequency::rational(1))), KindMismatch);
  for (double beta = -20; beta <= 20; beta += 0.5) {
    EXPECT_EQ(e_op(kScheme, hr(beta)).norm_squared(), static_cast<double>(solve_S(kScheme, beta).size()));
  }
}

TEST(Holonomy, AdjointRelation) {
  auto a = e_adjoint_op(kScheme, hr(std::sqrt(3.0)));
  bool has_zero = false;
  for (const auto& [mu, c] : a) has_zero |= std::abs(mu.to_double()) < 1e-9;
  EXPECT_TRUE(has_zero);
  for (double beta = -15; beta <= 15; beta += 0.61) {
    for (double alpha : solve_S(kScheme, beta).alphas()) {
      auto back = solve_S_adjoint(kScheme, alpha).alphas();
      bool found = false;
      for (double b : back) found |= std::abs(b - beta) < 1e-9 * std::max(1.0, std::abs(beta));
      EXPECT_TRUE(found) << alpha << " " << beta;
    }
    // S-dagger(alpha) = -S(-alpha)
    auto s = solve_S(kScheme, -beta).alphas();
    auto t = solve_S_adjoint(kScheme, beta).alphas();
    ASSERT_EQ(s.size(), t.size());
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(t[i], -s[s.size() - 1 - i], 1e-10);
  }
  // <h_a, e h_b> = conj <e^dagger h_a, h_b>
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    auto psi = random_cyl(rng, FrequencyKind::real);
    auto phi = e_op(kScheme, random_cyl(rng, FrequencyKind::real));
    Complex lhs = inner_product(phi, e_op(kScheme, psi));
    Complex rhs = inner_product(e_adjoint_op(kScheme, phi), psi);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Holonomy, ParityRelations) {
  Rng rng(42);
  for (int k = 0; k < 50; ++k) {
    double beta = random_real(rng, 20.0).to_double();
    auto hb = hr(beta);
    auto s1 = parity(sin_op(kScheme, hb));
    auto s2 = sin_op(kScheme, parity(hb));
    EXPECT_TRUE(approx_equal(s1, scale(s2, -1.0), 1e-9)) << beta;
    auto c1 = parity(cos_op(kScheme, hb));
    auto c2 = cos_op(kScheme, parity(hb));
    EXPECT_TRUE(approx_equal(c1, c2, 1e-9)) << beta;
  }
}

TEST(Holonomy, SchurConstantsFromScan) {
  auto e = symbols::holonomy(kScheme);
  EXPECT_DOUBLE_EQ(schur_norm_bound(e), 3.0);
  std::vector<Frequency> labels;
  for (int i = 0; i <= 4000; ++i) labels.push_back(Frequency::real(-30.0 + 60.0 * i / 4000.0));
  auto c = scan_schur_constants(e, labels);
  EXPECT_EQ(c.row_sum, 3.0);
  EXPECT_EQ(c.col_sum, 3.0);
}

TEST(Holonomy, FiniteSectionsBetweenSqrt3And3) {
  auto e = symbols::holonomy(kScheme);
  std::vector<Frequency> seeds{Frequency::real(-10.0)};
  double prev = 0.0;
  for (int r = 1; r <= 5; ++r) {
    double v = finite_section_norm(e, seeds, r).value;
    EXPECT_GE(v, std::sqrt(3.0) - 1e-6) << r;
    EXPECT_LE(v, 3.0 + 1e-8) << r;
    EXPECT_GE(v, prev - 1e-9) << r;
    prev = v;
  }
}

TEST(Regularization, ConstantCapExamples) {
  auto reg = Regularization::constant_cap(kScheme, 0.1);
  EXPECT_NEAR(reg.cap_value(), mubar(kScheme, 0.1), 1e-15);
  EXPECT_EQ(solve_S_reg(reg, 0.0).alphas(), solve_S(kScheme, 0.0).alphas());
  for (double eps : {0.1, 1.0, 3.0}) {
    auto r = Regularization::constant_cap(kScheme, eps);
    double beta = -r.cap_value() / 2;
    auto s = solve_S_reg(r, beta);
    bool inner = false;
    for (const auto& sol : s.solutions)
      inner |= sol.branch == Branch::inner && std::abs(sol.alpha - (beta + r.cap_value())) < 1e-12;
    EXPECT_TRUE(inner) << eps;
  }
  EXPECT_THROW(Regularization::constant_cap(kScheme, 0.0), std::invalid_argument);
}

TEST(Regularization, ConcaveCapValidation) {
  const double eps = 0.5;
  const double edge = mubar(kScheme, eps);
  EXPECT_NO_THROW(Regularization::concave_cap(kScheme, eps, [&](double x) { return edge + (eps * eps - x * x); }));
  EXPECT_THROW(Regularization::concave_cap(kScheme, eps, [&](double x) { return edge - (eps * eps - x * x); }),
               std::invalid_argument);
  EXPECT_THROW(Regularization::concave_cap(kScheme, eps, [&](double) { return edge + 1.0; }), std::invalid_argument);
}

TEST(Regularization, GeneralCapSolutionsSatisfyRelation) {
  const double eps = 0.8;
  const double edge = mubar(kScheme, eps);
  auto reg = Regularization::concave_cap(kScheme, eps, [&](double x) { return edge + 2.0 * (eps * eps - x * x); });
  for (double beta = -6; beta <= 6; beta += 0.05) {
    auto s = solve_S_reg(reg, beta);
    EXPECT_LE(s.size(), 5u);
    for (const auto& sol : s.solutions) {
      double x = (sol.alpha + beta) / 2;
      EXPECT_NEAR(sol.alpha - beta, reg.f(x), 1e-9 * std::max(1.0, reg.f(x))) << beta;
    }
  }
}

TEST(Regularization, RowAndColumnCountsAtMostFive) {
  for (double eps : {0.05, 0.3, 1.0, 2.5}) {
    auto reg = Regularization::constant_cap(kScheme, eps);
    std::size_t rmax = 0, cmax = 0;
    for (int i = 0; i <= 6000; ++i) {
      double x = -30.0 + 60.0 * i / 6000.0;
      rmax = std::max(rmax, solve_S_reg(reg, x).size());
      cmax = std::max(cmax, solve_S_reg_adjoint(reg, x).size());
    }
    EXPECT_LE(rmax, 5u) << eps;
    EXPECT_LE(cmax, 5u) << eps;
  }
  auto reg = Regularization::constant_cap(kScheme, 0.2);
  EXPECT_DOUBLE_EQ(schur_norm_bound(symbols::holonomy_regularized(reg)), 5.0);
}

TEST(Convergence, FiniteIndexForSampledBetas) {
  std::vector<double> eps;
  for (int n = 1; n <= 200; ++n) eps.push_back(1.0 / n);
  for (double beta : {0.0, -1.0, -5.0, -10.0, 7.0}) {
    auto rep = convergence_check(kScheme, beta, eps);
    ASSERT_TRUE(rep.first_stable.has_value()) << beta;
    EXPECT_LE(*rep.first_stable, eps.size());
  }
  auto zero = convergence_check(kScheme, 0.0, eps);
  EXPECT_EQ(*zero.first_stable, 2u);
  ASSERT_EQ(zero.spurious.size(), 1u);
  ASSERT_EQ(zero.spurious[0].size(), 1u);
  EXPECT_NEAR(zero.spurious[0][0], mubar(kScheme, 1.0), 1e-12);
  ASSERT_EQ(zero.missing[0].size(), 1u);
  EXPECT_NEAR(zero.missing[0][0], std::sqrt(3.0), 1e-12);
}

TEST(Convergence, DyadicSchedule) {
  std::vector<double> eps;
  for (int n = 1; n <= 60; ++n) eps.push_back(std::ldexp(1.0, -n));
  auto rep = convergence_check(kScheme, -10.0, eps);
  EXPECT_TRUE(rep.first_stable.has_value());
}

TEST(Aps, ShiftExample) {
  double src = std::pow(2.0, 2.0 / 3.0);
  auto out = aps_op(1.0, hr(src, 0.7));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out.begin()->first.to_double(), 1.0, 1e-12);
  EXPECT_EQ(out.begin()->second, Complex(0.7));
  EXPECT_THROW(aps_op(0.0, hr(1.0)), std::invalid_argument);
  EXPECT_THROW(aps_op(-1.0, hr(1.0)), std::invalid_argument);
}

TEST(Aps, UnitaryShiftInVolume) {
  Rng rng(43);
  for (double K : {0.5, 1.0, 2.0}) {
    for (int k = 0; k < 50; ++k) {
      auto psi = random_cyl(rng, FrequencyKind::real);
      auto out = aps_op(K, psi);
      EXPECT_NEAR(out.norm(), psi.norm(), 1e-12 * std::max(1.0, psi.norm()));
      EXPECT_TRUE(approx_equal(aps_inverse_op(K, out), psi, 1e-12));
      for (const auto& [mu, c] : psi) {
        double a = volume_label_inverse(volume_label(mu.to_double()) - 1.0 / K);
        EXPECT_NEAR(volume_label(a) - volume_label(mu.to_double()), -1.0 / K, 1e-10);
        EXPECT_EQ(out.coefficient(Frequency::real(a)), c);
      }
    }
  }
}

TEST(Graph, CurvePointAtUnitMubar) {
  GraphOptions opts;
  opts.beta_lo = C / 2 - 1;
  opts.beta_hi = C / 2;
  opts.samples = 2;
  bool found = false;
  for (const auto& p : e_curve(opts)) {
    if (std::abs(p.alpha - (C / 2 + 0.5)) < 1e-12 && std::abs(p.beta - (C / 2 - 0.5)) < 1e-12) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Graph, ExportsAndResiduals) {
  GraphOptions opts;
  opts.K = 1.0;
  auto e = graph_export(GraphOperator::e, opts);
  for (const auto& p : e) EXPECT_LE(outer_residual(p.alpha, p.beta), 1e-10 * C);
  for (const auto& p : e_curve(opts)) EXPECT_LE(outer_residual(p.alpha, p.beta), 1e-10 * C);
  auto line = graph_export(GraphOperator::h_mu0, opts);
  EXPECT_EQ(line.size(), 2000u);
  for (const auto& p : line) EXPECT_EQ(p.alpha, p.beta + kScheme.mu0);
  auto aps = graph_export(GraphOperator::e_aps, opts);
  EXPECT_EQ(aps.size(), 2000u);
  opts.K.reset();
  EXPECT_THROW(graph_export(GraphOperator::e_aps, opts), std::invalid_argument);
  opts.beta_lo = 1;
  opts.beta_hi = 0;
  EXPECT_TRUE(graph_export(GraphOperator::e, opts).empty());
}

TEST(Graph, BranchTagsFollowSpike) {
  GraphOptions opts;
  for (const auto& p : e_branches(opts)) {
    bool spike = std::abs((p.alpha + p.beta) / 2) < spike_halfwidth(kScheme);
    EXPECT_EQ(p.branch, spike ? "dashed" : "solid");
  }
}

TEST(Graph, CsvFormat) {
  std::ostringstream os;
  write_graph_csv(os, {{"e", 0.1, -1.0 / 3.0, "outer-plus"}}, 7);
  EXPECT_EQ(os.str(), "# seed=7\noperator,alpha,beta,branch\ne,0.10000000000000001,-0.33333333333333331,outer-plus\n");
}
