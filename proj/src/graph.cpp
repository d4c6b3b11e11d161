#include "bohrwig/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace bohrwig {

std::string to_string(GraphOperator op) {
  switch (op) {
    case GraphOperator::e: return "e";
    case GraphOperator::e_aps: return "e_aps";
    case GraphOperator::h_mu0: return "h_mu0";
  }
  return "?";
}

std::vector<double> sample_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0 || lo > hi) return out;
  if (n == 1) return {lo};
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

std::vector<GraphPoint> graph_export(GraphOperator op, const GraphOptions& opts) {
  std::vector<GraphPoint> out;
  const std::string name = to_string(op);
  if (op == GraphOperator::e_aps && !opts.K)
    throw std::invalid_argument("the e_aps graph needs K");
  for (double beta : sample_grid(opts.beta_lo, opts.beta_hi, opts.samples)) {
    switch (op) {
      case GraphOperator::e:
        for (const auto& s : solve_S(opts.scheme, beta).solutions)
          out.push_back({name, s.alpha, beta, to_string(s.branch)});
        break;
      case GraphOperator::e_aps: {
        double alpha = volume_label_inverse(volume_label(beta) - 1.0 / *opts.K);
        out.push_back({name, alpha, beta, "shift"});
        break;
      }
      case GraphOperator::h_mu0:
        out.push_back({name, beta + opts.scheme.mu0, beta, "line"});
        break;
    }
  }
  return out;
}

std::vector<GraphPoint> e_curve(const GraphOptions& opts) {
  std::vector<double> xs;
  for (double x : sample_grid(opts.beta_lo, opts.beta_hi, opts.samples)) {
    if (x != 0.0) xs.push_back(x);
  }
  // Refine towards the spike until it leaves the beta window. Going further
  // would emit points whose alpha + beta = 2x is below double resolution.
  if (!xs.empty()) {
    const double xstar = spike_halfwidth(opts.scheme);
    for (int k = 0; k < 80; ++k) {
      double x = xstar * std::pow(2.0, -0.5 * k);
      if (x - mubar(opts.scheme, x) / 2.0 < opts.beta_lo) break;
      xs.push_back(x);
      xs.push_back(-x);
    }
    std::sort(xs.begin(), xs.end());
  }
  std::vector<GraphPoint> out;
  for (double x : xs) {
    double m = mubar(opts.scheme, x);
    double alpha = x + m / 2.0;
    double beta = x - m / 2.0;
    if (beta < opts.beta_lo || beta > opts.beta_hi) continue;
    out.push_back({"e", alpha, beta, on_spike(opts.scheme, alpha, beta) ? "spike" : "regular"});
  }
  return out;
}

std::vector<GraphPoint> e_branches(const GraphOptions& opts) {
  auto points = graph_export(GraphOperator::e, opts);
  for (auto& p : points) p.branch = on_spike(opts.scheme, p.alpha, p.beta) ? "dashed" : "solid";
  return points;
}

void write_graph_csv(std::ostream& os, const std::vector<GraphPoint>& points, std::uint64_t seed) {
  fmt::print(os, "# seed={}\noperator,alpha,beta,branch\n", seed);
  for (const auto& p : points) fmt::print(os, "{},{:.17g},{:.17g},{}\n", p.op, p.alpha, p.beta, p.branch);
}

}  // namespace bohrwig
