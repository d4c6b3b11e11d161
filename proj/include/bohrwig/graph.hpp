#pragma once

// Point lists for plotting matrix elements <h_alpha, A h_beta> = 1.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bohrwig/holonomy.hpp"

namespace bohrwig {

enum class GraphOperator { e, e_aps, h_mu0 };
std::string to_string(GraphOperator op);

struct GraphPoint {
  std::string op;
  double alpha = 0.0;
  double beta = 0.0;
  std::string branch;
};

struct GraphOptions {
  MubarScheme scheme;
  std::optional<double> K;  // required for e_aps
  double beta_lo = -20.0;
  double beta_hi = 20.0;
  std::size_t samples = 2000;
};

/// `n` evenly spaced points on [lo, hi]; empty when n == 0 or lo > hi.
std::vector<double> sample_grid(double lo, double hi, std::size_t n);

/// Per sampled beta, every alpha with <h_alpha, A h_beta> = 1.
/// e rows carry the cubic branch, e_aps rows "shift", h_mu0 rows "line".
std::vector<GraphPoint> graph_export(GraphOperator op, const GraphOptions& opts);

/// The parametrized solution curve (x + mubar(x)/2, x - mubar(x)/2) for x on
/// the beta grid (x = 0 skipped) plus a geometric refinement towards the spike,
/// keeping only points whose beta lies in [beta_lo, beta_hi].
/// Rows are tagged "spike" or "regular".
std::vector<GraphPoint> e_curve(const GraphOptions& opts);

/// e rows retagged "dashed" on the spike and "solid" elsewhere.
std::vector<GraphPoint> e_branches(const GraphOptions& opts);

/// "# seed=<seed>" then operator,alpha,beta,branch rows with 17 significant digits.
void write_graph_csv(std::ostream& os, const std::vector<GraphPoint>& points, std::uint64_t seed);

}  // namespace bohrwig
